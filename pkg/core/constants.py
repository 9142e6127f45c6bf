# core/constants.py
from django.db import models


class EngineConstants:
    class OutputFormat(models.TextChoices):
        TEXT = 'text', 'Plain text'
        JSON = 'json', 'Canonical JSON'
        DOT = 'dot', 'Graphviz DOT'

    class LabelMode(models.TextChoices):
        POSITION = 'position', 'Position in the word'
        LETTER = 'letter', 'Generator index'
        INVERSION = 'inversion', 'Inversion pair'
