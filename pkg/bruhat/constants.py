# bruhat/constants.py
from django.db import models


class BruhatConstants:
    class RunStatus(models.TextChoices):
        RUNNING = 'running', 'Running'
        BUDGET_EXCEEDED = 'budget_exceeded', 'Stopped at node budget'
        COMPLETE = 'complete', 'Complete'

    NO_TRIPLES = 'none'
    ALL_TRIPLES = 'all'
