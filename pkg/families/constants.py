# families/constants.py
from django.db import models


class FamilyConstants:
    class Kind(models.TextChoices):
        SINGLETON_WORD = 'singleton_word', 'Word with a one-element class'
        COCKTAIL_SHAKER = 'cocktail_shaker', 'Cocktail-shaker word for w0'
        LEX_FIRST = 'lex_first', 'Lexicographically first word for w0'
        BIPARTITE_POWER = 'bipartite_power', 'Power of the bipartite Coxeter element'
        DIAMOND = 'diamond', 'Diamond word'

    class Variant(models.TextChoices):
        FORWARD = 'forward', 'As written'
        REVERSE = 'reverse', 'Letters reversed'
        COMPLEMENT = 'complement', 'Letters i -> n - i'
        REVERSE_COMPLEMENT = 'reverse_complement', 'Reversed and complemented'
