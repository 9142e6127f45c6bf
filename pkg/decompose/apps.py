from django.apps import AppConfig


class DecomposeConfig(AppConfig):
    name = 'decompose'
    verbose_name = 'Direct-sum decompositions'
