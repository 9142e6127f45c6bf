from django.apps import AppConfig


class PermConfig(AppConfig):
    name = 'perm'
    verbose_name = 'Permutations and reduced words'
