from django.apps import AppConfig


class FamiliesConfig(AppConfig):
    name = 'families'
    verbose_name = 'Named families of reduced words'
