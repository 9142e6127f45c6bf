from django.apps import AppConfig


class MajorityConfig(AppConfig):
    name = 'majority'
    verbose_name = 'Tallies and majority relations'
