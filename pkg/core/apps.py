from django.apps import AppConfig


class CoreConfig(AppConfig):
    name = 'core'
    verbose_name = 'Condorcet engine core'

    def ready(self):
        # Fail fast on a broken CONDORCET settings block.
        from .conf import get_engine_config
        get_engine_config()
