from django.apps import AppConfig


class BruhatConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'bruhat'
    verbose_name = 'Higher Bruhat order B(n,2)'
