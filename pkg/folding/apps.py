from django.apps import AppConfig


class FoldingConfig(AppConfig):
    name = 'folding'
    verbose_name = 'Folding symmetries of heaps'
