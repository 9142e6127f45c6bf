from django.apps import AppConfig


class HeapConfig(AppConfig):
    name = 'heap'
    verbose_name = 'Heap posets and commutation classes'
