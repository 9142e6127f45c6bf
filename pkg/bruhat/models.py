# bruhat/models.py
from django.db import models

from .constants import BruhatConstants


class BruhatRun(models.Model):
    """A checkpointed enumeration of B(n,2)."""

    n = models.PositiveSmallIntegerField()
    status = models.CharField(
        max_length=20,
        choices=BruhatConstants.RunStatus.choices,
        default=BruhatConstants.RunStatus.RUNNING,
    )
    node_count = models.PositiveIntegerField(default=0)
    cover_count = models.PositiveIntegerField(default=0)
    frontier = models.JSONField(
        default=list,
        help_text='Discovered but unexpanded classes as [triples, sample word] pairs',
    )
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f"B({self.n},2) run {self.pk} ({self.get_status_display()}, {self.node_count} classes)"


class BruhatNodeRecord(models.Model):
    run = models.ForeignKey(BruhatRun, on_delete=models.CASCADE, related_name='nodes')
    label = models.CharField(max_length=255)
    triples = models.JSONField()
    representative = models.JSONField()
    majority = models.CharField(max_length=255)
    class_size = models.PositiveIntegerField()

    class Meta:
        unique_together = ('run', 'label')

    def __str__(self):
        return f"{self.majority} [{self.label}]"


class BruhatCoverRecord(models.Model):
    run = models.ForeignKey(BruhatRun, on_delete=models.CASCADE, related_name='covers')
    lower = models.JSONField()
    upper = models.JSONField()
    added_triple = models.JSONField()

    def __str__(self):
        return f"cover adding {''.join(str(v) for v in self.added_triple)}"
