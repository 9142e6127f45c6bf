import logging
from dataclasses import dataclass, fields

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from .constants import EngineConstants

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EngineConfig:
    MAX_N: int = 16
    IDEAL_STREAM_WORKERS: int = 1
    CLASS_BFS_LIMIT: int = 1_000_000
    BRUHAT_NODE_BUDGET: int = 100_000
    BRUHAT_MAX_N: int = 6
    FOLD_SEARCH_BOUND: int = 40
    FOLD_SEARCH_STEPS: int = 200_000
    ORACLE_DOMAIN_LIMIT: int = 200_000
    OUTPUT_FORMAT: str = EngineConstants.OutputFormat.TEXT

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if field.type is int or field.type == "int":
                if not isinstance(value, int) or value <= 0:
                    raise ImproperlyConfigured(
                        f"CONDORCET['{field.name}'] must be a positive integer, got {value!r}"
                    )
        if self.OUTPUT_FORMAT not in EngineConstants.OutputFormat.values:
            raise ImproperlyConfigured(
                f"CONDORCET['OUTPUT_FORMAT'] must be one of "
                f"{EngineConstants.OutputFormat.values}, got {self.OUTPUT_FORMAT!r}"
            )


def get_engine_config(**overrides) -> EngineConfig:
    """Build the engine configuration from ``settings.CONDORCET``.

    Unknown keys are ignored with a warning; ``overrides`` win over settings.
    """
    raw = dict(getattr(settings, "CONDORCET", {}))
    raw.update(overrides)
    known = {field.name for field in fields(EngineConfig)}
    unknown = set(raw) - known
    if unknown:
        logger.warning(f"Ignoring unknown CONDORCET settings: {sorted(unknown)}")
    return EngineConfig(**{key: value for key, value in raw.items() if key in known})
