"""
Condorcet Tilings Django Settings

This module contains all Django settings for the Condorcet Tilings project,
organized by functionality and purpose. The project has no HTTP surface; Django
provides configuration, logging, management commands and the ORM used for
checkpointing long enumerations.
"""

from pathlib import Path

import dj_database_url
from decouple import config

# =============================================================================
# CORE DJANGO CONFIGURATION
# =============================================================================

BASE_DIR = Path(__file__).resolve().parent.parent
PROJECT_NAME = "Condorcet Tilings"
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
USE_TZ = True
TIME_ZONE = "UTC"

# =============================================================================
# SECURITY SETTINGS
# =============================================================================

SECRET_KEY = config("SECRET_KEY", default="condorcet-local-only")
DEBUG = config("DEBUG", default=False, cast=bool)
ALLOWED_HOSTS = []

# =============================================================================
# APPLICATION DEFINITION
# =============================================================================

DJANGO_APPS = [
    "django.contrib.contenttypes",
]

THIRD_PARTY_APPS = [
    "rest_framework",
]

LOCAL_APPS = [
    "core",
    "perm",
    "heap",
    "majority",
    "folding",
    "families",
    "decompose",
    "bruhat",
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# =============================================================================
# DATABASE CONFIGURATION
# =============================================================================

DATABASES = {
    "default": dj_database_url.config(
        env="CONDORCET_DATABASE_URL",
        default=f"sqlite:///{BASE_DIR / 'condorcet.sqlite3'}",
        conn_max_age=0,
    )
}

# =============================================================================
# REST FRAMEWORK CONFIGURATION
# =============================================================================

REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
}

# =============================================================================
# ENGINE CONFIGURATION
# =============================================================================

CONDORCET = {
    "MAX_N": config("CONDORCET_MAX_N", default=16, cast=int),
    "IDEAL_STREAM_WORKERS": config("CONDORCET_WORKERS", default=1, cast=int),
    "CLASS_BFS_LIMIT": config("CONDORCET_CLASS_BFS_LIMIT", default=1_000_000, cast=int),
    "BRUHAT_NODE_BUDGET": config(
        "CONDORCET_BRUHAT_NODE_BUDGET", default=100_000, cast=int
    ),
    "BRUHAT_MAX_N": config("CONDORCET_BRUHAT_MAX_N", default=6, cast=int),
    "FOLD_SEARCH_BOUND": config("CONDORCET_FOLD_SEARCH_BOUND", default=40, cast=int),
    "FOLD_SEARCH_STEPS": config(
        "CONDORCET_FOLD_SEARCH_STEPS", default=200_000, cast=int
    ),
    "ORACLE_DOMAIN_LIMIT": config(
        "CONDORCET_ORACLE_DOMAIN_LIMIT", default=200_000, cast=int
    ),
    "OUTPUT_FORMAT": config("CONDORCET_OUTPUT_FORMAT", default="text"),
}

# =============================================================================
# LOGGING CONFIGURATION
# =============================================================================

LOG_LEVEL = config("CONDORCET_LOG_LEVEL", default="WARNING")

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
            'stream': 'ext://sys.stderr',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        **{
            app: {
                'handlers': ['console'],
                'level': LOG_LEVEL,
                'propagate': False,
            }
            for app in LOCAL_APPS
        },
    },
}
