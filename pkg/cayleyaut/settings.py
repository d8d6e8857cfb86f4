"""
Settings for cayleyaut

Values come from config.yaml, then .env / CAYLEYAUT_* environment variables,
then explicit overrides passed by the CLI.
"""
import logging.config
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv

from .exceptions import ArgumentError

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

ENV_PREFIX = 'CAYLEYAUT_'

# Defaults
MAX_CONSTRUCTION_VERTICES = 65536
MAX_BRUTE_FORCE_VERTICES = 300
MAX_GROUP_ELEMENTS = 10 ** 6
MAX_CONNECTION_SET = 14
MAX_GROUP_ORDER = 2 ** 31
REFINE_DEPTH = 2
WORKERS = 1

# Logging
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
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'cayleyaut': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}


@dataclass(frozen=True)
class Settings:
    """Merged analysis settings"""

    max_construction_vertices: int = MAX_CONSTRUCTION_VERTICES
    max_brute_force_vertices: int = MAX_BRUTE_FORCE_VERTICES
    max_group_elements: int = MAX_GROUP_ELEMENTS
    max_connection_set: int = MAX_CONNECTION_SET
    refine_depth: int = REFINE_DEPTH
    workers: int = WORKERS
    log_level: str = 'WARNING'
    log_file: Optional[str] = None

    def override(self, **changes) -> 'Settings':
        """Return a copy with the non-None keyword values applied"""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(ENV_PREFIX + name)
    if value is None or value == '':
        return None
    try:
        return int(value)
    except ValueError:
        raise ArgumentError(f"{ENV_PREFIX}{name} must be an integer, got {value!r}")


def load_settings(config_path: Optional[str] = None) -> Settings:
    """
    Load settings from config.yaml and the environment

    Args:
        config_path: Path to configuration file; falls back to
            CAYLEYAUT_CONFIG, then BASE_DIR / 'config.yaml'

    Returns:
        Settings instance
    """
    path = Path(config_path or os.getenv(ENV_PREFIX + 'CONFIG') or BASE_DIR / 'config.yaml')

    config = {}
    if path.is_file():
        with open(path, 'r') as f:
            config = yaml.safe_load(f) or {}

    analysis = config.get('analysis', {})
    caps = analysis.get('caps', {})
    search = analysis.get('search', {})

    settings = Settings(
        max_construction_vertices=caps.get('construction_vertices', MAX_CONSTRUCTION_VERTICES),
        max_brute_force_vertices=caps.get('brute_force_vertices', MAX_BRUTE_FORCE_VERTICES),
        max_group_elements=caps.get('group_elements', MAX_GROUP_ELEMENTS),
        max_connection_set=caps.get('connection_set_size', MAX_CONNECTION_SET),
        refine_depth=search.get('refine_depth', REFINE_DEPTH),
        workers=search.get('workers', WORKERS),
        log_level=analysis.get('log_level', 'WARNING'),
    )

    return settings.override(
        max_brute_force_vertices=_env_int('MAX_VERTICES'),
        max_construction_vertices=_env_int('MAX_CONSTRUCTION'),
        max_group_elements=_env_int('MAX_GROUP'),
        max_connection_set=_env_int('MAX_CONNECTION_SET'),
        workers=_env_int('WORKERS'),
        log_level=os.getenv(ENV_PREFIX + 'LOG_LEVEL') or None,
        log_file=os.getenv(ENV_PREFIX + 'LOG_FILE') or None,
    )


def configure_logging(level: str = 'WARNING', log_file: Optional[str] = None):
    """Apply LOGGING with the requested level and optional file handler"""
    config = {
        **LOGGING,
        'handlers': dict(LOGGING['handlers']),
        'loggers': {'cayleyaut': dict(LOGGING['loggers']['cayleyaut'])},
    }
    config['loggers']['cayleyaut']['level'] = level.upper()

    if log_file:
        config['handlers']['file'] = {
            'level': 'DEBUG',
            'class': 'logging.FileHandler',
            'filename': log_file,
            'formatter': 'verbose',
        }
        config['loggers']['cayleyaut']['handlers'] = ['console', 'file']

    logging.config.dictConfig(config)
