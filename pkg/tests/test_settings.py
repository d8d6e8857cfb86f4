import logging

import pytest

from cayleyaut.exceptions import ArgumentError
from cayleyaut.settings import (MAX_BRUTE_FORCE_VERTICES, Settings, configure_logging,
                                load_settings)

ENV_VARS = ['MAX_VERTICES', 'MAX_CONSTRUCTION', 'MAX_GROUP', 'MAX_CONNECTION_SET', 'WORKERS',
            'LOG_LEVEL', 'LOG_FILE', 'CONFIG']


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv('CAYLEYAUT_' + name, raising=False)


def test_defaults_from_repository_config():
    settings = load_settings()
    assert settings.max_brute_force_vertices == MAX_BRUTE_FORCE_VERTICES
    assert settings.max_construction_vertices == 65536
    assert settings.max_group_elements == 10 ** 6
    assert settings.max_connection_set == 14
    assert settings.refine_depth == 2
    assert settings.workers == 1


def test_config_file(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text('analysis:\n  caps:\n    brute_force_vertices: 40\n  search:\n    workers: 3\n')
    settings = load_settings(str(path))
    assert settings.max_brute_force_vertices == 40
    assert settings.workers == 3
    assert settings.max_group_elements == 10 ** 6


def test_environment_overrides_config(tmp_path, monkeypatch):
    path = tmp_path / 'config.yaml'
    path.write_text('analysis:\n  caps:\n    brute_force_vertices: 40\n')
    monkeypatch.setenv('CAYLEYAUT_CONFIG', str(path))
    monkeypatch.setenv('CAYLEYAUT_MAX_VERTICES', '25')
    monkeypatch.setenv('CAYLEYAUT_MAX_GROUP', '500')
    settings = load_settings()
    assert settings.max_brute_force_vertices == 25
    assert settings.max_group_elements == 500


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv('CAYLEYAUT_WORKERS', 'many')
    with pytest.raises(ArgumentError):
        load_settings()


def test_override_skips_none():
    settings = Settings().override(max_brute_force_vertices=None, workers=2)
    assert settings.max_brute_force_vertices == MAX_BRUTE_FORCE_VERTICES
    assert settings.workers == 2


def test_configure_logging_file(tmp_path):
    log_file = tmp_path / 'cayleyaut.log'
    configure_logging('debug', str(log_file))
    logging.getLogger('cayleyaut.test').debug('hello')
    for handler in logging.getLogger('cayleyaut').handlers:
        handler.flush()
    assert 'hello' in log_file.read_text()
    configure_logging('WARNING')
