import logging

import pytest
from pydantic import ValidationError

from models.run_config import OutputFormat, RunConfig
from utils.logging_setup import LOG_FORMAT, configure_logging
from utils.settings import env_overrides, load_run_config


def test_defaults():
    config = load_run_config(environ={})
    assert config == RunConfig()
    assert (config.probe_bound, config.seed, config.budget, config.workers) == (12, 0, 1000, 1)
    assert config.format is OutputFormat.JSON and config.output is None


def test_environment_overrides_defaults():
    environ = {"WEAKIND_SEED": "7", "WEAKIND_PROBE_BOUND": " 20 ", "WEAKIND_FORMAT": "text", "OTHER": "1"}
    assert env_overrides(environ) == {"seed": "7", "probe_bound": "20", "format": "text"}
    config = load_run_config(environ=environ)
    assert config.seed == 7 and config.probe_bound == 20
    assert config.format is OutputFormat.TEXT


def test_flags_override_environment():
    config = load_run_config(environ={"WEAKIND_SEED": "7"}, seed=3, workers=None)
    assert config.seed == 3
    assert config.workers == 1


@pytest.mark.parametrize(
    "environ",
    [
        {"WEAKIND_PROBE_BOUND": "0"},
        {"WEAKIND_BUDGET": "-1"},
        {"WEAKIND_SEED": "abc"},
        {"WEAKIND_SEED": str(2**64)},
        {"WEAKIND_FORMAT": "xml"},
    ],
)
def test_invalid_values(environ):
    with pytest.raises(ValidationError):
        load_run_config(environ=environ)


def test_configure_logging():
    configure_logging(verbose=True)
    root = logging.getLogger()
    assert root.level == logging.DEBUG
    assert len(root.handlers) == 1
    assert root.handlers[0].formatter._fmt == LOG_FORMAT
    configure_logging()
    assert root.level == logging.WARNING
    assert len(root.handlers) == 1
