import logging

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exploratory runs; deselect with -m 'not slow'")


@pytest.fixture(autouse=True)
def restore_root_logger():
    """The CLI installs its own stderr handler; put pytest's handlers back afterwards."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
