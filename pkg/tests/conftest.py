import pytest

from perscribe.config import load_resources


@pytest.fixture(scope="session")
def resources():
    """Banks parsed from the shipped data directory"""
    return load_resources()
