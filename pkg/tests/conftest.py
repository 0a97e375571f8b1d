"""Test configuration and fixtures."""

import tempfile
from pathlib import Path

import pytest

from moduli_divisors.core.config import AppConfig
from moduli_divisors.core.state import Level, SpaceContext


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdirname:
        yield Path(tmpdirname)


@pytest.fixture
def serial_config():
    """A config that never starts worker processes."""
    return AppConfig(jobs=1)


@pytest.fixture
def pointed_3_1():
    """M_{3,1} on the stack level."""
    return SpaceContext.pointed(3, 1)


@pytest.fixture
def nodal_23_1():
    """The coarse nodal quotient with one node pair in genus 23."""
    return SpaceContext.nodal(23, 1, level=Level.coarse)


@pytest.fixture
def nodal_certificate():
    """A GeneralType certificate for N_{23,1} from B, D and W."""
    from moduli_divisors.campaigns.nodal import certify_names

    return certify_names(23, 1, ("B", "D", "W"))
