"""Shared fixtures for all test packages.

This file contains fixtures that are used across multiple test packages.
Package-specific fixtures should be placed in the respective package's conftest.py file.
"""

import shutil
import tempfile
from pathlib import Path

import numpy as np
import pytest

from liewave import LiewaveSettings
from liewave.spectral import GroupSpec


@pytest.fixture(scope="session")
def project_root():
    """Get the project root directory."""
    return Path(__file__).resolve().parent.parent


@pytest.fixture
def global_temp_directory():
    """Provide a temporary directory for cross-package testing."""
    temp_dir = tempfile.mkdtemp(prefix="test_global_")
    yield Path(temp_dir)
    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture
def test_settings():
    """Provide process settings with logging disabled."""
    return LiewaveSettings(enable_logging=False, log_level="WARNING")


@pytest.fixture
def rng():
    """Seeded generator so every run draws the same fields."""
    return np.random.default_rng(20240611)


@pytest.fixture
def circle():
    """Unit circle truncated at B = 8."""
    return GroupSpec.torus([1], 8)


@pytest.fixture
def su2():
    return GroupSpec.su2(4)


@pytest.fixture
def so3():
    return GroupSpec.so3(3)
