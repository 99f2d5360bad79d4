"""Fixtures for the configuration, data and command-line tests."""

import os
import shutil
import tempfile
from pathlib import Path

import pytest
import yaml


@pytest.fixture
def temp_directory():
    """Provide a temporary directory for testing."""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


@pytest.fixture
def write_config(temp_directory):
    """Write a mapping (or raw text) as a YAML config and return its path."""

    def _write(content, name="run.yaml"):
        path = temp_directory / name
        with open(path, "w", encoding="utf-8") as f:
            if isinstance(content, str):
                f.write(content)
            else:
                yaml.safe_dump(content, f, sort_keys=False)
        return path

    return _write


@pytest.fixture
def in_temp_directory(temp_directory):
    """Run the test with the temporary directory as working directory."""
    original_cwd = os.getcwd()
    os.chdir(temp_directory)
    try:
        yield temp_directory
    finally:
        os.chdir(original_cwd)


@pytest.fixture
def plancherel_config(temp_directory):
    return {
        "experiment": "plancherel_check",
        "group": {"kind": "torus", "radii": [1.0], "bandlimit": 8},
        "analysis": {"n_fields": 5, "seed": 3},
        "output": {"directory": str(temp_directory / "results")},
    }


@pytest.fixture
def decay_config(temp_directory):
    """Small linear-decay run with random sets and coefficient dumps."""
    return {
        "experiment": "linear_decay",
        "group": {"kind": "torus", "radii": [1.0], "bandlimit": 2},
        "data": {"u0": "single_mode k=1", "u1": "zero"},
        "analysis": {"t_max": 30.0, "n_times": 61, "random_sets": 2, "seed": 5},
        "output": {
            "directory": str(temp_directory / "results"),
            "dump_coefficients": True,
            "coefficient_stride": 30,
        },
    }
