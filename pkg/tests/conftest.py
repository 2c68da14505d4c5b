"""
Pytest configuration and fixtures for zenoprotect tests.

This module provides common test fixtures and configuration for all test modules.
"""

import pytest
import tempfile
import os
import sys
from pathlib import Path

# Add the src directory to Python path for imports
test_dir = Path(__file__).parent
project_root = test_dir.parent
src_dir = project_root / "src"
sys.path.insert(0, str(src_dir))


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture(scope="session")
def project_root_path():
    """Provide the project root directory path."""
    return project_root


@pytest.fixture(scope="session")
def scenario_dir():
    """Bundled scenario files."""
    return project_root / "configs" / "scenarios"


@pytest.fixture(scope="session")
def expectations_dir():
    """Bundled expectation files."""
    return project_root / "configs" / "expectations"


@pytest.fixture
def small_scenario():
    """A raw scenario mapping that runs in a few seconds."""
    return {
        "name": "small",
        "seed": 11,
        "duration_s": 20.0,
        "plant": {"loops": 5, "pulse_fwhm_ns": 2.5,
                  "drift": {"kind": "random_walk", "scale": 0.1}},
        "spgd": {"C": 0.2, "gamma": 0.011, "g_max": 2.0, "integration_s": 0.2},
        "zeno": {"thetas": [0.7853981633974483, 0.0], "labels": ["d", "h"],
                 "acquisition_s": 1.0},
        "stabilization": {"arms": ["on", "off"], "bin_s": 2.0},
    }


# Configure pytest to handle YAML and other test-specific settings
def pytest_configure(config):
    """Configure pytest with custom markers and settings."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests"
    )
    config.addinivalue_line(
        "markers", "unit: marks tests as unit tests"
    )
    config.addinivalue_line(
        "markers", "functional: marks tests as functional/end-to-end tests"
    )


# Set test environment variables
@pytest.fixture(autouse=True)
def setup_test_environment():
    """Set up test environment variables."""
    os.environ["TESTING"] = "1"
    yield
    if "TESTING" in os.environ:
        del os.environ["TESTING"]
