import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# make the sibling oracle module importable from every test file
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def tmp_json(tmp_path):
    """Write a JSON-serializable object to a temp file, return its path."""

    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write
