import os

import pytest


@pytest.fixture
def config_dir():
    """Directory holding the shipped .cfg scenario files."""
    here = os.path.dirname(os.path.abspath(__file__))
    return os.path.normpath(os.path.join(here, "..", "..", "configs"))
