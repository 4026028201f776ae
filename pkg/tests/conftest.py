import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mdgame import make_context


@pytest.fixture(scope="session")
def ctx():
    """One warm engine context shared by the whole session."""
    return make_context()


@pytest.fixture(scope="session")
def store(ctx):
    return ctx.store
