import pytest

from beliefkit.voting import FRAME, SURVIVORS, monday_mass


@pytest.fixture
def frame():
    return FRAME


@pytest.fixture
def monday():
    """The canonical voting-study mass function."""
    return monday_mass()


@pytest.fixture
def survivors():
    """The retained set {c,d,e}."""
    return SURVIVORS
