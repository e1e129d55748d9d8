import pathlib

import pytest

from ptgsolve.fileformat import parse_arena

REPO = pathlib.Path(__file__).resolve().parent.parent
ARENAS = REPO / "arenas"
DATA = pathlib.Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def fig1_text() -> str:
    return (ARENAS / "fig1.ptg").read_text()


@pytest.fixture(scope="session")
def fig1(fig1_text):
    return parse_arena(fig1_text)


@pytest.fixture(scope="session")
def example2_text() -> str:
    return (ARENAS / "example2.ptg").read_text()


@pytest.fixture(scope="session")
def example2(example2_text):
    return parse_arena(example2_text)
