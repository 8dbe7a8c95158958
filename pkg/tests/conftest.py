from pathlib import Path

import pytest
from hypothesis import settings

from relcover import load_system

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def t1():
    return load_system(FIXTURES / "t1.json")


@pytest.fixture(scope="session")
def t2():
    return load_system(FIXTURES / "t2.json")


@pytest.fixture(scope="session")
def t3():
    return load_system(FIXTURES / "t3.json")
