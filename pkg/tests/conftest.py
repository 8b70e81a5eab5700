import sys
from importlib import resources
from pathlib import Path

import pytest

from atreason.domain import load_domain
from atreason.logic import parse_plp

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(str(resources.files("atreason") / "data"))


def data(name):
    return DATA / name


def domain(name):
    return load_domain(data(name + ".atd"))


def plp(name):
    return parse_plp(data(name + ".plp").read_text())


@pytest.fixture
def datadir():
    return DATA
