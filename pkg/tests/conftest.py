"""Shared fixtures.

The generator-set fixture is session scoped: building the ten dense
generators is cheap at cutoff 10, but a dozen test modules asking for
them independently adds up.
"""

import pathlib

import pytest

from sp4r.algebra import build_generators
from sp4r.fock import build_basis

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def gens10():
    """Generators on the inclusive (10, 10) basis (121 states)."""
    return build_generators(build_basis(10, 10))


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
