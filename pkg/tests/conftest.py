import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.bicomodule import build_universal  # noqa: E402
from app.presentations import (  # noqa: E402
    cyclic_group_algebra,
    matrix_coalgebra,
    sweedler_coalgebra,
    sweedler_hopf,
    symmetric_group_algebra,
)
from app.scalar import ScalarField  # noqa: E402


@pytest.fixture(scope="session")
def qq():
    return ScalarField()


@pytest.fixture(scope="session")
def qq_q():
    return ScalarField("QQ", "q")


@pytest.fixture(scope="session")
def m2x2():
    return matrix_coalgebra(2)


@pytest.fixture(scope="session")
def sweedler_coalg():
    return sweedler_coalgebra()


@pytest.fixture(scope="session")
def sweedler():
    return sweedler_hopf()


@pytest.fixture(scope="session")
def z2():
    return cyclic_group_algebra(2)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group_algebra()


@pytest.fixture(scope="session")
def universal_m2x2(m2x2):
    return build_universal(m2x2)


@pytest.fixture(scope="session")
def universal_sweedler(sweedler_coalg):
    return build_universal(sweedler_coalg)
