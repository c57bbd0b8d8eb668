from types import SimpleNamespace

import pytest

from model.digraph import arc_stabilizers
from model.groups import generate
from model.matrices import theorem_elements
from model.permutations import PermElement, frobenius_21, small_groups


ACCEPTANCE_PRIMES = (7, 13, 17, 23, 37, 43, 47)
REJECTED_PRIMES = (2, 3, 5, 11, 19, 29, 31)


@pytest.fixture(scope="session")
def theorem7():
    """The p = 7 construction with H and both arc stabilizers built once."""
    g, x, y, z = theorem_elements(7)
    w = z * g * z.inverse() * g.inverse()
    H = generate([x, y])
    k1, k2 = arc_stabilizers(H, g)
    return SimpleNamespace(p=7, g=g, x=x, y=y, z=z, w=w, H=H, k1=k1, k2=k2)


@pytest.fixture(scope="session")
def frobenius():
    G, H, g = frobenius_21()
    return SimpleNamespace(G=G, H=H, g=g)


@pytest.fixture(scope="session")
def catalogue():
    return {c.name: c.group for c in small_groups(120)}


@pytest.fixture(scope="session")
def s4(catalogue):
    return catalogue["S4"]


@pytest.fixture
def perm():
    def make(cycles, size):
        return PermElement.from_cycles(cycles, size)

    return make
