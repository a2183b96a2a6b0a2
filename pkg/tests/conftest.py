from functools import lru_cache

import pytest

from z2schur.cohom import h2
from z2schur.grp import catalog
from z2schur.mult import bogomolov

SMALL = ["cyclic:2", "cyclic:3", "cyclic:4", "klein4", "dihedral:3", "dihedral:4", "quaternion:8", "abelian:2x2x2"]


@lru_cache(maxsize=None)
def group(name: str):
    return catalog(name)


@lru_cache(maxsize=None)
def basis(name: str):
    return h2(group(name))


@lru_cache(maxsize=None)
def report(name: str):
    return bogomolov(group(name), basis(name))


@pytest.fixture(scope="session")
def g64():
    return group("smallgroup:64:182")
