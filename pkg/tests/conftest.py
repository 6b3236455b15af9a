#!/usr/bin/env python3
"""
Shared fixtures for the fink test suite.
"""

import os
import sys

import pytest

# Add the parent directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.models.staircase import StaircaseValues  # noqa: E402
from src.services.blockspace import required_generators, sos_build, standard_basis  # noqa: E402
from src.services.canonize import oracle_from_values  # noqa: E402

K1_RELATIONS = {
    "all": StaircaseValues(k=1),
    "min": StaircaseValues(k=1, I0=(1,)),
    "max": StaircaseValues(k=1, I1=(1,)),
    "minmax": StaircaseValues(k=1, I0=(1,), I1=(1,)),
    "equality": StaircaseValues(k=1, I0=(1,), I1=(1,), l2=1),
}


def build_sos(k, length):
    return sos_build(standard_basis(k, required_generators(k, length)), length)


@pytest.fixture(scope="session")
def sos_k1():
    return build_sos(1, 4)


@pytest.fixture(scope="session")
def sos_k2():
    return build_sos(2, 3)


@pytest.fixture(scope="session")
def k1_oracles():
    """The five k=1 relations on <e_0..e_5>."""
    generators = standard_basis(1, 6)
    return {name: oracle_from_values(generators, v) for name, v in K1_RELATIONS.items()}
