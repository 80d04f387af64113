import numpy as np
import pytest

from pyhopf.ambient import Signature, DEFAULT_TOLERANCES
from pyhopf.catalog import TypeA, TypeB, Degenerate, Horosphere


@pytest.fixture
def sig():
    return Signature(4, 2)


@pytest.fixture
def tol():
    return DEFAULT_TOLERANCES


@pytest.fixture
def rng():
    return np.random.default_rng(20260419)


def reference_specs(sig):
    """The non-degenerate reference families keyed by label"""
    return {'A+': TypeA(sig, 1, 4, 0.75),
            'A-': TypeA(sig, 1, 4, 2.0),
            'B+': TypeB(sig, 0.5),
            'B0': TypeB(sig, 4.0),
            'B-': TypeB(sig, np.cosh(1.0) ** 2),
            'C': Horosphere(sig, 1.0)}


@pytest.fixture
def specs(sig):
    return reference_specs(sig)


@pytest.fixture
def degenerate(sig):
    return Degenerate(sig)


LABELS = ['A+', 'A-', 'B+', 'B0', 'B-', 'C']
