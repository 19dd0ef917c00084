import numpy as np
import pytest

from wakkit.algmod import path_algebra, polynomial_quotient
from wakkit.algmod.homology import indecomposable_injective, indecomposable_projective, simple_module


@pytest.fixture(scope="session")
def a2():
    """Path algebra of 1 -> 2 over F_2 with its indecomposables."""
    a = path_algebra(2, [1, 2], [(1, 2)], name="kA2")
    return {
        "A": a,
        "P1": indecomposable_projective(a, 0),
        "P2": indecomposable_projective(a, 1),
        "S1": simple_module(a, 0),
        "S2": simple_module(a, 1),
        "I1": indecomposable_injective(a, 0),
        "I2": indecomposable_injective(a, 1),
    }


@pytest.fixture(scope="session")
def dual_numbers():
    a = polynomial_quotient(2, 2)
    return {"A": a, "S": simple_module(a, 0), "R": indecomposable_projective(a, 0)}


def rng():
    return np.random.default_rng(0)
