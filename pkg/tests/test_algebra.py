import itertools

import numpy as np
import pytest

from wakkit import exactlin as el
from wakkit.algmod import Algebra, ground, is_nilpotent_ideal, path_algebra, polynomial_quotient, validate_algebra


def brute_radical_dim(a):
    """Largest nilpotent two-sided ideal, by exhaustive search over F_2 subspaces of small algebras."""
    vecs = [np.array(v) for v in itertools.product(range(2), repeat=a.dim)]
    nilpotent = []
    for v in vecs:
        # x lies in the radical iff x*y is nilpotent for every y
        ok = True
        for y in vecs:
            m = a.lmat(a.mul(v, y))
            pw = el.identity(a.dim)
            for _ in range(a.dim):
                pw = el.matmul(pw, m, 2)
            if np.any(pw):
                ok = False
                break
        if ok:
            nilpotent.append(v)
    return el.rank(np.stack(nilpotent, axis=1), 2)


def test_ground_field_valid():
    assert validate_algebra(ground(2))


def test_a2_table(a2):
    a = a2["A"]
    assert validate_algebra(a)
    # basis e1, e2, alpha with alpha = e2 alpha e1
    assert a.mul([0, 0, 1], [1, 0, 0]).tolist() == [0, 0, 1]
    assert a.mul([0, 1, 0], [0, 0, 1]).tolist() == [0, 0, 1]
    assert a.mul([1, 0, 0], [0, 0, 1]).tolist() == [0, 0, 0]


def test_bad_unit_reported():
    a = Algebra(2, [[[0]]], [1])
    v = validate_algebra(a)
    assert not v and any("unit" in f for f in v.failures)


def test_nonassociative_reported():
    t = np.zeros((2, 2, 2), dtype=np.int64)
    t[0, 0, 0] = t[0, 1, 1] = t[1, 0, 1] = 1
    t[1, 1, 0] = 1
    t[1, 1, 1] = 1
    a = Algebra(2, t, [1, 0])
    assert validate_algebra(a)  # F_4
    t2 = t.copy()
    t2[1, 1] = [0, 0]
    t2[0, 1] = [1, 1]
    v = validate_algebra(Algebra(2, t2, [1, 0]))
    assert not v


def test_opposite():
    c = polynomial_quotient(3, 3)
    assert np.array_equal(c.opposite().table, c.table)
    a = path_algebra(2, [1, 2], [(1, 2)])
    assert a.opposite().opposite() is a
    b = path_algebra(2, [1, 2], [(2, 1)])
    assert np.array_equal(a.opposite().table, b.table)


@pytest.mark.parametrize("alg", [
    path_algebra(2, [1, 2], [(1, 2)]),
    path_algebra(2, [1, 2, 3], [(1, 2), (2, 3)]),
    polynomial_quotient(2, 3),
    path_algebra(2, [1, 2], [(1, 2), (1, 2)]),
])
def test_radical_matches_brute_force(alg):
    assert alg.radical.shape[1] == brute_radical_dim(alg)
    assert is_nilpotent_ideal(alg, alg.radical)


def test_radical_in_odd_characteristic():
    a = path_algebra(3, [1, 2, 3], [(1, 2), (1, 3)])
    assert a.radical.shape[1] == 2
    assert polynomial_quotient(5, 4).radical.shape[1] == 3


def test_idempotents_are_complete_and_orthogonal():
    a = path_algebra(3, [1, 2, 3], [(1, 2), (2, 3)])
    idems = a.primitive_idempotents
    assert len(idems) == 3
    assert np.array_equal(sum(idems) % 3, a.unit)
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            assert np.array_equal(a.mul(e, f), e if i == j else np.zeros(a.dim, dtype=np.int64))


def test_matrix_algebra_has_no_split_idempotents():
    t = np.zeros((4, 4, 4), dtype=np.int64)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                t[2 * i + j, 2 * j + k, 2 * i + k] = 1
    m2 = Algebra(2, t, [1, 0, 0, 1])
    assert validate_algebra(m2)
    assert m2.radical.shape[1] == 0
    assert m2.primitive_idempotents is None
