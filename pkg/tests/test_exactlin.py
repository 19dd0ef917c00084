import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wakkit import exactlin as el


def mats(p, max_side=5):
    return st.tuples(st.integers(0, max_side), st.integers(0, max_side)).flatmap(
        lambda s: st.lists(st.integers(0, p - 1), min_size=s[0] * s[1], max_size=s[0] * s[1]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(s)))


def test_field_rejects_composites():
    assert el.Field(3).inv(2) == 2
    with pytest.raises(ValueError):
        el.Field(4)
    with pytest.raises(ValueError):
        el.Field(1)


def test_rref_examples():
    red, piv = el.rref(np.array([[1, 1], [1, 1]]), 2)
    assert red.tolist() == [[1, 1], [0, 0]] and piv == [0]
    red, piv = el.rref(np.zeros((0, 0), dtype=np.int64), 2)
    assert red.shape == (0, 0) and piv == []
    red, piv = el.rref(np.array([[2, 1], [1, 2]]), 3)
    assert red.tolist() == [[1, 2], [0, 0]] and piv == [0]


def test_solve_examples():
    b = np.array([[1, 0], [1, 1]])
    assert np.array_equal(el.solve(el.identity(2), b, 2), b)
    x = el.solve(np.array([[1, 1]]), np.array([[1]]), 2)
    assert (x.sum() % 2) == 1
    assert el.solve(el.zeros(2, 2), np.array([[1], [0]]), 2) is None
    with pytest.raises(ValueError):
        el.solve(el.identity(2), el.zeros(3, 1), 2)


def test_kernel_examples():
    assert el.kernel_basis(el.identity(3), 2).shape == (3, 0)
    assert np.array_equal(el.kernel_basis(el.zeros(2, 2), 2), el.identity(2))
    assert el.kernel_basis(np.array([[1, 1]]), 2).T.tolist() == [[1, 1]]


def test_quotient_examples():
    proj, sect = el.quotient(3, el.zeros(3, 0), 5)
    assert np.array_equal(proj, el.identity(3))
    proj, sect = el.quotient(2, np.array([[1], [0]]), 2)
    assert proj.shape == (1, 2) and proj[0, 0] == 0
    proj, _ = el.quotient(2, el.identity(2), 2)
    assert proj.shape == (0, 2)
    with pytest.raises(ValueError):
        el.quotient(2, np.array([[1, 1], [0, 0]]), 2)


def test_large_prime_does_not_overflow():
    p = 2**31 - 1
    a = np.full((3, 3), p - 1, dtype=np.int64)
    expected = (np.array(a, dtype=object) @ np.array(a, dtype=object)) % p
    assert np.array_equal(el.matmul(a, a, p), expected.astype(np.int64))


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_kernel_rank_nullity(p, data):
    a = data.draw(mats(p))
    k = el.kernel_basis(a, p)
    assert el.is_zero(el.matmul(a, k, p))
    assert el.rank(a, p) + k.shape[1] == a.shape[1]
    assert el.rank(k, p) == k.shape[1]


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_solve_is_exact(p, data):
    a = data.draw(mats(p))
    x0 = data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1]))
    b = el.matmul(a, np.array(x0, dtype=np.int64).reshape(-1, 1), p)
    x = el.solve(a, b, p)
    assert x is not None and np.array_equal(el.matmul(a, x, p), b)


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_quotient_kills_sub(p, data):
    a = data.draw(mats(p))
    sub = el.image_basis(a, p)
    proj, sect = el.quotient(a.shape[0], sub, p)
    assert el.is_zero(el.matmul(proj, sub, p))
    assert el.rank(proj, p) == a.shape[0] - sub.shape[1]
    assert np.array_equal(el.matmul(proj, sect, p), el.identity(proj.shape[0]))


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_coordinates_roundtrip(data):
    p = 3
    a = data.draw(mats(p))
    basis = el.image_basis(a, p)
    c = el.Coordinates(basis, p)
    v = el.matmul(a, np.ones((a.shape[1], 1), dtype=np.int64), p)
    assert np.array_equal(el.matmul(basis, c(v, check=True), p), v)
