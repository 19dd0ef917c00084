import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wakkit import exactlin as el
from wakkit.algmod import Module, ModuleHom, ground, path_algebra, polynomial_quotient, regular_module
from wakkit.algmod.homology import (ShortExactSeq, indecomposable_projective, is_injective, is_projective,
                                    simple_module, split_sequence, standard_indecomposables)
from wakkit.trivext import (PairModule, SuspensionRegistry, inflate, is_stable_iso, module_to_pair,
                            square_zero_witness, stable_hom, stably_equal, stably_zero, symmetric_check,
                            triangle_from_ses, trivial_extension, validate_pair, validate_trivext)


@pytest.fixture(scope="module")
def tf2():
    return trivial_extension(ground(2))


@pytest.fixture(scope="module")
def ta2():
    return trivial_extension(path_algebra(2, [1, 2], [(1, 2)], name="kA2"))


def test_field_gives_dual_numbers(tf2):
    tot = tf2.total
    assert tot.dim == 2
    assert validate_trivext(tf2)
    # the DA basis vector squares to zero
    assert not np.any(tot.table[1, 1])
    assert symmetric_check(tf2)


def test_a2_trivext_is_self_injective(ta2):
    assert ta2.total.dim == 6
    assert validate_trivext(ta2) and symmetric_check(ta2)
    for i in range(2):
        p = indecomposable_projective(ta2.total, i)
        assert is_projective(p) and is_injective(p)
    mods = standard_indecomposables(ta2.total)
    assert len(mods) == 6
    assert all(is_projective(m) == is_injective(m) for m in mods)


def test_dimension_doubles():
    for a in (ground(3), polynomial_quotient(2, 3), path_algebra(2, [1, 2, 3], [(1, 2), (2, 3)])):
        assert trivial_extension(a).total.dim == 2 * a.dim


def test_inflated_pair_has_zero_star_action(ta2):
    x = simple_module(ta2.base, 1)
    m = inflate(ta2, x).module
    assert m.dim == x.dim
    assert not np.any(m.action[ta2.n:])


def test_regular_module_round_trip(ta2):
    reg = regular_module(ta2.total)
    pair = module_to_pair(ta2, reg)
    assert validate_pair(pair)
    assert pair.x.dim == 6
    back = PairModule(ta2, pair.x, pair.phi).module
    assert np.array_equal(back.action, reg.action)


def test_bad_phi_is_rejected():
    t = trivial_extension(ground(3))
    x2 = Module(ground(3), np.stack([np.eye(2, dtype=np.int64)]))
    bad = np.array([[1, 1], [2, 1]])
    with pytest.raises(ValueError):
        PairModule(t, x2, bad)
    w = square_zero_witness(PairModule(t, x2, bad, check=False))
    assert np.any(w)
    assert validate_pair(PairModule(t, x2, np.array([[1, 1], [2, 2]])))


def test_stable_hom_examples(tf2):
    s = simple_module(tf2.total, 0)
    r = regular_module(tf2.total)
    sh = stable_hom(s, s)
    assert (sh.hom_dim, sh.dim) == (1, 1)
    assert stable_hom(s, r).dim == 0
    assert stable_hom(r, r).dim == 0


def test_stable_hom_bounded_by_hom(ta2):
    mods = standard_indecomposables(ta2.total)
    for x in mods:
        for y in mods:
            sh = stable_hom(x, y)
            assert 0 <= sh.dim <= sh.hom_dim


def test_suspension_examples(tf2, ta2):
    reg = SuspensionRegistry()
    s = simple_module(tf2.total, 0)
    d = reg(s)
    assert d.check() and d.suspension.dim == 1
    assert reg(s) is d  # fixed once per handle
    p = indecomposable_projective(ta2.total, 0)
    assert reg(p).suspension.dim == 0
    for m in standard_indecomposables(ta2.total):
        dm = reg(m)
        assert dm.suspension.dim == dm.injective.dim - m.dim


def test_triangle_of_split_sequence_is_zero(ta2):
    reg = SuspensionRegistry()
    mods = standard_indecomposables(ta2.total)
    tri = triangle_from_ses(split_sequence(mods[0], mods[2]), reg)
    assert tri.check() and stably_zero(tri.omega)


def test_defining_sequence_gives_identity(ta2):
    reg = SuspensionRegistry()
    x = simple_module(ta2.total, 1)
    d = reg(x)
    tri = triangle_from_ses(ShortExactSeq(d.i, d.d), reg)
    assert stably_equal(tri.omega, d.suspension.identity())


def test_dual_numbers_triangle(tf2):
    reg = SuspensionRegistry()
    s, r = simple_module(tf2.total, 0), regular_module(tf2.total)
    xi = ShortExactSeq(ModuleHom(s, r, [[0], [1]]), ModuleHom(r, s, [[1, 0]]))
    assert xi.check()
    t1 = triangle_from_ses(xi, reg)
    t2 = triangle_from_ses(xi, reg, np.random.default_rng(3))
    assert stably_equal(t1.omega, t2.omega)
    sig = reg(s).suspension
    # Sigma k = k, so omega is an endomorphism class of k; it must be invertible
    assert stable_hom(s, sig).dim == 1 and not stably_zero(t1.omega)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_omega_independent_of_lift(seed):
    t = trivial_extension(path_algebra(2, [1, 2], [(1, 2)]))
    reg = SuspensionRegistry()
    rng = np.random.default_rng(seed)
    from wakkit.algmod.homology import extension_sequences
    mods = standard_indecomposables(t.total)
    (_, xi), = extension_sequences(mods, 1, rng)[:1]
    a, b = triangle_from_ses(xi, reg), triangle_from_ses(xi, reg, rng)
    assert a.check() and b.check() and stably_equal(a.omega, b.omega)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_stable_composition_descends(seed):
    t = trivial_extension(path_algebra(2, [1, 2], [(1, 2)]))
    rng = np.random.default_rng(seed)
    mods = standard_indecomposables(t.total)
    x, y, z = (mods[i] for i in rng.integers(0, len(mods), 3))
    hf, hg = stable_hom(x, y).space, stable_hom(y, z).space
    f = hf.element(rng.integers(0, 2, hf.dim))
    g = hg.element(rng.integers(0, 2, hg.dim))
    # a map through a projective composed with anything still goes through a projective
    if stably_zero(ModuleHom(x, y, f)):
        assert stably_zero(ModuleHom(y, z, g) @ ModuleHom(x, y, f))


def test_stable_iso_of_identity(ta2):
    m = standard_indecomposables(ta2.total)[0]
    assert is_stable_iso(m.identity(), m.identity())
