"""Resolution-free cross-checks for the homological engine.

Extensions ``0 -> N -> E -> M -> 0`` with ``E = N (+) M`` as a vector space are
block upper-triangular actions ``[[rho_N(a), d(a)], [0, rho_M(a)]]``. Such a block
is a module exactly when ``d`` is a derivation ``A -> Hom_k(M, N)``, and two of
them are equivalent extensions exactly when ``d - d'`` is inner. So
``|Ext^1(M, N)| = |Der| / |Inn|``.
"""

from __future__ import annotations

import numpy as np

from .. import exactlin as el
from .modules import Module


def _derivation_constraints(m: Module, n: Module) -> np.ndarray:
    """Linear conditions on ``d = (d(e_0), ..., d(e_{k-1}))`` (row-major blocks)."""
    a, p = m.algebra, m.p
    dm, dn, k = m.dim, n.dim, a.dim
    blk = dm * dn
    rows = []
    for i in range(k):
        for j in range(k):
            # d(e_i e_j) - rho_N(e_i) d(e_j) - d(e_i) rho_M(e_j) = 0
            c = el.zeros(blk, blk * k)
            for t in range(k):
                if a.table[i, j, t]:
                    c[:, t * blk:(t + 1) * blk] += a.table[i, j, t] * el.identity(blk)
            c[:, j * blk:(j + 1) * blk] -= el.kron(n.action[i], el.identity(dm), p)
            c[:, i * blk:(i + 1) * blk] -= el.kron(el.identity(dn), m.action[j].T, p)
            rows.append(c % p)
    return np.vstack(rows)


def _inner(m: Module, n: Module) -> np.ndarray:
    """Columns: inner derivations ``a -> rho_N(a) u - u rho_M(a)`` for basis ``u``."""
    a, p = m.algebra, m.p
    dm, dn = m.dim, n.dim
    cols = []
    for idx in range(dm * dn):
        u = np.zeros(dm * dn, dtype=np.int64)
        u[idx] = 1
        u = u.reshape(dn, dm)
        cols.append(np.concatenate([(el.matmul(n.action[i], u, p) - el.matmul(u, m.action[i], p)).reshape(-1) % p
                                    for i in range(a.dim)]))
    return np.stack(cols, axis=1)


def ext1_by_derivations(m: Module, n: Module) -> int:
    """``dim Ext^1(M, N)`` as ``dim Der - dim Inn`` (linear algebra, no resolutions)."""
    if m.dim == 0 or n.dim == 0:
        return 0
    p = m.p
    der = el.kernel_basis(_derivation_constraints(m, n), p).shape[1]
    return der - el.rank(_inner(m, n), p)


def _all_vectors(length: int, p: int) -> np.ndarray:
    """All of ``F_p^length`` as rows, most significant digit first."""
    idx = np.arange(p ** length, dtype=np.int64)
    digits = p ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // digits[None, :]) % p


def _idempotent_basis(a) -> list[int]:
    """Indices of basis vectors that are orthogonal idempotents summing to 1, if the unit is such a sum."""
    idx = [i for i in range(a.dim) if a.unit[i]]
    if any(a.unit[i] != 1 for i in idx):
        return []
    for i in idx:
        for j in idx:
            want = np.zeros(a.dim, dtype=np.int64)
            if i == j:
                want[i] = 1
            if not np.array_equal(a.table[i, j] % a.p, want):
                return []
    return idx


def ext1_by_enumeration(m: Module, n: Module, limit: int = 1 << 22, normalize: bool = True) -> int:
    """Count extension classes literally: enumerate block-triangular actions.

    Every candidate ``d`` is tested against the module axioms on all basis pairs;
    the number of valid ones divided by the size of one equivalence class gives
    ``|Ext^1|``, whose base-``p`` logarithm is returned. When the basis contains
    orthogonal idempotents ``e_i`` summing to 1, every extension is equivalent to
    one with ``d(e_i) = 0`` (the ``e_i`` span a separable subalgebra), so only
    those candidates are enumerated and the class size is that of the inner
    derivations vanishing on the ``e_i``.
    """
    if m.dim == 0 or n.dim == 0:
        return 0
    a, p = m.algebra, m.p
    k, dm, dn = a.dim, m.dim, n.dim
    blk = dm * dn
    fixed = _idempotent_basis(a) if normalize else []
    free = [i for i in range(k) if i not in fixed]
    cols = np.concatenate([np.arange(i * blk, (i + 1) * blk) for i in free]) if free else np.zeros(0, int)
    unknowns = len(cols)
    if p ** unknowns > limit:
        raise ValueError(f"{p}^{unknowns} candidates exceed the enumeration limit")
    cons = _derivation_constraints(m, n)[:, cols].T % p
    valid = _count_solutions(cons, unknowns, p)
    inn = _inner(m, n)
    if fixed:
        # u with rho_N(e_i) u = u rho_M(e_i): their inner derivations vanish on every e_i
        rows = np.concatenate([np.arange(i * blk, (i + 1) * blk) for i in fixed])
        us = el.kernel_basis(inn[rows], p)
        inn = el.matmul(inn, us, p) if us.shape[1] else el.zeros(inn.shape[0], 0)
    n_inner = p ** el.rank(inn, p) if inn.shape[1] else 1
    classes = valid // n_inner
    out = 0
    while classes > 1:
        classes //= p
        out += 1
    return out


def _count_solutions(cons: np.ndarray, unknowns: int, p: int) -> int:
    """Number of ``x`` in ``F_p^unknowns`` with ``x cons = 0``, by checking every ``x``."""
    if unknowns == 0:
        return 1
    # the low digits' contributions are tabulated once
    lo = min(unknowns, 14)
    hi = unknowns - lo
    lo_table = (_all_vectors(lo, p) @ cons[hi:]) % p
    valid = 0
    if p == 2:
        # over F_2 the sums are XORs of packed bit rows
        packed = np.packbits(lo_table.astype(np.uint8), axis=1)
        for h in _all_vectors(hi, p):
            row = np.packbits(((h @ cons[:hi]) % 2).astype(np.uint8))
            valid += int((~np.any(packed ^ row, axis=1)).sum())
    else:
        for h in _all_vectors(hi, p):
            row = (h @ cons[:hi]) % p
            valid += int((~np.any((lo_table + row) % p, axis=1)).sum())
    return valid
