import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qapart import gf2

vectors = st.lists(st.integers(0, 255), max_size=10)


def numpy_rank(vs: list[int], n: int = 8) -> int:
    """Rank over GF(2) by dense elimination, independent of the bitset code."""
    m = np.array([[(v >> k) & 1 for k in range(n)] for v in vs], dtype=np.uint8).reshape(len(vs), n)
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i, col]), None)
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(len(m)):
            if i != r and m[i, col]:
                m[i] ^= m[r]
        r += 1
    return r


@given(vectors)
def test_rank_matches_dense_elimination(vs):
    assert gf2.rank(vs) == numpy_rank(vs)


@given(vectors)
def test_span_is_closed_and_sized(vs):
    basis = gf2.reduced_basis(vs)
    sp = set(gf2.span(basis))
    assert len(sp) == 1 << len(basis)
    assert all(a ^ b in sp for a in sp for b in sp)
    assert all(v in sp for v in vs)


@given(vectors, st.integers(0, 255))
def test_xor_basis_express(vs, target):
    xb = gf2.XorBasis()
    for v in vs:
        xb.insert(v)
    combo = xb.express(target)
    if combo is None:
        assert target not in set(gf2.span(gf2.reduced_basis(vs)))
    else:
        acc = 0
        for k, g in enumerate(xb.generators):
            if (combo >> k) & 1:
                acc ^= g
        assert acc == target


@given(st.lists(st.integers(0, 63), min_size=1, max_size=6), st.integers(0, 63))
def test_solve_satisfies_rows(rows, x):
    rhs = [gf2.parity(r & x) for r in rows]
    sol = gf2.solve(rows, rhs)
    assert sol is not None
    assert [gf2.parity(r & sol) for r in rows] == rhs


def test_solve_reports_inconsistency():
    assert gf2.solve([0b11, 0b11], [0, 1]) is None


@given(st.lists(st.integers(0, 63), max_size=5))
def test_nullspace_is_annihilated(rows):
    null = gf2.nullspace(rows, 6)
    assert len(null) == 6 - gf2.rank(rows)
    assert all(gf2.parity(r & v) == 0 for r in rows for v in null)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in range(n + 1)])
def test_enumerate_subspaces_counts(n, k):
    subs = [frozenset(gf2.span(b)) for b in gf2.enumerate_subspaces(n, k)]
    assert len(subs) == len(set(subs)) == gf2.gaussian_binomial(n, k)
    brute = {
        frozenset(gf2.span(list(c)))
        for c in itertools.combinations(range(1, 1 << n), k)
        if gf2.is_independent(list(c))
    }
    assert set(subs) == brute


def test_extend_basis_keeps_independence():
    added = gf2.extend_basis([0b001], [0b001, 0b010, 0b011, 0b100])
    assert added == [0b010, 0b100]
