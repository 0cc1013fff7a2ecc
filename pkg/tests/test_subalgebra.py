import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qapart import gf2
from qapart.pauli_core import Spinor, symplectic_vec
from qapart.subalgebra import (
    BiSubalgebra,
    CartanSubalgebra,
    SpinorSet,
    SubalgebraError,
    all_cartan_subalgebras,
    canonical_generator,
    cartan_kind,
    count_bi_subalgebras,
    count_cartan_supersets,
    count_k_supersets,
    enumerate_bi_subalgebras,
    enumerate_cartan_supersets,
    enumerate_supersets,
    intrinsic_cartan,
    intrinsic_generator,
    label_of_maximal,
    maximal_bi_subalgebras,
    maximal_by_label,
    sqcap,
)


def brute_lagrangians(p: int) -> set[frozenset[int]]:
    """All maximal isotropic subspaces, found by trying every basis."""
    words = range(1, 1 << (2 * p))
    out = set()
    for basis in itertools.combinations(words, p):
        if gf2.is_independent(list(basis)) and all(
            not symplectic_vec(a, b, p) for a, b in itertools.combinations(basis, 2)
        ):
            out.add(frozenset(gf2.span(list(basis))))
    return out


@pytest.mark.parametrize("p,count", [(1, 3), (2, 15)])
def test_cartan_enumeration_matches_brute_force(p, count):
    found = {c.vectors for c in all_cartan_subalgebras(p)}
    assert found == brute_lagrangians(p)
    assert len(found) == count


def test_cartan_requires_commuting_closed_set():
    with pytest.raises(SubalgebraError):
        CartanSubalgebra.from_set(SpinorSet.parse("S^00_00;S^10_00;S^00_10;S^10_10"))
    with pytest.raises(SubalgebraError):
        CartanSubalgebra.from_set(SpinorSet.parse("S^00_00;S^10_00;S^01_00"))


def test_intrinsic_and_canonical_generators():
    c = intrinsic_cartan(3)
    assert cartan_kind(c) == 0
    g = intrinsic_generator(3, 1)
    assert g.rank == 1 and len(g) == 4 and g.members.issubset(c)
    assert canonical_generator(3, 3).vectors == frozenset({0})


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_bi_subalgebra_counts(p):
    c = intrinsic_cartan(p)
    for r in range(p + 1):
        gens = enumerate_bi_subalgebras(c, r)
        assert len(gens) == count_bi_subalgebras(p, r)
        assert len({g.vectors for g in gens}) == len(gens)
        assert all(g.rank == r for g in gens)


@pytest.mark.parametrize("p,r", [(p, r) for p in range(1, 5) for r in range(p + 1)])
def test_superset_counts(p, r):
    gen = canonical_generator(p, r)
    for k in range(r + 1):
        assert len(enumerate_supersets(gen, k)) == count_k_supersets(r, k)
    if p <= 3:
        cs = enumerate_cartan_supersets(gen)
        assert len(cs) == count_cartan_supersets(gen) == count_cartan_supersets(r)
        assert all(gen.members.issubset(c) for c in cs)


def test_sqcap_is_the_label_group():
    c = intrinsic_cartan(3)
    groups = maximal_bi_subalgebras(c)
    assert len(groups) == 8
    for a, b in itertools.product(range(8), repeat=2):
        got = sqcap(c, maximal_by_label(c, a), maximal_by_label(c, b))
        assert label_of_maximal(c, got) == a ^ b


@given(st.integers(0, 7))
def test_maximal_by_label_halves_cartan(beta):
    c = intrinsic_cartan(3)
    m = maximal_by_label(c, beta)
    assert len(m) == (8 if beta == 0 else 4)
    assert m.is_closed()


def test_bi_subalgebra_must_sit_in_parent():
    c = intrinsic_cartan(2)
    with pytest.raises(SubalgebraError):
        BiSubalgebra(c, SpinorSet.of([Spinor.parse("S^00_00"), Spinor.parse("S^00_01")]))
