import pytest

from qapart.partition import build_partition
from qapart.quotient import (
    Flavor,
    PairType,
    QuotientError,
    build_coquotient,
    build_quotient,
    check_center_theorems,
    coquotient_centers,
    detach,
    expected_census,
    merge,
    merge_options,
    pair_count,
    structure_census,
    verify_pair_closure,
)
from qapart.subalgebra import all_cartan_subalgebras, enumerate_bi_subalgebras, intrinsic_generator


def structures(part):
    yield build_quotient(part)
    for c in coquotient_centers(part):
        yield build_coquotient(part, c)


@pytest.mark.parametrize("p", [1, 2])
def test_census_and_pair_closure_everywhere(p):
    for c in all_cartan_subalgebras(p):
        for r in range(p + 1):
            for gen in enumerate_bi_subalgebras(c, r):
                for q in structures(build_partition(gen)):
                    assert structure_census(q) == expected_census(q.flavor, p, r)
                    assert verify_pair_closure(q) == []


@pytest.mark.parametrize("r", [1, 2, 3])
def test_pairs_cover_the_partition(r):
    part = build_partition(intrinsic_generator(3, r))
    for q in structures(part):
        labs = [q.center_pair.first, q.center_pair.second]
        for pair in q.pairs:
            labs += [pair.first, pair.second]
        assert len(labs) == len(set(labs)) == len(part.table)
        n_null = sum(1 for pair in q.pairs if not part.table[pair.first] and not part.table[pair.second])
        assert len(q.pairs) - n_null + (q.flavor is Flavor.COQUOTIENT_DEGRADE) == pair_count(q.flavor, 3, r)


def test_quotient_census_small_case():
    q = build_quotient(build_partition(intrinsic_generator(3, 1)))
    census = q.census()
    assert census[PairType.DEGRADE_I] == 3 and census[PairType.REGULAR_I] == 12


def test_centers_satisfy_center_theorems():
    part = build_partition(intrinsic_generator(3, 2))
    for q in structures(part):
        rep = check_center_theorems(q.center_set, 3, q.pair_sets())
        assert rep.ok, rep.witnesses[:3]


def test_merge_and_detach_change_rank():
    part = build_partition(intrinsic_generator(3, 2))
    degrade = [build_coquotient(part, c) for c in coquotient_centers(part)]
    degrade = [q for q in degrade if q.flavor is Flavor.COQUOTIENT_DEGRADE and merge_options(q)]
    assert degrade
    q = degrade[0]
    merged = merge(q)
    assert merged.r == 1 and merged.center_set == q.center_set
    regular = [c for c in coquotient_centers(part) if build_coquotient(part, c).flavor is Flavor.COQUOTIENT_REGULAR]
    if regular:
        detached = detach(build_coquotient(part, regular[0]))
        assert detached.r == 3
    with pytest.raises(QuotientError):
        merge_options(build_quotient(part))
