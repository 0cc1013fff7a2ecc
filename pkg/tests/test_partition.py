import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qapart.pauli_core import Spinor, symplectic_vec
from qapart.partition import (
    SubspaceLabel,
    anti_tri_add,
    build_partition,
    check_inclusion_convention,
    partition_from_json,
    render_table,
    structural_cell,
    tri_add,
    verify_closure,
)
from qapart.subalgebra import all_cartan_subalgebras, enumerate_bi_subalgebras, intrinsic_generator


def generators(p):
    return [g for c in all_cartan_subalgebras(p) for r in range(p + 1) for g in enumerate_bi_subalgebras(c, r)]


@pytest.mark.parametrize("p", [1, 2])
def test_closure_for_every_generator(p):
    for gen in generators(p):
        rep = verify_closure(build_partition(gen))
        assert rep.ok, rep.summary()


@pytest.mark.parametrize("p,r", [(3, 0), (3, 1), (3, 2), (3, 3)])
def test_shape_of_intrinsic_partition(p, r):
    part = build_partition(intrinsic_generator(p, r))
    assert len(part.table) == 1 << (p + r + 1)
    cells = [c for c in part.table.values() if c]
    assert sum(len(c) for c in cells) == 1 << (2 * p)
    assert part.table[SubspaceLabel.identity(p, r)] == part.generator.vectors
    assert part.table[SubspaceLabel(p, r, 0, 0, 0)] == frozenset()


def test_cells_match_structural_definition():
    # Each non-null cell is v + (B^[r] & v^perp), a label-free description.
    for gen in generators(2):
        part = build_partition(gen)
        for lab, cell in part.table.items():
            for v in cell:
                if lab.beta:
                    assert structural_cell(gen, v) == cell


@given(st.integers(0, 15), st.integers(0, 15))
def test_tri_addition_labels_commutators(x, y):
    part = build_partition(intrinsic_generator(2, 1))
    if symplectic_vec(x, y, 2):
        assert part.label_of(x ^ y) == tri_add(part.label_of(x), part.label_of(y))
    elif x and y and x != y:
        assert part.label_of(x ^ y) == anti_tri_add(part.label_of(x), part.label_of(y))


def test_verifier_catches_swapped_members():
    part = build_partition(intrinsic_generator(2, 1))
    labs = part.nonnull()
    a, b = labs[2], labs[5]
    table = dict(part.table)
    va, vb = min(table[a]), min(table[b])
    table[a] = (table[a] - {va}) | {vb}
    table[b] = (table[b] - {vb}) | {va}
    assert not verify_closure(part.with_table(table)).ok


def test_inclusion_convention_holds():
    assert check_inclusion_convention(build_partition(intrinsic_generator(3, 2)), samples=200) == []


def test_json_roundtrip():
    gen = intrinsic_generator(3, 2)
    part = build_partition(gen)
    again = partition_from_json(json.loads(json.dumps(part.to_json())), gen)
    assert again.table == part.table


def test_label_rejects_out_of_range():
    with pytest.raises(ValueError):
        SubspaceLabel(2, 1, 4, 0, 0)


def test_render_names():
    text = render_table(build_partition(intrinsic_generator(2, 1)))
    assert "W(B_01,B^[1];0): S^00_01" in text
