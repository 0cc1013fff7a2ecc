import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qapart import gf2
from qapart.decomposition import enumerate_decompositions, intrinsic_decomposition
from qapart.matrix_oracle import random_special_unitary
from qapart.partition import build_partition
from qapart.pauli_core import SignedSpinor, Spinor, all_spinors, commutes, product_phase
from qapart.subalgebra import (
    all_cartan_subalgebras,
    canonical_generator,
    cartan_kind,
    enumerate_bi_subalgebras,
    intrinsic_cartan,
    intrinsic_generator,
)
from qapart.transform import (
    BasicTransformation,
    SRotation,
    TransformError,
    TransformSequence,
    apply_srotation,
    build_QOmega,
    build_Qr,
    check_biaddition_preservation,
    check_qap_preservation,
    factorize_srotation,
    kind_transition,
    matrix_image,
    random_symplectic_image,
    reconstructs,
    rho,
    spinor_mapping,
    synthesize,
)

QUARTERS = [-2, -1, 1, 2]


@pytest.mark.parametrize("p", [1, 2])
def test_symbolic_action_matches_matrices(p):
    for axis in all_spinors(p, include_identity=False):
        for q in QUARTERS:
            rot = SRotation(axis, q)
            for s in all_spinors(p):
                got = apply_srotation(rot, SignedSpinor(s))
                assert matrix_image(rot, s) == (got.spinor, got.sign)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_rho_formula_agrees_with_product_route(p):
    for axis in all_spinors(p, include_identity=False):
        for target in all_spinors(p, include_identity=False):
            if commutes(axis, target):
                continue
            img = apply_srotation(SRotation(axis, 1), SignedSpinor(target))
            assert img.spinor.vector == axis.vector ^ target.vector
            assert img.sign == rho(axis, target)


def test_basic_transformation_example():
    h = BasicTransformation(Spinor.parse("S^100_100"))
    assert apply_srotation(h, SignedSpinor(Spinor.parse("S^000_100"))).spinor == Spinor.parse("S^100_000")


@given(st.integers(1, 63), st.floats(-3.0, 3.0, allow_nan=False))
def test_factorization_reproduces_rotation(word, theta):
    axis = Spinor.from_vector(3, word)
    f = factorize_srotation(axis, theta)
    assert f.core.support().bit_count() == 1
    assert np.allclose(f.matrix(), SRotation.free(axis, theta).matrix(), atol=1e-10)


def test_sequence_json_roundtrip_and_inverse():
    seq = TransformSequence(2, (BasicTransformation(Spinor.parse("S^11_01")), SRotation(Spinor.parse("S^01_10"), -2)))
    again = TransformSequence.from_json(json.loads(json.dumps(seq.to_json())))
    assert again == seq
    assert np.allclose(seq.matrix() @ seq.inverse().matrix(), np.eye(4))


@pytest.mark.parametrize("p", [1, 2])
def test_Qr_reaches_canonical_and_preserves_partitions(p):
    for c in all_cartan_subalgebras(p):
        for r in range(p + 1):
            for gen in enumerate_bi_subalgebras(c, r):
                seq = build_Qr(gen)
                assert seq.image_set(gen.vectors) == canonical_generator(p, r).vectors
                assert seq.image_set(gen.parent.vectors) == intrinsic_cartan(p).vectors
                assert check_qap_preservation(seq, gen) == []


def test_Qr_intrinsic_target():
    gen = enumerate_bi_subalgebras(all_cartan_subalgebras(3)[40], 2)[3]
    seq = build_Qr(gen, "intrinsic")
    assert seq.image_set(gen.vectors) == intrinsic_generator(3, 2).vectors


def random_independent(p, k, rng):
    while True:
        words = [int(w) for w in rng.integers(1, 1 << (2 * p), size=k)]
        if gf2.is_independent(words):
            return [Spinor.from_vector(p, w) for w in words]


@pytest.mark.parametrize("p", [1, 2, 3])
def test_spinor_mapping_random_sets(p):
    rng = np.random.default_rng(p)
    for _ in range(25):
        src = random_independent(p, int(rng.integers(1, 2 * p + 1)), rng)
        dst = random_symplectic_image(src, rng)
        res = spinor_mapping(src, dst)
        for a, b in zip(src, dst):
            assert res.sequence.apply(a) == SignedSpinor(b)
            if p <= 2:
                assert matrix_image(res.sequence, a) == (b, 1)


def test_spinor_mapping_rejects_mismatched_tables():
    with pytest.raises(TransformError):
        spinor_mapping([Spinor.parse("S^1_0"), Spinor.parse("S^0_1")], [Spinor.parse("S^1_0"), Spinor.parse("S^1_0")])


def test_biaddition_preserved_by_random_sequence():
    rng = np.random.default_rng(11)
    steps = tuple(SRotation(Spinor.from_vector(3, int(w)), int(rng.choice(QUARTERS))) for w in rng.integers(1, 64, 6))
    assert check_biaddition_preservation(TransformSequence(3, steps)).ok


def test_biaddition_sign_law_by_hand():
    seq = TransformSequence(2, (BasicTransformation(Spinor.parse("S^10_11")),))
    s, t = Spinor.parse("S^01_00"), Spinor.parse("S^00_10")
    k, u = product_phase(s, t)
    qs, qt, qu = seq.image(s), seq.image(t), seq.image(u)
    k2, w = product_phase(qs.spinor, qt.spinor)
    assert w == qu.spinor
    assert qu.sign == qs.sign * qt.sign * (1j ** (k2 - k)).real


@pytest.mark.parametrize("direction,delta", [("down", -1), ("same", 0), ("up", 1)])
def test_kind_transitions(direction, delta):
    c = next(c for c in all_cartan_subalgebras(3) if cartan_kind(c) == 1)
    _, image = kind_transition(c, direction)
    assert cartan_kind(image) == 1 + delta


@pytest.mark.parametrize("p", [1, 2, 3])
def test_QOmega_maps_onto_intrinsic(p):
    for r in range(p + 1):
        for d in enumerate_decompositions(build_partition(intrinsic_generator(p, r))):
            seq = build_QOmega(d.t, p, str(d.cd_type))
            assert seq.image_set(d.t) == intrinsic_decomposition(p, d.cd_type).t


@pytest.mark.parametrize("dim,seed", [(2, 0), (2, 1), (4, 0), (4, 1), (4, 2)])
def test_synthesis_reconstructs(dim, seed):
    rng = np.random.default_rng(seed)
    u = random_special_unitary(dim, rng)
    seq = synthesize(u, rng)
    assert reconstructs(u, seq)
    assert all(st.axis.support().bit_count() <= 2 for st in seq.steps)


def test_free_angle_blocks_symbolic_map():
    seq = TransformSequence(1, (SRotation.free(Spinor.parse("S^1_0"), math.pi / 7),))
    with pytest.raises(TransformError):
        seq.image(Spinor.parse("S^0_1"))
