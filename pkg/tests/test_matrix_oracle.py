import numpy as np
import pytest

from qapart.matrix_oracle import (
    anticommutator,
    commutator,
    decompose,
    equal_up_to_phase,
    exponential_srotation,
    is_unitary,
    random_special_unitary,
    signed_image,
    trace_inner,
)
from qapart.pauli_core import Spinor, realize_matrix


def test_commutator_shapes_checked():
    with pytest.raises(ValueError):
        commutator(np.eye(2), np.eye(4))


def test_pauli_relations():
    x, z = realize_matrix(Spinor.parse("S^0_1")), realize_matrix(Spinor.parse("S^1_0"))
    assert np.allclose(anticommutator(x, z), 0)
    assert trace_inner(x, x) == pytest.approx(2)


def test_exponential_is_unitary_and_rotates():
    axis = Spinor.parse("S^1_0")
    u = exponential_srotation(axis, np.pi / 4)
    assert is_unitary(u)
    img = signed_image(u.conj().T @ realize_matrix(Spinor.parse("S^0_1")) @ u, 1)
    assert img is not None and img[0] == Spinor.parse("S^1_1")


def test_decompose_recovers_coefficients():
    rng = np.random.default_rng(3)
    coeffs = {Spinor.from_vector(2, v): rng.normal() for v in rng.choice(16, 5, replace=False)}
    m = sum(c * realize_matrix(s) for s, c in coeffs.items())
    got = decompose(m, 2)
    assert set(got) == set(coeffs)
    assert all(abs(got[s] - c) < 1e-9 for s, c in coeffs.items())


def test_random_special_unitary():
    u = random_special_unitary(4, np.random.default_rng(0))
    assert is_unitary(u)
    assert abs(np.linalg.det(u) - 1) < 1e-9
    assert equal_up_to_phase(u, 1j * u)
    assert not equal_up_to_phase(u, u @ realize_matrix(Spinor.parse("S^00_01")))
