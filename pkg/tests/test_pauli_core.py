import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qapart.pauli_core import (
    SignedSpinor,
    Spinor,
    all_spinors,
    bi_add,
    commutes,
    product_phase,
    realize_matrix,
    symplectic,
    symplectic_vec,
)


@st.composite
def spinor_pairs(draw, max_width=3):
    p = draw(st.integers(1, max_width))
    words = st.integers(0, (1 << (2 * p)) - 1)
    return Spinor.from_vector(p, draw(words)), Spinor.from_vector(p, draw(words))


def test_parse_roundtrip_and_digit_order():
    s = Spinor.parse("S^100_011")
    assert (s.width, s.zeta, s.alpha) == (3, 0b100, 0b011)
    assert str(s) == "S^100_011"
    # Digit 1 is the leading tensor factor: S^10_00 = Z (x) I.
    z = np.diag([1, -1]).astype(complex)
    assert np.allclose(realize_matrix(Spinor.parse("S^10_00")), np.kron(z, np.eye(2)))


@pytest.mark.parametrize("text", ["S^1_", "S^10_1", "X^1_1", ""])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        Spinor.parse(text)


@given(spinor_pairs())
def test_commutation_matches_matrices(pair):
    a, b = pair
    ma, mb = realize_matrix(a), realize_matrix(b)
    assert commutes(a, b) == np.allclose(ma @ mb, mb @ ma)
    assert symplectic(a, b) == symplectic_vec(a.vector, b.vector, a.width)


@given(spinor_pairs())
def test_product_phase_matches_matrices(pair):
    a, b = pair
    k, c = product_phase(a, b)
    assert c == bi_add(a, b)
    assert np.allclose(realize_matrix(a) @ realize_matrix(b), (1j**k) * realize_matrix(c))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_realizations_are_hermitian_orthogonal(p):
    mats = [realize_matrix(s) for s in all_spinors(p)]
    for m in mats:
        assert np.allclose(m, m.conj().T)
    gram = np.array([[np.trace(a @ b) for b in mats] for a in mats])
    assert np.allclose(gram, (1 << p) * np.eye(len(mats)))


def test_signed_spinor_negation():
    s = SignedSpinor(Spinor.parse("S^01_11"))
    assert (-s).sign == -1 and str(-s) == "-S^01_11"
    with pytest.raises(ValueError):
        SignedSpinor(s.spinor, 0)
