"""Dense complex matrices as an independent check on the bit-level algebra."""

from __future__ import annotations

import numpy as np

from .pauli_core import Spinor, all_spinors, realize_matrix

TOL = 1e-9


def _check(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch {a.shape} vs {b.shape}")


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _check(a, b)
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _check(a, b)
    return a @ b + b @ a


def conjugate(u: np.ndarray, a: np.ndarray) -> np.ndarray:
    """``U^dagger A U``, the convention used for s-rotation actions."""
    _check(u, a)
    return u.conj().T @ a @ u


def trace_inner(a: np.ndarray, b: np.ndarray) -> complex:
    _check(a, b)
    return complex(np.trace(a @ b))


def is_zero(a: np.ndarray, tol: float = TOL) -> bool:
    return bool(np.max(np.abs(a), initial=0.0) < tol)


def is_unitary(u: np.ndarray, tol: float = TOL) -> bool:
    return is_zero(u.conj().T @ u - np.eye(u.shape[0]), tol)


def exponential_srotation(axis: Spinor, theta: float) -> np.ndarray:
    """``cos(theta) I + i sin(theta) H`` where ``H`` is the hermitian axis; equals ``exp(i theta H)``."""
    h = realize_matrix(axis)
    return np.cos(theta) * np.eye(h.shape[0]) + 1j * np.sin(theta) * h


def basic_transformation(zeta: int, alpha: int, width: int) -> np.ndarray:
    """``(I + i H) / sqrt(2)``, the pi/4 s-rotation about ``S^zeta_alpha``."""
    return exponential_srotation(Spinor(width, zeta, alpha), np.pi / 4)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = TOL) -> bool:
    """True if ``a = c b`` for a unit complex ``c``."""
    _check(a, b)
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < tol:
        return is_zero(a, tol)
    c = a[idx] / b[idx]
    if abs(abs(c) - 1) > 1e-6:
        return False
    return is_zero(a - c * b, tol)


def spinor_coefficient(m: np.ndarray, s: Spinor) -> complex:
    """Component of ``m`` along the hermitian generator ``s``."""
    h = realize_matrix(s)
    return trace_inner(h, m) / h.shape[0]


def decompose(m: np.ndarray, width: int, tol: float = TOL) -> dict[Spinor, complex]:
    """Expand ``m`` in the Pauli basis, keeping coefficients above ``tol``."""
    out = {}
    for s in all_spinors(width):
        c = spinor_coefficient(m, s)
        if abs(c) > tol:
            out[s] = c
    return out


def signed_image(m: np.ndarray, width: int, tol: float = TOL) -> tuple[Spinor, int] | None:
    """If ``m = +/- H_s`` for a single spinor, return ``(s, sign)``."""
    terms = decompose(m, width, tol)
    if len(terms) != 1:
        return None
    (s, c), = terms.items()
    if abs(c.imag) > 1e-6 or abs(abs(c.real) - 1) > 1e-6:
        return None
    return s, 1 if c.real > 0 else -1


def random_special_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random SU(dim) via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    det = np.linalg.det(q)
    return q / det ** (1 / dim)
