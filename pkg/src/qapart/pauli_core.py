"""Spinor generators of su(2^p) as pairs of bit strings.

A spinor ``S^zeta_alpha`` is stored as two ints.  Digit ``k`` of a printed
string (``k = 1`` leftmost) lives at bit position ``p - k``, so
``format(value, "0{p}b")`` reproduces the printed form exactly.

Per qubit the digit pair ``(zeta_k, alpha_k)`` selects ``Z^zeta_k X^alpha_k``,
so ``S^zeta_alpha = Z^zeta X^alpha`` and the hermitian generator is
``(-i)^{|zeta & alpha|} S^zeta_alpha``: the tensor product of I, Z, X, Y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

MAX_WIDTH = 16
MAX_MATRIX_WIDTH = 6

_SPINOR_RE = re.compile(r"^S\^([01]*)_([01]*)$")


class WidthError(ValueError):
    """Raised when operands have different widths or a width is out of range."""


def _check_width(width: int, limit: int = MAX_WIDTH) -> None:
    if not 0 <= width <= limit:
        raise WidthError(f"width {width} outside 0..{limit}")


@dataclass(frozen=True, order=True, slots=True)
class BitWord:
    """A fixed-width binary string in printed digit order."""

    width: int
    value: int

    def __post_init__(self) -> None:
        _check_width(self.width)
        if not 0 <= self.value < (1 << self.width) or (self.width == 0 and self.value):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def parse(cls, text: str) -> BitWord:
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a binary string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    def digit(self, k: int) -> int:
        """Digit ``k`` counted from 1 at the left."""
        if not 1 <= k <= self.width:
            raise IndexError(k)
        return (self.value >> (self.width - k)) & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""


def bits(value: int, width: int) -> str:
    return format(value, f"0{width}b") if width else ""


def bit_add(a: BitWord, b: BitWord) -> BitWord:
    if a.width != b.width:
        raise WidthError(f"width mismatch {a.width} != {b.width}")
    return BitWord(a.width, a.value ^ b.value)


def dot(a: BitWord, b: BitWord) -> int:
    if a.width != b.width:
        raise WidthError(f"width mismatch {a.width} != {b.width}")
    return (a.value & b.value).bit_count() & 1


@dataclass(frozen=True, order=True, slots=True)
class Spinor:
    """The generator ``S^zeta_alpha``; ordering follows the word ``zeta|alpha``."""

    width: int
    zeta: int
    alpha: int

    def __post_init__(self) -> None:
        _check_width(self.width)
        top = 1 << self.width
        if not (0 <= self.zeta < top and 0 <= self.alpha < top):
            raise ValueError("spinor strings do not fit the width")

    @classmethod
    def parse(cls, text: str) -> Spinor:
        m = _SPINOR_RE.match(text.strip())
        if not m or len(m.group(1)) != len(m.group(2)):
            raise ValueError(f"cannot parse spinor {text!r}")
        z, a = m.groups()
        return cls(len(z), int(z, 2) if z else 0, int(a, 2) if a else 0)

    @classmethod
    def identity(cls, width: int) -> Spinor:
        return cls(width, 0, 0)

    @classmethod
    def from_vector(cls, width: int, v: int) -> Spinor:
        return cls(width, v >> width, v & ((1 << width) - 1))

    @property
    def vector(self) -> int:
        """The symplectic word ``zeta << p | alpha``."""
        return (self.zeta << self.width) | self.alpha

    @property
    def zeta_word(self) -> BitWord:
        return BitWord(self.width, self.zeta)

    @property
    def alpha_word(self) -> BitWord:
        return BitWord(self.width, self.alpha)

    @property
    def is_identity(self) -> bool:
        return self.zeta == 0 and self.alpha == 0

    @property
    def y_count(self) -> int:
        """Number of qubits carrying a Y factor, ``|zeta & alpha|``."""
        return (self.zeta & self.alpha).bit_count()

    @property
    def parity(self) -> int:
        """``zeta . alpha`` modulo 2."""
        return self.y_count & 1

    def support(self) -> int:
        """Bitmask of qubits acted on non-trivially."""
        return self.zeta | self.alpha

    def __str__(self) -> str:
        return f"S^{bits(self.zeta, self.width)}_{bits(self.alpha, self.width)}"

    def __repr__(self) -> str:
        return f"Spinor({self})"


@dataclass(frozen=True, order=True, slots=True)
class SignedSpinor:
    spinor: Spinor
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __neg__(self) -> SignedSpinor:
        return SignedSpinor(self.spinor, -self.sign)

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.spinor}"


def _same_width(s1: Spinor, s2: Spinor) -> None:
    if s1.width != s2.width:
        raise WidthError(f"width mismatch {s1.width} != {s2.width}")


def bi_add(s1: Spinor, s2: Spinor) -> Spinor:
    _same_width(s1, s2)
    return Spinor(s1.width, s1.zeta ^ s2.zeta, s1.alpha ^ s2.alpha)


def symplectic(s1: Spinor, s2: Spinor) -> int:
    """Symplectic parity ``zeta1.alpha2 + zeta2.alpha1`` modulo 2."""
    _same_width(s1, s2)
    return ((s1.zeta & s2.alpha).bit_count() + (s2.zeta & s1.alpha).bit_count()) & 1


def symplectic_vec(u: int, v: int, width: int) -> int:
    """Symplectic parity on raw ``zeta << p | alpha`` words."""
    mask = (1 << width) - 1
    return (((u >> width) & v & mask).bit_count() + ((v >> width) & u & mask).bit_count()) & 1


def commutes(s1: Spinor, s2: Spinor) -> bool:
    return symplectic(s1, s2) == 0


def product_phase(s1: Spinor, s2: Spinor) -> tuple[int, Spinor]:
    """Return ``(k, s3)`` with ``H1 H2 = i^k H3`` for hermitian generators ``H``."""
    _same_width(s1, s2)
    s3 = bi_add(s1, s2)
    k = s3.y_count - s1.y_count - s2.y_count + 2 * (s1.alpha & s2.zeta).bit_count()
    return k % 4, s3


def all_spinors(width: int, include_identity: bool = True) -> list[Spinor]:
    start = 0 if include_identity else 1
    return [Spinor.from_vector(width, v) for v in range(start, 1 << (2 * width))]


_PAULI = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[1, 0], [0, -1]], dtype=complex),
    (0, 1): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}


def realize_matrix(s: Spinor) -> np.ndarray:
    """Hermitian matrix of ``(-i)^{zeta.alpha} S^zeta_alpha``; digit 1 is the leading factor."""
    _check_width(s.width, MAX_MATRIX_WIDTH)
    factors = []
    for k in range(1, s.width + 1):
        shift = s.width - k
        factors.append(_PAULI[((s.zeta >> shift) & 1, (s.alpha >> shift) & 1)])
    if not factors:
        return np.eye(1, dtype=complex)
    return reduce(np.kron, factors)
