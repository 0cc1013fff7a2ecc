"""Cartan subalgebras, bi-subalgebras and the counting lemmas.

Spinor sets are handled as sets of symplectic words (``zeta << p | alpha``).
A bi-subalgebra is a GF(2) subspace of a Cartan subalgebra, and a Cartan
subalgebra is a Lagrangian subspace of ``GF(2)^{2p}``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import prod

from . import gf2
from .pauli_core import Spinor, WidthError, symplectic_vec


class SubalgebraError(ValueError):
    """Raised when a set fails the closure, inclusion or consistency checks."""


def dual_functional(v: int, width: int) -> int:
    """Mask ``f`` with ``parity(s & f) == symplectic(s, v)`` for every word ``s``."""
    mask = (1 << width) - 1
    return ((v & mask) << width) | (v >> width)


def commutant(vectors: Iterable[int], width: int) -> list[int]:
    """Basis of all words commuting with every given word."""
    rows = [dual_functional(v, width) for v in vectors]
    return gf2.nullspace(rows, 2 * width)


@dataclass(frozen=True)
class SpinorSet:
    """A set of spinors of fixed width, stored as symplectic words."""

    width: int
    vectors: frozenset[int]

    @classmethod
    def of(cls, spinors: Iterable[Spinor], width: int | None = None) -> SpinorSet:
        spinors = list(spinors)
        if width is None:
            if not spinors:
                raise WidthError("width required for an empty set")
            width = spinors[0].width
        for s in spinors:
            if s.width != width:
                raise WidthError(f"width mismatch {s.width} != {width}")
        return cls(width, frozenset(s.vector for s in spinors))

    @classmethod
    def parse(cls, text: str, width: int | None = None) -> SpinorSet:
        parts = [t for t in text.replace(",", ";").split(";") if t.strip()]
        return cls.of((Spinor.parse(t) for t in parts), width)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[Spinor]:
        return iter(self.members)

    def __contains__(self, s: object) -> bool:
        if isinstance(s, Spinor):
            return s.width == self.width and s.vector in self.vectors
        return s in self.vectors

    @cached_property
    def members(self) -> tuple[Spinor, ...]:
        return tuple(Spinor.from_vector(self.width, v) for v in sorted(self.vectors))

    @cached_property
    def basis(self) -> tuple[int, ...]:
        """Reduced basis of the span of the members."""
        return tuple(gf2.reduced_basis(self.vectors))

    @property
    def basis_spinors(self) -> tuple[Spinor, ...]:
        return tuple(Spinor.from_vector(self.width, v) for v in self.basis)

    def is_closed(self) -> bool:
        return 0 in self.vectors and len(self.vectors) == 1 << len(self.basis)

    def is_abelian(self) -> bool:
        vs = sorted(self.vectors)
        return all(
            symplectic_vec(a, b, self.width) == 0 for i, a in enumerate(vs) for b in vs[i + 1 :]
        )

    def issubset(self, other: SpinorSet) -> bool:
        return self.width == other.width and self.vectors <= other.vectors

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "members": [str(s) for s in self.members],
            "basis": [str(s) for s in self.basis_spinors],
        }


def span(generators: Iterable[Spinor], width: int | None = None) -> SpinorSet:
    gens = list(generators)
    if width is None:
        if not gens:
            raise WidthError("width required for an empty generator list")
        width = gens[0].width
    for g in gens:
        if g.width != width:
            raise WidthError(f"width mismatch {g.width} != {width}")
    return SpinorSet(width, frozenset(gf2.span(gf2.reduced_basis(g.vector for g in gens))))


def span_vectors(vectors: Iterable[int], width: int) -> SpinorSet:
    return SpinorSet(width, frozenset(gf2.span(gf2.reduced_basis(vectors))))


@dataclass(frozen=True)
class CartanSubalgebra(SpinorSet):
    """2^p pairwise commuting spinors closed under bi-addition."""

    def __post_init__(self) -> None:
        if len(self.vectors) != 1 << self.width or not self.is_closed():
            raise SubalgebraError("a Cartan subalgebra needs 2^p members closed under bi-addition")
        if not self.is_abelian():
            raise SubalgebraError("Cartan subalgebra members must commute")

    @classmethod
    def from_set(cls, s: SpinorSet) -> CartanSubalgebra:
        return cls(s.width, s.vectors)

    @property
    def kind(self) -> int:
        return cartan_kind(self)

    @cached_property
    def frame(self) -> Frame:
        return Frame.for_cartan(self)


def intrinsic_cartan(p: int) -> CartanSubalgebra:
    """``C_[0] = {S^nu_0}``."""
    return CartanSubalgebra(p, frozenset(nu << p for nu in range(1 << p)))


def cartan_kind(c: SpinorSet) -> int:
    mask = (1 << c.width) - 1
    return gf2.rank(v & mask for v in c.vectors)


@dataclass(frozen=True)
class Frame:
    """A symplectic basis ``c_1..c_p, d_1..d_p`` with ``C = span(c)``.

    ``beta_k(s) = omega(s, c_k)`` labels the maximal bi-subalgebras of ``C``
    and ``q(s) = sum_k omega(s, c_k) omega(s, d_k)`` is the quadratic form
    behind the bisection parity.
    """

    width: int
    c: tuple[int, ...]
    d: tuple[int, ...]

    @classmethod
    def for_cartan(cls, cartan: SpinorSet) -> Frame:
        p = cartan.width
        c = tuple(gf2.reduced_basis(cartan.vectors))
        return cls(p, c, _dual_basis(c, p))

    def beta(self, v: int) -> int:
        """G(C) label of the block holding word ``v``, as a printed-order int."""
        out = 0
        for k, ck in enumerate(self.c):
            if symplectic_vec(v, ck, self.width):
                out |= 1 << (self.width - 1 - k)
        return out

    def dual_coords(self, v: int) -> int:
        """``(omega(v, d_1), ..., omega(v, d_p))`` in printed order."""
        out = 0
        for k, dk in enumerate(self.d):
            if symplectic_vec(v, dk, self.width):
                out |= 1 << (self.width - 1 - k)
        return out

    def q(self, v: int) -> int:
        return ((self.beta(v) & self.dual_coords(v)).bit_count()) & 1

    def cartan_coords(self, v: int) -> int:
        """Coordinates ``nu`` of a member ``v = sum nu_k c_k`` of ``C`` (printed order)."""
        return self.dual_coords(v)

    def dual_vector(self, beta: int) -> int:
        """``D_beta = sum_k beta_k d_k``."""
        out = 0
        for k, dk in enumerate(self.d):
            if (beta >> (self.width - 1 - k)) & 1:
                out ^= dk
        return out


def _dual_basis(c: Sequence[int], p: int) -> tuple[int, ...]:
    """Isotropic ``d`` with ``omega(c_j, d_k) = delta_jk``, each lexicographically least."""
    d: list[int] = []
    for k in range(p):
        rows = [dual_functional(cj, p) for cj in c] + [dual_functional(dj, p) for dj in d]
        rhs = [1 if j == k else 0 for j in range(p)] + [0] * len(d)
        x = gf2.solve(rows, rhs)
        if x is None:
            raise SubalgebraError("basis is not part of a symplectic frame")
        for n in gf2.reduced_basis(gf2.nullspace(rows, 2 * p)):
            x = min(x, x ^ n)
        d.append(x)
    return tuple(d)


@dataclass(frozen=True)
class BiSubalgebra:
    """An r-th maximal bi-subalgebra ``B^[r]`` of a Cartan subalgebra."""

    parent: CartanSubalgebra
    members: SpinorSet

    def __post_init__(self) -> None:
        if not self.members.is_closed():
            raise SubalgebraError("bi-subalgebra must be closed under bi-addition")
        if not self.members.issubset(self.parent):
            raise SubalgebraError("bi-subalgebra must lie inside its Cartan subalgebra")

    @property
    def width(self) -> int:
        return self.parent.width

    @property
    def rank(self) -> int:
        return self.width - len(self.members.basis)

    @property
    def vectors(self) -> frozenset[int]:
        return self.members.vectors

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, s: object) -> bool:
        return s in self.members

    def to_json(self) -> dict:
        out = self.members.to_json()
        out["rank"] = self.rank
        out["cartan"] = [str(s) for s in self.parent.members]
        return out


def bi_subalgebra(parent: CartanSubalgebra, generators: Iterable[Spinor]) -> BiSubalgebra:
    return BiSubalgebra(parent, span(generators, parent.width))


def intrinsic_generator(p: int, r: int) -> BiSubalgebra:
    """``B^[r]_intr``: diagonal spinors whose first r digits vanish."""
    if not 0 <= r <= p:
        raise SubalgebraError(f"rank {r} outside 0..{p}")
    c = intrinsic_cartan(p)
    return BiSubalgebra(c, SpinorSet(p, frozenset(nu << p for nu in range(1 << (p - r)))))


def canonical_generator(p: int, r: int) -> BiSubalgebra:
    """``B^[r]_can``: diagonal spinors whose last r digits vanish."""
    if not 0 <= r <= p:
        raise SubalgebraError(f"rank {r} outside 0..{p}")
    c = intrinsic_cartan(p)
    return BiSubalgebra(c, SpinorSet(p, frozenset((nu << r) << p for nu in range(1 << (p - r)))))


def is_maximal_bi_subalgebra(b: SpinorSet, c: SpinorSet) -> bool:
    """True iff the bi-addition of any two members of ``C - B`` lies in ``B``."""
    if not b.issubset(c):
        raise SubalgebraError("B is not a subset of C")
    rest = sorted(c.vectors - b.vectors)
    return all((x ^ y) in b.vectors for i, x in enumerate(rest) for y in rest[i:])


def _sub_from_coords(frame: Frame, coord_basis: Sequence[int]) -> frozenset[int]:
    """Members of ``C`` whose c-coordinates lie in the span of ``coord_basis``."""
    p = frame.width
    words = []
    for nu in coord_basis:
        w = 0
        for k, ck in enumerate(frame.c):
            if (nu >> (p - 1 - k)) & 1:
                w ^= ck
        words.append(w)
    return frozenset(gf2.span(words))


def enumerate_bi_subalgebras(c: CartanSubalgebra, r: int) -> list[BiSubalgebra]:
    """All index-2^r subgroups of ``C``, ordered by their sorted member words."""
    p = c.width
    if not 0 <= r <= p:
        raise SubalgebraError(f"rank {r} outside 0..{p}")
    out = [
        BiSubalgebra(c, SpinorSet(p, _sub_from_coords(c.frame, basis)))
        for basis in gf2.enumerate_subspaces(p, p - r)
    ]
    return sorted(out, key=lambda b: sorted(b.vectors))


def count_bi_subalgebras(p: int, r: int) -> int:
    """``prod_{i=1..p-r} (2^{p-i+1} - 1) / (2^i - 1)``."""
    num = prod((1 << (p - i + 1)) - 1 for i in range(1, p - r + 1))
    den = prod((1 << i) - 1 for i in range(1, p - r + 1))
    return num // den


def count_k_supersets(r: int, k: int) -> int:
    """Number of k-th maximal bi-subalgebras containing a given ``B^[r]``."""
    num = prod((1 << (r - i + 1)) - 1 for i in range(1, r - k + 1))
    den = prod((1 << i) - 1 for i in range(1, r - k + 1))
    return num // den


def count_cartan_supersets(b: BiSubalgebra | int) -> int:
    """``prod_{s=1..r} (2^s + 1)``; accepts a bi-subalgebra or its rank."""
    r = b if isinstance(b, int) else b.rank
    return prod((1 << s) + 1 for s in range(1, r + 1))


def maximal_by_label(c: CartanSubalgebra, beta: int) -> SpinorSet:
    """``B_beta = {x in C : omega(x, D_beta) = 0}``; ``beta = 0`` gives ``C``."""
    dvec = c.frame.dual_vector(beta)
    return SpinorSet(c.width, frozenset(v for v in c.vectors if not symplectic_vec(v, dvec, c.width)))


def label_of_maximal(c: CartanSubalgebra, b: SpinorSet) -> int:
    """Inverse of :func:`maximal_by_label`."""
    if b.vectors == c.vectors:
        return 0
    if not b.issubset(c) or len(b) * 2 != len(c) or not b.is_closed():
        raise SubalgebraError("not a maximal bi-subalgebra of C")
    # B is the kernel of x -> omega(x, D_beta), and omega(c_k, D_beta) = beta_k.
    p = c.width
    beta = 0
    for k, ck in enumerate(c.frame.c):
        if ck not in b.vectors:
            beta |= 1 << (p - 1 - k)
    return beta


def maximal_bi_subalgebras(c: CartanSubalgebra) -> dict[int, SpinorSet]:
    """The group ``G(C)`` keyed by label; includes ``C`` at label 0."""
    return {beta: maximal_by_label(c, beta) for beta in range(1 << c.width)}


def sqcap(c: CartanSubalgebra, b1: SpinorSet, b2: SpinorSet) -> SpinorSet:
    """``(B1 & B2) | (C - B1) & (C - B2)``."""
    for b in (b1, b2):
        if not b.issubset(c):
            raise SubalgebraError("operands must share the parent Cartan subalgebra")
    inter = b1.vectors & b2.vectors
    outer = (c.vectors - b1.vectors) & (c.vectors - b2.vectors)
    return SpinorSet(c.width, inter | outer)


def group_of(b: BiSubalgebra) -> dict[int, SpinorSet]:
    """Maximal bi-subalgebras of ``C`` containing ``B^[r]``, plus ``C`` itself."""
    c = b.parent
    out = {beta: m for beta, m in maximal_bi_subalgebras(c).items() if b.vectors <= m.vectors}
    if len(out) != 1 << b.rank:
        raise SubalgebraError(f"expected {1 << b.rank} members, found {len(out)}")
    proper = [m.vectors for beta, m in out.items() if beta]
    inter = frozenset.intersection(*proper) if proper else c.vectors
    if inter != b.vectors:
        raise SubalgebraError("intersection of the group members differs from B^[r]")
    return out


@dataclass(frozen=True)
class CosetDecomposition:
    """Cosets ``B^[r,l]`` of ``B^[r]`` in ``C`` with additive labels."""

    base: BiSubalgebra
    transversal: tuple[int, ...]
    cosets: dict[int, frozenset[int]] = field(compare=False)

    def label(self, v: int) -> int:
        for lab, members in self.cosets.items():
            if v in members:
                return lab
        raise KeyError(v)


def coset_transversal(c: SpinorSet, b: SpinorSet) -> tuple[int, ...]:
    """Least representatives ``t_1, t_2, ...``; ``t_1`` labels the last digit."""
    xb = gf2.XorBasis()
    for v in b.basis:
        xb.insert(v)
    chosen = []
    for v in sorted(c.vectors):
        if xb.insert(v):
            chosen.append(v)
    return tuple(chosen)


def coset_partition(c: CartanSubalgebra, b: BiSubalgebra) -> CosetDecomposition:
    if not b.vectors <= c.vectors:
        raise SubalgebraError("B^[r] is not inside C")
    r = b.rank
    trans = coset_transversal(c, b.members)
    cosets: dict[int, frozenset[int]] = {}
    for lab in range(1 << r):
        shift = 0
        for k, t in enumerate(trans):
            if (lab >> k) & 1:
                shift ^= t
        cosets[lab] = frozenset(v ^ shift for v in b.vectors)
    return CosetDecomposition(b, trans, cosets)


def enumerate_supersets(b: BiSubalgebra, k: int) -> list[SpinorSet]:
    """k-th maximal bi-subalgebras of ``C`` that contain ``B^[r]``."""
    c = b.parent
    r = b.rank
    if not 0 <= k <= r:
        return []
    trans = coset_transversal(c, b.members)
    out = []
    for sub in gf2.enumerate_subspaces(r, r - k):
        words = list(b.members.basis)
        for nu in sub:
            w = 0
            for j, t in enumerate(trans):
                if (nu >> j) & 1:
                    w ^= t
            words.append(w)
        out.append(span_vectors(words, c.width))
    return out


def _isotropic_subspaces(vectors: Sequence[int], dim: int, width: int) -> Iterator[list[int]]:
    """Isotropic ``dim``-dimensional subspaces spanned by combinations of ``vectors``.

    Subspaces are walked in reduced echelon form over the coordinates of
    ``vectors``; rows are filled one at a time and pruned on isotropy.
    """
    n = len(vectors)

    def word(coords: int) -> int:
        w = 0
        for j in range(n):
            if (coords >> j) & 1:
                w ^= vectors[j]
        return w

    for pivots in combinations(range(n - 1, -1, -1), dim):
        pivot_set = set(pivots)
        frees = [[c_ for c_ in range(pv) if c_ not in pivot_set] for pv in pivots]

        def rec(idx: int, words: list[int]) -> Iterator[list[int]]:
            if idx == dim:
                yield words
                return
            pv, free = pivots[idx], frees[idx]
            for mask in range(1 << len(free)):
                row = 1 << pv
                for j, c_ in enumerate(free):
                    if (mask >> j) & 1:
                        row |= 1 << c_
                w = word(row)
                if any(symplectic_vec(w, x, width) for x in words):
                    continue
                yield from rec(idx + 1, words + [w])

        yield from rec(0, [])


def enumerate_cartan_supersets(b: BiSubalgebra) -> list[CartanSubalgebra]:
    """Cartan subalgebras containing ``B^[r]``, built inside its commutant.

    The spinors commuting with ``B^[r]`` form a closed set of dimension
    ``p + r``; every Cartan superset is ``B^[r]`` plus an r-dimensional
    isotropic subspace of that commutant modulo ``B^[r]``.
    """
    p = b.width
    r = b.rank
    comm = commutant(b.members.basis, p)
    extra = gf2.extend_basis(b.members.basis, sorted(gf2.span(comm)))
    if len(extra) != 2 * r:
        raise SubalgebraError("commutant has unexpected dimension")
    out = []
    for words in _isotropic_subspaces(extra, r, p):
        out.append(CartanSubalgebra(p, frozenset(gf2.span(list(b.members.basis) + words))))
    return sorted(out, key=lambda cs: sorted(cs.vectors))


def all_cartan_subalgebras(p: int) -> list[CartanSubalgebra]:
    """Every Cartan subalgebra of ``su(2^p)``: the Cartan supersets of ``{I}``."""
    trivial = BiSubalgebra(intrinsic_cartan(p), SpinorSet(p, frozenset({0})))
    return enumerate_cartan_supersets(trivial)
