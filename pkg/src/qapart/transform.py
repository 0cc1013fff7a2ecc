"""S-rotations, basic transformations and the spinor-to-spinor maps built from them.

A unitary ``U`` acts on a generator by ``H -> U^dagger H U``.  For an
s-rotation ``R = exp(i theta H_a)`` and a target ``H_t`` anti-commuting with
``H_a``::

    R^dagger H_t R = cos(2 theta) H_t + i sin(2 theta) H_t H_a

so ``theta = +-pi/2`` flips the sign and ``theta = +-pi/4`` sends ``H_t`` to
``+-rho H_{t+a}`` with ``rho = i (-1)^{zeta.beta} (-i)^{zeta.alpha + eta.beta}
i^{(zeta+eta).(alpha+beta)}``.  Commuting targets are left alone.

Sequences list their steps in the order they act; the realized matrix is
``U_1 U_2 ... U_n`` so that the whole action is ``U^dagger H U``.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf2
from .matrix_oracle import TOL, conjugate, exponential_srotation, signed_image
from .partition import build_partition
from .pauli_core import SignedSpinor, Spinor, WidthError, product_phase, realize_matrix, symplectic_vec
from .subalgebra import (
    BiSubalgebra,
    CartanSubalgebra,
    SpinorSet,
    cartan_kind,
    canonical_generator,
    dual_functional,
    intrinsic_cartan,
    intrinsic_generator,
)


class TransformError(ValueError):
    """Raised when a map cannot be built or is applied outside the symbolic range."""


_QUARTERS = {-2: "-pi/2", -1: "-pi/4", 1: "+pi/4", 2: "+pi/2"}


@dataclass(frozen=True)
class SRotation:
    """``exp(i theta H_axis)``; special angles are ``quarter * pi/4`` with ``quarter`` in ``{+-1, +-2}``."""

    axis: Spinor
    quarter: int | None = 1
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.quarter is None:
            if self.theta is None:
                raise TransformError("free rotation needs an angle")
        elif self.quarter not in _QUARTERS:
            raise TransformError(f"special angle must be one of {sorted(_QUARTERS)} quarter turns")

    @classmethod
    def free(cls, axis: Spinor, theta: float) -> SRotation:
        return cls(axis, None, theta)

    @property
    def width(self) -> int:
        return self.axis.width

    @property
    def angle(self) -> float:
        return self.theta if self.quarter is None else self.quarter * math.pi / 4

    @property
    def is_special(self) -> bool:
        return self.quarter is not None

    def matrix(self) -> np.ndarray:
        return exponential_srotation(self.axis, self.angle)

    def inverse(self) -> SRotation:
        if self.quarter is None:
            return SRotation.free(self.axis, -self.theta)
        return SRotation(self.axis, -self.quarter)

    def __str__(self) -> str:
        angle = _QUARTERS[self.quarter] if self.quarter is not None else f"{self.theta:+.6g}"
        return f"R({self.axis}, {angle})"

    def to_json(self) -> dict:
        out: dict = {"op": "R", "axis": str(self.axis)}
        if self.quarter is None:
            out["theta"] = self.theta
        else:
            out["quarter"] = self.quarter
        return out


@dataclass(frozen=True)
class BasicTransformation:
    """``h^zeta_alpha = (I + i H) / sqrt(2)``: the ``+pi/4`` s-rotation about ``S^zeta_alpha``."""

    axis: Spinor

    @property
    def width(self) -> int:
        return self.axis.width

    @property
    def is_special(self) -> bool:
        return True

    def as_rotation(self) -> SRotation:
        return SRotation(self.axis, 1)

    def matrix(self) -> np.ndarray:
        return self.as_rotation().matrix()

    def inverse(self) -> SRotation:
        return SRotation(self.axis, -1)

    def __str__(self) -> str:
        return f"h({self.axis})"

    def to_json(self) -> dict:
        return {"op": "h", "axis": str(self.axis)}


Step = SRotation | BasicTransformation


def rho(axis: Spinor, target: Spinor) -> int:
    """The sign ``rho`` of the ``pi/4`` formula, evaluated literally from the four dot products."""
    z, a, e, b = axis.zeta, axis.alpha, target.zeta, target.alpha
    k = 1 + 2 * (z & b).bit_count() - (z & a).bit_count() - (e & b).bit_count() + ((z ^ e) & (a ^ b)).bit_count()
    k %= 4
    if k % 2:
        raise TransformError("rho is imaginary: axis and target commute")
    return 1 if k == 0 else -1


def apply_srotation(rot: Step, s: SignedSpinor) -> SignedSpinor:
    """Exact action of a special-angle rotation on a signed spinor."""
    if isinstance(rot, BasicTransformation):
        rot = rot.as_rotation()
    if not rot.is_special:
        raise TransformError("free-angle rotations only act through the matrix oracle")
    if rot.width != s.spinor.width:
        raise WidthError("rotation and spinor widths differ")
    t = s.spinor
    if not symplectic_vec(rot.axis.vector, t.vector, t.width):
        return s
    if abs(rot.quarter) == 2:
        return -s
    # i H_t H_a = i * i^k H_{t+a}; i^{k+1} is real because the two anti-commute.
    k, image = product_phase(t, rot.axis)
    sign = 1 if (k + 1) % 4 == 0 else -1
    if rot.quarter < 0:
        sign = -sign
    return SignedSpinor(image, s.sign * sign)


def apply_basic(h: BasicTransformation, s: Spinor) -> Spinor:
    """Unsigned action: commuting spinors stay, the others are bi-added to the axis."""
    if h.width != s.width:
        raise WidthError("transformation and spinor widths differ")
    if symplectic_vec(h.axis.vector, s.vector, s.width):
        return Spinor.from_vector(s.width, s.vector ^ h.axis.vector)
    return s


@dataclass(frozen=True)
class TransformSequence:
    """Steps in the order they act on a spinor."""

    width: int
    steps: tuple[Step, ...] = ()

    def __post_init__(self) -> None:
        for st in self.steps:
            if st.width != self.width:
                raise WidthError("step width differs from sequence width")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def is_symbolic(self) -> bool:
        return all(st.is_special for st in self.steps)

    def then(self, other: TransformSequence | Iterable[Step]) -> TransformSequence:
        more = other.steps if isinstance(other, TransformSequence) else tuple(other)
        return TransformSequence(self.width, self.steps + tuple(more))

    def inverse(self) -> TransformSequence:
        return TransformSequence(self.width, tuple(st.inverse() for st in reversed(self.steps)))

    def apply(self, s: SignedSpinor | Spinor) -> SignedSpinor:
        if isinstance(s, Spinor):
            s = SignedSpinor(s)
        for st in self.steps:
            s = apply_srotation(st, s)
        return s

    @cached_property
    def as_map(self) -> tuple[SignedSpinor, ...]:
        """Image of every spinor, indexed by its symplectic word."""
        if not self.is_symbolic:
            raise TransformError("sequence contains free-angle rotations")
        return tuple(self.apply(Spinor.from_vector(self.width, v)) for v in range(1 << (2 * self.width)))

    def image(self, s: Spinor) -> SignedSpinor:
        return self.as_map[s.vector]

    def image_word(self, v: int) -> int:
        return self.as_map[v].spinor.vector

    def image_set(self, words: Iterable[int]) -> frozenset[int]:
        return frozenset(self.image_word(v) for v in words)

    def matrix(self) -> np.ndarray:
        u = np.eye(1 << self.width, dtype=complex)
        for st in self.steps:
            u = u @ st.matrix()
        return u

    def __str__(self) -> str:
        return " ; ".join(str(st) for st in self.steps) if self.steps else "identity"

    def to_json(self) -> dict:
        return {"width": self.width, "steps": [st.to_json() for st in self.steps]}

    @classmethod
    def from_json(cls, obj: dict) -> TransformSequence:
        steps: list[Step] = []
        for st in obj["steps"]:
            axis = Spinor.parse(st["axis"])
            if st["op"] == "h":
                steps.append(BasicTransformation(axis))
            elif "theta" in st:
                steps.append(SRotation.free(axis, float(st["theta"])))
            else:
                steps.append(SRotation(axis, int(st["quarter"])))
        return cls(int(obj["width"]), tuple(steps))


def matrix_image(step_or_seq: Step | TransformSequence, s: Spinor) -> tuple[Spinor, int] | None:
    """Oracle twin of :func:`apply_srotation`: conjugate the realized matrices and read off ``+-H``."""
    u = step_or_seq.matrix()
    return signed_image(conjugate(u, realize_matrix(s)), s.width)


# Factorization of free s-rotations.


@dataclass(frozen=True)
class Factorization:
    """``R_axis(theta) = W R_core(sign * theta) W^dagger`` with ``W`` the product of ``conjugators``."""

    axis: Spinor
    theta: float
    conjugators: tuple[SRotation, ...]
    core: Spinor
    sign: int

    def sequence(self) -> TransformSequence:
        """The factors as one sequence whose matrix equals the original rotation."""
        w = TransformSequence(self.axis.width, self.conjugators)
        mid = SRotation.free(self.core, self.sign * self.theta)
        return w.then([mid]).then(w.inverse())

    def matrix(self) -> np.ndarray:
        return self.sequence().matrix()


def factorize_srotation(axis: Spinor, theta: float) -> Factorization:
    """Conjugate a multi-qubit rotation down to a one-qubit rotation with 2-qubit ``pi/4`` steps.

    Each step clears the last qubit of the running axis: on qubits ``(q1, q2)``
    the running axis reads ``(P1, P2)`` and the step axis ``(B1, P2)`` with
    ``B1`` distinct from ``I`` and ``P1``.
    """
    if axis.is_identity:
        raise TransformError("the identity is not an s-rotation axis")
    p = axis.width
    running = SignedSpinor(axis)
    steps: list[SRotation] = []
    while running.spinor.support().bit_count() > 1:
        cur = running.spinor
        sup = cur.support()
        hi = sup.bit_length() - 1
        lo = (sup & -sup).bit_length() - 1
        p1 = ((cur.zeta >> hi) & 1, (cur.alpha >> hi) & 1)
        b1 = next(pb for pb in ((1, 0), (0, 1), (1, 1)) if pb != p1)
        z = (b1[0] << hi) | (cur.zeta & (1 << lo))
        a = (b1[1] << hi) | (cur.alpha & (1 << lo))
        step = SRotation(Spinor(p, z, a), 1)
        running = apply_srotation(step, running)
        steps.append(step)
    # W^dagger H_axis W = sign H_core, so H_axis = sign W H_core W^dagger.
    return Factorization(axis, theta, tuple(steps), running.spinor, running.sign)


# Q^(r): diagonalization followed by the exchange of diagonal strings.


def _adapted_basis(cartan: SpinorSet, first: Sequence[int]) -> list[int]:
    """Basis of ``cartan`` starting with ``first``."""
    return list(first) + gf2.extend_basis(first, sorted(cartan.vectors))


def diagonalization(cartan: CartanSubalgebra) -> TransformSequence:
    """``R`` made of commuting basic transformations sending ``cartan`` to the diagonal spinors.

    With a basis whose ``alpha`` parts ``alpha_1..alpha_k`` are independent
    (the rest diagonal), the axes ``S^{eta_i}_{alpha_i}`` solve
    ``eta_i.alpha_j + zeta_j.alpha_i = delta_ij``.
    """
    p = cartan.width
    mask = (1 << p) - 1
    rows = gf2.reduced_basis(cartan.vectors)
    # Reduce so that the alpha parts are in echelon form; diagonal rows go last.
    off = [v for v in rows if v & mask]
    off_alpha = gf2.XorBasis()
    chosen = []
    for v in sorted(cartan.vectors, reverse=True):
        if v & mask and off_alpha.insert(v & mask):
            chosen.append(v)
    if len(chosen) != cartan_kind(cartan) or (off and not chosen):
        raise TransformError("could not isolate the off-diagonal part of the Cartan subalgebra")
    alphas = [v & mask for v in chosen]
    zetas = [v >> p for v in chosen]
    k = len(chosen)
    steps = []
    for i in range(k):
        # eta_i . alpha_j = delta_ij + zeta_j . alpha_i for j = 1..k.
        rhs = [(1 if i == j else 0) ^ gf2.parity(zetas[j] & alphas[i]) for j in range(k)]
        eta = gf2.solve(alphas, rhs)
        if eta is None:
            raise TransformError("diagonalization constraints are inconsistent")
        steps.append(BasicTransformation(Spinor(p, eta, alphas[i])))
    seq = TransformSequence(p, tuple(steps))
    if any(seq.image_word(v) & mask for v in cartan.vectors):
        raise TransformError("diagonalization left an off-diagonal spinor")
    return seq


def _transvection(p: int, beta: int, xi: int) -> tuple[BasicTransformation, BasicTransformation]:
    """``e_beta = h^0_beta`` then ``h^xi_beta``: ``nu -> nu + (nu.beta) xi`` on diagonal spinors."""
    return BasicTransformation(Spinor(p, 0, beta)), BasicTransformation(Spinor(p, xi, beta))


def exchange(p: int, source: Sequence[int], target: Sequence[int]) -> TransformSequence:
    """Transvections sending diagonal strings ``source[k]`` to ``target[k]`` in turn, fixing earlier targets."""
    if not (gf2.is_independent(source) and gf2.is_independent(target)) or len(source) != len(target):
        raise TransformError("exchange needs two independent lists of equal length")
    steps: list[BasicTransformation] = []
    current = list(source)
    for k, (x, y) in enumerate(zip(current, target)):
        x = current[k]
        if x == y:
            continue
        # beta.x = beta.y = 1 and beta.target[l] = 0 for l < k.
        beta = gf2.solve([x, y] + list(target[:k]), [1, 1] + [0] * k)
        if beta is None:
            raise TransformError("no transvection axis for the exchange")
        xi = x ^ y
        steps.extend(_transvection(p, beta, xi))
        current = [v ^ xi if gf2.parity(v & beta) else v for v in current]
    return TransformSequence(p, tuple(steps))


def build_Qr(generator: BiSubalgebra, target: str = "canonical") -> TransformSequence:
    """``Q^(r) = E^(r) R^(r)``: diagonalize the Cartan parent, then exchange onto the target frame."""
    p, r = generator.width, generator.rank
    if target not in ("canonical", "intrinsic"):
        raise TransformError(f"unknown target {target!r}")
    diag = diagonalization(generator.parent)
    basis = gf2.reduced_basis(generator.vectors)
    images = [diag.image_word(v) >> p for v in basis]
    goal = canonical_generator(p, r) if target == "canonical" else intrinsic_generator(p, r)
    goal_basis = [v >> p for v in gf2.reduced_basis(goal.vectors)]
    seq = diag.then(exchange(p, images, goal_basis))
    if seq.image_set(generator.vectors) != goal.vectors:
        raise TransformError("Q^(r) does not reach the target generator")
    return seq


# Spinor-to-spinor mapping of ordered independent sets.


@dataclass(frozen=True)
class CommutationTable:
    """Symplectic parities of an ordered list of words."""

    width: int
    rows: tuple[int, ...]

    @classmethod
    def of(cls, words: Sequence[int], width: int) -> CommutationTable:
        n = len(words)
        rows = []
        for i in range(n):
            bits = 0
            for j in range(n):
                if symplectic_vec(words[i], words[j], width):
                    bits |= 1 << j
            rows.append(bits)
        return cls(width, tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1


@dataclass
class MappingResult:
    sequence: TransformSequence
    occasions: list[int] = field(default_factory=list)
    signs: list[int] = field(default_factory=list)


def _solve_word(p: int, constraints: Sequence[tuple[int, int]]) -> int | None:
    """Word ``z`` with ``omega(z, w) = b`` for each ``(w, b)``; lexicographically least choice."""
    rows = [dual_functional(w, p) for w, _ in constraints]
    return gf2.solve(rows, [b for _, b in constraints])


def spinor_mapping(
    first: Sequence[Spinor], second: Sequence[Spinor], fix_signs: bool = True
) -> MappingResult:
    """Build ``Q`` with ``Q^dagger first[u] Q = +-second[u]`` for every ``u``.

    Step ``u`` leaves the already matched ``second[:u]`` untouched:

    * equal words: nothing, or a ``pi/2`` sign fix (occasion 1);
    * anti-commuting words: one ``pi/4`` rotation about their sum (occasion 2);
    * commuting words: two ``pi/4`` rotations through an intermediate ``z``
      anti-commuting with both (occasion 3).

    With ``fix_signs`` every image comes out with sign ``+1``.
    """
    if len(first) != len(second) or not first:
        raise TransformError("ordered sets must be non-empty and of equal length")
    p = first[0].width
    if any(s.width != p for s in list(first) + list(second)):
        raise WidthError("mixed widths in spinor_mapping")
    a = [s.vector for s in first]
    b = [s.vector for s in second]
    if not (gf2.is_independent(a) and gf2.is_independent(b)):
        raise TransformError("ordered sets must be independent")
    if CommutationTable.of(a, p) != CommutationTable.of(b, p):
        raise TransformError("commutation tables differ")
    seq = TransformSequence(p)
    out = MappingResult(seq)
    for u in range(len(a)):
        cur = seq.apply(Spinor.from_vector(p, a[u]))
        x, y = cur.spinor.vector, b[u]
        fixed = b[:u]
        new: list[Step] = []
        if x == y:
            occasion = 1
        elif symplectic_vec(x, y, p):
            occasion = 2
            new.append(SRotation(Spinor.from_vector(p, x ^ y), 1))
        else:
            occasion = 3
            table = [(w, symplectic_vec(y, w, p)) for w in fixed]
            z = _solve_word(p, [(x, 1), (y, 1)] + table)
            if z is None:
                raise TransformError("occasion 3 constraints are inconsistent")
            new.append(SRotation(Spinor.from_vector(p, x ^ z), 1))
            new.append(SRotation(Spinor.from_vector(p, z ^ y), 1))
        seq = seq.then(new)
        img = seq.apply(Spinor.from_vector(p, a[u]))
        if img.spinor.vector != y:
            raise TransformError(f"step {u} missed its target")
        if fix_signs and img.sign < 0:
            axis = _solve_word(p, [(y, 1)] + [(w, 0) for w in fixed])
            if axis is None:
                raise TransformError("no sign-fixing axis")
            seq = seq.then([SRotation(Spinor.from_vector(p, axis), 2)])
            img = -img
        out.occasions.append(occasion)
        out.signs.append(img.sign)
    out.sequence = seq
    for u in range(len(a)):
        got = seq.apply(Spinor.from_vector(p, a[u]))
        if got.spinor.vector != b[u] or got.sign != out.signs[u]:
            raise TransformError("final check of the mapping failed")
    return out


def preferred_set(p: int) -> list[Spinor]:
    """``Z_1..Z_p, X_1..X_p``: the diagonal basis followed by its symplectic partners."""
    zs = [Spinor(p, 1 << (p - 1 - k), 0) for k in range(p)]
    xs = [Spinor(p, 0, 1 << (p - 1 - k)) for k in range(p)]
    return zs + xs


def random_symplectic_image(words: Sequence[Spinor], rng: np.random.Generator, steps: int = 12) -> list[Spinor]:
    """Push ``words`` through random transvections; commutation tables are preserved."""
    p = words[0].width
    out = [w.vector for w in words]
    for _ in range(steps):
        a = int(rng.integers(1, 1 << (2 * p)))
        out = [v ^ a if symplectic_vec(v, a, p) else v for v in out]
    return [Spinor.from_vector(p, v) for v in out]


# Bi-addition and QAP preservation.


@dataclass
class PreservationReport:
    pairs_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_biaddition_preservation(
    seq: TransformSequence, pairs: Iterable[tuple[int, int]] | None = None, limit: int = 20
) -> PreservationReport:
    """``Q(s + t) = sigma Q(s) + Q(t)`` with ``sigma = sigma_s sigma_t i^{k' - k}``.

    ``k`` and ``k'`` are the product phases before and after the map.
    """
    p = seq.width
    n = 1 << (2 * p)
    if pairs is None:
        pairs = ((x, y) for x in range(n) for y in range(x, n))
    rep = PreservationReport()
    for x, y in pairs:
        rep.pairs_checked += 1
        sx, sy = seq.as_map[x], seq.as_map[y]
        sxy = seq.as_map[x ^ y]
        k, _ = product_phase(Spinor.from_vector(p, x), Spinor.from_vector(p, y))
        k2, img = product_phase(sx.spinor, sy.spinor)
        if img != sxy.spinor:
            rep.violations.append(f"image of {Spinor.from_vector(p, x ^ y)} is not the bi-addition")
        else:
            phase = (k2 - k) % 4
            if phase % 2 or sx.sign * sy.sign * (1 if phase == 0 else -1) != sxy.sign:
                rep.violations.append(f"sign at {Spinor.from_vector(p, x)}, {Spinor.from_vector(p, y)}")
        if len(rep.violations) >= limit:
            break
    return rep


def image_generator(seq: TransformSequence, generator: BiSubalgebra) -> BiSubalgebra:
    cartan = CartanSubalgebra(generator.width, seq.image_set(generator.parent.vectors))
    return BiSubalgebra(cartan, SpinorSet(generator.width, seq.image_set(generator.vectors)))


def check_qap_preservation(seq: TransformSequence, generator: BiSubalgebra) -> list[str]:
    """Every cell of the partition of ``generator`` must land on exactly one cell of the image partition."""
    src = build_partition(generator)
    dst = build_partition(image_generator(seq, generator))
    cells = {cell for cell in dst.table.values() if cell}
    out = []
    for lab, cell in src.table.items():
        if cell and seq.image_set(cell) not in cells:
            out.append(f"{lab.name()} is not mapped onto a single subspace")
    return out


# Cartan-kind transitions.


def kind_transition(cartan: CartanSubalgebra, direction: str) -> tuple[SRotation, CartanSubalgebra]:
    """A ``pi/4`` rotation moving ``cartan`` to kind ``k-1``, ``k`` or ``k+1``.

    ``down`` takes the axis ``alpha`` part from the span of the members'
    ``alpha`` strings, ``same`` uses a diagonal axis and ``up`` an axis
    whose ``alpha`` lies outside that span.  The axis must fail to commute
    with the Cartan subalgebra.
    """
    p = cartan.width
    mask = (1 << p) - 1
    k = cartan_kind(cartan)
    want = {"down": k - 1, "same": k, "up": k + 1}.get(direction)
    if want is None:
        raise TransformError(f"unknown direction {direction!r}")
    if not 0 <= want <= p:
        raise TransformError(f"no Cartan subalgebra of kind {want}")
    alpha_span = set(gf2.span(gf2.reduced_basis(v & mask for v in cartan.vectors)))
    for v in range(1, 1 << (2 * p)):
        beta = v & mask
        if direction == "same" and beta:
            continue
        if direction == "down" and beta not in alpha_span:
            continue
        if direction == "up" and beta in alpha_span:
            continue
        if not any(symplectic_vec(v, c, p) for c in cartan.vectors):
            continue
        rot = SRotation(Spinor.from_vector(p, v), 1)
        seq = TransformSequence(p, (rot,))
        image = CartanSubalgebra(p, seq.image_set(cartan.vectors))
        if cartan_kind(image) == want:
            return rot, image
    raise TransformError(f"no admissible axis for {direction} from kind {k}")


# Q_Omega: mapping a decomposition onto the intrinsic one of its type.


def _twist(p: int, t: frozenset[int], top: bool) -> int:
    """The word ``a`` with ``t = {omega(x, a) = 0}`` (top) or ``t = {q(x) + omega(x, a) = 1}`` (bottom)."""
    n = 1 << (2 * p)

    def want(x: int) -> int:
        in_p = 0 if x in t else 1
        if top:
            return in_p
        return Spinor.from_vector(p, x).parity ^ 1 ^ in_p

    a = _solve_word(p, [(1 << j, want(1 << j)) for j in range(2 * p)])
    if a is None or any(symplectic_vec(x, a, p) != want(x) for x in range(n)):
        raise TransformError("decomposition is not a grading by a single twist word")
    return a


def _twist_step(p: int, a: int, axis: int) -> int:
    """How a bottom twist word moves under ``h_axis``: ``W = h P h^T`` stays Pauli."""
    anti = symplectic_vec(a, axis, p)
    symmetric = Spinor.from_vector(p, axis).parity == 0
    if symmetric != bool(anti):
        return a ^ axis
    return a


def build_QOmega(t: frozenset[int], width: int, cd_type: str) -> TransformSequence:
    """Basic transformations carrying ``t`` onto the intrinsic ``t`` of the same type.

    Top (AIII) decompositions are commutants of one word ``a``; a two-step
    mapping sends ``a`` to ``Z_1``.  Bottom (AI, AII) decompositions are
    ``-W M^T W^dagger`` gradings; a breadth-first search over the twist word
    finds basic transformations reaching ``0`` (AI) or ``Y_1`` (AII).
    """
    p = width
    lead = 1 << (p - 1)
    top = 0 in t
    a = _twist(p, t, top)
    if top:
        if cd_type != "AIII":
            raise TransformError("top decompositions are of type AIII")
        seq = spinor_mapping([Spinor.from_vector(p, a)], [Spinor(p, lead, 0)], fix_signs=False).sequence
    else:
        goal = 0 if cd_type == "AI" else (lead << p) | lead
        prev: dict[int, tuple[int, int] | None] = {a: None}
        queue = deque([a])
        while queue and goal not in prev:
            cur = queue.popleft()
            for axis in range(1, 1 << (2 * p)):
                nxt = _twist_step(p, cur, axis)
                if nxt not in prev:
                    prev[nxt] = (cur, axis)
                    queue.append(nxt)
        if goal not in prev:
            raise TransformError(f"twist {a} cannot reach the {cd_type} form")
        axes = []
        node = goal
        while prev[node] is not None:
            node, axis = prev[node]
            axes.append(axis)
        seq = TransformSequence(p, tuple(BasicTransformation(Spinor.from_vector(p, ax)) for ax in reversed(axes)))
    return seq


# Universality smoke test at p <= 2.


def _euler_zyz(u: np.ndarray) -> tuple[float, float, float]:
    """``u = e^{i phi} exp(i a Z) exp(i b Y) exp(i c Z)`` for a 2x2 unitary."""
    det = np.linalg.det(u)
    v = u / np.sqrt(det)
    # v = [[e^{i(a+c)} cos b, e^{i(a-c)} sin b], [-e^{-i(a-c)} sin b, e^{-i(a+c)} cos b]]
    b = math.atan2(abs(v[0, 1]), abs(v[0, 0]))
    s = np.angle(v[0, 0]) if abs(v[0, 0]) > 1e-12 else 0.0
    d = np.angle(v[0, 1]) if abs(v[0, 1]) > 1e-12 else 0.0
    return (s + d) / 2, b, (s - d) / 2


_MAGIC = np.array([[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]], dtype=complex) / math.sqrt(2)


def _kron_factor(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split ``m = a (x) b`` for a 4x4 product of 2x2 unitaries."""
    r = m.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    uu, s, vh = np.linalg.svd(r)
    a = (uu[:, 0] * math.sqrt(s[0])).reshape(2, 2)
    b = (vh[0, :] * math.sqrt(s[0])).reshape(2, 2)
    return a, b


def _one_qubit_steps(u: np.ndarray, p: int, qubit: int) -> list[SRotation]:
    a, b, c = _euler_zyz(u)
    bit = 1 << (p - 1 - qubit)
    z, y = Spinor(p, bit, 0), Spinor(p, bit, bit)
    # exp(i a Z) exp(i b Y) exp(i c Z) as a product U_1 U_2 U_3.
    return [SRotation.free(z, a), SRotation.free(y, b), SRotation.free(z, c)]


def synthesize(u: np.ndarray, rng: np.random.Generator | None = None) -> TransformSequence:
    """Factor a 2x2 or 4x4 unitary into free s-rotations, up to a global phase.

    The two-qubit case goes through the AI decomposition ``su(4) = so(4) + p``
    in the magic basis: ``u = k1 exp(i(a XX + b YY + c ZZ)) k2``.  Each
    two-qubit rotation is then conjugated down to one qubit with
    :func:`factorize_srotation`.
    """
    dim = u.shape[0]
    if dim == 2:
        return TransformSequence(1, tuple(_one_qubit_steps(u, 1, 0)))
    if dim != 4:
        raise TransformError("synthesis is only provided for one and two qubits")
    rng = rng or np.random.default_rng(0)
    v = u / np.linalg.det(u) ** 0.25
    m = _MAGIC.conj().T @ v @ _MAGIC
    mm = m.T @ m
    # mm is symmetric unitary: real and imaginary parts commute, diagonalize both at once.
    for _ in range(20):
        w = rng.standard_normal()
        _, o = np.linalg.eigh(mm.real + w * mm.imag)
        dvals = np.diag(o.T @ mm @ o)
        if np.allclose(o.T @ mm @ o, np.diag(dvals), atol=1e-9):
            break
    else:
        raise TransformError("simultaneous diagonalization failed")
    if np.linalg.det(o) < 0:
        o[:, 0] = -o[:, 0]
    half = np.sqrt(dvals)
    # Fix the branch so that the product of the half phases is 1.
    if abs(np.prod(half) - 1) > 1e-6:
        half[0] = -half[0]
    k2m = o.T
    k1m = m @ o @ np.diag(1 / half)
    k1 = _MAGIC @ k1m @ _MAGIC.conj().T
    k2 = _MAGIC @ k2m @ _MAGIC.conj().T
    # In the magic basis XX, YY, ZZ are diagonal; read (a, b, c) off the phases.
    xx = realize_matrix(Spinor(2, 0, 3))
    yy = realize_matrix(Spinor(2, 3, 3))
    zz = realize_matrix(Spinor(2, 3, 0))
    diag_ops = [(_MAGIC.conj().T @ op @ _MAGIC).diagonal().real for op in (xx, yy, zz)]
    phases = np.angle(half)
    basis = np.stack(diag_ops, axis=1)
    coef, *_ = np.linalg.lstsq(basis, phases, rcond=None)
    steps: list[Step] = []
    a1, b1 = _kron_factor(k1)
    steps += _one_qubit_steps(a1, 2, 0) + _one_qubit_steps(b1, 2, 1)
    for op, c in zip((Spinor(2, 0, 3), Spinor(2, 3, 3), Spinor(2, 3, 0)), coef):
        steps += list(factorize_srotation(op, float(c)).sequence().steps)
    a2, b2 = _kron_factor(k2)
    steps += _one_qubit_steps(a2, 2, 0) + _one_qubit_steps(b2, 2, 1)
    return TransformSequence(2, tuple(steps))


def reconstructs(u: np.ndarray, seq: TransformSequence, tol: float = 1e-6) -> bool:
    from .matrix_oracle import equal_up_to_phase

    return equal_up_to_phase(seq.matrix(), u, tol)


__all__ = [
    "BasicTransformation",
    "CommutationTable",
    "Factorization",
    "MappingResult",
    "PreservationReport",
    "SRotation",
    "TransformError",
    "TransformSequence",
    "apply_basic",
    "apply_srotation",
    "build_QOmega",
    "build_Qr",
    "check_biaddition_preservation",
    "check_qap_preservation",
    "diagonalization",
    "exchange",
    "factorize_srotation",
    "image_generator",
    "kind_transition",
    "matrix_image",
    "preferred_set",
    "random_symplectic_image",
    "reconstructs",
    "rho",
    "spinor_mapping",
    "synthesize",
]
