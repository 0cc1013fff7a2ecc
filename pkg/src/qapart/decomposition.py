"""Cartan decompositions ``su(2^p) = t + p`` read off a quotient-algebra partition.

The labels ``(beta, epsilon, i)`` of a partition form the group
``Z_2^{p+1+r}`` under tri-addition, and the commutator of two spinors lands
in the tri-added label.  A proper maximal subgroup is the kernel of a
nonzero functional ``f(beta, epsilon, i) = w.beta + c.epsilon + v.i``:

* ``c = 0`` keeps the generator ``B^[r]`` in ``t``; anti-commutators stay
  in ``t`` and the decomposition is of the top kind;
* ``c = 1`` pushes ``B^[r]`` into ``p``; anti-commutators of ``t`` fall in
  ``p`` and the decomposition is of the bottom kind.

``w = 0`` is the degeneration ``T = G(C)`` and ``v = 0`` is ``R = Z_2^r``.
The type is decided by the largest commuting set inside ``p``.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cache

import numpy as np

from . import gf2
from .matrix_oracle import TOL
from .pauli_core import MAX_MATRIX_WIDTH, Spinor, WidthError, realize_matrix, symplectic_vec
from .partition import QAPartition, SubspaceLabel, all_labels, anti_tri_add, build_partition, tri_add
from .quotient import Flavor, QuotientStructure
from .subalgebra import all_cartan_subalgebras, enumerate_bi_subalgebras


class DecompositionError(ValueError):
    """Raised when a bipartition is not a Cartan decomposition."""


class Kind(enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"

    def __str__(self) -> str:
        return self.value


class CDType(enum.Enum):
    AI = "AI"
    AII = "AII"
    AIII = "AIII"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class SubgroupChoice:
    """``t = {w.beta + v.i (+ epsilon for bottom) = 0}``; ``w = 0`` means ``T`` is all of ``G(C)``."""

    w: int
    v: int
    kind: Kind = field(compare=False)

    def value(self, label: SubspaceLabel) -> int:
        f = gf2.parity(self.w & label.beta) ^ gf2.parity(self.v & label.i)
        if self.kind is Kind.BOTTOM:
            f ^= label.epsilon
        return f

    def in_t(self, label: SubspaceLabel) -> bool:
        return self.value(label) == 0

    @property
    def is_trivial(self) -> bool:
        return self.w == 0 and self.v == 0 and self.kind is Kind.TOP

    def __str__(self) -> str:
        return f"(w={self.w:b}, v={self.v:b}, {self.kind})"


@dataclass(frozen=True)
class CartanDecomposition:
    """A bipartition of the spinor words; the identity word sits with ``B^[r]``."""

    width: int
    t: frozenset[int]
    p: frozenset[int]
    kind: Kind
    cd_type: CDType
    max_abelian_in_p: frozenset[int]
    t_labels: frozenset[SubspaceLabel] = frozenset()
    p_labels: frozenset[SubspaceLabel] = frozenset()
    choice: SubgroupChoice | None = None
    partition: QAPartition | None = field(default=None, compare=False, repr=False)

    @property
    def key(self) -> frozenset[int]:
        """``t`` without the identity: the comparison key for decomposition sets."""
        return self.t - {0}

    @property
    def t_size(self) -> int:
        """Generator count of ``t`` in the usual convention (identity counted with ``B^[r]``)."""
        return len(self.t)

    def t_spinors(self) -> list[Spinor]:
        return [Spinor.from_vector(self.width, v) for v in sorted(self.t)]

    def to_json(self) -> dict:
        out = {
            "kind": str(self.kind),
            "type": str(self.cd_type),
            "t_size": self.t_size,
            "max_abelian_in_p": [str(Spinor.from_vector(self.width, v)) for v in sorted(self.max_abelian_in_p)],
        }
        if self.t_labels:
            out["t"] = [lab.name() for lab in sorted(self.t_labels, key=SubspaceLabel.sort_key)]
            out["p"] = [lab.name() for lab in sorted(self.p_labels, key=SubspaceLabel.sort_key)]
        else:
            out["t"] = [str(s) for s in self.t_spinors()]
        return out


def expected_t_size(cd_type: CDType, p: int) -> int:
    if cd_type is CDType.AI:
        return 2 ** (p - 1) * (2**p - 1)
    if cd_type is CDType.AII:
        return 2 ** (p - 1) * (2**p + 1)
    return 2 ** (2 * p - 1)


# Maximal abelian sets.  Every commuting set of spinors spans an isotropic
# subspace, so the largest commuting subset of ``p`` is the largest
# intersection of ``p`` with a Cartan subalgebra.


@cache
def _lagrangian_masks(p: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    out = []
    for c in all_cartan_subalgebras(p):
        members = tuple(sorted(c.vectors))
        mask = 0
        for v in members:
            mask |= 1 << v
        out.append((mask, members))
    return tuple(out)


def max_abelian_subset(words: Iterable[int], width: int) -> frozenset[int]:
    """A largest commuting subset of ``words``; ties go to the first Cartan subalgebra in enumeration order."""
    target = 0
    for v in words:
        target |= 1 << v
    best_mask, best = 0, -1
    for mask, _ in _lagrangian_masks(width):
        n = (mask & target).bit_count()
        if n > best:
            best, best_mask = n, mask & target
    return frozenset(k for k in range(1 << (2 * width)) if (best_mask >> k) & 1)


def _is_closed(words: frozenset[int]) -> bool:
    return 0 in words and all((x ^ y) in words for x in words for y in words)


def type_from_abelian(a: frozenset[int], width: int) -> CDType:
    if len(a) == 1 << width:
        return CDType.AI
    if len(a) == 1 << (width - 1):
        return CDType.AII if _is_closed(a) else CDType.AIII
    raise DecompositionError(f"maximal abelian subset of p has size {len(a)}")


def classify_type(d: CartanDecomposition) -> CDType:
    return type_from_abelian(max_abelian_subset(d.p, d.width), d.width)


# Construction.


def _from_choice(partition: QAPartition, choice: SubgroupChoice) -> CartanDecomposition | None:
    t_labels, p_labels = set(), set()
    t: set[int] = set()
    p: set[int] = set()
    for lab, cell in partition.table.items():
        if choice.in_t(lab):
            t_labels.add(lab)
            t |= cell
        else:
            p_labels.add(lab)
            p |= cell
    if not (t - {0}) or not (p - {0}):
        return None
    pf = frozenset(p)
    a = max_abelian_subset(pf, partition.p)
    return CartanDecomposition(
        partition.p,
        frozenset(t),
        pf,
        choice.kind,
        type_from_abelian(a, partition.p),
        a,
        frozenset(t_labels),
        frozenset(p_labels),
        choice,
        partition,
    )


def subgroup_choices(p: int, r: int) -> Iterator[SubgroupChoice]:
    for kind in (Kind.BOTTOM, Kind.TOP):
        for w in range(1 << p):
            for v in range(1 << r):
                choice = SubgroupChoice(w, v, kind)
                if not choice.is_trivial:
                    yield choice


def decomposition_for(partition: QAPartition, choice: SubgroupChoice) -> CartanDecomposition:
    d = _from_choice(partition, choice)
    if d is None:
        raise DecompositionError(f"choice {choice} leaves t or p empty")
    return d


def enumerate_decompositions(partition: QAPartition) -> list[CartanDecomposition]:
    """All decompositions from proper maximal subgroups, one per distinct ``t``."""
    seen: dict[frozenset[int], CartanDecomposition] = {}
    for choice in subgroup_choices(partition.p, partition.r):
        d = _from_choice(partition, choice)
        if d is not None and d.key not in seen:
            seen[d.key] = d
    return sorted(seen.values(), key=lambda d: (d.kind.value, d.cd_type.value, sorted(d.key)))


def from_sets(width: int, t: Iterable[int], p: Iterable[int]) -> CartanDecomposition:
    """Type an arbitrary bipartition; the kind follows the side holding the identity."""
    t, p = frozenset(t), frozenset(p)
    if t & p or len(t | p) != 1 << (2 * width):
        raise DecompositionError("t and p must partition every spinor word")
    kind = Kind.TOP if 0 in t else Kind.BOTTOM
    a = max_abelian_subset(p, width)
    return CartanDecomposition(width, t, p, kind, type_from_abelian(a, width), a)


def _predicate_sets(p: int, pred) -> tuple[frozenset[int], frozenset[int]]:
    t, rest = set(), set()
    for v in range(1 << (2 * p)):
        (t if pred(Spinor.from_vector(p, v)) else rest).add(v)
    return frozenset(t), frozenset(rest)


def intrinsic_predicate(which: CDType, p: int):
    lead = 1 << (p - 1)
    if which is CDType.AI:
        return lambda s: s.parity == 1
    if which is CDType.AII:
        return lambda s: s.parity == 1 ^ bool(s.zeta & lead) ^ bool(s.alpha & lead)
    return lambda s: not s.alpha & lead


def intrinsic_decomposition(p: int, which: CDType) -> CartanDecomposition:
    """``so(2^p)``, ``sp(2^{p-1})`` or ``c + su(2^{p-1}) + su(2^{p-1})`` from closed-form predicates."""
    if not 1 <= p <= 4:
        raise WidthError(f"width {p} outside 1..4")
    if which is CDType.AII and p < 2:
        raise DecompositionError("the intrinsic AII decomposition needs p >= 2")
    t, rest = _predicate_sets(p, intrinsic_predicate(which, p))
    return from_sets(p, t, rest)


# Verification.


@dataclass
class DecompositionReport:
    pairs_checked: int = 0
    violations: list[tuple[str, str, str]] = field(default_factory=list)
    matrix_checked: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, check: str) -> int:
        return sum(1 for v in self.violations if v[0] == check)


def _name(p: int, v: int) -> str:
    return str(Spinor.from_vector(p, v))


def verify_decomposition(
    d: CartanDecomposition, matrix: bool | None = None, limit: int = 20
) -> DecompositionReport:
    """Decomposition condition, kind law, distribution rules and the matrix cross-check.

    ``matrix`` defaults to on for ``p <= 3``.  At most ``limit`` witnesses
    are kept per check.
    """
    p = d.width
    rep = DecompositionReport()
    counts: dict[str, int] = {}

    def add(check: str, x: int, y: int) -> None:
        counts[check] = counts.get(check, 0) + 1
        if counts[check] <= limit:
            rep.violations.append((check, _name(p, x), _name(p, y)))

    t_side = d.t
    words = sorted(d.t | d.p)
    if d.t & d.p or len(words) != 1 << (2 * p):
        add("cover", 0, 0)
        return rep
    anti_t = d.kind is Kind.TOP
    for n, x in enumerate(words):
        xt = x in t_side
        for y in words[n + 1 :]:
            yt = y in t_side
            rep.pairs_checked += 1
            img_t = (x ^ y) in t_side
            if symplectic_vec(x, y, p):
                if img_t != (xt == yt):
                    add("commutator", x, y)
            elif x and y:
                want = (xt == yt) == anti_t
                if img_t != want:
                    add("anticommutator", x, y)
    if d.t_labels:
        _check_distribution(d, add)
        _check_degrade_subgroup(d, add)
    if matrix is None:
        matrix = p <= 3
    if matrix:
        _matrix_check(d, add)
        rep.matrix_checked = True
    return rep


def _check_distribution(d: CartanDecomposition, add) -> None:
    """Label-level rules: ``t+t``, ``p+p`` land in ``t``; ``t+p`` lands in ``p``."""
    labs = sorted(d.t_labels | d.p_labels, key=SubspaceLabel.sort_key)
    for a in labs:
        for b in labs:
            want_t = (a in d.t_labels) == (b in d.t_labels)
            if (tri_add(a, b) in d.t_labels) != want_t:
                add("distribution", 0, 0)
            anti_t = want_t == (d.kind is Kind.TOP)
            if (anti_tri_add(a, b) in d.t_labels) != anti_t:
                add("distribution", 0, 0)


def degrade_subgroup(kind: Kind, r: int, v: int, p: int) -> frozenset[SubspaceLabel]:
    """``V_top(C)`` or ``V_bottom(C)``: the degrade labels of ``t`` for ``R = ker v``."""
    out = set()
    for s in range(1 << r):
        in_r = gf2.parity(v & s) == 0
        if kind is Kind.TOP:
            if in_r:
                out.update((SubspaceLabel(p, r, 0, 0, s), SubspaceLabel(p, r, 0, 1, s)))
        else:
            out.add(SubspaceLabel(p, r, 0, 0 if in_r else 1, s))
    return frozenset(out)


def _check_degrade_subgroup(d: CartanDecomposition, add) -> None:
    if d.choice is None:
        return
    any_lab = next(iter(d.t_labels))
    got = frozenset(lab for lab in d.t_labels if lab.beta == 0)
    if got != degrade_subgroup(d.kind, any_lab.r, d.choice.v, any_lab.p):
        add("degrade-subgroup", 0, 0)


@cache
def _pauli_stack(p: int) -> np.ndarray:
    return np.stack([realize_matrix(Spinor.from_vector(p, v)) for v in range(1 << (2 * p))])


def _matrix_check(d: CartanDecomposition, add) -> None:
    """``Tr(t p) = 0`` and ``[t, p] in p`` on realized matrices."""
    p = d.width
    if p > MAX_MATRIX_WIDTH:
        raise WidthError("matrix check needs a small width")
    paulis = _pauli_stack(p)
    dim = 1 << p
    tl = sorted(d.t - {0})
    pl = sorted(d.p - {0})
    if not tl or not pl:
        return
    mt, mp = paulis[tl], paulis[pl]
    traces = np.einsum("aij,bji->ab", mt, mp)
    for a, b in zip(*np.nonzero(np.abs(traces) > TOL)):
        add("trace", tl[a], pl[b])
    p_mask = np.zeros(len(paulis), dtype=bool)
    p_mask[list(d.p)] = True
    for a, x in enumerate(tl):
        comm = np.einsum("ij,bjk->bik", mt[a], mp) - np.einsum("bij,jk->bik", mp, mt[a])
        coeffs = np.einsum("kij,bji->bk", paulis, comm) / dim
        leak = np.abs(coeffs[:, ~p_mask]).max(axis=1)
        for b in np.nonzero(leak > TOL)[0]:
            add("matrix-commutator", x, pl[b])


def mutate_swap(d: CartanDecomposition, label: SubspaceLabel) -> CartanDecomposition:
    """Move one conditioned subspace to the other side; used to test the verifier."""
    if d.partition is None:
        raise DecompositionError("mutation needs a labelled decomposition")
    cell = d.partition.table[label]
    if label in d.t_labels:
        t, p = d.t - cell, d.p | cell
        tl, pl = d.t_labels - {label}, d.p_labels | {label}
    else:
        t, p = d.t | cell, d.p - cell
        tl, pl = d.t_labels | {label}, d.p_labels - {label}
    return CartanDecomposition(d.width, t, p, d.kind, d.cd_type, d.max_abelian_in_p, tl, pl, None, d.partition)


# Involutions.


@dataclass(frozen=True)
class Involution:
    """A signed spinor map ``s -> sign(s) s``; ``+1`` on ``t`` and ``-1`` on ``p``."""

    width: int
    form: str
    signs: tuple[int, ...]
    conjugator: Spinor | None = None

    def sign(self, s: Spinor) -> int:
        return self.signs[s.vector]

    def apply(self, s: Spinor) -> tuple[int, Spinor]:
        return self.signs[s.vector], s

    def fixed(self) -> frozenset[int]:
        return frozenset(v for v, sg in enumerate(self.signs) if sg > 0)

    def matrix_action(self, m: np.ndarray) -> np.ndarray:
        """Realization on matrices for the intrinsic forms; grading forms act through the Pauli expansion."""
        if self.form == "T_I":
            return -m.T
        if self.form == "T_II":
            y = realize_matrix(self.conjugator)
            return -(y @ m @ y).T
        if self.form == "T_III":
            z = realize_matrix(self.conjugator)
            return z @ m @ z
        paulis = _pauli_stack(self.width)
        dim = 1 << self.width
        coeffs = np.einsum("kij,ji->k", paulis, m) / dim
        return np.einsum("k,kij->ij", coeffs * np.array(self.signs), paulis)


def _conj_sign(s: int, c: int, p: int) -> int:
    return -1 if symplectic_vec(s, c, p) else 1


def intrinsic_involution(p: int, which: CDType) -> Involution:
    """``T_I = (-1)^{1+zeta.alpha}``; ``T_II = T_I`` after conjugation by ``Y`` on qubit 1; ``T_III`` = conjugation by ``Z`` on qubit 1."""
    lead = 1 << (p - 1)
    n = 1 << (2 * p)
    if which is CDType.AI:
        signs = tuple(1 if Spinor.from_vector(p, v).parity else -1 for v in range(n))
        return Involution(p, "T_I", signs)
    if which is CDType.AII:
        y = Spinor(p, lead, lead)
        signs = tuple(
            (1 if Spinor.from_vector(p, v).parity else -1) * _conj_sign(v, y.vector, p) for v in range(n)
        )
        return Involution(p, "T_II", signs, y)
    z = Spinor(p, lead, 0)
    signs = tuple(_conj_sign(v, z.vector, p) for v in range(n))
    return Involution(p, "T_III", signs, z)


def involution(d: CartanDecomposition) -> Involution:
    """The grading involution of ``d``: the sign of the side each spinor is on."""
    signs = tuple(1 if v in d.t else -1 for v in range(1 << (2 * d.width)))
    return Involution(d.width, "grading", signs)


def check_involution(inv: Involution, d: CartanDecomposition, matrix: bool | None = None) -> list[str]:
    """Problems found: wrong eigenspaces, not an automorphism, or a matrix mismatch."""
    p = inv.width
    out = []
    if inv.fixed() != d.t:
        out.append("fixed set differs from t")
    n = 1 << (2 * p)
    for x in range(n):
        for y in range(x + 1, n):
            if symplectic_vec(x, y, p) and inv.signs[x] * inv.signs[y] != inv.signs[x ^ y]:
                out.append(f"not an automorphism at {_name(p, x)}, {_name(p, y)}")
                break
    if matrix is None:
        matrix = p <= 3
    if matrix:
        for v in range(n):
            m = realize_matrix(Spinor.from_vector(p, v))
            if not np.allclose(inv.matrix_action(m), inv.signs[v] * m, atol=TOL):
                out.append(f"matrix action differs at {_name(p, v)}")
    return out


# Admissible types and decomposition sets.


def predicted_admissible(flavor: Flavor, p: int, r: int) -> frozenset[CDType]:
    # At p = 1 an AII split would leave p empty, so AII never occurs.
    all3 = frozenset(CDType) if p > 1 else frozenset({CDType.AI, CDType.AIII})
    if flavor is Flavor.QUOTIENT:
        return frozenset({CDType.AI}) if r == 0 else frozenset({CDType.AI, CDType.AII}) & all3
    if flavor is Flavor.COQUOTIENT_DEGRADE:
        return frozenset({CDType.AI, CDType.AIII}) if r == 1 else all3
    return frozenset({CDType.AI, CDType.AIII}) if r == 0 else all3


def admissible_table(partition: QAPartition) -> dict[SubspaceLabel, frozenset[CDType]]:
    """For every label, the types of the decompositions whose ``p`` absorbs it."""
    out: dict[SubspaceLabel, set[CDType]] = {lab: set() for lab in partition.table}
    for choice in subgroup_choices(partition.p, partition.r):
        d = _from_choice(partition, choice)
        if d is None:
            continue
        for lab in d.p_labels:
            out[lab].add(d.cd_type)
    return {lab: frozenset(types) for lab, types in out.items()}


def admissible_types(structure: QuotientStructure) -> frozenset[CDType]:
    """Types of the decompositions whose ``p`` absorbs the center subspace."""
    return admissible_table(structure.partition)[structure.center]


def decomposition_set(p: int, r: int, cd_type: CDType, cartans=None) -> set[frozenset[int]]:
    """``D_type{B^[r]}``: every ``t`` of that type from every rank-r generator of every Cartan subalgebra."""
    out: set[frozenset[int]] = set()
    for c in cartans if cartans is not None else all_cartan_subalgebras(p):
        for gen in enumerate_bi_subalgebras(c, r):
            part = build_partition(gen)
            for choice in subgroup_choices(p, r):
                d = _from_choice(part, choice)
                if d is not None and d.cd_type is cd_type:
                    out.add(d.key)
    return out


@dataclass
class IdentityReport:
    p: int
    sizes: dict[str, int]
    equalities: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.equalities.values())


def decomposition_set_identities(p: int) -> IdentityReport:
    """``D_I{C} = D_I{B^[r]}`` and ``D_III{C} = D_III{B^[r]}`` for ``1 <= r < p``, plus ``D_II`` across ``r >= 1``."""
    sets: dict[tuple[str, int], set[frozenset[int]]] = {}
    for r in range(p):
        for ty in CDType:
            if ty is CDType.AII and r == 0:
                continue
            sets[(ty.value, r)] = decomposition_set(p, r, ty)
    sizes = {f"D_{ty}{{r={r}}}": len(s) for (ty, r), s in sets.items()}
    eq = {}
    for r in range(1, p):
        eq[f"D_AI{{C}} = D_AI{{B^[{r}]}}"] = sets[("AI", 0)] == sets[("AI", r)]
        eq[f"D_AIII{{C}} = D_AIII{{B^[{r}]}}"] = sets[("AIII", 0)] == sets[("AIII", r)]
    for r in range(2, p):
        eq[f"D_AII{{B^[1]}} = D_AII{{B^[{r}]}}"] = sets[("AII", 1)] == sets[("AII", r)]
    eq["no AII at rank 0"] = not decomposition_set(p, 0, CDType.AII)
    return IdentityReport(p, sizes, eq)


@dataclass
class ContainmentReport:
    p: int
    checked: dict[str, int]
    misses: list[str]

    @property
    def ok(self) -> bool:
        return not self.misses


def _keys_of(partition: QAPartition, cd_type: CDType) -> set[frozenset[int]]:
    out = set()
    for choice in subgroup_choices(partition.p, partition.r):
        d = _from_choice(partition, choice)
        if d is not None and d.cd_type is cd_type:
            out.add(d.key)
    return out


def _realized_at(key: frozenset[int], r: int, cd_type: CDType, gens: list) -> bool:
    for gen in gens:
        part = build_partition(gen)
        if all(cell - {0} <= key or not (cell & key) for cell in part.table.values()):
            if key in _keys_of(part, cd_type):
                return True
    return False


def sample_identity_containment(p: int, samples: int, rng: np.random.Generator) -> ContainmentReport:
    """Two-way sampled containment for the identities of :func:`decomposition_set_identities`.

    Forward: ``t`` drawn from random rank-r generators must lie in the
    exhaustive reference set (rank 0 for AI/AIII, rank 1 for AII).
    Backward: reference members drawn at random must be realized by some
    rank-r generator.
    """
    cartans = all_cartan_subalgebras(p)
    gens = {r: [g for c in cartans for g in enumerate_bi_subalgebras(c, r)] for r in range(p)}
    refs = {
        CDType.AI: decomposition_set(p, 0, CDType.AI, cartans),
        CDType.AIII: decomposition_set(p, 0, CDType.AIII, cartans),
        CDType.AII: decomposition_set(p, 1, CDType.AII, cartans),
    }
    checked: dict[str, int] = {}
    misses: list[str] = []
    for ty, ref in refs.items():
        lo = 2 if ty is CDType.AII else 1
        for r in range(lo, p):
            tag = f"{ty}@r={r}"
            n = 0
            for k in rng.choice(len(gens[r]), size=min(samples, len(gens[r])), replace=False):
                for key in _keys_of(build_partition(gens[r][k]), ty):
                    n += 1
                    if key not in ref:
                        misses.append(f"{tag}: forward miss")
            ordered = sorted(ref, key=sorted)
            for k in rng.choice(len(ordered), size=min(samples, len(ordered)), replace=False):
                n += 1
                pool = [gens[r][j] for j in rng.permutation(len(gens[r]))]
                if not _realized_at(ordered[k], r, ty, pool):
                    misses.append(f"{tag}: backward miss")
            checked[tag] = n
    return ContainmentReport(p, checked, misses)


def render_decomposition(d: CartanDecomposition) -> str:
    head = f"{d.cd_type} ({d.kind}), |t| = {d.t_size}"
    if not d.t_labels:
        return head
    tl = ", ".join(lab.name() for lab in sorted(d.t_labels, key=SubspaceLabel.sort_key) if d.partition.table[lab])
    pl = ", ".join(lab.name() for lab in sorted(d.p_labels, key=SubspaceLabel.sort_key) if d.partition.table[lab])
    return f"{head}\nt = {{{tl}}}\np = {{{pl}}}"


__all__ = [
    "CDType",
    "CartanDecomposition",
    "ContainmentReport",
    "DecompositionError",
    "DecompositionReport",
    "IdentityReport",
    "Involution",
    "Kind",
    "SubgroupChoice",
    "admissible_table",
    "admissible_types",
    "all_labels",
    "check_involution",
    "classify_type",
    "decomposition_for",
    "decomposition_set",
    "decomposition_set_identities",
    "degrade_subgroup",
    "enumerate_decompositions",
    "expected_t_size",
    "from_sets",
    "intrinsic_decomposition",
    "intrinsic_involution",
    "involution",
    "max_abelian_subset",
    "mutate_swap",
    "predicted_admissible",
    "render_decomposition",
    "sample_identity_containment",
    "subgroup_choices",
    "type_from_abelian",
    "verify_decomposition",
]
