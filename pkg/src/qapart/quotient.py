"""Quotient and co-quotient algebras, pair types, census and rank transitions.

A structure is fixed by a center label ``c``.  Every other label ``x`` is
paired with ``x (.) c`` (tri-addition), so the pair that holds ``c`` itself
is ``{c, (0,0,0)}`` and is kept apart as the center pair.  The quotient
algebra uses ``c = (0,1,0)``, i.e. ``B^[r]``; a co-quotient algebra uses any
other non-null subspace.
"""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cache

import numpy as np

from .pauli_core import Spinor, symplectic_vec
from .partition import (
    QAPartition,
    SubspaceLabel,
    all_labels,
    build_partition,
    tri_add,
)
from .subalgebra import BiSubalgebra, SpinorSet, maximal_by_label, span_vectors


class QuotientError(ValueError):
    """Raised on invalid centers or unsupported rank transitions."""


class PairType(enum.Enum):
    DEGRADE_I = "degrade-I"
    DEGRADE_II = "degrade-II"
    DEGRADE_III = "degrade-III"
    REGULAR_I = "regular-I"
    REGULAR_II = "regular-II"
    REGULAR_III = "regular-III"

    def __str__(self) -> str:
        return self.value


class Flavor(enum.Enum):
    QUOTIENT = "quotient"
    COQUOTIENT_DEGRADE = "coquotient-degrade"
    COQUOTIENT_REGULAR = "coquotient-regular"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ConjugatePair:
    first: SubspaceLabel
    second: SubspaceLabel
    ptype: PairType


def _is_degrade_doublet(partition: QAPartition, beta: int) -> bool:
    """True iff ``B_beta`` contains ``B^[r]``."""
    return partition.generator.vectors <= maximal_by_label(partition.cartan, beta).vectors


def classify_pair(partition: QAPartition, first: SubspaceLabel, second: SubspaceLabel) -> PairType:
    """Pair type read from nullity and from the doublets' relation to ``B^[r]``."""
    kinds = []
    for lab in (first, second):
        if not partition.table[lab]:
            kinds.append("null")
        elif _is_degrade_doublet(partition, lab.beta):
            kinds.append("degrade")
        else:
            kinds.append("regular")
    key = tuple(sorted(kinds))
    table = {
        ("degrade", "null"): PairType.DEGRADE_I,
        ("null", "null"): PairType.DEGRADE_II,
        ("null", "regular"): PairType.DEGRADE_III,
        ("regular", "regular"): PairType.REGULAR_I,
        ("degrade", "degrade"): PairType.REGULAR_II,
        ("degrade", "regular"): PairType.REGULAR_III,
    }
    if key not in table:
        raise QuotientError(f"no pair type for {first}, {second}")
    return table[key]


@dataclass(frozen=True)
class QuotientStructure:
    """A center subspace and the conjugate pairs arranged around it."""

    partition: QAPartition
    center: SubspaceLabel
    flavor: Flavor
    center_pair: ConjugatePair
    pairs: tuple[ConjugatePair, ...]
    history: tuple[BiSubalgebra, ...] = field(default=(), compare=False)

    @property
    def p(self) -> int:
        return self.partition.p

    @property
    def r(self) -> int:
        return self.partition.r

    @property
    def center_set(self) -> frozenset[int]:
        return self.partition.table[self.center]

    def census(self, include_center: bool = False) -> dict[PairType, int]:
        counts = Counter(pair.ptype for pair in self.pairs)
        if include_center:
            counts[self.center_pair.ptype] += 1
        return {t: counts.get(t, 0) for t in PairType}

    def pair_sets(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        t = self.partition.table
        return [(t[pair.first], t[pair.second]) for pair in self.pairs]

    def to_json(self) -> dict:
        t = self.partition

        def members(lab: SubspaceLabel) -> list[str]:
            return [str(s) for s in t.spinors(lab)]

        return {
            "flavor": str(self.flavor),
            "p": self.p,
            "r": self.r,
            "generator": [str(s) for s in t.generator.members.basis_spinors],
            "center": {**self.center.to_json(), "name": self.center.name(), "members": members(self.center)},
            "pairs": [
                {
                    "type": str(pair.ptype),
                    "first": {**pair.first.to_json(), "name": pair.first.name(), "members": members(pair.first)},
                    "second": {**pair.second.to_json(), "name": pair.second.name(), "members": members(pair.second)},
                }
                for pair in self.pairs
            ],
            "census": {str(k): v for k, v in self.census().items() if v},
        }


def _pair_order(partition: QAPartition, pair: ConjugatePair) -> tuple:
    degrade_first = 0 if pair.first.beta == 0 or pair.second.beta == 0 else 1
    a = min(pair.first.sort_key(), pair.second.sort_key())
    return (degrade_first, a)


def _assemble(partition: QAPartition, center: SubspaceLabel, flavor: Flavor) -> QuotientStructure:
    p, r = partition.p, partition.r
    zero = SubspaceLabel(p, r, 0, 0, 0)
    seen: set[SubspaceLabel] = {center, zero}
    pairs = []
    for lab in all_labels(p, r):
        if lab in seen:
            continue
        partner = tri_add(lab, center)
        seen.update((lab, partner))
        first, second = (lab, partner) if lab.epsilon >= partner.epsilon else (partner, lab)
        pairs.append(ConjugatePair(first, second, classify_pair(partition, first, second)))
    pairs.sort(key=lambda pr: _pair_order(partition, pr))
    center_pair = ConjugatePair(center, zero, classify_pair(partition, center, zero))
    return QuotientStructure(partition, center, flavor, center_pair, tuple(pairs))


def build_quotient(partition: QAPartition) -> QuotientStructure:
    """Quotient algebra with ``B^[r]`` as the center subalgebra."""
    return _assemble(partition, SubspaceLabel.identity(partition.p, partition.r), Flavor.QUOTIENT)


def build_coquotient(partition: QAPartition, center: SubspaceLabel) -> QuotientStructure:
    """Co-quotient algebra given by a non-null subspace other than ``B^[r]``."""
    if (center.p, center.r) != (partition.p, partition.r):
        raise QuotientError("center label has the wrong shape")
    if not partition.table[center]:
        raise QuotientError(f"center {center.name()} is null")
    if center == SubspaceLabel.identity(partition.p, partition.r):
        raise QuotientError("the generator itself gives the quotient algebra, not a co-quotient")
    if _is_degrade_doublet(partition, center.beta):
        flavor = Flavor.COQUOTIENT_DEGRADE
    else:
        flavor = Flavor.COQUOTIENT_REGULAR
    return _assemble(partition, center, flavor)


def coquotient_centers(partition: QAPartition) -> list[SubspaceLabel]:
    ident = SubspaceLabel.identity(partition.p, partition.r)
    return [lab for lab in partition.nonnull() if lab != ident]


# Census formulas.  ``stated_census`` holds the counts as stated;
# ``expected_census`` is what the construction yields.  They disagree on
# both co-quotient flavors.  Co-quotient counts include the center pair
# ``{center, (0,0,0)}``.


def stated_census(flavor: Flavor, p: int, r: int) -> dict[PairType, int]:
    if flavor is Flavor.QUOTIENT:
        out = {PairType.DEGRADE_I: 2 ** (2 * r) - 1, PairType.REGULAR_I: 2 ** (p + r) - 2 ** (2 * r)}
    elif flavor is Flavor.COQUOTIENT_DEGRADE:
        out = {
            PairType.DEGRADE_I: 2 ** (2 * r - 1),
            PairType.REGULAR_II: 2 ** (2 * r - 2),
            PairType.REGULAR_I: 2 ** (p + r) - 3 * 2 ** (2 * r - 2),
        }
    else:
        out = {
            PairType.DEGRADE_III: 2 ** (2 * r),
            PairType.REGULAR_I: 2 ** (2 * r),
            PairType.REGULAR_III: 2 ** (p + r) - 2 ** (2 * r + 1),
        }
    return {t: out.get(t, 0) for t in PairType}


def expected_census(flavor: Flavor, p: int, r: int) -> dict[PairType, int]:
    """Counts including the center pair.

    Quotient: the center pair ``{B^[r], 0}`` is not a conjugate pair of
    the algebra, so it is left out there to match the usual statement.
    """
    if flavor is Flavor.QUOTIENT:
        out = {PairType.DEGRADE_I: 2 ** (2 * r) - 1, PairType.REGULAR_I: 2 ** (p + r) - 2 ** (2 * r)}
    elif flavor is Flavor.COQUOTIENT_DEGRADE:
        if r < 1:
            raise QuotientError("a degrade-center co-quotient needs r >= 1")
        out = {
            PairType.DEGRADE_I: 2 ** (2 * r - 1),
            PairType.DEGRADE_II: 2 ** (2 * r - 2),
            PairType.REGULAR_II: 2 ** (2 * r - 2),
            PairType.REGULAR_I: 2 ** (p + r) - 2 ** (2 * r),
        }
    else:
        out = {
            PairType.DEGRADE_III: 2 ** (2 * r),
            PairType.REGULAR_III: 2 ** (2 * r),
            PairType.REGULAR_I: 2 ** (p + r) - 2 ** (2 * r + 1),
        }
    return {t: out.get(t, 0) for t in PairType}


def structure_census(q: QuotientStructure) -> dict[PairType, int]:
    """Census in the convention of :func:`expected_census`."""
    return q.census(include_center=q.flavor is not Flavor.QUOTIENT)


def pair_count(flavor: Flavor, p: int, r: int) -> int:
    """Number of conjugate pairs: ``2^{p+r} - 2^{2r-2}`` once null pairs are dropped for degrade centers."""
    if flavor is Flavor.COQUOTIENT_DEGRADE:
        return 2 ** (p + r) - 2 ** (2 * r - 2)
    return 2 ** (p + r) - 1


@cache
def _commutation_matrix(p: int) -> np.ndarray:
    """``M[s, t]`` is True when the words ``s`` and ``t`` anticommute."""
    w = np.arange(1 << (2 * p))
    mask = (1 << p) - 1
    x = ((w[:, None] >> p) & w[None, :] & mask) ^ ((w[None, :] >> p) & w[:, None] & mask)
    return sum((x >> k) & 1 for k in range(p)) % 2 == 1


def verify_pair_closure(q: QuotientStructure) -> list[tuple[str, str]]:
    """Commutators of two pairs land in one pair (or the center pair).

    Returns witnesses ``(s, t)`` whose commutator image leaves the predicted pair.
    """
    part = q.partition
    p = part.p
    owner: dict[SubspaceLabel, int] = {}
    all_pairs = [q.center_pair, *q.pairs]
    for k, pair in enumerate(all_pairs):
        owner[pair.first] = owner[pair.second] = k
    word_owner = np.full(1 << (2 * p), -1)
    for lab, cell in part.table.items():
        if lab in owner:
            word_owner[list(cell)] = owner[lab]
    # Tri-addition is XOR on packed labels.
    def pack(lab: SubspaceLabel) -> int:
        return (lab.beta << (part.r + 1)) | (lab.epsilon << part.r) | lab.i

    code_owner = np.full(1 << (p + part.r + 1), -1)
    for lab, k in owner.items():
        code_owner[pack(lab)] = k
    firsts = np.array([pack(pair.first) for pair in all_pairs])
    ab = firsts[:, None] ^ firsts[None, :]
    target = np.stack([code_owner[ab], code_owner[ab ^ pack(q.center)]])
    words = np.flatnonzero(word_owner >= 0)
    own = word_owner[words]
    got = word_owner[words[:, None] ^ words[None, :]]
    hit = _commutation_matrix(p)[np.ix_(words, words)]
    want0, want1 = target[0][own[:, None], own[None, :]], target[1][own[:, None], own[None, :]]
    rows, cols = np.nonzero(hit & ((got < 0) | ((got != want0) & (got != want1))))
    bad = []
    for i, j in zip(rows, cols):
        if i <= j:
            bad.append((str(Spinor.from_vector(p, int(words[i]))), str(Spinor.from_vector(p, int(words[j])))))
    return bad


def _locate(partition: QAPartition, members: frozenset[int]) -> SubspaceLabel:
    for lab, cell in partition.table.items():
        if cell == members:
            return lab
    raise QuotientError("center set is not a single subspace of the rebuilt partition")


def _check_refines(fine: QAPartition, coarse: QAPartition) -> None:
    """Every coarse subspace must be a union of fine ones."""
    for cell in coarse.table.values():
        if not cell:
            continue
        labs = {fine.classify(Spinor.from_vector(fine.p, v)) for v in cell}
        if frozenset().union(*(fine.table[lab] for lab in labs)) != cell:
            raise QuotientError("rebuilt partition does not refine the original")


def merge_options(q: QuotientStructure) -> list[int]:
    """Coset indices ``m`` with ``B^[r,m]`` disjoint from the center's block ``B_1``."""
    if q.flavor is not Flavor.COQUOTIENT_DEGRADE:
        raise QuotientError("merging needs a co-quotient with a degrade center")
    if q.r < 1:
        raise QuotientError("merging needs rank r >= 1")
    block = maximal_by_label(q.partition.cartan, q.center.beta).vectors
    return [m for m in range(1, 1 << q.r) if not (q.partition.coset(m) & block)]


def merge(q: QuotientStructure, via: int | None = None) -> QuotientStructure:
    """Rank ``r-1`` co-quotient with the same center set.

    The new generator is ``B^[r] | B^[r,m]`` for a coset disjoint from the
    center's block.  ``via`` selects ``m``; by default the generator recorded
    by a preceding :func:`detach` is reused if it qualifies, else the
    smallest valid ``m``.  A center inside ``C`` itself cannot be merged.
    """
    options = merge_options(q)
    if not options:
        raise QuotientError(f"no coset is disjoint from the block of {q.center.name()}")
    part = q.partition
    if via is None:
        via = options[0]
        if q.history:
            prev = q.history[-1].vectors
            for m in options:
                if part.generator.vectors | part.coset(m) == prev:
                    via = m
                    break
    if via not in options:
        raise QuotientError(f"coset {via} is not disjoint from the center block")
    words = list(part.generator.members.basis) + [min(part.coset(via))]
    new_gen = BiSubalgebra(part.cartan, span_vectors(words, part.p))
    new_part = build_partition(new_gen)
    _check_refines(part, new_part)
    center = _locate(new_part, q.center_set)
    out = build_coquotient(new_part, center)
    return _with_history(out, q.history[:-1] if q.history and q.history[-1].vectors == new_gen.vectors else q.history + (part.generator,))


def detach(q: QuotientStructure) -> QuotientStructure:
    """Rank ``r+1`` co-quotient with the same center set, generated by ``B_1 & B^[r]``."""
    if q.flavor is not Flavor.COQUOTIENT_REGULAR:
        raise QuotientError("detaching needs a co-quotient with a regular center")
    part = q.partition
    if part.r >= part.p:
        raise QuotientError("rank is already maximal")
    block = maximal_by_label(part.cartan, q.center.beta).vectors
    new_gen = BiSubalgebra(part.cartan, SpinorSet(part.p, part.generator.vectors & block))
    new_part = build_partition(new_gen)
    _check_refines(new_part, part)
    center = _locate(new_part, q.center_set)
    return _with_history(build_coquotient(new_part, center), q.history + (part.generator,))


def _with_history(q: QuotientStructure, history: tuple[BiSubalgebra, ...]) -> QuotientStructure:
    return QuotientStructure(q.partition, q.center, q.flavor, q.center_pair, q.pairs, history)


@dataclass
class CenterReport:
    abelian: bool
    closed: bool
    coset: bool
    conjugate_ok: bool | None
    witnesses: list[str] = field(default_factory=list)

    @property
    def subalgebra_or_coset(self) -> bool:
        return self.closed or self.coset

    @property
    def ok(self) -> bool:
        return self.abelian and self.subalgebra_or_coset and self.conjugate_ok is not False


def check_center_theorems(
    center: Iterable[int],
    width: int,
    pairing: Iterable[tuple[Iterable[int], Iterable[int]]] | None = None,
) -> CenterReport:
    """Test a candidate center against the abelian and bi-subalgebra-or-coset theorems.

    With a ``pairing`` of ``(W, What)`` sets the conjugate-partition law
    ``[W, A] in What``, ``[What, A] in W``, ``[W, What] in A`` is checked too.
    """
    a = frozenset(center)
    p = width
    wit: list[str] = []

    def name(v: int) -> str:
        return str(Spinor.from_vector(p, v))

    abelian = True
    for x in a:
        for y in a:
            if x < y and symplectic_vec(x, y, p):
                abelian = False
                wit.append(f"non-commuting {name(x)} {name(y)}")
    closed = 0 in a and all((x ^ y) in a for x in a for y in a)
    diffs = frozenset(x ^ y for x in a for y in a)
    coset = bool(a) and len(diffs) == len(a) and all((x ^ y) in diffs for x in diffs for y in diffs)
    if not (closed or coset):
        wit.append("center is neither closed nor a coset of a closed set")

    conjugate_ok = None
    if pairing is not None:
        conjugate_ok = True
        for w, what in pairing:
            w, what = frozenset(w), frozenset(what)
            for x in w:
                for y in a:
                    if symplectic_vec(x, y, p) and (x ^ y) not in what:
                        conjugate_ok = False
                        wit.append(f"[{name(x)}, {name(y)}] leaves the partner")
                for y in what:
                    if symplectic_vec(x, y, p) and (x ^ y) not in a:
                        conjugate_ok = False
                        wit.append(f"[{name(x)}, {name(y)}] leaves the center")
            for x in what:
                for y in a:
                    if symplectic_vec(x, y, p) and (x ^ y) not in w:
                        conjugate_ok = False
                        wit.append(f"[{name(x)}, {name(y)}] leaves the partner")
    return CenterReport(abelian, closed, coset, conjugate_ok, wit)


def structure_pairing(q: QuotientStructure) -> list[tuple[frozenset[int], frozenset[int]]]:
    return q.pair_sets()


def render_structure(q: QuotientStructure) -> str:
    part = q.partition

    def members(lab: SubspaceLabel) -> str:
        ss = part.spinors(lab)
        return ", ".join(str(s) for s in ss) if ss else "{0}"

    lines = [f"center {q.center.name()}: {members(q.center)}", ""]
    for pair in q.pairs:
        lines.append(
            f"{pair.first.name()}: {members(pair.first)} | "
            f"{pair.second.name()}: {members(pair.second)}  [{pair.ptype}]"
        )
    lines.append("")
    census = ", ".join(f"{t}={n}" for t, n in q.census().items() if n)
    lines.append(f"{q.flavor}: {len(q.pairs)} pairs; {census}")
    return "\n".join(lines)
