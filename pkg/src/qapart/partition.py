"""Quotient-algebra partitions of rank r and their closure checks.

A partition generated by ``B^[r]`` inside a Cartan subalgebra ``C`` splits
the spinors of ``su(2^p)`` into ``2^{p+r+1}`` conditioned subspaces labelled
``(beta, epsilon, i)``.  Labels are read off a symplectic frame of ``C``:

* ``beta_k = omega(s, c_k)`` picks the maximal bi-subalgebra ``B_beta`` that
  commutes with ``s``;
* with ``u = (omega(s, d_k))_k``, the bisection parity is
  ``epsilon = 1 + beta . u`` and the coset index is ``i = M u``, where the
  rows of ``M`` are the coset functionals of ``B^[r]`` in ``C``.

Every cell is ``s + (B^[r] & s^perp)``, which is the structural fact the
tests use as an independent check of the labelling.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

from . import gf2
from .pauli_core import Spinor, bits, symplectic_vec
from .subalgebra import (
    BiSubalgebra,
    CartanSubalgebra,
    Frame,
    SubalgebraError,
    coset_transversal,
)


class PartitionError(ValueError):
    """Raised on malformed partitions or failed lookups."""


@dataclass(frozen=True, order=True)
class SubspaceLabel:
    """The triple ``(beta, epsilon, i)`` addressing ``W^epsilon(B_beta, B^[r]; i)``.

    ``beta`` and ``i`` are ints in printed digit order (width ``p`` and ``r``).
    """

    p: int
    r: int
    beta: int
    epsilon: int
    i: int

    def __post_init__(self) -> None:
        if not 0 <= self.beta < 1 << self.p:
            raise PartitionError(f"beta {self.beta} does not fit {self.p} bits")
        if self.epsilon not in (0, 1):
            raise PartitionError("epsilon must be 0 or 1")
        if not 0 <= self.i < 1 << self.r:
            raise PartitionError(f"index {self.i} does not fit {self.r} bits")

    @classmethod
    def identity(cls, p: int, r: int) -> SubspaceLabel:
        """Label of the generator ``B^[r]`` itself."""
        return cls(p, r, 0, 1, 0)

    @property
    def is_degrade(self) -> bool:
        return self.beta == 0

    @property
    def beta_text(self) -> str:
        return bits(self.beta, self.p)

    @property
    def i_text(self) -> str:
        return bits(self.i, self.r)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.beta, 1 - self.epsilon, self.i)

    def name(self) -> str:
        """Table name such as ``W(B_001,B^[1];0)`` or ``B^[2,01]``."""
        if self.r == 0:
            if self.beta == 0:
                return "C" if self.epsilon else "{0}"
            return f"{'W' if self.epsilon else 'What'}(B_{self.beta_text})"
        if self.beta == 0 and self.epsilon:
            return f"B^[{self.r},{self.i_text}]"
        head = "W" if self.epsilon else "What"
        b = "C" if self.beta == 0 else f"B_{self.beta_text}"
        return f"{head}({b},B^[{self.r}];{self.i_text})"

    def __str__(self) -> str:
        return f"({self.beta_text},{self.epsilon},{self.i_text})"

    def to_json(self) -> dict:
        return {"beta": self.beta_text, "epsilon": self.epsilon, "i": self.i_text}

    @classmethod
    def from_json(cls, obj: dict, p: int, r: int) -> SubspaceLabel:
        return cls(p, r, int(obj["beta"] or "0", 2), int(obj["epsilon"]), int(obj["i"] or "0", 2))


def _same_shape(l1: SubspaceLabel, l2: SubspaceLabel) -> None:
    if (l1.p, l1.r) != (l2.p, l2.r):
        raise PartitionError("labels come from partitions of different shape")


def tri_add(l1: SubspaceLabel, l2: SubspaceLabel) -> SubspaceLabel:
    """Componentwise XOR; the label of a commutator image."""
    _same_shape(l1, l2)
    return SubspaceLabel(l1.p, l1.r, l1.beta ^ l2.beta, l1.epsilon ^ l2.epsilon, l1.i ^ l2.i)


def anti_tri_add(l1: SubspaceLabel, l2: SubspaceLabel) -> SubspaceLabel:
    """Tri-addition with the parity flipped; the label of an anti-commutator image."""
    _same_shape(l1, l2)
    return SubspaceLabel(l1.p, l1.r, l1.beta ^ l2.beta, 1 ^ l1.epsilon ^ l2.epsilon, l1.i ^ l2.i)


def all_labels(p: int, r: int) -> list[SubspaceLabel]:
    out = [
        SubspaceLabel(p, r, beta, eps, i)
        for beta in range(1 << p)
        for eps in (1, 0)
        for i in range(1 << r)
    ]
    return sorted(out, key=SubspaceLabel.sort_key)


def coset_functionals(frame: Frame, generator: BiSubalgebra) -> tuple[int, ...]:
    """Rows ``m_k`` over the ``nu`` coordinates with ``m_k . nu(t_j) = delta_kj`` and ``m_k . nu(B) = 0``.

    ``t_1, t_2, ...`` is the coset transversal of ``B^[r]``; ``m_1`` feeds
    the last digit of the index ``i``.
    """
    cartan = generator.parent
    trans = coset_transversal(cartan, generator.members)
    base = [frame.cartan_coords(b) for b in generator.members.basis]
    tcoords = [frame.cartan_coords(t) for t in trans]
    rows = base + tcoords
    out = []
    for k in range(len(trans)):
        rhs = [0] * len(base) + [1 if j == k else 0 for j in range(len(trans))]
        m = gf2.solve(rows, rhs)
        if m is None:
            raise SubalgebraError("coset transversal is not independent of the generator")
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class QAPartition:
    """A partition table ``label -> set of symplectic words``.

    Every one of the ``2^{p+r+1}`` labels is present; null subspaces map to
    the empty set.  The identity spinor sits with ``B^[r]`` at ``(0, 1, 0)``.
    """

    generator: BiSubalgebra
    frame: Frame
    functionals: tuple[int, ...]
    table: dict[SubspaceLabel, frozenset[int]] = field(compare=False)

    @property
    def p(self) -> int:
        return self.generator.width

    @property
    def r(self) -> int:
        return self.generator.rank

    @property
    def cartan(self) -> CartanSubalgebra:
        return self.generator.parent

    @cached_property
    def _index(self) -> dict[int, SubspaceLabel]:
        out: dict[int, SubspaceLabel] = {}
        for lab, members in self.table.items():
            for v in members:
                if v in out:
                    raise PartitionError(
                        f"{Spinor.from_vector(self.p, v)} appears in {out[v]} and {lab}"
                    )
                out[v] = lab
        return out

    def label_of(self, v: int) -> SubspaceLabel:
        """Label computed from the frame, independent of the stored table."""
        return _frame_label(self.frame, self.functionals, self.r, v)

    def classify(self, s: Spinor) -> SubspaceLabel:
        if s.width != self.p:
            raise PartitionError(f"width {s.width} does not match partition width {self.p}")
        try:
            return self._index[s.vector]
        except KeyError:
            raise PartitionError(f"{s} is not in any subspace") from None

    def subspace(self, label: SubspaceLabel) -> frozenset[int]:
        return self.table[label]

    def spinors(self, label: SubspaceLabel) -> list[Spinor]:
        return [Spinor.from_vector(self.p, v) for v in sorted(self.table[label])]

    def labels(self) -> list[SubspaceLabel]:
        return sorted(self.table, key=SubspaceLabel.sort_key)

    def nonnull(self) -> list[SubspaceLabel]:
        return [lab for lab in self.labels() if self.table[lab]]

    def coset(self, i: int) -> frozenset[int]:
        """``B^[r,i]``."""
        return self.table[SubspaceLabel(self.p, self.r, 0, 1, i)]

    def generator_name(self) -> str:
        return "C" if self.r == 0 else f"B^[{self.r}]"

    def with_table(self, table: dict[SubspaceLabel, frozenset[int]]) -> QAPartition:
        """Copy with a replaced table; used to test the verifier on broken input."""
        return QAPartition(self.generator, self.frame, self.functionals, dict(table))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "generator": [str(s) for s in self.generator.members.basis_spinors],
            "cartan": [str(s) for s in self.cartan.basis_spinors],
            "rows": [
                {
                    **lab.to_json(),
                    "name": lab.name(),
                    "members": [str(s) for s in self.spinors(lab)],
                }
                for lab in self.labels()
            ],
        }


def _frame_label(frame: Frame, functionals: tuple[int, ...], r: int, v: int) -> SubspaceLabel:
    beta = frame.beta(v)
    u = frame.dual_coords(v)
    eps = 1 ^ gf2.parity(beta & u)
    i = 0
    for k, m in enumerate(functionals):
        if gf2.parity(m & u):
            i |= 1 << k
    return SubspaceLabel(frame.width, r, beta, eps, i)


def build_partition(generator: BiSubalgebra) -> QAPartition:
    """Partition of ``su(2^p)`` generated by ``B^[r]``."""
    p = generator.width
    r = generator.rank
    frame = generator.parent.frame
    funcs = coset_functionals(frame, generator)
    cells: dict[SubspaceLabel, set[int]] = {lab: set() for lab in all_labels(p, r)}
    for v in range(1 << (2 * p)):
        cells[_frame_label(frame, funcs, r, v)].add(v)
    table = {lab: frozenset(members) for lab, members in cells.items()}
    return QAPartition(generator, frame, funcs, table)


def structural_cell(generator: BiSubalgebra, v: int) -> frozenset[int]:
    """``v + (B^[r] & v^perp)``: the cell of ``v`` without any labelling."""
    p = generator.width
    return frozenset(v ^ b for b in generator.vectors if not symplectic_vec(v, b, p))


def classify(partition: QAPartition, s: Spinor) -> SubspaceLabel:
    return partition.classify(s)


@dataclass(frozen=True)
class Violation:
    check: str
    witnesses: tuple[str, ...]
    detail: str = ""


@dataclass
class ClosureReport:
    pairs_checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, check: str) -> int:
        return sum(1 for v in self.violations if v.check == check)

    def summary(self) -> str:
        if self.ok:
            return f"closure OK ({self.pairs_checked} pairs)"
        kinds = sorted({v.check for v in self.violations})
        return "closure FAILED: " + ", ".join(f"{k}={self.count(k)}" for k in kinds)


def _s(p: int, v: int) -> str:
    return str(Spinor.from_vector(p, v))


def verify_closure(partition: QAPartition, limit: int = 50) -> ClosureReport:
    """Exhaustive check of the stored table.

    Checks: ``commutator`` (non-commuting pairs obey tri-addition),
    ``anticommutator`` (commuting pairs obey anti-tri-addition),
    ``abelian`` (each subspace commutes internally), ``conjugate`` (the
    conjugate-partition law between ``W``, ``What`` and the cosets) and
    ``cover`` (every spinor sits in exactly one subspace).  At most
    ``limit`` witnesses are kept per check.
    """
    p = partition.p
    report = ClosureReport()
    counts: dict[str, int] = {}

    def add(check: str, witnesses: Iterable[int], detail: str = "") -> None:
        counts[check] = counts.get(check, 0) + 1
        if counts[check] <= limit:
            report.violations.append(Violation(check, tuple(_s(p, w) for w in witnesses), detail))

    index: dict[int, SubspaceLabel] = {}
    for lab, members in partition.table.items():
        for v in members:
            if v in index:
                add("cover", [v], f"in {index[v]} and {lab}")
            index[v] = lab
    for v in range(1 << (2 * p)):
        if v not in index:
            add("cover", [v], "missing")
    if counts.get("cover"):
        return report

    words = sorted(index)
    for a_pos, a in enumerate(words):
        la = index[a]
        for b in words[a_pos + 1 :]:
            lb = index[b]
            report.pairs_checked += 1
            got = index[a ^ b]
            if symplectic_vec(a, b, p):
                want = tri_add(la, lb)
                if got != want:
                    add("commutator", [a, b], f"image in {got}, expected {want}")
            else:
                want = anti_tri_add(la, lb)
                if got != want:
                    add("anticommutator", [a, b], f"image in {got}, expected {want}")

    for lab, members in partition.table.items():
        ms = sorted(members)
        for x_pos, x in enumerate(ms):
            for y in ms[x_pos + 1 :]:
                if symplectic_vec(x, y, p):
                    add("abelian", [x, y], f"both in {lab}")

    _check_conjugate_law(partition, index, add)
    return report


def _check_conjugate_law(partition: QAPartition, index: dict[int, SubspaceLabel], add) -> None:
    """``[W(i), B^[r,l]] in What(j)``, ``[What(j), B^[r,l]] in W(i)``, ``[W(i), What(j)] in B^[r,l]``."""
    p, r = partition.p, partition.r
    table = partition.table
    for beta in range(1, 1 << p):
        for i in range(1 << r):
            w = table[SubspaceLabel(p, r, beta, 1, i)]
            for j in range(1 << r):
                l = i ^ j
                what = table[SubspaceLabel(p, r, beta, 0, j)]
                coset = table[SubspaceLabel(p, r, 0, 1, l)]
                for x in w:
                    for y in coset:
                        if symplectic_vec(x, y, p) and (x ^ y) not in what:
                            add("conjugate", [x, y], f"[W;{i}] x B^[r,{l}] left What;{j}")
                    for y in what:
                        if symplectic_vec(x, y, p) and (x ^ y) not in coset:
                            add("conjugate", [x, y], f"[W;{i}] x [What;{j}] left B^[r,{l}]")
                for x in what:
                    for y in coset:
                        if symplectic_vec(x, y, p) and (x ^ y) not in w:
                            add("conjugate", [x, y], f"[What;{j}] x B^[r,{l}] left W;{i}")


def check_inclusion_convention(
    partition: QAPartition, samples: int, seed: int = 0
) -> list[tuple[str, ...]]:
    """Sample quadruples from ``W/What`` at indices ``i, j`` and test the adopted inclusion set.

    For ``s in W(i)``, ``sh in What(i)``, ``t in W(j)``, ``th in What(j)`` the
    sums ``s+t`` and ``sh+th`` must lie in ``B & B^[r,i+j]`` and the mixed sums
    ``sh+t`` and ``s+th`` in ``B^c & B^[r,i+j]``.  Returns failing quadruples.
    """
    p, r = partition.p, partition.r
    rng = random.Random(seed)
    candidates = []
    for beta in range(1, 1 << p):
        for i in range(1 << r):
            for j in range(1 << r):
                cells = [
                    partition.table[SubspaceLabel(p, r, beta, e, k)]
                    for e, k in ((1, i), (0, i), (1, j), (0, j))
                ]
                if all(cells):
                    candidates.append((beta, i ^ j, [sorted(c) for c in cells]))
    failures: list[tuple[str, ...]] = []
    if not candidates:
        return failures
    frame = partition.frame
    for _ in range(samples):
        beta, l, cells = rng.choice(candidates)
        s, sh, t, th = (rng.choice(c) for c in cells)
        coset = partition.coset(l)
        dvec = frame.dual_vector(beta)

        def inside(x: int) -> bool:
            return not symplectic_vec(x, dvec, p)

        ok = (
            (s ^ t) in coset
            and (sh ^ th) in coset
            and (sh ^ t) in coset
            and (s ^ th) in coset
            and inside(s ^ t)
            and inside(sh ^ th)
            and not inside(sh ^ t)
            and not inside(s ^ th)
        )
        if not ok:
            failures.append(tuple(_s(p, x) for x in (s, sh, t, th)))
    return failures


def render_table(partition: QAPartition) -> str:
    """Two-column layout: the center block, then one line per conjugate pair (W left, What right)."""
    lines = _render_rows(partition, _quotient_rows(partition))
    head = f"{partition.generator_name()}: {_members(partition, SubspaceLabel.identity(partition.p, partition.r))}"
    return "\n".join([head, ""] + lines)


def _members(partition: QAPartition, lab: SubspaceLabel) -> str:
    members = partition.spinors(lab)
    return ", ".join(str(s) for s in members) if members else "{0}"


def _quotient_rows(partition: QAPartition) -> Iterator[tuple[SubspaceLabel, SubspaceLabel]]:
    p, r = partition.p, partition.r
    for i in range(1, 1 << r):
        yield SubspaceLabel(p, r, 0, 1, i), SubspaceLabel(p, r, 0, 0, i)
    for beta in range(1, 1 << p):
        for i in range(1 << r):
            yield SubspaceLabel(p, r, beta, 1, i), SubspaceLabel(p, r, beta, 0, i)


def _render_rows(partition: QAPartition, rows: Iterable[tuple[SubspaceLabel, SubspaceLabel]]) -> list[str]:
    return [
        f"{a.name()}: {_members(partition, a)} | {b.name()}: {_members(partition, b)}"
        for a, b in rows
    ]


def partition_from_json(obj: dict, generator: BiSubalgebra) -> QAPartition:
    """Rebuild a partition from :meth:`QAPartition.to_json` output for the same generator."""
    p, r = int(obj["p"]), int(obj["r"])
    if (p, r) != (generator.width, generator.rank):
        raise PartitionError("JSON shape does not match the generator")
    table = {}
    for row in obj["rows"]:
        lab = SubspaceLabel.from_json(row, p, r)
        table[lab] = frozenset(Spinor.parse(m).vector for m in row["members"])
    frame = generator.parent.frame
    return QAPartition(generator, frame, coset_functionals(frame, generator), table)
