"""Partitions of ``su(N)`` for ``N`` not a power of two, by truncating ``su(2^p)``.

Every spinor realization is cut down to its leading ``N x N`` block.  A
subspace survives as the span of the truncated matrices; two subspaces
overlap when the rank of their joint span falls short of the sum of ranks.
Ranks come from singular values with a relative threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .partition import QAPartition, SubspaceLabel, build_partition
from .pauli_core import Spinor, realize_matrix
from .subalgebra import canonical_generator

RANK_TOL = 1e-8
MAX_N = 16


class DimensionError(ValueError):
    """Raised for dimensions outside ``2..16`` or ranks above ``p``."""


def max_rank(n: int) -> int:
    """``r0``: the largest ``r`` with ``2^r`` dividing ``n``."""
    if n < 2:
        raise DimensionError(f"dimension {n} is below 2")
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class DimensionProfile:
    n: int

    def __post_init__(self) -> None:
        if not 2 <= self.n <= MAX_N:
            raise DimensionError(f"dimension {self.n} outside 2..{MAX_N}")

    @property
    def p(self) -> int:
        return (self.n - 1).bit_length()

    @property
    def r0(self) -> int:
        return max_rank(self.n)

    @property
    def odd_part(self) -> int:
        return self.n >> self.r0


def numerical_rank(mats: np.ndarray, tol: float = RANK_TOL) -> int:
    """Rank of a stack of matrices viewed as vectors."""
    if len(mats) == 0:
        return 0
    flat = mats.reshape(len(mats), -1)
    s = np.linalg.svd(flat, compute_uv=False)
    if s.size == 0 or s[0] < tol:
        return 0
    return int(np.sum(s > tol * max(1.0, s[0])))


@dataclass
class TruncationReport:
    n: int
    p: int
    r: int
    dims: dict[SubspaceLabel, int] = field(default_factory=dict)
    collapsed: list[SubspaceLabel] = field(default_factory=list)
    overlaps: list[tuple[SubspaceLabel, SubspaceLabel]] = field(default_factory=list)
    degrade_direct: bool = True

    @property
    def disjoint(self) -> bool:
        return not self.overlaps and self.degrade_direct

    @property
    def non_null(self) -> bool:
        return not self.collapsed

    @property
    def degrade_overlaps(self) -> list[tuple[SubspaceLabel, SubspaceLabel]]:
        return [(a, b) for a, b in self.overlaps if a.is_degrade and b.is_degrade]

    @property
    def ok(self) -> bool:
        return self.disjoint and self.non_null

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "r": self.r,
            "disjoint": self.disjoint,
            "degrade_direct_sum": self.degrade_direct,
            "non_null": self.non_null,
            "overlaps": [(a.name(), b.name()) for a, b in self.overlaps],
            "collapsed": [lab.name() for lab in self.collapsed],
        }


@dataclass
class TruncatedPartition:
    partition: QAPartition
    n: int

    @cached_property
    def spans(self) -> dict[SubspaceLabel, np.ndarray]:
        """Truncated realizations per non-null label, zero images dropped."""
        out = {}
        for lab in self.partition.nonnull():
            mats = [realize_matrix(s)[: self.n, : self.n] for s in self.partition.spinors(lab)]
            mats = [m for m in mats if np.max(np.abs(m)) > RANK_TOL]
            out[lab] = np.array(mats).reshape(len(mats), self.n, self.n)
        return out

    @cached_property
    def ranks(self) -> dict[SubspaceLabel, int]:
        return {lab: numerical_rank(m) for lab, m in self.spans.items()}

    def overlap(self, a: SubspaceLabel, b: SubspaceLabel) -> bool:
        ma, mb = self.spans[a], self.spans[b]
        if not len(ma) or not len(mb):
            return False
        return numerical_rank(np.concatenate([ma, mb])) < self.ranks[a] + self.ranks[b]


def truncate_partition(partition: QAPartition, n: int, degrade_only: bool = False) -> TruncationReport:
    """Cut a width-``p`` partition down to ``su(n)`` and report collapse and overlap."""
    prof = DimensionProfile(n)
    if prof.p != partition.p:
        raise DimensionError(f"dimension {n} does not belong to width {partition.p}")
    tp = TruncatedPartition(partition, n)
    rep = TruncationReport(n, partition.p, partition.r)
    for lab, rk in tp.ranks.items():
        rep.dims[lab] = rk
        if rk == 0:
            rep.collapsed.append(lab)
    # Pairwise tests miss overlaps between unions of cosets, so also test
    # whether the degrade spans form a direct sum.
    degrade = [lab for lab in tp.ranks if lab.is_degrade and tp.ranks[lab]]
    joint = numerical_rank(np.concatenate([tp.spans[lab] for lab in degrade])) if degrade else 0
    rep.degrade_direct = joint == sum(tp.ranks[lab] for lab in degrade)
    labs = [lab for lab in tp.ranks if tp.ranks[lab] > 0 and (lab.is_degrade or not degrade_only)]
    for i, a in enumerate(labs):
        for b in labs[i + 1 :]:
            if tp.overlap(a, b):
                rep.overlaps.append((a, b))
    return rep


def canonical_truncation(n: int, r: int, degrade_only: bool = False) -> TruncationReport:
    prof = DimensionProfile(n)
    if not 0 <= r <= prof.p:
        raise DimensionError(f"rank {r} outside 0..{prof.p}")
    return truncate_partition(build_partition(canonical_generator(prof.p, r)), n, degrade_only)


def shared_diagonal(n: int, a: SubspaceLabel, b: SubspaceLabel, partition: QAPartition) -> np.ndarray | None:
    """A nonzero matrix in both truncated spans, or None."""
    tp = TruncatedPartition(partition, n)
    ma, mb = tp.spans[a], tp.spans[b]
    fa, fb = ma.reshape(len(ma), -1).T, mb.reshape(len(mb), -1).T
    # Solve fa x = fb y via the null space of [fa, -fb].
    joint = np.concatenate([fa, -fb], axis=1)
    _, s, vh = np.linalg.svd(joint)
    null = vh[np.sum(s > RANK_TOL * max(1.0, s[0])) :]
    if not len(null):
        return None
    x = null[0][: fa.shape[1]]
    m = (fa @ x).reshape(n, n)
    return m / m[np.unravel_index(np.argmax(np.abs(m)), m.shape)]


def check_truncated_commutation(partition: QAPartition, n: int, limit: int = 20) -> list[str]:
    """Commutators of truncated cells ``a``, ``b`` must lie in the truncated cell ``a + b``."""
    from .partition import tri_add

    tp = TruncatedPartition(partition, n)
    out = []
    labs = [lab for lab in tp.spans if tp.ranks[lab]]
    for a in labs:
        for b in labs:
            target = tri_add(a, b)
            span = tp.spans.get(target)
            for x in tp.spans[a]:
                for y in tp.spans[b]:
                    c = x @ y - y @ x
                    if np.max(np.abs(c)) < RANK_TOL:
                        continue
                    if span is None or not len(span) or numerical_rank(np.concatenate([span, c[None]])) > tp.ranks[target]:
                        out.append(f"[{a.name()}, {b.name()}] leaves {target.name()}")
                        break
                else:
                    continue
                break
            if len(out) >= limit:
                return out
    return out


__all__ = [
    "DimensionError",
    "DimensionProfile",
    "TruncatedPartition",
    "TruncationReport",
    "canonical_truncation",
    "check_truncated_commutation",
    "max_rank",
    "numerical_rank",
    "shared_diagonal",
    "truncate_partition",
]
