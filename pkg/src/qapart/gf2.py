"""GF(2) linear algebra on int bitsets.

Vectors are plain Python ints; bit ``j`` is coordinate ``j``.  Pivots are
taken at the highest set bit so that reduced bases come out sorted in a
deterministic order.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence


def parity(x: int) -> int:
    """Return the number of set bits of ``x`` modulo 2."""
    return x.bit_count() & 1


class XorBasis:
    """Incremental echelon basis that remembers how each row was formed.

    Every stored row carries a mask over the indices of the vectors that were
    inserted, so :meth:`express` can write a vector in terms of the original
    generators rather than the echelon rows.
    """

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, int]] = {}
        self._count = 0
        self.generators: list[int] = []

    def __len__(self) -> int:
        return len(self.generators)

    def reduce(self, v: int) -> tuple[int, int]:
        """Return ``(residual, combo)`` with ``v = residual + sum(gen[k] for k in combo)``."""
        combo = 0
        for pivot in sorted(self._rows, reverse=True):
            if (v >> pivot) & 1:
                row, mask = self._rows[pivot]
                v ^= row
                combo ^= mask
        return v, combo

    def insert(self, v: int) -> bool:
        """Add ``v``; return False if it was already in the span."""
        residual, combo = self.reduce(v)
        if residual == 0:
            return False
        combo ^= 1 << self._count
        self._rows[residual.bit_length() - 1] = (residual, combo)
        self.generators.append(v)
        self._count += 1
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def express(self, v: int) -> int | None:
        """Coordinates of ``v`` over the inserted generators, or None if outside."""
        residual, combo = self.reduce(v)
        return combo if residual == 0 else None


def reduced_basis(vectors: Iterable[int]) -> list[int]:
    """Fully reduced echelon basis of the span, sorted descending by pivot."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows = [min(r, r ^ v) for r in rows]
            rows.append(v)
    return sorted(rows, reverse=True)


def rank(vectors: Iterable[int]) -> int:
    return len(reduced_basis(vectors))


def span(basis: Sequence[int]) -> list[int]:
    """All ``2**len(basis)`` combinations, sorted ascending."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return sorted(set(out))


def is_independent(vectors: Sequence[int]) -> bool:
    return rank(vectors) == len(vectors)


def solve(rows: Sequence[int], rhs: Sequence[int]) -> int | None:
    """Solve ``row_k . x = rhs_k`` for all k; free variables set to 0.

    ``rows[k]`` is a bitmask over the unknowns.  Returns the
    solution as a bitmask, or None if the system is inconsistent.
    """
    pivots: dict[int, tuple[int, int]] = {}
    for row, b in zip(rows, rhs):
        b &= 1
        for col in sorted(pivots, reverse=True):
            if (row >> col) & 1:
                prow, pb = pivots[col]
                row ^= prow
                b ^= pb
        if row == 0:
            if b:
                return None
            continue
        col = row.bit_length() - 1
        for c, (prow, pb) in list(pivots.items()):
            if (prow >> col) & 1:
                pivots[c] = (prow ^ row, pb ^ b)
        pivots[col] = (row, b)
    x = 0
    # Back substitution: every pivot row is reduced against the other pivots,
    # so with free variables at 0 each pivot variable equals its rhs bit.
    for col, (_, b) in pivots.items():
        if b:
            x |= 1 << col
    return x


def nullspace(rows: Sequence[int], nvars: int) -> list[int]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    echelon = reduced_basis(rows)
    pivot_cols = {r.bit_length() - 1: r for r in echelon}
    basis = []
    for free in range(nvars):
        if free in pivot_cols:
            continue
        x = 1 << free
        for col, r in pivot_cols.items():
            if (r >> free) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def extend_basis(basis: Sequence[int], candidates: Iterable[int]) -> list[int]:
    """Greedily append candidates that are independent of everything so far."""
    xb = XorBasis()
    for b in basis:
        xb.insert(b)
    added = []
    for c in candidates:
        if xb.insert(c):
            added.append(c)
    return added


def enumerate_subspaces(n: int, k: int) -> Iterator[list[int]]:
    """Yield every k-dimensional subspace of GF(2)^n as a reduced basis.

    Subspaces are produced once each, keyed by their reduced echelon form
    with pivots at the highest bits; the order is deterministic.
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield []
        return

    def rec(start_pivot: int, remaining: int, pivots: list[int]) -> Iterator[list[int]]:
        if remaining == 0:
            yield from _fill(pivots)
            return
        for pv in range(start_pivot, remaining - 2, -1):
            yield from rec(pv - 1, remaining - 1, pivots + [pv])

    def _fill(pivots: list[int]) -> Iterator[list[int]]:
        pivot_set = set(pivots)
        free_by_row = []
        for pv in pivots:
            free_by_row.append([c for c in range(pv) if c not in pivot_set])
        total = sum(len(f) for f in free_by_row)
        for mask in range(1 << total):
            rows = []
            shift = 0
            for pv, free in zip(pivots, free_by_row):
                row = 1 << pv
                for j, c in enumerate(free):
                    if (mask >> (shift + j)) & 1:
                        row |= 1 << c
                shift += len(free)
                rows.append(row)
            yield rows

    yield from rec(n - 1, k, [])


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of GF(2)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den
