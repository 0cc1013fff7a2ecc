"""Pair census of every quotient and co-quotient structure at a given width."""

from __future__ import annotations

import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass

from qapart.partition import build_partition
from qapart.quotient import (
    build_coquotient,
    build_quotient,
    coquotient_centers,
    expected_census,
    stated_census,
    structure_census,
)
from qapart.subalgebra import all_cartan_subalgebras, enumerate_bi_subalgebras


@dataclass(frozen=True)
class CensusConfig:
    p: int = 2
    ranks: tuple[int, ...] | None = None


def run(cfg: CensusConfig) -> dict:
    ranks = cfg.ranks if cfg.ranks is not None else tuple(range(cfg.p + 1))
    rows: Counter = Counter()
    for c in all_cartan_subalgebras(cfg.p):
        for r in ranks:
            for gen in enumerate_bi_subalgebras(c, r):
                part = build_partition(gen)
                qs = [build_quotient(part)] + [build_coquotient(part, x) for x in coquotient_centers(part)]
                for q in qs:
                    got = structure_census(q)
                    key = (str(q.flavor), r, got == expected_census(q.flavor, cfg.p, r), got == stated_census(q.flavor, cfg.p, r))
                    rows[key] += 1
    return {
        "config": asdict(cfg),
        "rows": [
            {"flavor": f, "r": r, "matches_construction": a, "matches_stated": b, "structures": n}
            for (f, r, a, b), n in sorted(rows.items())
        ],
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--ranks", type=int, nargs="*")
    args = ap.parse_args()
    print(json.dumps(run(CensusConfig(args.p, tuple(args.ranks) if args.ranks else None)), indent=2))


if __name__ == "__main__":
    main()
