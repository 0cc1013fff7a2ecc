"""Rank bound for truncated partitions: clean up to r0, degrade overlap above."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from qapart.dimension import DimensionProfile, canonical_truncation


@dataclass(frozen=True)
class SweepConfig:
    n_min: int = 5
    n_max: int = 16
    tol: float = 1e-8


def run(cfg: SweepConfig) -> dict:
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        prof = DimensionProfile(n)
        for r in range(prof.p + 1):
            rep = canonical_truncation(n, r, degrade_only=r > prof.r0)
            rows.append(
                {
                    "N": n,
                    "r": r,
                    "r0": prof.r0,
                    "clean": rep.ok,
                    "degrade_overlaps": len(rep.degrade_overlaps),
                    "degrade_direct_sum": rep.degrade_direct,
                    "agrees": rep.ok if r <= prof.r0 else not rep.degrade_direct,
                }
            )
    return {"config": asdict(cfg), "rows": rows, "all_agree": all(x["agrees"] for x in rows)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=5)
    ap.add_argument("--n-max", type=int, default=16)
    args = ap.parse_args()
    res = run(SweepConfig(args.n_min, args.n_max))
    for row in res["rows"]:
        print(f"su({row['N']:2d}) r={row['r']} r0={row['r0']} clean={row['clean']!s:5} overlaps={row['degrade_overlaps']} direct={row['degrade_direct_sum']!s:5} agrees={row['agrees']}")
    print("all agree" if res["all_agree"] else "DISAGREEMENT")


if __name__ == "__main__":
    main()
