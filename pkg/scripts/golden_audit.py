"""Compare every golden figure against the rebuilt structures and list internal defects."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import golden  # noqa: E402


@dataclass(frozen=True)
class AuditConfig:
    include_decompositions: bool = True
    output: str | None = None


def run(cfg: AuditConfig) -> dict:
    figures = {}
    for fig in golden.figure_setups():
        cmp = golden.compare(fig)
        figures[fig] = {"exact": cmp.ok, "summary": cmp.summary(), "defects": golden.figure_defects(fig)}
    out = {"config": asdict(cfg), "figures": figures}
    if cfg.include_decompositions:
        out["decompositions"] = [
            {"figure": b.figure, "block": b.symbol, "stated": b.stated, "found": b.found, "ok": b.ok, "detail": b.detail}
            for b in golden.decomposition_table_results()
        ]
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-decompositions", action="store_true")
    ap.add_argument("--output")
    args = ap.parse_args()
    cfg = AuditConfig(not args.no_decompositions, args.output)
    res = run(cfg)
    for fig, v in res["figures"].items():
        print(f"{'exact ' if v['exact'] else 'DIFFER'}  {v['summary']}")
    for b in res.get("decompositions", []):
        print(f"{'ok    ' if b['ok'] else 'DIFFER'}  {b['figure']} {b['block']}: stated {b['stated']}, found {b['found']}")
    if cfg.output:
        Path(cfg.output).write_text(json.dumps(res, indent=2))


if __name__ == "__main__":
    main()
