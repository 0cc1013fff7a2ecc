"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.  The worker
count for ``verify`` comes from ``QAPART_THREADS`` (default: 1).  Workers are
processes, since the per-generator checks hold the GIL.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import gf2
from .decomposition import (
    CDType,
    enumerate_decompositions,
    expected_t_size,
    intrinsic_decomposition,
    render_decomposition,
    verify_decomposition,
)
from .dimension import DimensionError, DimensionProfile, canonical_truncation
from .partition import SubspaceLabel, build_partition, render_table, verify_closure
from .pauli_core import Spinor, WidthError, symplectic_vec
from .quotient import (
    build_coquotient,
    build_quotient,
    coquotient_centers,
    expected_census,
    render_structure,
    structure_census,
    verify_pair_closure,
)
from .subalgebra import (
    BiSubalgebra,
    CartanSubalgebra,
    SpinorSet,
    SubalgebraError,
    all_cartan_subalgebras,
    canonical_generator,
    count_bi_subalgebras,
    count_cartan_supersets,
    count_k_supersets,
    enumerate_bi_subalgebras,
    enumerate_cartan_supersets,
    enumerate_supersets,
    intrinsic_cartan,
    intrinsic_generator,
)
from .transform import (
    TransformError,
    build_QOmega,
    build_Qr,
    check_qap_preservation,
    spinor_mapping,
)

THREADS_ENV = "QAPART_THREADS"


class UsageError(Exception):
    """Bad flags or selectors; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int | None
    n: int | None
    rank: int | None
    generator: str
    cartan: str
    center: str | None
    fmt: str
    seed: int


def threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _parse_words(text: str, p: int | None) -> list[Spinor]:
    try:
        spinors = [Spinor.parse(t) for t in text.replace(",", ";").split(";") if t.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not spinors:
        raise UsageError("empty spinor list")
    width = spinors[0].width
    if any(s.width != width for s in spinors) or (p is not None and width != p):
        raise UsageError("spinor widths disagree with each other or with --p")
    return spinors


def _complete_cartan(members: SpinorSet) -> CartanSubalgebra:
    """Lexicographically least Cartan subalgebra containing a commuting set."""
    p = members.width
    basis = gf2.reduced_basis(members.vectors)
    for v in range(1, 1 << (2 * p)):
        if len(basis) == p:
            break
        if all(not symplectic_vec(v, b, p) for b in basis) and gf2.extend_basis(basis, [v]):
            basis.append(v)
    return CartanSubalgebra(p, frozenset(gf2.span(basis)))


def select_generator(cfg: RunConfig) -> BiSubalgebra:
    """Resolve ``--generator`` / ``--cartan`` / ``--rank`` into a bi-subalgebra."""
    if cfg.generator in ("intrinsic", "canonical"):
        if cfg.p is None or cfg.rank is None:
            raise UsageError("presets need --p and --rank")
        if not 0 <= cfg.rank <= cfg.p:
            raise UsageError(f"--rank must lie in 0..{cfg.p}")
        if cfg.cartan != "intrinsic":
            raise UsageError("presets live in the intrinsic Cartan subalgebra")
        make = intrinsic_generator if cfg.generator == "intrinsic" else canonical_generator
        return make(cfg.p, cfg.rank)
    spinors = _parse_words(cfg.generator, cfg.p)
    p = spinors[0].width
    try:
        members = SpinorSet(p, frozenset(gf2.span(gf2.reduced_basis(s.vector for s in spinors))))
        if not members.is_abelian():
            raise UsageError("generator spinors must commute")
        if cfg.cartan == "intrinsic":
            ic = intrinsic_cartan(p)
            cartan = ic if members.issubset(ic) else _complete_cartan(members)
        else:
            cw = _parse_words(cfg.cartan, p)
            cartan = CartanSubalgebra(p, frozenset(gf2.span(gf2.reduced_basis(s.vector for s in cw))))
        gen = BiSubalgebra(cartan, members)
    except (SubalgebraError, WidthError) as exc:
        raise UsageError(str(exc)) from None
    if cfg.rank is not None and gen.rank != cfg.rank:
        raise UsageError(f"generator has rank {gen.rank}, not {cfg.rank}")
    return gen


def _select_center(part, text: str | None) -> SubspaceLabel:
    centers = coquotient_centers(part)
    if text is None:
        return centers[0]
    if text.startswith("S^"):
        s = _parse_words(text, part.p)[0]
        lab = part.classify(s)
    else:
        try:
            beta, eps, i = text.split(",")
            lab = SubspaceLabel(part.p, part.r, int(beta or "0", 2), int(eps), int(i or "0", 2))
        except ValueError:
            raise UsageError(f"center must be a spinor or 'beta,epsilon,i', got {text!r}") from None
    if lab not in centers:
        raise UsageError(f"{lab.name()} is not a valid co-quotient center")
    return lab


def _emit(obj, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


# Subcommands.


def cmd_partition(cfg: RunConfig) -> int:
    part = build_partition(select_generator(cfg))
    _emit(part.to_json(), render_table(part), cfg.fmt)
    return 0


def cmd_quotient(cfg: RunConfig) -> int:
    part = build_partition(select_generator(cfg))
    q = build_quotient(part)
    _emit(q.to_json(), render_structure(q), cfg.fmt)
    return 0


def cmd_coquotient(cfg: RunConfig) -> int:
    part = build_partition(select_generator(cfg))
    if not coquotient_centers(part):
        raise UsageError("this partition has no co-quotient center")
    q = build_coquotient(part, _select_center(part, cfg.center))
    _emit(q.to_json(), render_structure(q), cfg.fmt)
    return 0


def cmd_decompose(cfg: RunConfig) -> int:
    part = build_partition(select_generator(cfg))
    ds = enumerate_decompositions(part)
    census = Counter(str(d.cd_type) for d in ds)
    bad = [d for d in ds if d.t_size != expected_t_size(d.cd_type, part.p)]
    lines = [render_decomposition(d) + "\n" for d in ds]
    lines.append("types: " + ", ".join(f"{k}={v}" for k, v in sorted(census.items())))
    obj = {"decompositions": [d.to_json() for d in ds], "census": dict(sorted(census.items()))}
    _emit(obj, "\n".join(lines), cfg.fmt)
    return 1 if bad else 0


def cmd_map(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.mode == "spinors":
        if not (args.source and args.target):
            raise UsageError("--mode spinors needs --source and --target")
        src, dst = _parse_words(args.source, cfg.p), _parse_words(args.target, cfg.p)
        try:
            res = spinor_mapping(src, dst)
        except (TransformError, WidthError) as exc:
            raise UsageError(str(exc)) from None
        seq = res.sequence
        extra = {"occasions": res.occasions, "signs": res.signs}
    elif args.mode == "omega":
        part = build_partition(select_generator(cfg))
        ds = enumerate_decompositions(part)
        if not 0 <= args.index < len(ds):
            raise UsageError(f"--index must lie in 0..{len(ds) - 1}")
        d = ds[args.index]
        seq = build_QOmega(d.t, part.p, str(d.cd_type))
        ok = seq.image_set(d.t) == intrinsic_decomposition(part.p, d.cd_type).t
        extra = {"type": str(d.cd_type), "reaches_intrinsic": ok}
    else:
        gen = select_generator(cfg)
        seq = build_Qr(gen, args.target_frame)
        extra = {"image": [str(Spinor.from_vector(gen.width, v)) for v in sorted(seq.image_set(gen.vectors))]}
    obj = {**seq.to_json(), **extra}
    text = "\n".join([str(seq)] + [f"{k}: {v}" for k, v in extra.items()])
    _emit(obj, text, cfg.fmt)
    return 0 if extra.get("reaches_intrinsic", True) else 1


def count_report(p: int, r: int) -> dict:
    c = intrinsic_cartan(p)
    enumerated = len(enumerate_bi_subalgebras(c, r))
    formula = count_bi_subalgebras(p, r)
    gen = canonical_generator(p, r)
    supers = {k: (len(enumerate_supersets(gen, k)), count_k_supersets(r, k)) for k in range(r + 1)}
    cartans = (len(enumerate_cartan_supersets(gen)), count_cartan_supersets(r))
    ok = enumerated == formula and cartans[0] == cartans[1] and all(a == b for a, b in supers.values())
    return {
        "p": p,
        "r": r,
        "bi_subalgebras": {"enumerated": enumerated, "formula": formula},
        "k_supersets": {str(k): {"enumerated": a, "formula": b} for k, (a, b) in supers.items()},
        "cartan_supersets": {"enumerated": cartans[0], "formula": cartans[1]},
        "ok": ok,
    }


def cmd_count(cfg: RunConfig) -> int:
    if cfg.p is None or cfg.rank is None:
        raise UsageError("count needs --p and --rank")
    if not 1 <= cfg.p <= 4 or not 0 <= cfg.rank <= cfg.p:
        raise UsageError("count supports 1 <= p <= 4 and 0 <= rank <= p")
    rep = count_report(cfg.p, cfg.rank)
    bi = rep["bi_subalgebras"]
    lines = [
        f"rank-{cfg.rank} bi-subalgebras of a Cartan subalgebra of su({1 << cfg.p}): {bi['enumerated']}",
        f"formula: {bi['formula']}",
    ]
    for k, v in rep["k_supersets"].items():
        lines.append(f"rank-{k} supersets of B^[{cfg.rank}]: {v['enumerated']} (formula {v['formula']})")
    cs = rep["cartan_supersets"]
    lines.append(f"Cartan supersets of B^[{cfg.rank}]: {cs['enumerated']} (formula {cs['formula']})")
    lines.append("formula OK" if rep["ok"] else "formula MISMATCH")
    _emit(rep, "\n".join(lines), cfg.fmt)
    return 0 if rep["ok"] else 1


def _all_generators(p: int) -> list[BiSubalgebra]:
    return [g for c in all_cartan_subalgebras(p) for r in range(p + 1) for g in enumerate_bi_subalgebras(c, r)]


def _verify_generator(gen: BiSubalgebra) -> dict[str, int]:
    part = build_partition(gen)
    out = {"closure": len(verify_closure(part).violations), "census": 0, "pair_closure": 0, "transform": 0}
    structures = [build_quotient(part)] + [build_coquotient(part, c) for c in coquotient_centers(part)]
    for q in structures:
        if structure_census(q) != expected_census(q.flavor, part.p, part.r):
            out["census"] += 1
        out["pair_closure"] += len(verify_pair_closure(q))
    try:
        seq = build_Qr(gen)
        out["transform"] += len(check_qap_preservation(seq, gen))
    except TransformError:
        out["transform"] += 1
    return out


def verify_suite(p: int, generators: list[BiSubalgebra]) -> dict[str, dict]:
    totals: Counter = Counter()
    workers = threads()
    if workers == 1 or len(generators) < 2:
        results = list(map(_verify_generator, generators))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_generator, generators, chunksize=32))
    for res in results:
        totals.update(res)
    dec_bad = 0
    dec_count = 0
    for r in range(p + 1):
        for d in enumerate_decompositions(build_partition(intrinsic_generator(p, r))):
            dec_count += 1
            rep = verify_decomposition(d, matrix=p <= 3)
            if not rep.ok or d.t_size != expected_t_size(d.cd_type, p):
                dec_bad += 1
    suites = {name: {"checked": len(generators), "failures": totals[name]} for name in ("closure", "census", "pair_closure", "transform")}
    suites["decompositions"] = {"checked": dec_count, "failures": dec_bad}
    return suites


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.all:
        if cfg.p is None or not 1 <= cfg.p <= 3:
            raise UsageError("verify --all needs --p in 1..3")
        gens = _all_generators(cfg.p)
        p = cfg.p
    else:
        gen = select_generator(cfg)
        gens, p = [gen], gen.width
    suites = verify_suite(p, gens)
    ok = all(s["failures"] == 0 for s in suites.values())
    lines = [f"{name}: {s['checked']} checked, {s['failures']} failures" for name, s in suites.items()]
    lines.append("all checks passed" if ok else "verification FAILED")
    _emit({"p": p, "suites": suites, "ok": ok}, "\n".join(lines), cfg.fmt)
    return 0 if ok else 1


def cmd_truncate(cfg: RunConfig) -> int:
    if cfg.n is None or cfg.rank is None:
        raise UsageError("truncate needs --N and --rank")
    try:
        prof = DimensionProfile(cfg.n)
        rep = canonical_truncation(cfg.n, cfg.rank)
    except DimensionError as exc:
        raise UsageError(str(exc)) from None
    expected_clean = cfg.rank <= prof.r0
    agrees = rep.ok if expected_clean else not rep.degrade_direct
    obj = {**rep.to_json(), "r0": prof.r0, "p": prof.p, "agrees_with_bound": agrees}
    lines = [
        f"su({cfg.n}): p = {prof.p}, r0 = {prof.r0}, rank {cfg.rank}",
        f"disjoint: {rep.disjoint}, non-null: {rep.non_null}, degrade direct sum: {rep.degrade_direct}",
    ]
    for a, b in rep.degrade_overlaps:
        lines.append(f"degrade overlap: {a.name()} and {b.name()}")
    lines.append("agrees with the rank bound" if agrees else "DISAGREES with the rank bound")
    _emit(obj, "\n".join(lines), cfg.fmt)
    return 0 if agrees else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qapart", description="Quotient-algebra partitions of su(N).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--p", type=int, help="number of qubits (width of spinor strings)")
        sp.add_argument("--rank", type=int, help="rank r of the generating bi-subalgebra")
        sp.add_argument(
            "--generator",
            default="intrinsic",
            help="'intrinsic', 'canonical' or a ';'-separated spinor basis such as 'S^001_000;S^010_000'",
        )
        sp.add_argument("--cartan", default="intrinsic", help="'intrinsic' or a ';'-separated spinor basis")
        sp.add_argument("--format", dest="fmt", choices=("table", "text", "json"), default="table")
        sp.add_argument("--seed", type=int, default=0)

    for name in ("partition", "quotient", "decompose", "count"):
        common(sub.add_parser(name))
    co = sub.add_parser("coquotient")
    common(co)
    co.add_argument("--center", help="a spinor of the center subspace or 'beta,epsilon,i'")
    mp = sub.add_parser("map")
    common(mp)
    mp.add_argument("--mode", choices=("qr", "spinors", "omega"), default="qr")
    mp.add_argument("--target-frame", choices=("canonical", "intrinsic"), default="canonical")
    mp.add_argument("--source", help="ordered ';'-separated spinors")
    mp.add_argument("--target", help="ordered ';'-separated spinors")
    mp.add_argument("--index", type=int, default=0, help="decomposition index for --mode omega")
    vf = sub.add_parser("verify")
    common(vf)
    vf.add_argument("--all", action="store_true", help="every generator of every Cartan subalgebra at width p")
    tr = sub.add_parser("truncate")
    common(tr)
    tr.add_argument("--N", dest="n", type=int, help="dimension of su(N)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    fmt = "table" if args.fmt == "text" else args.fmt
    cfg = RunConfig(
        args.command,
        args.p,
        getattr(args, "n", None),
        args.rank,
        args.generator,
        args.cartan,
        getattr(args, "center", None),
        fmt,
        args.seed,
    )
    np.random.seed(cfg.seed)
    handlers = {
        "partition": cmd_partition,
        "quotient": cmd_quotient,
        "coquotient": cmd_coquotient,
        "decompose": cmd_decompose,
        "count": cmd_count,
        "truncate": cmd_truncate,
    }
    try:
        if cfg.command == "map":
            return cmd_map(cfg, args)
        if cfg.command == "verify":
            return cmd_verify(cfg, args)
        return handlers[cfg.command](cfg)
    except UsageError as exc:
        print(f"qapart: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
