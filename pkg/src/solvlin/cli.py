"""Command-line interface: ``solvlin <subcommand> ...``.

Group arguments are JSON recipes, given inline or as a file path, e.g.
``solvlin decompose '{"construct": "gamma", "q": 2, "n": 4}'``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import action, bounds, chartab, corpus, families, grp, plotting, qp, verify
from .errors import Alarm, SolvlinError, UsageError


def _recipe(text: str) -> dict:
    path = Path(text)
    try:
        raw = path.read_text() if path.is_file() else text
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read recipe {text!r}: {exc}") from exc


def _group(args) -> grp.EnumeratedGroup:
    return families.build(_recipe(args.recipe)).group(args.cap_order)


def _action(args) -> action.ModuleAction:
    return action.ModuleAction(_group(args), args.cap_space)


def write_report(directory: str | Path, name: str, records: list[dict]) -> dict[str, Path]:
    """JSONL and CSV side by side; returns the written paths."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    jsonl = d / f"{name}.jsonl"
    with jsonl.open("w") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True) + "\n")
    cols = sorted({k for r in records for k in r})
    path_csv = d / f"{name}.csv"
    with path_csv.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=cols)
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v
                        for k, v in r.items()})
    return {"jsonl": jsonl, "csv": path_csv}


def _emit(args, name: str, records: list[dict], figure=None) -> None:
    for r in records:
        print(json.dumps(r, sort_keys=True))
    if args.report:
        paths = write_report(args.report, name, records)
        if figure is not None:
            paths["figure"] = figure(Path(args.report) / f"{name}.png")
        print(f"report written: {', '.join(str(p) for p in paths.values())}", file=sys.stderr)


# -- subcommands ---------------------------------------------------------------------------------


def cmd_construct(args) -> int:
    c = families.build(_recipe(args.recipe))
    G = c.group(args.cap_order)
    _emit(args, "construct", [{"name": c.name, "order": G.order, "predicted": c.predicted_order,
                               "generators": len(c.generators), "solvable": grp.is_solvable(G)}])
    return 0


def cmd_decompose(args) -> int:
    D = qp.decompose(_action(args))
    _emit(args, "decompose", [D.to_json() | {"order_divides_bound": qp.order_divides_bound(D)}])
    return 0


def cmd_orbits(args) -> int:
    A = _action(args)
    rep = A.orbit_report()
    _emit(args, "orbits", [rep], lambda p: plotting.orbit_figure(A.orbits.sizes, A.G.order, p))
    return 0


def cmd_census(args) -> int:
    G = _group(args)
    _emit(args, "census", [{"order": G.order} | grp.census(G).to_json()])
    return 0


def cmd_sweep(args) -> int:
    cfg = bounds.SweepConfig(W_max=args.w_max, b_max=args.b_max, dim_max=args.dim_max)
    out = bounds.count_sweep(cfg)
    rec = {"points": out["points"], "intervals": out["intervals"],
           "violations": len(out["violations"]), "worst": out["worst"]}
    _emit(args, "count_sweep", [rec], lambda p: plotting.sweep_figure(out["worst"], p))
    return 1 if out["violations"] else 0


def cmd_chartab(args) -> int:
    T = chartab.char_table(_group(args), seed=args.seed)
    _emit(args, "chartab", [T.to_json()], lambda p: plotting.degree_figure(T.degrees, p))
    return 0


def cmd_blocks(args) -> int:
    T = chartab.char_table(_group(args), seed=args.seed)
    B = chartab.p_blocks(T, args.p)
    _emit(args, "blocks", [B.to_json() | {"degrees": T.degrees.tolist()}])
    return 0


VERIFIERS = ("two-orbit", "single-prime", "defect-bound", "degree-bounds", "prime-counts")


def cmd_verify(args) -> int:
    which = args.which
    if which in ("two-orbit", "single-prime"):
        A = _action(args)
        w = verify.verify_two_orbit(A) if which == "two-orbit" else verify.verify_single_prime(A, args.p)
        rec = w.to_json()
    else:
        G = _group(args)
        if which == "defect-bound":
            rec = verify.verify_defect_bound(G, args.p)
        elif which == "degree-bounds":
            rec = verify.verify_degree_bounds(G, args.p)
        else:
            rec = verify.verify_prime_counts(G)
    _emit(args, f"verify_{which.replace('-', '_')}", [corpus._jsonable(rec)])
    return 0


def cmd_corpus(args) -> int:
    cfg = corpus.load_config(args.file)
    t0 = time.perf_counter()
    records, status = corpus.corpus_run(cfg, seed=args.seed, jobs=args.jobs,
                                        cap_order=args.cap_order, cap_space=args.cap_space)
    _emit(args, "corpus", records, lambda p: plotting.corpus_figure(records, p))
    failed = sum(not r["pass"] for r in records)
    print(f"{len(records)} checks, {failed} failed, {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--report", help="directory for JSONL, CSV and figure output")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cap-order", type=int, default=grp.ORDER_CAP)
    common.add_argument("--cap-space", type=int, default=action.SPACE_CAP)

    ap = argparse.ArgumentParser(prog="solvlin", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, recipe=True, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if recipe:
            p.add_argument("recipe", help="JSON recipe or path to one")
        p.set_defaults(fn=fn)
        return p

    add("construct", cmd_construct)
    add("decompose", cmd_decompose)
    add("orbits", cmd_orbits)
    add("census", cmd_census)
    sweep = add("count-sweep", cmd_sweep, recipe=False)
    sweep.add_argument("--w-max", type=int, default=2**30)
    sweep.add_argument("--b-max", type=int, default=8)
    sweep.add_argument("--dim-max", type=int, default=64)
    add("chartab", cmd_chartab)
    blocks = add("blocks", cmd_blocks)
    blocks.add_argument("--p", type=int, required=True)
    ver = sub.add_parser("verify", parents=[common])
    ver.add_argument("which", choices=VERIFIERS)
    ver.add_argument("recipe")
    ver.add_argument("--p", type=int, default=5)
    ver.set_defaults(fn=cmd_verify)
    cor = sub.add_parser("corpus", parents=[common])
    cor.add_argument("action", choices=["run"])
    cor.add_argument("file", nargs="?", default="default", help="corpus JSON (default: bundled corpus)")
    cor.set_defaults(fn=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None and args.fn is not cmd_corpus:
        args.seed = 0
    try:
        return args.fn(args)
    except Alarm as exc:
        print(f"alarm: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SolvlinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
