"""Corpus runner: build each group once, run the requested checks, emit one record per check."""

from __future__ import annotations

import json
import platform
import re
import time
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import __version__, action, bounds, chartab, families, grp, qp, verify
from .errors import Alarm, ResourceError, SolvlinError, UsageError


def versions() -> dict:
    import scipy
    import sympy

    return {"solvlin": __version__, "python": platform.python_version(), "numpy": np.__version__,
            "scipy": scipy.__version__, "sympy": sympy.__version__}


class Entry:
    """Lazily built objects shared by the checks of one corpus entry."""

    def __init__(self, spec: dict, seed: int, cap_order: int, cap_space: int):
        self.spec = spec
        self.name = spec["name"]
        self.seed = seed
        self.cap_order = cap_order
        self.cap_space = cap_space

    @cached_property
    def construction(self) -> families.Construction:
        return families.build(self.spec["group"])

    @cached_property
    def group(self) -> grp.EnumeratedGroup:
        return self.construction.group(self.cap_order)

    @cached_property
    def action(self) -> action.ModuleAction:
        return action.ModuleAction(self.group, self.cap_space)

    @cached_property
    def decomposition(self) -> qp.QPDecomposition:
        return qp.decompose(self.action)

    @cached_property
    def table(self) -> chartab.CharTable:
        return chartab.char_table(self.group, seed=self.seed)


CheckFn = Callable[[Entry, dict], tuple[bool, dict]]
CHECKS: dict[str, CheckFn] = {}


def check(name: str):
    def deco(fn: CheckFn) -> CheckFn:
        CHECKS[name] = fn
        return fn

    return deco


@check("order")
def _order(e: Entry, c: dict):
    return e.group.order == c["expect"], {"order": e.group.order}


@check("decompose")
def _decompose(e: Entry, c: dict):
    D = e.decomposition
    summary = D.summary()
    divides = qp.order_divides_bound(D)
    ok = divides and (c.get("expect") is None or summary == c["expect"])
    return ok, {"summary": summary, "order_bound": qp.order_bound(D),
                "group_order": D.G.order, "clauses": sorted(D.checks)}


@check("fixed_point_law")
def _fixed_point_law(e: Entry, c: dict):
    pts = qp.fixed_point_data(e.decomposition)
    bad = [p for p in pts if p["predicted"] is None or p["fixed"] != p["predicted"]]
    return not bad, {"elements": len(pts), "mismatches": bad[:5]}


@check("quasiprimitive")
def _qp(e: Entry, c: dict):
    got = qp.is_quasiprimitive(e.action)
    return got == c["expect"], {"quasiprimitive": got}


@check("orbits")
def _orbits(e: Entry, c: dict):
    A = e.action
    n, burn = len(A.orbits), A.burnside_count()
    ok = n == burn and (c.get("expect") is None or n == c["expect"])
    return ok, {"orbits": n, "burnside": burn, "regular": A.regular_orbit_count()}


@check("census")
def _census(e: Entry, c: dict):
    cen = grp.census(e.group)
    ok = all(cen.nep.get(int(p), 0) <= v for p, v in c.get("max_nep", {}).items())
    if "max_prime" in c:
        ok &= all(p <= c["max_prime"] for p in cen.nep)
    return ok, cen.to_json()


@check("counting")
def _counting(e: Entry, c: dict):
    r = bounds.counting_check(e.decomposition, c["p"])
    return r["holds"], r


@check("top_counting")
def _top_counting(e: Entry, c: dict):
    r = bounds.top_counting_check(e.group, e.decomposition.A)
    return r["holds"], r


@check("symplectic")
def _symplectic(e: Entry, c: dict):
    r = bounds.symplectic_audit(e.group, c["n"], c["q"], e.construction.meta.get("gram"))
    return r["holds"], r


@check("subset")
def _subset(e: Entry, c: dict):
    subset, st = action.subset_search(e.group)
    replay = action.set_stabilizer(e.group, subset)
    n = len(replay)
    ok = n == st and all(p in (2, 3) for p in grp.factorize(n))
    return ok, {"subset": subset, "stabilizer_order": st}


@check("chartab")
def _chartab(e: Entry, c: dict):
    T = e.table
    degs = sorted(int(d) for d in T.degrees)
    ok = sum(d * d for d in degs) == e.group.order and len(degs) == len(e.group.classes)
    if "expect_degrees" in c:
        ok &= degs == sorted(c["expect_degrees"])
    return ok, {"degrees": degs, "classes": len(degs), "prime": T.prime}


def block_invariants(T: chartab.CharTable, B: chartab.BlockData) -> dict:
    flat = sorted(i for blk in B.blocks for i in blk)
    full = [i for i, d in enumerate(T.degrees) if grp.valuation(int(d), B.p) >= B.n]
    zero = [blk for blk, d in zip(B.blocks, B.block_defect) if d == 0]
    return {
        "partition": flat == list(range(len(T))),
        "defect_is_max": all(d == max(B.char_defect[i] for i in blk) for blk, d in zip(B.blocks, B.block_defect)),
        "defect_zero_singletons": sorted(i for blk in zero for i in blk) == full and all(len(b) == 1 for b in zero),
    }


@check("blocks")
def _blocks(e: Entry, c: dict):
    T = e.table
    B = chartab.p_blocks(T, c["p"])
    inv = block_invariants(T, B)
    ok = all(inv.values())
    if "expect_defect_zero" in c:
        ok &= B.defect_zero_blocks == c["expect_defect_zero"]
    return ok, {"p": B.p, "n": B.n, "defects": B.block_defect, "defect_zero": B.defect_zero_blocks,
                "invariants": inv}


@check("min_defect_at_most")
def _min_defect(e: Entry, c: dict):
    B = chartab.p_blocks(e.table, c["p"])
    return B.min_defect <= c["bound"], {"min_defect": B.min_defect, "claimed_bound": c["bound"]}


@check("two_orbit")
def _two_orbit(e: Entry, c: dict):
    return True, verify.verify_two_orbit(e.action).to_json()


@check("single_prime")
def _single_prime(e: Entry, c: dict):
    return True, verify.verify_single_prime(e.action, c["p"]).to_json()


@check("defect_bound")
def _defect_bound(e: Entry, c: dict):
    return True, verify.verify_defect_bound(e.group, c["p"], e.table)


@check("degree_bounds")
def _degree_bounds(e: Entry, c: dict):
    return True, verify.verify_degree_bounds(e.group, c["p"], e.table)


@check("prime_counts")
def _prime_counts(e: Entry, c: dict):
    return True, verify.verify_prime_counts(e.group, e.table)


# -- configuration -------------------------------------------------------------------------------


def _line_of(text: str, name: str) -> int:
    m = re.search(r'"name"\s*:\s*"' + re.escape(name) + '"', text)
    return text.count("\n", 0, m.start()) + 1 if m else 0


def parse_config(text: str) -> dict:
    """Parse and validate a corpus file; errors carry the offending line."""
    try:
        cfg = json.loads(text) if text.strip() else {"entries": []}
    except json.JSONDecodeError as exc:
        raise UsageError(f"line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(cfg, dict) or not isinstance(cfg.get("entries", []), list):
        raise UsageError("line 1: corpus must be an object with an 'entries' list")
    seen = set()
    for i, ent in enumerate(cfg.get("entries", [])):
        name = ent.get("name") if isinstance(ent, dict) else None
        line = _line_of(text, name) if isinstance(name, str) else 0
        where = f"line {line}" if line else f"entry {i}"
        if not isinstance(name, str):
            raise UsageError(f"{where}: entry needs a string 'name'")
        if name in seen:
            raise UsageError(f"{where}: duplicate entry name {name!r}")
        seen.add(name)
        if not isinstance(ent.get("group"), dict) or "construct" not in ent["group"]:
            raise UsageError(f"{where}: entry {name!r} needs a 'group' recipe with 'construct'")
        checks = ent.get("checks")
        if not isinstance(checks, list):
            raise UsageError(f"{where}: entry {name!r} needs a 'checks' list")
        for chk in checks:
            if not isinstance(chk, dict) or chk.get("check") not in CHECKS:
                raise UsageError(f"{where}: entry {name!r} has unknown check {chk!r}")
    return cfg


def default_corpus_text() -> str:
    return resources.files("solvlin").joinpath("data/default_corpus.json").read_text()


def load_config(path: str | Path | None) -> dict:
    text = default_corpus_text() if path in (None, "default") else Path(path).read_text()
    return parse_config(text)


def run_entry(spec: dict, seed: int, cap_order: int = grp.ORDER_CAP,
              cap_space: int = action.SPACE_CAP) -> list[dict]:
    e = Entry(spec, seed, cap_order, cap_space)
    out = []
    vers = versions()
    for c in spec["checks"]:
        t0 = time.perf_counter()
        rec = {"entry": e.name, "check": c["check"], "params": {k: v for k, v in c.items() if k != "check"}}
        try:
            ok, wit = CHECKS[c["check"]](e, c)
            rec["pass"], rec["witness"] = bool(ok), _jsonable(wit)
        except (Alarm, AssertionError) as exc:
            rec["pass"], rec["witness"], rec["error"] = False, None, f"alarm: {exc}"
        except (UsageError, ResourceError, SolvlinError) as exc:
            rec["pass"], rec["witness"], rec["error"] = False, None, f"{type(exc).__name__}: {exc}"
        rec["timings"] = {"seconds": round(time.perf_counter() - t0, 4)}
        rec["versions"] = vers
        out.append(rec)
    return out


def _run_entry_args(args):
    return run_entry(*args)


def corpus_run(cfg: dict, seed: int | None = None, jobs: int = 1,
               cap_order: int = grp.ORDER_CAP, cap_space: int = action.SPACE_CAP,
               record: Callable[[dict], None] | None = None) -> tuple[list[dict], int]:
    """Run every entry; returns (records, exit status) with status 1 iff any check failed."""
    seed = cfg.get("seed", 0) if seed is None else seed
    entries = cfg.get("entries", [])
    args = [(ent, seed, cap_order, cap_space) for ent in entries]
    if jobs > 1 and len(entries) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            batches: Iterable[list[dict]] = list(pool.map(_run_entry_args, args))
    else:
        batches = (_run_entry_args(a) for a in args)
    records = []
    for batch in batches:
        for rec in batch:
            records.append(rec)
            if record:
                record(rec)
    status = 0 if all(r["pass"] for r in records) else 1
    return records, status


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        items = sorted(x) if isinstance(x, set) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def canonical(records: list[dict]) -> str:
    """Records without timings, for determinism comparisons."""
    return "\n".join(json.dumps({k: v for k, v in r.items() if k != "timings"}, sort_keys=True)
                     for r in records)
