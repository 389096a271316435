"""Figures written next to JSONL/CSV reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def corpus_figure(records: list[dict], path: Path) -> Path:
    """Per-entry wall time, bars coloured by whether every check passed."""
    entries: dict[str, list[float]] = {}
    ok: dict[str, bool] = {}
    for r in records:
        entries.setdefault(r["entry"], []).append(r["timings"]["seconds"])
        ok[r["entry"]] = ok.get(r["entry"], True) and r["pass"]
    names = list(entries)
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.28 * len(names))))
    y = np.arange(len(names))
    ax.barh(y, [sum(entries[n]) for n in names], color=["tab:green" if ok[n] else "tab:red" for n in names])
    ax.set_yticks(y, names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("corpus checks (green: all passed)")
    return _save(fig, path)


def sweep_figure(worst: dict[str, float], path: Path) -> Path:
    """Largest certified left-hand side per case against the threshold 1."""
    cases = sorted(worst)
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.bar(cases, [worst[c] for c in cases], color="tab:blue")
    ax.axhline(1.0, color="tab:red", linestyle="--", linewidth=1)
    ax.set_ylabel("max upper bound")
    ax.set_title("counting inequality sweep")
    return _save(fig, path)


def orbit_figure(sizes, group_order: int, path: Path) -> Path:
    vals, counts = np.unique(np.asarray(sizes), return_counts=True)
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.bar([str(int(v)) for v in vals], counts, color="tab:purple")
    ax.set_xlabel(f"orbit size (|G| = {group_order})")
    ax.set_ylabel("orbits")
    return _save(fig, path)


def degree_figure(degrees, path: Path) -> Path:
    vals, counts = np.unique(np.asarray(degrees), return_counts=True)
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.bar([str(int(v)) for v in vals], counts, color="tab:orange")
    ax.set_xlabel("character degree")
    ax.set_ylabel("characters")
    return _save(fig, path)
