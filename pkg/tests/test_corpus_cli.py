import csv
import json

import pytest

from solvlin import cli, corpus
from solvlin.errors import UsageError

SMALL = {
    "seed": 0,
    "entries": [
        {"name": "gamma-2^4", "group": {"construct": "gamma", "q": 2, "n": 4},
         "checks": [{"check": "order", "expect": 60}, {"check": "orbits", "expect": 2},
                    {"check": "chartab"}, {"check": "two_orbit"}]},
        {"name": "sl-2-3", "group": {"construct": "sl2", "q": 3},
         "checks": [{"check": "order", "expect": 24}, {"check": "blocks", "p": 3, "expect_defect_zero": 1}]},
    ],
}


def _write(tmp_path, obj, name="c.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj, indent=1))
    return p


def test_empty_corpus(tmp_path):
    records, status = corpus.corpus_run(corpus.parse_config(""))
    assert records == [] and status == 0
    assert cli.main(["corpus", "run", str(_write(tmp_path, {"entries": []}))]) == 0


def test_small_corpus_records():
    records, status = corpus.corpus_run(SMALL)
    assert status == 0 and len(records) == 6
    for r in records:
        assert set(r) >= {"entry", "check", "params", "pass", "witness", "timings", "versions"}
    assert records[0]["witness"] == {"order": 60}


def test_false_claim_fails_with_exit_one(tmp_path, capsys):
    bad = json.loads(json.dumps(SMALL))
    bad["entries"][0]["checks"][0]["expect"] = 61
    records, status = corpus.corpus_run(bad)
    assert status == 1
    assert [r["pass"] for r in records].count(False) == 1
    assert cli.main(["corpus", "run", str(_write(tmp_path, bad))]) == 1


def test_impossible_defect_claim_fails(tmp_path):
    cfg = {"entries": [{"name": "z11", "group": {"construct": "metacyclic", "p": 11, "d": 5},
                        "checks": [{"check": "min_defect_at_most", "p": 5, "bound": -1}]}]}
    records, status = corpus.corpus_run(cfg)
    assert status == 1 and records[0]["witness"]["min_defect"] == 0
    assert cli.main(["corpus", "run", str(_write(tmp_path, cfg))]) == 1


def test_usage_error_becomes_failed_record():
    cfg = {"entries": [{"name": "x", "group": {"construct": "sl2", "q": 3},
                        "checks": [{"check": "defect_bound", "p": 3}]}]}
    records, status = corpus.corpus_run(cfg)
    assert status == 1 and records[0]["error"].startswith("UsageError")


@pytest.mark.parametrize("text,line", [
    ('{\n "entries": [\n  {"name": "a",,}\n ]\n}', 3),
    ('{"entries": [\n {"name": "a", "group": {"construct": "sl2", "q": 3},\n'
     '  "checks": [{"check": "nope"}]}\n]}', 2),
    ('{"entries": [\n {"name": "a", "group": {"q": 3}, "checks": []}\n]}', 2),
])
def test_malformed_config_reports_line(tmp_path, capsys, text, line):
    with pytest.raises(UsageError, match=f"line {line}:"):
        corpus.parse_config(text)
    assert cli.main(["corpus", "run", str(_write(tmp_path, text))]) == 2
    assert f"line {line}:" in capsys.readouterr().err


def test_duplicate_names_rejected():
    cfg = {"entries": [SMALL["entries"][1], SMALL["entries"][1]]}
    with pytest.raises(UsageError, match="duplicate"):
        corpus.parse_config(json.dumps(cfg))


def test_determinism_across_runs_and_jobs():
    a, _ = corpus.corpus_run(SMALL, seed=3)
    b, _ = corpus.corpus_run(SMALL, seed=3)
    c, _ = corpus.corpus_run(SMALL, seed=3, jobs=2)
    assert corpus.canonical(a) == corpus.canonical(b) == corpus.canonical(c)


def test_default_corpus_parses():
    cfg = corpus.load_config(None)
    assert len(cfg["entries"]) >= 20
    assert all(c["check"] in corpus.CHECKS for e in cfg["entries"] for c in e["checks"])


def test_cli_report_files(tmp_path, capsys):
    out = tmp_path / "rep"
    cfg = _write(tmp_path, SMALL)
    assert cli.main(["corpus", "run", str(cfg), "--report", str(out)]) == 0
    lines = (out / "corpus.jsonl").read_text().splitlines()
    assert len(lines) == 6 and json.loads(lines[0])["entry"] == "gamma-2^4"
    with (out / "corpus.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 6 and "pass" in rows[0]
    assert (out / "corpus.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


@pytest.mark.parametrize("argv,name", [
    (["orbits", '{"construct": "gamma", "q": 2, "n": 4}'], "orbits"),
    (["chartab", '{"construct": "sl2", "q": 3}'], "chartab"),
    (["count-sweep", "--w-max", "4096", "--b-max", "2", "--dim-max", "8"], "count_sweep"),
])
def test_cli_figures(tmp_path, capsys, argv, name):
    assert cli.main(argv + ["--report", str(tmp_path)]) == 0
    assert (tmp_path / f"{name}.png").exists() and (tmp_path / f"{name}.jsonl").exists()


def test_cli_subcommands(capsys):
    sl23 = '{"construct": "sl2", "q": 3}'
    assert cli.main(["construct", sl23]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 24
    assert cli.main(["decompose", sl23]) == 0
    assert json.loads(capsys.readouterr().out)["order_divides_bound"] is True
    assert cli.main(["census", sl23]) == 0
    capsys.readouterr()
    assert cli.main(["blocks", sl23, "--p", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["defects"].count(0) == 1
    assert cli.main(["verify", "two-orbit", sl23]) == 0
    capsys.readouterr()
    assert cli.main(["verify", "defect-bound", sl23, "--p", "3"]) == 2
    assert cli.main(["verify", "defect-bound", '{"construct": "metacyclic", "p": 11, "d": 5}', "--p", "5"]) == 0


@pytest.mark.parametrize("which", ["single-prime", "degree-bounds", "prime-counts"])
def test_cli_other_verifiers(capsys, which):
    assert cli.main(["verify", which, '{"construct": "gamma", "q": 2, "n": 4}', "--p", "5"]) == 0
    assert json.loads(capsys.readouterr().out)


@pytest.mark.slow
def test_default_corpus_passes(tmp_path):
    import time

    t0 = time.perf_counter()
    records, status = corpus.corpus_run(corpus.load_config(None))
    assert status == 0, [r for r in records if not r["pass"]][:3]
    assert len(records) > 200 and time.perf_counter() - t0 < 600


def test_cli_bad_recipe(capsys):
    assert cli.main(["construct", "{not json"]) == 2
    # invalid parameters are domain errors, reported with their own status
    assert cli.main(["construct", '{"construct": "gamma", "q": 6, "n": 2}']) == 3
    assert "not a prime power" in capsys.readouterr().err
