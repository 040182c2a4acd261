import json

import pytest

from wordmaps.chartab import parse_table, write_table
from wordmaps.cli import ConfigError, emit_report, load_config, main, report_digest, run_roster
from wordmaps.corpus import cache_path, get_table

ROSTER = {
    "seed": 3,
    "targets": [
        {"name": "A5 sweep", "group": "A5", "check": "xNyN", "N": "sweep"},
        {"name": "SL2(5) N=20", "group": "SL2(5)", "check": "xNyN", "N": 20, "expect": "not-surjective"},
        {"group": "SL2(5)", "check": "k-2elements", "k": 3},
        {"group": {"family": "GL", "n": 2, "q": 5}, "check": "P(N)", "N": 15},
        {"group": "GL7(2)", "check": "bound-sample", "lemma": "gl2-centralizer", "samples": 50},
    ],
}


@pytest.fixture(scope="module")
def reports():
    return run_roster(ROSTER)


def test_statuses(reports):
    assert [r["status"] for r in reports] == ["surjective", "not-surjective", "surjective", "surjective",
                                              "verified"]
    assert all(r["matches"] for r in reports)
    sl = get_table("SL2(5)")
    assert set(c for c in range(sl.k) if sl.orders[c] == 5) <= set(reports[1]["missed"])


def test_determinism(reports):
    again = run_roster(ROSTER)
    assert [report_digest(r) for r in reports] == [report_digest(r) for r in again]
    strip = [{k: v for k, v in r.items() if k not in ("wall_time", "cache_hits")} for r in reports]
    assert json.dumps(strip, sort_keys=True) == json.dumps(
        [{k: v for k, v in r.items() if k not in ("wall_time", "cache_hits")} for r in again], sort_keys=True)


def test_empty_roster():
    assert run_roster({"targets": []}) == []
    assert emit_report([]) == "[]"


def test_errors_are_isolated():
    out = run_roster({"targets": [{"group": "NoSuchGroup", "check": "xNyN", "N": 2},
                                  {"group": "A5", "check": "xNyN", "N": 12}]})
    assert out[0]["status"] == "error" and not out[0]["matches"]
    assert out[1]["status"] == "surjective"


def test_emit_roundtrip(reports):
    text = emit_report(reports, "json")
    back = json.loads(text)
    assert [b["status"] for b in back] == [r["status"] for r in reports]
    assert all(b["digest"] == report_digest(r) for b, r in zip(back, reports))
    assert emit_report(reports, "json") == text
    md = emit_report(reports, "markdown")
    assert "| xNyN | 2 | 0 |" in md and md.count("\n") > len(reports)


def test_unknown_key_rejected(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"targets": [], "bogus": 1}))
    with pytest.raises(ConfigError):
        load_config(cfg)
    assert main(["verify", "--config", str(cfg)]) == 2


def test_verify_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"targets": [{"group": "A5", "check": "xNyN", "N": 12}]}))
    assert main(["verify", "--config", str(good)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out[0]["status"] == "surjective"
    bad = tmp_path / "fail.json"
    bad.write_text(json.dumps({"targets": [{"group": "A5", "check": "xNyN", "N": 30}]}))
    assert main(["verify", "--config", str(bad)]) == 1


def test_cache_reload(tmp_path):
    T = get_table("PSL2(7)", tmp_path)
    path = cache_path("PSL2(7)", tmp_path)
    assert path.exists()
    out = run_roster({"cache_dir": str(tmp_path), "targets": [{"group": "PSL2(7)", "check": "xNyN", "N": 4}]})
    assert out[0]["cache_hits"] == 1
    # a corrupted cache entry is rejected and rebuilt
    bad = parse_table(path.read_text())
    bad.values[1, 1, 0] += 1
    path.write_text(write_table(bad))
    assert write_table(get_table("PSL2(7)", tmp_path)) == write_table(T)


def test_subcommands(capsys):
    assert main(["enumerate", "A5"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 60
    assert main(["primes", "Sp", "12", "2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["primes"] == [3, 7, 13]
    assert main(["primes", "--ppd", "2", "10"]) == 0
    assert capsys.readouterr().out.strip() == "11"
    assert main(["primes", "Spin+", "8", "2"]) == 1
    assert main(["construct", "Sp", "2", "5"]) == 0
    assert capsys.readouterr().out.strip().endswith("verified")
    assert main(["chartab", "A5"]) == 0
    assert parse_table(capsys.readouterr().out).order == 60
