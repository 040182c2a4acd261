"""Command-line runner: enumerate groups, compute tables, run verification rosters."""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import jsonschema
import sympy

from . import __version__
from . import corpus
from .chartab import check_orthogonality, parse_table, write_table
from .groups import EnumeratedGroup, Perm, enumerate_group

CHECKS = ("xNyN", "xNyNzN", "k-2elements", "P(N)", "Pu(N)", "construction-suite", "bound-sample",
          "prime-table", "lemma-pair-scan")

DEFAULT_EXPECT = {"xNyN": "surjective", "xNyNzN": "surjective", "k-2elements": "surjective",
                  "P(N)": "surjective", "Pu(N)": "surjective", "construction-suite": "verified",
                  "bound-sample": "verified", "prime-table": "verified", "lemma-pair-scan": "verified"}

_GROUP = {
    "oneOf": [
        {"type": "string"},
        {"type": "object", "additionalProperties": False, "required": ["generators", "degree"],
         "properties": {"generators": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                        "degree": {"type": "integer", "minimum": 1},
                        "label": {"type": "string"}}},
        {"type": "object", "additionalProperties": False, "required": ["table"],
         "properties": {"table": {"type": "string"}}},
        {"type": "object", "additionalProperties": False, "required": ["family", "n", "q"],
         "properties": {"family": {"type": "string"}, "n": {"type": "integer", "minimum": 1},
                        "q": {"type": "integer", "minimum": 2}, "eps": {"type": "integer"}}},
    ]
}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "seed": {"type": "integer"},
        "threads": {"type": "integer", "minimum": 1},
        "cache_dir": {"type": "string"},
        "targets": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["check"],
                "properties": {
                    "name": {"type": "string"},
                    "group": _GROUP,
                    "check": {"enum": list(CHECKS)},
                    "N": {"oneOf": [{"type": "integer", "minimum": 0}, {"const": "sweep"}]},
                    "k": {"type": "integer", "minimum": 1},
                    "lemma": {"type": "string"},
                    "samples": {"type": "integer", "minimum": 1},
                    "families": {"type": "array", "items": {"type": "string"}},
                    "n_max": {"type": "integer", "minimum": 1},
                    "q_max": {"type": "integer", "minimum": 2},
                    "qs": {"type": "array", "items": {"type": "integer"}},
                    "seed": {"type": "integer"},
                    "expect": {"type": "string"},
                },
            },
        },
    },
}


class ConfigError(ValueError):
    pass


def load_config(path: str | Path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    try:
        jsonschema.validate(cfg, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"{path}: {exc.message}") from exc
    return cfg


# ---------------------------------------------------------------------------
# target resolution

class _Resolver:
    """Shared group / table lookups for one roster; tables computed once."""

    def __init__(self, cache_dir: str | None):
        self.cache_dir = cache_dir
        self.cache_hits = 0

    def group(self, des) -> EnumeratedGroup:
        if isinstance(des, str):
            return corpus.get_group(des)
        if "generators" in des:
            gens = [Perm.from_cycles(g, des["degree"]) for g in des["generators"]]
            return enumerate_group(gens, label=des.get("label", "G"))
        if "family" in des:
            return corpus.get_group(f"{des['family']}{des['n']}({des['q']})")
        raise ConfigError("a table file does not determine a group")

    def table(self, des):
        if isinstance(des, dict) and "table" in des:
            return parse_table(Path(des["table"]).read_text())
        if isinstance(des, str):
            if self.cache_dir and corpus.cache_path(des, self.cache_dir).exists():
                self.cache_hits += 1
            return corpus.get_table(des, self.cache_dir)
        return None


def _fam_nq(des) -> tuple[str, int, int, int]:
    if isinstance(des, dict) and "family" in des:
        return des["family"], des["n"], des["q"], des.get("eps", 1)
    m = re.match(r"^([A-Za-z]+?)([+-]?)(\d+)\((\d+)\)$", des if isinstance(des, str) else "")
    if not m:
        raise ConfigError(f"cannot read a classical group from {des!r}")
    eps = -1 if m.group(2) == "-" else 1
    return m.group(1), int(m.group(3)), int(m.group(4)), eps


def _classes(res) -> dict:
    return {"witnesses": {str(c): list(map(int, w)) for c, w in res.witnesses.items()},
            "missed": [int(c) for c in res.missed]}


def _run_words(target: dict, R: _Resolver) -> dict:
    from . import words as W

    kind = target["check"]
    des = target.get("group")
    if des is None:
        raise ConfigError("word checks need a group")
    T = R.table(des)
    src = T if T is not None else R.group(des)
    if kind == "k-2elements":
        res = W.check_k_2element_cover(src, target.get("k", 3))
        return {"status": res.status, **_classes(res), "method": res.method}
    fn = W.check_xNyN if kind == "xNyN" else W.check_xNyNzN
    N = target.get("N", "sweep")
    if N != "sweep":
        res = fn(src, N)
        return {"status": res.status, **_classes(res), "method": res.method}
    order = src.order
    primes = sympy.primefactors(order)
    Ns = sorted({n for i, p in enumerate(primes) for r in primes[i + 1:]
                 for n in W.residue_exponents(p, r, src.exponent)})
    per = {}
    status = "surjective"
    for n in Ns:
        res = fn(src, n)
        per[str(n)] = {"status": res.status, "missed": [int(c) for c in res.missed]}
        if res.status != "surjective":
            status = res.status if status == "surjective" else status
    return {"status": status, "residues": [n % src.exponent for n in Ns], "per_N": per,
            "method": W._method(src)}


def _run_PN(target: dict, R: _Resolver) -> dict:
    from . import words as W
    from .classical import build_group

    fam, n, q, _ = _fam_nq(target["group"])
    if fam not in ("GL", "GU"):
        raise ConfigError("P(N) needs GL or GU")
    eps = 1 if fam == "GL" else -1
    G = R.group(f"{fam}{n}({q})")
    spec = build_group(fam, n, q, verify=False) if target["check"] == "Pu(N)" else None
    res = W.check_condition_PN(G, q, eps, target["N"], unbreakable_only=spec is not None, spec=spec)
    return {"status": res.status, **_classes(res), "method": res.method, "note": res.note}


def _run_construction(target: dict, R: _Resolver) -> dict:
    from .construct import construction_suite

    res = construction_suite(tuple(target.get("families", ("GL", "GU", "Sp", "SO"))), target.get("n_max", 12),
                             tuple(target.get("qs", (3, 5, 7, 9, 11, 13, 17))))
    return {"status": "verified" if res.ok else "failed", "total": res.total,
            "failures": [list(map(str, f)) for f in res.failures]}


def _run_bound(target: dict, R: _Resolver, seed: int) -> dict:
    from .breakdec import sample_bound_check
    from .classical import build_group

    fam, n, q, eps = _fam_nq(target["group"])
    spec = build_group(fam, n, q, eps, verify=False)
    rep = sample_bound_check(spec, target["lemma"], target.get("samples", 1000), seed)
    return {"status": "verified" if rep.ok else "violated", "summary": rep.summary(),
            "unbreakable": rep.unbreakable, "checked": rep.checked, "skipped": rep.skipped,
            "violations": [str(v.value) for v in rep.violations]}


def _run_primes(target: dict, R: _Resolver) -> dict:
    from .primes import FAMILIES, NotCovered, PrimeError, check_special_primes, special_primes

    fams = target.get("families", list(FAMILIES))
    n_max, q_max = target.get("n_max", 12), target.get("q_max", 9)
    ok, covered, skipped, bad = True, 0, 0, []
    for fam in fams:
        for q in range(2, q_max + 1):
            if len(sympy.factorint(q)) != 1:
                continue
            for n in range(2, n_max + 1):
                try:
                    S = special_primes(fam, n, q)
                except NotCovered:
                    skipped += 1
                    continue
                except PrimeError:
                    continue
                chk = check_special_primes(fam, n, q, S)
                covered += 1
                if not chk.ok:
                    ok = False
                    bad.append(f"{fam} n={n} q={q}: {chk.detail}")
    return {"status": "verified" if ok else "failed", "covered": covered, "not_covered": skipped, "failures": bad}


def _run_scan(target: dict, R: _Resolver) -> dict:
    from .primes import scan_lemma_pair

    viol, notes = scan_lemma_pair(target.get("q_max", 9), target.get("n_max", 40))
    return {"status": "verified" if not viol else "violated", "violations": [str(v) for v in viol],
            "notes": len(notes)}


def run_target(target: dict, R: _Resolver, seed: int) -> dict:
    kind = target["check"]
    seed = target.get("seed", seed)
    t0 = time.perf_counter()
    try:
        if kind in ("xNyN", "xNyNzN", "k-2elements"):
            body = _run_words(target, R)
        elif kind in ("P(N)", "Pu(N)"):
            body = _run_PN(target, R)
        elif kind == "construction-suite":
            body = _run_construction(target, R)
        elif kind == "bound-sample":
            body = _run_bound(target, R, seed)
        elif kind == "prime-table":
            body = _run_primes(target, R)
        else:
            body = _run_scan(target, R)
    except Exception as exc:                 # isolate per-target failures
        body = {"status": "error", "error": f"{type(exc).__name__}: {exc}"}
    expect = target.get("expect", DEFAULT_EXPECT[kind])
    return {"target": target, "seed": seed, "version": __version__, **body,
            "expected": expect, "matches": body["status"] == expect,
            "wall_time": round(time.perf_counter() - t0, 3)}


def run_roster(config, cache_dir: str | None = None, seed: int | None = None,
               threads: int | None = None) -> list[dict]:
    """Run every target of a config (path or dict); reports keep config order."""
    cfg = load_config(config) if not isinstance(config, dict) else config
    if isinstance(config, dict):
        jsonschema.validate(cfg, SCHEMA)
    cache_dir = cache_dir or cfg.get("cache_dir")
    seed = cfg.get("seed", 0) if seed is None else seed
    threads = threads or cfg.get("threads", 1)
    R = _Resolver(cache_dir)
    targets = cfg.get("targets", [])
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            reports = list(ex.map(lambda t: run_target(t, R, seed), targets))
    else:
        reports = [run_target(t, R, seed) for t in targets]
    for r in reports:
        r["cache_hits"] = R.cache_hits
    return reports


def _stable(report: dict) -> dict:
    return {k: v for k, v in report.items() if k not in ("wall_time", "cache_hits", "digest")}


def report_digest(report: dict) -> str:
    return hashlib.sha256(json.dumps(_stable(report), sort_keys=True, default=str).encode()).hexdigest()


def emit_report(reports: list[dict], fmt: str = "json") -> str:
    if fmt == "json":
        out = [dict(r, digest=report_digest(r)) for r in reports]
        return json.dumps(out, indent=2, sort_keys=True, default=str)
    if fmt != "markdown":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["| target | check | status | expected | ok |", "|---|---|---|---|---|"]
    counts: dict = {}
    for r in reports:
        t = r["target"]
        name = t.get("name") or json.dumps(t.get("group", ""), default=str)
        lines.append(f"| {name} | {t['check']} | {r['status']} | {r['expected']} | {'yes' if r['matches'] else 'no'} |")
        c = counts.setdefault(t["check"], [0, 0])
        c[0 if r["matches"] else 1] += 1
    lines += ["", "| check | pass | fail |", "|---|---|---|"]
    lines += [f"| {k} | {p} | {f} |" for k, (p, f) in sorted(counts.items())]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def cmd_enumerate(args) -> int:
    G = corpus.get_group(args.group)
    info = {"group": args.group, "order": G.order, "classes": G.num_classes, "exponent": G.exponent,
            "sizes": list(map(int, G.sizes)), "orders": list(map(int, G.orders))}
    print(json.dumps(info, indent=2) if args.format == "json" else
          f"{args.group}: order {G.order}, {G.num_classes} classes, exponent {G.exponent}")
    return 0


def cmd_chartab(args) -> int:
    T = corpus.get_table(args.group, args.cache_dir)
    res = check_orthogonality(T)
    text = write_table(T)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if res.ok else 1


def cmd_construct(args) -> int:
    from .construct import construct, verify_certificate

    g, cert = construct(args.family, args.n, args.q, args.eps, args.delta)
    chk = verify_certificate(g, cert)
    print(cert.to_text())
    print("verified" if chk.ok else f"FAILED: {chk.failures()}")
    return 0 if chk.ok else 1


def cmd_primes(args) -> int:
    from .primes import NotCovered, check_special_primes, ppd, special_primes

    if args.ppd:
        a, n = args.ppd
        print(ppd(a, n))
        return 0
    try:
        S = special_primes(args.family, args.n, args.q)
    except NotCovered as exc:
        print(f"not covered: {exc}")
        return 1
    chk = check_special_primes(args.family, args.n, args.q, S)
    print(json.dumps({"primes": list(S.primes), "row": S.row, "ok": chk.ok, "detail": chk.detail})
          if args.format == "json" else f"{S.primes} ({S.row}); checks {'pass' if chk.ok else 'FAIL'}")
    return 0 if chk.ok else 1


def cmd_verify(args) -> int:
    if not args.config:
        print("verify needs --config", file=sys.stderr)
        return 2
    try:
        reports = run_roster(args.config, args.cache_dir, args.seed, args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(reports, args.format))
    return 0 if all(r["matches"] for r in reports) else 1


def cmd_report(args) -> int:
    reports = json.loads(Path(args.report).read_text())
    sys.stdout.write(emit_report(reports, args.format))
    return 0 if all(r.get("matches") for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config")
    common.add_argument("--cache-dir")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--format", choices=("json", "markdown", "text"), default="json")
    p = argparse.ArgumentParser(prog="wordmaps", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("enumerate", parents=[common], help="enumerate a named group")
    s.add_argument("group")
    s.set_defaults(fn=cmd_enumerate)
    s = sub.add_parser("chartab", parents=[common], help="character table of a named group")
    s.add_argument("group")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_chartab)
    s = sub.add_parser("verify", parents=[common], help="run a verification roster")
    s.set_defaults(fn=cmd_verify)
    s = sub.add_parser("construct", parents=[common], help="2-element construction with certificate")
    s.add_argument("family", choices=("GL", "GU", "Sp", "SO"))
    s.add_argument("n", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--eps", type=int, default=1)
    s.add_argument("--delta", type=int, default=1)
    s.set_defaults(fn=cmd_construct)
    s = sub.add_parser("primes", parents=[common], help="special prime sets and ppd")
    s.add_argument("family", nargs="?", default="SL")
    s.add_argument("n", nargs="?", type=int, default=4)
    s.add_argument("q", nargs="?", type=int, default=2)
    s.add_argument("--ppd", type=int, nargs=2, metavar=("A", "N"))
    s.set_defaults(fn=cmd_primes)
    s = sub.add_parser("report", parents=[common], help="re-render a json report")
    s.add_argument("report")
    s.set_defaults(fn=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format == "text" and args.cmd in ("verify", "report"):
        args.format = "markdown"
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
