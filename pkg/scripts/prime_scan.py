"""Special prime sets for small classical groups and the pairwise scan of ell* values."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

import sympy

from wordmaps.primes import FAMILIES, NotCovered, PrimeError, check_special_primes, scan_lemma_pair, special_primes


@dataclass
class PrimeScanConfig:
    n_max: int = 12
    q_max: int = 9
    scan_q_max: int = 9
    scan_n_max: int = 40


def _prime_powers(Q):
    return [q for q in range(2, Q + 1) if len(sympy.factorint(q)) == 1]


def run(cfg: PrimeScanConfig) -> dict:
    rows, uncovered = [], 0
    for fam in FAMILIES:
        for q in _prime_powers(cfg.q_max):
            for n in range(2, cfg.n_max + 1):
                try:
                    S = special_primes(fam, n, q)
                except NotCovered:
                    uncovered += 1
                    continue
                except PrimeError:
                    continue
                rows.append({"family": fam, "n": n, "q": q, "primes": list(S.primes),
                             "ok": check_special_primes(fam, n, q, S).ok})
    viol, notes = scan_lemma_pair(cfg.scan_q_max, cfg.scan_n_max)
    return {"rows": rows, "not_covered": uncovered, "all_ok": all(r["ok"] for r in rows),
            "pair_violations": [asdict(v) for v in viol], "skipped_values": len(notes)}


def main() -> None:
    d = PrimeScanConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    for k, v in asdict(d).items():
        ap.add_argument(f"--{k.replace('_', '-')}", type=int, default=v)
    cfg = PrimeScanConfig(**vars(ap.parse_args()))
    res = run(cfg)
    print(json.dumps({"config": asdict(cfg), **res}, indent=2))


if __name__ == "__main__":
    main()
