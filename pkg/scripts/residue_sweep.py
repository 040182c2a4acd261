"""Sweep x^N y^N over every residue class of N = p^a r^b for a list of corpus groups."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field

from wordmaps.corpus import SIMPLE, get_table
from wordmaps.words import sweep_xNyN


@dataclass
class SweepConfig:
    groups: list[str] = field(default_factory=lambda: list(SIMPLE))
    cache_dir: str | None = None


def run(cfg: SweepConfig) -> dict:
    out = {}
    for name in cfg.groups:
        T = get_table(name, cfg.cache_dir)
        res = sweep_xNyN(T, T.order, T.exponent)
        bad = {N: r.missed for N, r in res.items() if not r.surjective}
        out[name] = {"exponents_checked": len(res), "failures": bad}
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*")
    ap.add_argument("--cache-dir")
    a = ap.parse_args()
    cfg = SweepConfig(cache_dir=a.cache_dir)
    if a.groups:
        cfg.groups = a.groups
    print(json.dumps({"config": asdict(cfg), "results": run(cfg)}, indent=2))


if __name__ == "__main__":
    main()
