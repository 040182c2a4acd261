"""Sample random elements, keep the unbreakable ones and test a centralizer or eigenspace bound."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from wordmaps.breakdec import LEMMAS, sample_bound_check
from wordmaps.classical import build_group


@dataclass
class BoundConfig:
    family: str = "GL"
    n: int = 7
    q: int = 2
    eps: int = 1
    lemma: str = "gl2-centralizer"
    samples: int = 10_000
    seed: int = 1


def run(cfg: BoundConfig) -> dict:
    spec = build_group(cfg.family, cfg.n, cfg.q, cfg.eps, verify=False)
    rep = sample_bound_check(spec, cfg.lemma, cfg.samples, cfg.seed)
    return {"summary": rep.summary(), "ok": rep.ok, "violations": [str(v.value) for v in rep.violations]}


def main() -> None:
    d = BoundConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default=d.family)
    ap.add_argument("--n", type=int, default=d.n)
    ap.add_argument("--q", type=int, default=d.q)
    ap.add_argument("--eps", type=int, default=d.eps)
    ap.add_argument("--lemma", choices=LEMMAS, default=d.lemma)
    ap.add_argument("--samples", type=int, default=d.samples)
    ap.add_argument("--seed", type=int, default=d.seed)
    cfg = BoundConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg), **run(cfg)}, indent=2))


if __name__ == "__main__":
    main()
