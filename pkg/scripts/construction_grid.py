"""Build and certify regular 2-elements over a grid of families, dimensions and fields."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from wordmaps.construct import construction_suite


@dataclass
class GridConfig:
    families: tuple[str, ...] = ("GL", "GU", "Sp", "SO")
    n_max: int = 12
    qs: tuple[int, ...] = (3, 5, 7, 9, 11, 13, 17)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--families", nargs="+", default=list(GridConfig.families))
    ap.add_argument("--n-max", type=int, default=GridConfig.n_max)
    ap.add_argument("--qs", type=int, nargs="+", default=list(GridConfig.qs))
    a = ap.parse_args()
    cfg = GridConfig(tuple(a.families), a.n_max, tuple(a.qs))
    res = construction_suite(cfg.families, cfg.n_max, cfg.qs)
    print(json.dumps({"config": asdict(cfg), "ok": res.ok, "total": res.total,
                      "failures": [list(map(str, f)) for f in res.failures]}, indent=2))


if __name__ == "__main__":
    main()
