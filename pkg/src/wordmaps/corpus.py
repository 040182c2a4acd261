"""Named desk-scale groups and their (optionally cached) character tables."""
from __future__ import annotations

import math
import random
import re
from functools import lru_cache
from pathlib import Path

from .chartab import CharacterTable, check_orthogonality, dixon_schneider, parse_table, write_table
from .classical import build_group, group_order, random_member
from .groups import EnumeratedGroup, Mat, Perm, alternating_generators, enumerate_group, symmetric_generators

M11_GENERATORS = ("(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)")

# simple groups of the power-word suite
SIMPLE = ("A5", "A6", "A7", "A8", "PSL2(7)", "PSL2(8)", "PSL2(11)", "PSL2(13)", "PSL3(3)", "PSU3(3)", "PSU4(2)")
# quasisimple groups of the 2-element suite
TWO_ELEMENT = ("SL2(5)", "SL2(7)", "SL2(9)", "SL2(11)", "SL2(13)", "SL3(3)", "SU3(3)", "SU4(2)", "Sp4(3)")

_NAME = re.compile(r"^(A|S)(\d+)$|^(PSL|PSU|SL|SU|GL|GU|Sp)(\d+)\((\d+)\)$|^M11$")


class CorpusError(KeyError):
    pass


def _classical(fam: str, n: int, q: int) -> EnumeratedGroup:
    if fam not in ("PSL", "PSU"):
        return build_group(fam, n, q, verify=True).enumerated
    base = "SL" if fam == "PSL" else "SU"
    spec = build_group(base, n, q, verify=False)
    centre = math.gcd(n, q - 1 if fam == "PSL" else q + 1)
    target = group_order(base, n, q) // centre
    rng = random.Random(0)
    gens = list(spec.generators)
    for _ in range(8):
        # the action on lines kills exactly the scalars
        G = enumerate_group(gens, cap=target, label=f"{fam}{n}({q})", projective=centre > 1)
        if G.order == target:
            return G
        gens.append(Mat(spec.F, random_member(spec, rng)))
    raise CorpusError(f"could not generate {fam}{n}({q})")


@lru_cache(maxsize=None)
def get_group(name: str) -> EnumeratedGroup:
    m = _NAME.match(name)
    if not m:
        raise CorpusError(f"unknown group name {name!r}")
    if name == "M11":
        gens = [Perm.from_cycles(c, 11) for c in M11_GENERATORS]
        G = enumerate_group(gens, label="M11")
        if G.order != 7920:
            raise CorpusError("M11 generators give the wrong order")
        return G
    if m.group(1):
        n = int(m.group(2))
        if m.group(1) == "A":
            return enumerate_group(alternating_generators(n), label=name)
        return enumerate_group(symmetric_generators(n), label=name)
    fam, n, q = m.group(3), int(m.group(4)), int(m.group(5))
    G = _classical(fam, n, q)
    G.label = name
    return G


def cache_path(name: str, cache_dir: str | Path) -> Path:
    return Path(cache_dir) / f"{re.sub(r'[^A-Za-z0-9]+', '_', name)}.tbl"


def get_table(name: str, cache_dir: str | Path | None = None) -> CharacterTable:
    """Dixon-Schneider table of a named group, read from / written to cache_dir when given.

    A cached table is used only if it passes the orthogonality check.
    """
    path = cache_path(name, cache_dir) if cache_dir is not None else None
    if path is not None and path.exists():
        try:
            T = parse_table(path.read_text())
            if check_orthogonality(T).ok:
                return T
        except ValueError:
            pass
    T = _table(name)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(write_table(T))
    return T


@lru_cache(maxsize=None)
def _table(name: str) -> CharacterTable:
    T = dixon_schneider(get_group(name))
    T.label = name
    return T
