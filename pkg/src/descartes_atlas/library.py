"""Named constructions, the frozen witness store, and the builtin recipe table.

Sub-couples used as building blocks are resolved by the planner, which in
turn may use frozen leaves (exact polynomials manufactured by the randomized
searcher and stored in ``data/witnesses.json``).
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .couples import AdmissiblePair, Couple
from .poly import ExactPoly
from .realize import (AddConstant, Concat, Involute, Leaf, Recipe, merge_couples,
                      recipe_from_json, recipe_to_json)
from .signpat import SignPattern

DATA_DIR = Path(__file__).resolve().parent / "data"
STORE_PATH = DATA_DIR / "witnesses.json"
STORE_SCHEMA = "witnesses-v1"


def C(runs, pos: int, neg: int) -> Couple:
    return Couple(SignPattern.from_runs(runs), AdmissiblePair(pos, neg))


def g0() -> ExactPoly:
    x = ExactPoly.x()
    return x * (x ** 2 - 1) ** 2 * (x ** 4 + 2 * x ** 2 + 1)


def g1() -> ExactPoly:
    """``G0 - (x+1)^8 / 10000 + 1/5``: three negative roots, three complex pairs."""
    x = ExactPoly.x()
    return g0() - Fraction(1, 10000) * (x + 1) ** 8 + Fraction(1, 5)


# frozen witness store

def store_path() -> Path:
    return Path(os.environ.get("DESCARTES_WITNESS_PATH", STORE_PATH))


def load_store(path: Path | None = None) -> dict[Couple, dict]:
    p = path or store_path()
    if not p.exists():
        return {}
    data = json.loads(p.read_text())
    if data.get("schema") != STORE_SCHEMA:
        raise ValueError(f"unexpected witness store schema {data.get('schema')!r}")
    return {Couple.from_json(e["couple"]): e for e in data["entries"]}


def save_store(entries: dict[Couple, dict], path: Path | None = None) -> None:
    p = path or store_path()
    rows = sorted(entries.values(), key=lambda e: (len(e["couple"]["runs"]), Couple.from_json(e["couple"]).sort_key()))
    rows.sort(key=lambda e: Couple.from_json(e["couple"]).degree)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps({"schema": STORE_SCHEMA, "entries": rows}, indent=1) + "\n")


def store_entry(c: Couple, r: Recipe, source: str) -> dict:
    return {"couple": c.to_json(), "label": c.label(), "source": source, "recipe": recipe_to_json(r)}


@lru_cache(maxsize=1)
def known_leaves() -> dict[Couple, Recipe]:
    leaves: dict[Couple, Recipe] = {C([1, 7, 2], 0, 3): Leaf(g1(), C([1, 7, 2], 0, 3))}
    for c, e in load_store().items():
        leaves.setdefault(c, recipe_from_json(e["recipe"]))
    return leaves


# builtin recipes

class MissingBlock(LookupError):
    pass


def _block(c: Couple, missing: list | None) -> Recipe:
    from .plan import default_planner
    r = default_planner().recipe(c)
    if r is None:
        if missing is None:
            raise MissingBlock(f"no construction for building block {c}")
        missing.append(c)
        return Leaf(ExactPoly((1,)), c)  # placeholder, never replayed
    return r


def _cat(claim: Couple, *parts: Couple, missing=None, blocks=None) -> Recipe:
    """Left-nested concatenation of ``parts`` with the claimed result checked combinatorially."""
    blocks = blocks or {}
    acc_c = parts[0]
    acc = blocks.get(acc_c) or _block(acc_c, missing)
    for p in parts[1:]:
        nxt_c = merge_couples(acc_c, p)
        acc = Concat(acc, blocks.get(p) or _block(p, missing), nxt_c)
        acc_c = nxt_c
    if acc_c != claim:
        raise AssertionError(f"transcription error: parts merge to {acc_c}, claim {claim}")
    return acc


def _table(missing: list | None) -> dict[Couple, Recipe]:
    T: dict[Couple, Recipe] = {}

    def add(claim, *parts, blocks=None):
        T[claim] = _cat(claim, *parts, missing=missing, blocks=blocks)

    # degree 10, mu >= 2 exception case
    add(C([1, 4, 4, 1, 1], 2, 6), C([1, 4, 4], 2, 6), C([1, 1, 1], 0, 0))
    # degree 10, mu = 1
    for a in (3, 5):
        add(C([1, 4, 1, 1, 3, 1], 1, a), C([1, 3], 1, a - 3), C([2, 1, 1, 3, 1], 0, 3))
        add(C([1, 4, 5, 1], 1, a), C([1, 4, 1], 0, 1), C([5, 1], 1, a - 1))
        add(C([1, 4, 4, 2], 1, a), C([1, 4, 1], 0, 1), C([4, 2], 1, a - 1))
    # degree 11, mu >= 2
    add(C([1, 4, 5, 1, 1], 2, 7), C([1, 4, 1], 2, 3), C([5, 1, 1], 0, 4))
    add(C([1, 4, 4, 2, 1], 2, 7), C([1, 4, 1], 2, 3), C([4, 2, 1], 0, 4))
    # degree 11, mu = 1, alpha_5 = +, alpha_4 = +
    for a in (6, 4, 2):
        add(C([1, 5, 5, 1], 1, a), C([1, 5, 3], 0, a - 2), C([3, 1], 1, 2))
        add(C([1, 5, 4, 2], 1, a), C([1, 5, 3], 0, a - 2), C([2, 2], 1, 2))
        add(C([2, 4, 4, 2], 1, a), C([2, 4, 3], 0, a - 2), C([2, 2], 1, 2))
        add(C([1, 4, 5, 2], 1, a), C([1, 4, 4], 0, a - 2), C([2, 2], 1, 2))
        add(C([1, 4, 6, 1], 1, a), C([1, 4, 4], 0, a - 2), C([3, 1], 1, 2))
        add(C([1, 4, 4, 3], 1, a), C([1, 4, 4], 0, a - 2), C([1, 3], 1, 2))
    add(C([1, 4, 4, 3], 1, 8), C([1, 1], 1, 0), C([4, 4, 3], 0, 8))
    for a in (4, 2):
        # printed with (0, a-2) in the first factor; (0, a) is what merges to (1, a)
        add(C([1, 4, 4, 1, 1, 1], 1, a), C([1, 4, 4], 0, a), C([1, 1, 1, 1], 1, 0))
    # degree 11, mu = 1, alpha_4 = -
    for a in (1, 3):
        for b in (1, 3):
            add(C([1, 5, 1, 1, 3, 1], 1, a + b), C([1, 4], 1, a), C([2, 1, 1, 3, 1], 0, b))
            add(C([2, 4, 1, 1, 3, 1], 1, a + b), C([2, 3], 1, a), C([2, 1, 1, 3, 1], 0, b))
            add(C([1, 4, 2, 1, 3, 1], 1, a + b), C([1, 4], 1, a), C([1, 2, 1, 3, 1], 0, b))
    add(C([1, 1, 1, 3, 1, 1, 3, 1], 1, 4), C([1, 1, 1], 0, 0), C([1, 3, 1, 1, 3, 1], 1, 4))
    add(C([1, 1, 1, 3, 1, 1, 3, 1], 1, 2), C([1, 1, 1, 3, 1, 1, 1], 0, 0), C([3, 1], 1, 2))
    add(C([1, 3, 1, 1, 1, 1, 3, 1], 1, 2), C([1, 3, 1, 1, 1, 1, 1], 0, 0), C([3, 1], 1, 2))
    add(C([1, 4, 1, 1, 4, 1], 1, 4), C([1, 3], 1, 2), C([2, 1, 1, 4, 1], 0, 2))
    add(C([1, 4, 1, 1, 4, 1], 1, 2), C([1, 3], 1, 2), C([2, 1, 1, 4, 1], 0, 0))
    # degree 12: peel one positive root off the front, or a (1,4) block
    add(C([1, 4, 5, 3], 3, 5), C([1, 1], 1, 0), C([4, 5, 3], 2, 5))
    add(C([1, 4, 4, 4], 3, 3), C([1, 1], 1, 0), C([4, 4, 4], 2, 3))
    add(C([1, 4, 5, 1, 1, 1], 3, 7), C([1, 1], 1, 0), C([4, 5, 1, 1, 1], 2, 7))
    add(C([1, 4, 5, 2, 1], 2, 4), C([1, 4], 1, 3), C([1, 5, 2, 1], 1, 1))
    add(C([1, 4, 4, 3, 1], 2, 2), C([1, 4], 1, 1), C([1, 4, 3, 1], 1, 1))
    add(C([1, 4, 4, 2, 2], 2, 6), C([1, 4], 1, 3), C([1, 4, 2, 2], 1, 3))
    # degrees 13 and 14: the (0,8) block with three negative roots removed by a constant
    k8 = C([3, 4, 4], 0, 8)
    kstar = {k8: _block(k8, missing)}
    for nu in (7, 5, 3):
        kc = C([3, 4, 4], 0, nu - 1)
        kstar[kc] = AddConstant(kstar[k8], nu - 1, 0, kc)
    for nu in (9, 7, 5, 3):
        ks = C([3, 4, 4], 0, nu - 1)
        add(C([1, 4, 4, 4, 1], 2, nu), C([1, 2], 1, 1), ks, C([1, 1], 1, 0), blocks=kstar)
        T[C([1, 4, 4, 4, 2], 2, nu + 1)] = Concat(T[C([1, 4, 4, 4, 1], 2, nu)],
                                                  _block(C([2], 0, 1), missing),
                                                  C([1, 4, 4, 4, 2], 2, nu + 1))
        add(C([1, 4, 4, 5, 1], 2, nu + 1), C([1, 2], 1, 1), ks, C([2, 1], 1, 1), blocks=kstar)
    for rho in (2, 4, 6, 8):
        add(C([1, 4, 5, 4, 1], 2, rho), C([1, 4, 1], 0, 1), C([5, 4, 1], 2, rho - 1))
    # degree 9, two sign changes
    for m, n, q in _triples(10):
        if q >= 3 and q >= m:
            add(C([m, n, q], 0, 3), C([m, n, q - 2], 0, 1), C([3], 0, 2))
        if q >= 5 and q >= m:
            add(C([m, n, q], 0, 5), C([m, n, q - 4], 0, 1), C([5], 0, 4))
        elif q >= m and (q == 4 or (q == 3 and m in (2, 3))):
            add(C([m, n, q], 0, 5), C([m, n, q - 2], 0, 3), C([3], 0, 2))
    c162 = C([1, 6, 2], 0, 2)
    T[c162] = _cat(c162, C([1, 6, 1], 0, 1), C([2], 0, 1), missing=missing)
    c261 = C([2, 6, 1], 0, 2)
    add(C([2, 6, 2], 0, 3), c261, C([2], 0, 1), blocks={c261: Involute(T[c162], "ir", c261)})
    T[C([1, 7, 2], 0, 3)] = Leaf(g1(), C([1, 7, 2], 0, 3))
    return T


def _triples(total: int):
    for m in range(1, total - 1):
        for n in range(1, total - m):
            q = total - m - n
            if q >= 1:
                yield m, n, q


@lru_cache(maxsize=1)
def builtin_recipes() -> dict[Couple, Recipe]:
    return _table(None)


def missing_blocks() -> list[Couple]:
    """Building blocks the planner cannot construct from the current leaves."""
    missing: list[Couple] = []
    _table(missing)
    return list(dict.fromkeys(missing))
