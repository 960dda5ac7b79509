"""Status database of orbits: realizable (with a replayable recipe), non-realizable, or open.

Statuses come from a fixed rule engine (``derive``) built from the catalogued
classification results. The shipped JSON file stores every orbit of degree
at most 9 together with the named orbits of higher degree; anything else is
derived on demand. ``DESCARTES_ATLAS_PATH`` points the loader at another file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Optional

from .couples import MAX_DEGREE, AdmissiblePair, Couple, descartes_pair, enumerate_orbits
from .signpat import SignPattern, counts, orbit

ATLAS_PATH = Path(__file__).resolve().parent / "data" / "atlas.json"
ATLAS_SCHEMA = "atlas-v1"
STORED_MAX_DEGREE = 9

REALIZABLE = "Realizable"
NONREALIZABLE = "NonRealizable"
UNKNOWN = "Unknown"
STATUSES = (REALIZABLE, NONREALIZABLE, UNKNOWN)


def _c(runs, pos, neg) -> Couple:
    return Couple(SignPattern.from_runs(runs), AdmissiblePair(pos, neg))


# catalogued facts

SMALL_NONREALIZABLE: dict[int, list[Couple]] = {
    4: [_c([1, 3, 1], 0, 2)],
    5: [_c([1, 4, 1], 0, 3)],
    6: [_c([1, 5, 1], 0, 2), _c([1, 5, 1], 0, 4), _c([1, 1, 1, 3, 1], 0, 2), _c([2, 4, 1], 0, 4)],
    7: [_c([2, 5, 1], 0, 5), _c([2, 4, 2], 0, 5), _c([3, 4, 1], 0, 5),
        _c([1, 4, 1, 1, 1], 0, 3), _c([1, 6, 1], 0, 3), _c([1, 6, 1], 0, 5)],
    8: ([_c(r, 0, 6) for r in ([2, 5, 2], [1, 6, 2], [1, 4, 4], [1, 5, 3], [2, 4, 3])]
        + [_c(r, 0, 2) for r in ([1, 1, 1, 3, 1, 1, 1], [1, 3, 1, 1, 1, 1, 1])]
        + [_c(r, 0, k) for r in ([1, 5, 1, 1, 1], [1, 3, 1, 3, 1]) for k in (2, 4)]
        + [_c([1, 7, 1], 0, k) for k in (2, 4, 6)]
        + [_c(r, 0, 4) for r in ([1, 4, 1, 2, 1], [1, 6, 2], [1, 4, 2, 1, 1], [1, 1, 1, 4, 2], [1, 4, 1, 1, 2])]),
}

TWO_CHANGE_D9_NONREALIZABLE: list[Couple] = (
    [_c([1, 8, 1], 0, k) for k in (3, 5, 7)]
    + [_c(r, 0, k) for r in ([1, 7, 2], [1, 6, 3], [2, 6, 2]) for k in (5, 7)]
    + [_c(r, 0, 7) for r in ([1, 5, 4], [1, 4, 5], [2, 4, 4], [2, 5, 3], [3, 4, 3])]
)

OPEN_MU_ONE: dict[int, list[Couple]] = {
    10: [_c([1, 4, 4, 2], 1, 7)],
    11: [_c([1, 4, 5, 2], 1, 8), _c([1, 5, 4, 2], 1, 8), _c([2, 4, 4, 2], 1, 8),
         _c([1, 4, 4, 1, 1, 1], 1, 6), _c([1, 4, 1, 1, 4, 1], 1, 6), _c([1, 3, 1, 1, 1, 1, 3, 1], 1, 4)],
}
NAMED_K: dict[int, list[tuple[int, int]]] = {10: [(4, 5)], 11: [(5, 5), (4, 6)]}
OPEN_MU_TWO = _c([1, 4, 5, 4, 1], 2, 10)

CITE = {
    "small": "catalog of non-realizable orbits, degree {d} (complete list)",
    "small_ok": "complete classification for degree <= 8: orbit not in the non-realizable catalog",
    "k": "K_{{n,q}} family (Σ_{{1,n,q,1}},(1,d-3)) with n,q >= 4 is not realizable; here n={n}, q={q}",
    "hyperbolic": "Descartes pair: realized by a hyperbolic polynomial with canonical root order",
    "small_pair": "pairs (0,0), (0,1), (1,0), (1,1) are realizable for every sign pattern",
    "few_changes": "sign patterns with at most one sign change are realizable",
    "d9_two_nr": "degree 9, two sign changes: listed non-realizable orbit",
    "d9_two_ok": "degree 9, two sign changes: every orbit outside the non-realizable list is realizable",
    "d9_mu": "degree 9, mu >= 1: K_{4,4} is the only non-realizable orbit",
    "mu_two": "degree <= 14, mu >= 2: realizable",
    "mu_two_open": "degree 14, mu >= 2: the single orbit left open",
    "mu_one_open": "degree {d}, mu = 1: orbit left open",
    "mu_one_ok": "degree {d}, mu = 1: every orbit outside the named exceptions is realizable",
    "none": "not covered by the catalog",
    "refuted": "catalog says: {claim}; overridden by an exact certified witness in the store",
}


@dataclass(frozen=True)
class AtlasEntry:
    representative: Couple
    status: str
    citation: str
    recipe_key: Optional[str] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def degree(self) -> int:
        return self.representative.degree

    def to_json(self) -> dict:
        out = {"runs": list(self.representative.runs), "pos": self.representative.pos,
               "neg": self.representative.neg, "status": self.status, "citation": self.citation}
        if self.recipe_key is not None:
            out["recipe_key"] = self.recipe_key
        return out

    @classmethod
    def from_json(cls, row: dict) -> "AtlasEntry":
        c = _c(row["runs"], row["pos"], row["neg"])
        return cls(c, row["status"], row["citation"], row.get("recipe_key"))


def k_match(c: Couple) -> Optional[tuple[int, int]]:
    """``(n, q)`` with ``n <= q`` if ``c`` lies in a K_{n,q} orbit, else None."""
    for m in orbit(c).members:
        r = m.runs
        if len(r) == 4 and r[0] == 1 and r[3] == 1 and r[1] >= 4 and r[2] >= 4 \
                and m.pair == (1, m.degree - 3):
            return tuple(sorted((r[1], r[2])))
    return None


def _same_orbit(c: Couple, cat: Iterable[Couple]) -> bool:
    rep = c.canonical()
    return any(x.canonical() == rep for x in cat)


def _min_changes(c: Couple) -> int:
    return min(counts(m.pattern)[0] for m in orbit(c).members)


def stored_witness(c: Couple) -> Optional[Couple]:
    """Orbit member of ``c`` with an exact witness in the store, if any."""
    from .library import store_path
    keys = _store_keys(str(store_path()))
    for m in orbit(c).members:
        if m in keys:
            return m
    return None


@lru_cache(maxsize=4)
def _store_keys(path: str) -> frozenset:
    from .library import load_store
    return frozenset(load_store(Path(path)))


def derive(c: Couple) -> tuple[str, str]:
    """Status and citation from the catalogued rules, overridden by stored exact witnesses."""
    status, cite = _derive_catalog(c)
    if status != REALIZABLE and stored_witness(c) is not None:
        return REALIZABLE, CITE["refuted"].format(claim=cite)
    return status, cite


def _derive_catalog(c: Couple) -> tuple[str, str]:
    """Status and citation from the catalogued rules alone."""
    d = c.degree
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds {MAX_DEGREE}")
    k = k_match(c)
    if k is not None:
        return NONREALIZABLE, CITE["k"].format(n=k[0], q=k[1])
    if d <= 8:
        if _same_orbit(c, SMALL_NONREALIZABLE.get(d, [])):
            return NONREALIZABLE, CITE["small"].format(d=d)
    if any(m.pair == descartes_pair(m.pattern) for m in orbit(c).members):
        return REALIZABLE, CITE["hyperbolic"]
    if c.pos <= 1 and c.neg <= 1:
        return REALIZABLE, CITE["small_pair"]
    if _min_changes(c) <= 1:
        return REALIZABLE, CITE["few_changes"]
    if d <= 8:
        return REALIZABLE, CITE["small_ok"]
    mu = c.mu
    if d == 9 and _min_changes(c) == 2:
        if _same_orbit(c, TWO_CHANGE_D9_NONREALIZABLE):
            return NONREALIZABLE, CITE["d9_two_nr"]
        return REALIZABLE, CITE["d9_two_ok"]
    if d == 9 and mu >= 1:
        return REALIZABLE, CITE["d9_mu"]
    if mu >= 2:
        if c.canonical() == OPEN_MU_TWO.canonical():
            return UNKNOWN, CITE["mu_two_open"]
        return REALIZABLE, CITE["mu_two"]
    if mu == 1 and d in OPEN_MU_ONE:
        if _same_orbit(c, OPEN_MU_ONE[d]):
            return UNKNOWN, CITE["mu_one_open"].format(d=d)
        return REALIZABLE, CITE["mu_one_ok"].format(d=d)
    return UNKNOWN, CITE["none"]


# recipes

def recipe_key(kind: str, c: Couple) -> str:
    return f"{kind}:{','.join(map(str, c.runs))}/{c.pos},{c.neg}"


def parse_recipe_key(key: str) -> tuple[str, Couple]:
    kind, rest = key.split(":", 1)
    runs, pair = rest.split("/")
    pos, neg = (int(z) for z in pair.split(","))
    return kind, _c([int(z) for z in runs.split(",")], pos, neg)


def find_recipe_key(c: Couple) -> Optional[str]:
    from .library import builtin_recipes, known_leaves
    from .plan import default_planner
    members = orbit(c).members
    table = builtin_recipes()
    for m in members:
        if m in table:
            return recipe_key("builtin", m)
    leaves = known_leaves()
    for m in members:
        if m in leaves:
            return recipe_key("store", m)
    if default_planner().feasible(c):
        return recipe_key("plan", c.canonical())
    return None


def recipe_for(key: str):
    from .library import builtin_recipes, known_leaves
    from .plan import default_planner
    kind, c = parse_recipe_key(key)
    src = {"builtin": builtin_recipes, "store": known_leaves}.get(kind)
    if src is not None:
        r = src().get(c)
    elif kind == "plan":
        r = default_planner().recipe(c)
    else:
        raise KeyError(f"unknown recipe kind {kind!r}")
    if r is None:
        raise KeyError(f"no recipe behind key {key!r}")
    return r


def build_entry(c: Couple, with_recipe: bool = True) -> AtlasEntry:
    rep = c.canonical()
    status, cite = derive(rep)
    key = find_recipe_key(rep) if (with_recipe and status == REALIZABLE) else None
    return AtlasEntry(rep, status, cite, key)


# database

def atlas_path() -> Path:
    return Path(os.environ.get("DESCARTES_ATLAS_PATH", ATLAS_PATH))


class Atlas:
    def __init__(self, entries: Iterable[AtlasEntry], source: str = "<memory>"):
        self.rows = list(entries)
        self.source = source
        self.by_rep: dict[Couple, AtlasEntry] = {}
        for e in self.rows:
            self.by_rep.setdefault(e.representative.canonical(), e)

    @classmethod
    def load(cls, path: Path | None = None) -> "Atlas":
        p = Path(path) if path else atlas_path()
        data = json.loads(p.read_text())
        if data.get("schema") != ATLAS_SCHEMA:
            raise ValueError(f"unexpected atlas schema {data.get('schema')!r}")
        return cls((AtlasEntry.from_json(r) for r in data["entries"]), str(p))

    def to_json(self) -> dict:
        return {"schema": ATLAS_SCHEMA, "stored_max_degree": STORED_MAX_DEGREE,
                "entries": [e.to_json() for e in self.rows]}

    def save(self, path: Path | None = None) -> None:
        p = Path(path) if path else atlas_path()
        p.write_text(json.dumps(self.to_json(), indent=0, ensure_ascii=False) + "\n")

    def status(self, c: Couple, with_recipe: bool = True) -> AtlasEntry:
        if c.degree > MAX_DEGREE:
            raise ValueError(f"degree {c.degree} exceeds {MAX_DEGREE}")
        hit = self.by_rep.get(c.canonical())
        if hit is not None:
            return hit
        return build_entry(c, with_recipe)

    def list(self, d: int, status: str | None = None,
             where: Callable[[AtlasEntry], bool] | None = None) -> list[AtlasEntry]:
        if not 1 <= d <= MAX_DEGREE:
            raise ValueError(f"degree must be in 1..{MAX_DEGREE}")
        if d <= STORED_MAX_DEGREE:
            pool = [e for e in self.rows if e.degree == d]
        else:
            pool = [self.status(o.representative, with_recipe=False) for o in enumerate_orbits(d)]
        out = [e for e in pool if (status is None or e.status == status) and (where is None or where(e))]
        return sorted(out, key=lambda e: e.representative.sort_key())

    def consistency_check(self, replay: bool = True, degrees: Iterable[int] | None = None) -> list[dict]:
        from .consistency import check
        return check(self, replay=replay, degrees=degrees)


def build_atlas(with_recipes: bool = True) -> Atlas:
    rows: list[AtlasEntry] = []
    for d in range(1, STORED_MAX_DEGREE + 1):
        for o in enumerate_orbits(d):
            rows.append(build_entry(o.representative, with_recipes))
    named: list[Couple] = [OPEN_MU_TWO]
    for lst in OPEN_MU_ONE.values():
        named += lst
    for d in range(10, MAX_DEGREE + 1):
        for n in range(4, d - 4):
            q = d - 1 - n
            if n <= q:
                named.append(_c([1, n, q, 1], 1, d - 3))
    for c in named:
        rows.append(build_entry(c, with_recipes))
    return Atlas(rows)


@lru_cache(maxsize=4)
def _load_cached(path: str) -> Atlas:
    return Atlas.load(Path(path))


def default_atlas() -> Atlas:
    p = atlas_path()
    if not p.exists():
        return build_atlas()
    return _load_cached(str(p))


def status(c: Couple) -> AtlasEntry:
    return default_atlas().status(c)


def list_entries(d: int, status: str | None = None, where=None) -> list[AtlasEntry]:
    return default_atlas().list(d, status, where)


def consistency_check(replay: bool = True) -> list[dict]:
    return default_atlas().consistency_check(replay)
