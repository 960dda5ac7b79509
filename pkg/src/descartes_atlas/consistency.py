"""Consistency report for an atlas; violations are grouped by the orbit they concern."""

from __future__ import annotations

from collections import Counter
from typing import Iterable

from .atlas import (NAMED_K, NONREALIZABLE, OPEN_MU_ONE, REALIZABLE, SMALL_NONREALIZABLE,
                    STORED_MAX_DEGREE, TWO_CHANGE_D9_NONREALIZABLE, UNKNOWN, Atlas, derive,
                    k_match, stored_witness, parse_recipe_key, recipe_for)
from .couples import AdmissiblePair, Couple, admissible_pairs
from .realize import RealizationError, realize_recipe
from .signpat import SignPattern, orbit

EXPECTED_SMALL_COUNTS = {4: 1, 5: 1, 6: 4, 7: 6, 8: 19}


class _Report:
    def __init__(self):
        self.by_subject: dict[str, list[str]] = {}

    def add(self, subject: str, check: str, msg: str) -> None:
        self.by_subject.setdefault(subject, []).append(f"({check}) {msg}")

    def rows(self) -> list[dict]:
        return [{"subject": s, "problems": p} for s, p in self.by_subject.items()]


def _replay(key: str, rep: Couple) -> str | None:
    try:
        kind, c = parse_recipe_key(key)
    except ValueError:
        return f"malformed recipe key {key!r}"
    if c.canonical() != rep:
        return f"recipe {key} realizes a couple outside the orbit"
    try:
        w = realize_recipe(recipe_for(key))
    except (KeyError, RealizationError, ValueError) as exc:
        return f"recipe {key} does not replay: {exc}"
    if w.couple != c:
        return f"recipe {key} produced {w.couple}"
    return None


def two_change_couples(total: int = 10) -> list[Couple]:
    out = []
    for m in range(1, total - 1):
        for n in range(1, total - m):
            q = total - m - n
            sp = SignPattern.from_runs([m, n, q])
            out += [Couple(sp, pr) for pr in admissible_pairs(sp)]
    return out


def check(atlas: Atlas, replay: bool = True, degrees: Iterable[int] | None = None) -> list[dict]:
    rep = _Report()
    degs = set(degrees) if degrees is not None else None
    seen: dict[Couple, str] = {}

    for e in atlas.rows:
        r = e.representative
        canon = r.canonical()
        subj = canon.label()
        # (a) one status per orbit, agreeing with the rule engine
        if canon in seen:
            rep.add(subj, "a", f"orbit listed twice ({seen[canon]} and {e.status})")
            continue
        seen[canon] = e.status
        if r != canon:
            rep.add(subj, "a", f"representative {r.label()} is not canonical")
        want, _ = derive(canon)
        if e.status != want:
            rep.add(subj, "a", f"status {e.status} disagrees with the catalog ({want})")
        if e.status in (NONREALIZABLE, UNKNOWN) and not e.citation.strip():
            rep.add(subj, "a", "missing citation")
        # (b) realizable entries replay
        if e.status == REALIZABLE:
            if e.recipe_key is None:
                if r.degree <= STORED_MAX_DEGREE:
                    rep.add(subj, "b", "realizable entry without a recipe")
            elif replay and (degs is None or r.degree in degs):
                err = _replay(e.recipe_key, canon)
                if err:
                    rep.add(subj, "b", err)
        elif e.recipe_key is not None:
            rep.add(subj, "b", f"{e.status} entry carries a recipe")

    # (c) non-realizable counts for small degrees
    nr = Counter(c.degree for c, s in seen.items() if s == NONREALIZABLE)
    for d, want in EXPECTED_SMALL_COUNTS.items():
        if len(SMALL_NONREALIZABLE[d]) != want:
            rep.add(f"degree {d}", "c", f"catalog lists {len(SMALL_NONREALIZABLE[d])} orbits, expected {want}")
        if nr[d] != want:
            culprits = [c.label() for c, s in seen.items() if c.degree == d and
                        (s == NONREALIZABLE) != (derive(c)[0] == NONREALIZABLE)]
            msg = f"{nr[d]} non-realizable orbits in degree {d}, expected {want}"
            if culprits:
                for lab in culprits:
                    rep.add(lab, "c", msg)
            else:
                rep.add(f"degree {d}", "c", msg)

    # (d) degree 9, two sign changes: every couple has a status matching the list
    nr9 = {c.canonical() for c in TWO_CHANGE_D9_NONREALIZABLE}
    for c in two_change_couples(10):
        canon = c.canonical()
        s = seen.get(canon)
        want = NONREALIZABLE if canon in nr9 and stored_witness(canon) is None else REALIZABLE
        if s is None:
            rep.add(canon.label(), "d", f"{c.label()} has no entry")
        elif s != want and not any(p.startswith("(a) status") for p in rep.by_subject.get(canon.label(), [])):
            rep.add(canon.label(), "d", f"{c.label()} is {s}, expected {want}")

    # (e) open lists never contain K orbits; named K orbits are K matches and non-realizable
    for d, lst in OPEN_MU_ONE.items():
        for c in lst:
            if k_match(c) is not None:
                rep.add(c.canonical().label(), "e", "open orbit is also a K orbit")
    for d, pairs in NAMED_K.items():
        for n, q in pairs:
            c = Couple(SignPattern.from_runs([1, n, q, 1]), AdmissiblePair(1, d - 3))
            if k_match(c) != (n, q):
                rep.add(c.label(), "e", "named K orbit not matched structurally")
            s = seen.get(c.canonical())
            if s is not None and s != NONREALIZABLE:
                rep.add(c.canonical().label(), "e", f"named K orbit stored as {s}")
    return rep.rows()
