"""Deterministic decomposition planner.

Finds a recipe for a couple from a small set of constructions that are
guaranteed to work:

* the Descartes pair (canonical hyperbolic polynomial),
* the minimal pair ``(c mod 2, p mod 2)`` (hyperbolic plus a large constant),
* known leaves (exact polynomials supplied by the caller),
* concatenation of two plannable couples, and
* moving to another member of the orbit.

Feasibility is decided combinatorially first (memoized on couples), so no
polynomial arithmetic happens until a full plan exists.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .couples import AdmissiblePair, Couple, admissible_pairs, descartes_pair
from .realize import (AddConstant, CanonicalHyperbolic, Concat, Involute, Recipe,
                      merge_couples)
from .signpat import SignPattern, counts

_FLIP = str.maketrans("+-", "-+")


def minimal_pair(sp: SignPattern) -> AdmissiblePair:
    c, p = counts(sp)
    return AdmissiblePair(c % 2, p % 2)


def _split(sp: SignPattern, k: int) -> tuple[SignPattern, SignPattern]:
    """Split after the ``k``-th sign change position so the halves concatenate back to ``sp``."""
    s = sp.signs
    left = s[:k + 1]
    right = s[k:]
    if right[0] == "-":
        right = right.translate(_FLIP)
    return SignPattern(left), SignPattern(right)


def _orbit_moves(c: Couple) -> list[tuple[Couple, tuple[str, ...]]]:
    """Orbit members with the involutions that map them back to ``c``."""
    a = c.involution("im")
    b = c.involution("ir")
    ab = b.involution("im")
    return [(c, ()), (b, ("ir",)), (a, ("im",)), (ab, ("im", "ir"))]


class Planner:
    def __init__(self, leaves: Mapping[Couple, Recipe] | None = None, max_degree: int = 14):
        self.leaves = dict(leaves or {})
        self.max_degree = max_degree
        self._memo: dict[Couple, tuple | None] = {}

    def _base(self, c: Couple):
        if c in self.leaves:
            return ("leaf",)
        if c.pair == descartes_pair(c.pattern):
            return ("hyp",)
        if c.pair == minimal_pair(c.pattern):
            return ("const",)
        return None

    def _direct(self, c: Couple):
        """Plan for ``c`` itself without an orbit move at the top."""
        b = self._base(c)
        if b is not None:
            return b
        sp = c.pattern
        d = sp.degree
        for k in range(1, d):
            s1, s2 = _split(sp, k)
            for p1 in admissible_pairs(s1):
                pos2, neg2 = c.pos - p1.pos, c.neg - p1.neg
                if pos2 < 0 or neg2 < 0:
                    continue
                c2 = _maybe(s2, pos2, neg2)
                if c2 is None:
                    continue
                c1 = Couple(s1, p1)
                if self.feasible(c1) and self.feasible(c2):
                    return ("cat", c1, c2)
        return None

    def feasible(self, c: Couple) -> bool:
        return self._lookup(c) is not None

    def _direct_cached(self, c: Couple):
        if c not in self._memo:
            self._memo[c] = self._direct(c)
        return self._memo[c]

    def _lookup(self, c: Couple):
        # sub-couples always have smaller degree, so this recursion terminates
        for member, moves in _orbit_moves(c):
            step = self._direct_cached(member)
            if step is not None:
                return member, moves, step
        return None

    def recipe(self, c: Couple) -> Recipe | None:
        """A replayable recipe for ``c`` or ``None`` when the planner cannot build one."""
        entry = self._lookup(c)
        if entry is None:
            return None
        member, moves, step = entry
        r = self._build(member, step)
        cur = member
        for which in moves:
            cur = cur.involution(which)
            r = Involute(r, which, cur)
        assert cur == c
        return r

    def _build(self, c: Couple, step) -> Recipe:
        kind = step[0]
        if kind == "leaf":
            return self.leaves[c]
        if kind == "hyp":
            return CanonicalHyperbolic(c.pattern, c)
        if kind == "const":
            return AddConstant(CanonicalHyperbolic(c.pattern, Couple(c.pattern, descartes_pair(c.pattern))),
                               c.neg, c.pos, c)
        _, c1, c2 = step
        merged = merge_couples(c1, c2)
        assert merged == c, (merged, c)
        return Concat(self.recipe(c1), self.recipe(c2), c)


def _maybe(sp: SignPattern, pos: int, neg: int) -> Couple | None:
    try:
        return Couple(sp, AdmissiblePair(pos, neg))
    except ValueError:
        return None


@lru_cache(maxsize=1)
def default_planner() -> Planner:
    from .library import known_leaves
    return Planner(known_leaves())


def plan(c: Couple) -> Recipe | None:
    return default_planner().recipe(c)
