"""Admissible pairs, compatible couples and per-degree enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .signpat import (Orbit, PatternLike, SignPattern, all_patterns, as_pattern,
                      counts, im_pattern, ir_pattern, orbit)

MAX_DEGREE = 14


class IncompatibleCouple(ValueError):
    pass


class AdmissiblePair(NamedTuple):
    pos: int
    neg: int


def is_compatible(sp: SignPattern, pr: tuple[int, int]) -> bool:
    """Descartes' constraints: ``pos <= c``, ``neg <= p``, both with matching parity."""
    c, p = counts(sp)
    pos, neg = pr
    ok = 0 <= pos <= c and 0 <= neg <= p and (c - pos) % 2 == 0 and (p - neg) % 2 == 0
    if ok:
        # sgn Q(0) = (-1)^pos follows from the parity of c
        assert (sp.signs[-1] == "+") == (pos % 2 == 0)
    return ok


@dataclass(frozen=True)
class Couple:
    pattern: SignPattern
    pair: AdmissiblePair

    def __post_init__(self):
        object.__setattr__(self, "pair", AdmissiblePair(*self.pair))
        if not is_compatible(self.pattern, self.pair):
            raise IncompatibleCouple(
                f"pair {tuple(self.pair)} is not admissible for {self.pattern.signs}")

    @classmethod
    def make(cls, pattern: PatternLike, pos: int, neg: int) -> "Couple":
        return cls(as_pattern(pattern), AdmissiblePair(pos, neg))

    @property
    def pos(self) -> int:
        return self.pair.pos

    @property
    def neg(self) -> int:
        return self.pair.neg

    @property
    def degree(self) -> int:
        return self.pattern.degree

    @property
    def runs(self) -> tuple[int, ...]:
        return self.pattern.runs

    @property
    def mu(self) -> int:
        return min(self.pos, self.neg)

    @property
    def lam(self) -> int:
        return (self.degree - self.pos - self.neg) // 2

    def involution(self, which: str) -> "Couple":
        if which == "im":
            return Couple(im_pattern(self.pattern), AdmissiblePair(self.neg, self.pos))
        return Couple(ir_pattern(self.pattern), self.pair)

    def sort_key(self):
        return (self.pattern.signs, tuple(self.pair))

    def canonical(self) -> "Couple":
        return orbit(self).representative

    def to_json(self) -> dict:
        return {"runs": list(self.runs), "pos": self.pos, "neg": self.neg}

    @classmethod
    def from_json(cls, data: dict) -> "Couple":
        return cls.make(list(data["runs"]), int(data["pos"]), int(data["neg"]))

    def label(self) -> str:
        runs = ",".join(map(str, self.runs))
        return f"(Σ_{{{runs}}},({self.pos},{self.neg}))"

    def __str__(self) -> str:
        return self.label()


def descartes_pair(sp: SignPattern) -> AdmissiblePair:
    return AdmissiblePair(*counts(sp))


def admissible_pairs(sp: SignPattern) -> list[AdmissiblePair]:
    """All admissible pairs, descending by ``pos`` then ``neg``."""
    c, p = counts(sp)
    return [AdmissiblePair(a, b) for a in range(c, -1, -2) for b in range(p, -1, -2)]


def _check_degree(d: int, allow_large: bool) -> None:
    if d < 1 or (d > MAX_DEGREE and not allow_large):
        raise ValueError(f"degree {d} outside 1..{MAX_DEGREE} (pass allow_large=True to override)")


def enumerate_couples(d: int, allow_large: bool = False) -> Iterator[Couple]:
    """Every compatible couple of degree ``d``: patterns lexicographic, pairs descending."""
    _check_degree(d, allow_large)
    for sp in all_patterns(d):
        for pr in admissible_pairs(sp):
            yield Couple(sp, pr)


def enumerate_orbits(d: int, allow_large: bool = False) -> list[Orbit]:
    """Orbits of degree ``d`` sorted by canonical representative."""
    seen = set()
    out = []
    for cp in enumerate_couples(d, allow_large):
        if cp in seen:
            continue
        o = orbit(cp)
        seen |= o.members
        out.append(o)
    out.sort(key=lambda o: o.representative.sort_key())
    return out


def couple_count(d: int) -> int:
    """Closed-form count of compatible couples of degree ``d``."""
    from math import comb
    return sum(comb(d, c) * (c // 2 + 1) * ((d - c) // 2 + 1) for c in range(d + 1))
