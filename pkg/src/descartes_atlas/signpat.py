"""Sign patterns, run-length notation, the Z2 x Z2 involutions and closures.

A sign pattern of degree ``d`` is a string of ``d + 1`` characters from
``"+-"`` read from the leading coefficient down to the constant term.  The
ASCII order ``'+' < '-'`` gives the lexicographic order used for canonical
orbit representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence, Union

from .poly import ExactPoly

_FLIP = str.maketrans("+-", "-+")


@dataclass(frozen=True, order=True)
class SignPattern:
    signs: str

    def __post_init__(self):
        s = self.signs
        if len(s) < 2:
            raise ValueError("a sign pattern has length >= 2")
        if s[0] != "+":
            raise ValueError("a sign pattern starts with '+'")
        if set(s) - set("+-"):
            raise ValueError(f"bad sign pattern {s!r}")

    @classmethod
    def from_runs(cls, runs: Sequence[int]) -> "SignPattern":
        return cls(decode_runs(runs))

    @classmethod
    def parse(cls, text: str) -> "SignPattern":
        """Accept ``"++-+"``, ``"(+,+,-,+)"`` or run lists like ``"1,4,4,1"``."""
        t = text.strip().strip("()[]").replace(" ", "")
        if t and t[0].isdigit():
            return cls.from_runs([int(x) for x in t.split(",")])
        t = t.replace(",", "").replace("−", "-")
        return cls(t)

    @property
    def degree(self) -> int:
        return len(self.signs) - 1

    @property
    def runs(self) -> tuple[int, ...]:
        return encode_runs(self.signs)

    def __str__(self) -> str:
        return self.signs

    def __len__(self) -> int:
        return len(self.signs)


@dataclass(frozen=True)
class GenSignPattern:
    signs: str

    def __post_init__(self):
        if not self.signs or self.signs[0] != "+":
            raise ValueError("a generalized sign pattern starts with '+'")
        if set(self.signs) - set("+-0"):
            raise ValueError(f"bad generalized sign pattern {self.signs!r}")

    def has_consecutive_zeros(self) -> bool:
        return "00" in self.signs

    def __str__(self) -> str:
        return self.signs


PatternLike = Union[SignPattern, str, Sequence[int]]


def as_pattern(x: PatternLike) -> SignPattern:
    if isinstance(x, SignPattern):
        return x
    if isinstance(x, str):
        return SignPattern.parse(x)
    return SignPattern.from_runs(list(x))


# run-length codec

def decode_runs(runs: Sequence[int]) -> str:
    runs = list(runs)
    if not runs or any(int(m) < 1 for m in runs):
        raise ValueError("run lengths must be positive")
    if sum(runs) < 2:
        raise ValueError("run lengths must sum to d + 1 >= 2")
    return "".join(("+" if i % 2 == 0 else "-") * m for i, m in enumerate(runs))


def encode_runs(signs: str) -> tuple[int, ...]:
    return tuple(len(list(g)) for _, g in groupby(signs))


def runs_codec(x):
    """Run lengths -> SignPattern, or SignPattern/str -> run lengths."""
    if isinstance(x, SignPattern):
        return x.runs
    if isinstance(x, str):
        return SignPattern.parse(x).runs
    return SignPattern.from_runs(x)


def counts(sp: SignPattern) -> tuple[int, int]:
    """``(c, p)``: sign changes and sign preservations."""
    s = sp.signs
    c = sum(1 for a, b in zip(s, s[1:]) if a != b)
    return c, sp.degree - c


def _sgn(c) -> str:
    return "+" if c > 0 else "-" if c < 0 else "0"


def of_poly(q: ExactPoly) -> SignPattern:
    """Sign pattern of a polynomial with no vanishing coefficient and ``a_d > 0``."""
    if q.degree < 1:
        raise ValueError("need degree >= 1")
    if any(c == 0 for c in q.coeffs):
        raise ValueError("zero coefficient present; use gen_of_poly")
    if q.lc < 0:
        raise ValueError("leading coefficient must be positive")
    return SignPattern("".join(_sgn(c) for c in reversed(q.coeffs)))


def gen_of_poly(q: ExactPoly) -> GenSignPattern:
    if q.lc <= 0:
        raise ValueError("leading coefficient must be positive")
    return GenSignPattern("".join(_sgn(c) for c in reversed(q.coeffs)))


# involutions

def im_pattern(sp: SignPattern) -> SignPattern:
    """``(-1)^d sigma(Q(-x))``: flip every second sign."""
    s = sp.signs
    return SignPattern("".join(ch.translate(_FLIP) if i % 2 else ch for i, ch in enumerate(s)))


def ir_pattern(sp: SignPattern) -> SignPattern:
    """Reverse the string, then normalize to a leading ``+``."""
    r = sp.signs[::-1]
    if r[0] == "-":
        r = r.translate(_FLIP)
    return SignPattern(r)


def involution(x, which: str):
    """Apply ``"im"`` or ``"ir"`` to a SignPattern or a Couple."""
    which = which.lower()
    if which not in ("im", "ir"):
        raise ValueError("which must be 'im' or 'ir'")
    if isinstance(x, SignPattern):
        return im_pattern(x) if which == "im" else ir_pattern(x)
    # duck-typed Couple to avoid an import cycle
    return x.involution(which)


@dataclass(frozen=True)
class Orbit:
    members: frozenset
    representative: object

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members


def _sort_key(x):
    if isinstance(x, SignPattern):
        return (x.signs,)
    return x.sort_key()


def orbit(x) -> Orbit:
    """Closure of ``{x}`` under ``im`` and ``ir``."""
    a = involution(x, "im")
    b = involution(x, "ir")
    c = involution(a, "ir")
    members = frozenset((x, a, b, c))
    return Orbit(members, min(members, key=_sort_key))


def canonical_order(sp: SignPattern) -> str:
    """Read the pattern right to left: equal neighbours give ``N``, different ``P``.

    The result lists root types by increasing modulus.
    """
    s = sp.signs[::-1]
    return "".join("N" if a == b else "P" for a, b in zip(s, s[1:]))


def is_adjacent(g: GenSignPattern | str, sp: SignPattern | str) -> bool:
    """True iff ``g`` is ``sp`` with at least one non-initial entry replaced by ``0``."""
    gs = g.signs if isinstance(g, GenSignPattern) else g
    ss = sp.signs if isinstance(sp, SignPattern) else sp
    if len(gs) != len(ss):
        raise ValueError("length mismatch")
    if gs[0] != ss[0] or "0" not in gs:
        return False
    return all(a == b or a == "0" for a, b in zip(gs[1:], ss[1:]))


def in_closure(g: GenSignPattern | str, sp: SignPattern | str) -> bool:
    gs = g.signs if isinstance(g, GenSignPattern) else g
    ss = sp.signs if isinstance(sp, SignPattern) else sp
    return gs == ss or is_adjacent(gs, ss)


def all_patterns(d: int) -> Iterable[SignPattern]:
    """Every sign pattern of degree ``d`` in lexicographic order."""
    for k in range(2 ** d):
        tail = "".join("-" if (k >> (d - 1 - i)) & 1 else "+" for i in range(d))
        yield SignPattern("+" + tail)
