"""Exact univariate polynomials over the rationals.

Coefficients are stored as :class:`fractions.Fraction` in ascending degree
order ``(a_0, ..., a_d)``.  The zero polynomial is the empty tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, str]


def to_rat(x: Number) -> Fraction:
    """Coerce ints, Fractions and decimal/``"n/d"`` strings to a Fraction.

    Floats are rejected: every literal entering the core must be exact.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class ExactPoly:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Number] = ()):
        object.__setattr__(self, "coeffs", _trim(to_rat(c) for c in coeffs))

    # construction helpers
    @classmethod
    def x(cls) -> "ExactPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> "ExactPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "ExactPoly":
        return cls([0] * k + [c])

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, j: int) -> Fraction:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0)

    def __call__(self, x: Number) -> Fraction:
        x = to_rat(x) if not isinstance(x, Fraction) else x
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "ExactPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return ExactPoly(c / lc for c in self.coeffs)

    def derivative(self) -> "ExactPoly":
        return ExactPoly(j * c for j, c in enumerate(self.coeffs) if j > 0)

    # arithmetic
    def __add__(self, other: "ExactPoly | Number") -> "ExactPoly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly(self.coeff(j) + other.coeff(j) for j in range(n))

    __radd__ = __add__

    def __neg__(self) -> "ExactPoly":
        return ExactPoly(-c for c in self.coeffs)

    def __sub__(self, other: "ExactPoly | Number") -> "ExactPoly":
        return self + (-_lift(other))

    def __rsub__(self, other: "ExactPoly | Number") -> "ExactPoly":
        return _lift(other) - self

    def __mul__(self, other: "ExactPoly | Number") -> "ExactPoly":
        return mul(self, _lift(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactPoly":
        if n < 0:
            raise ValueError("negative power")
        out = ExactPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "ExactPoly") -> tuple["ExactPoly", "ExactPoly"]:
        return divmod_poly(self, other)

    def __floordiv__(self, other: "ExactPoly") -> "ExactPoly":
        return divmod_poly(self, other)[0]

    def __mod__(self, other: "ExactPoly") -> "ExactPoly":
        return divmod_poly(self, other)[1]

    # serialization
    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str] | str) -> "ExactPoly":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list):
            raise ValueError("polynomial JSON must be an array of 'num/den' strings")
        out = []
        for item in data:
            if isinstance(item, bool) or not isinstance(item, (str, int)):
                raise ValueError(f"bad coefficient {item!r}")
            out.append(to_rat(item))
        return cls(out)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                xs = "x" if j == 1 else f"x^{j}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            terms.append(f"{sign} {body}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _lift(p: "ExactPoly | Number") -> ExactPoly:
    if isinstance(p, ExactPoly):
        return p
    return ExactPoly((p,))


def mul(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Exact product; the zero polynomial is absorbing."""
    if p.is_zero() or q.is_zero():
        return ExactPoly(())
    out = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return ExactPoly(out)


def divmod_poly(p: ExactPoly, q: ExactPoly) -> tuple[ExactPoly, ExactPoly]:
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = q.degree
    if len(rem) - 1 < dq:
        return ExactPoly(()), p
    quot = [Fraction(0)] * (len(rem) - dq)
    lc = q.lc
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] / lc
        quot[k] = c
        if c:
            for j, b in enumerate(q.coeffs):
                rem[k + j] -= c * b
    return ExactPoly(quot), ExactPoly(rem[:dq])


def poly_gcd(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    """Monic gcd (zero if both are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def from_roots(neg_roots: Sequence[Number] = (), pos_roots: Sequence[Number] = (),
               quad_factors: Sequence[tuple[Number, Number]] = ()) -> ExactPoly:
    """Monic product ``prod(x + eta) * prod(x - r) * prod(x^2 - u x + v)``.

    ``neg_roots`` are the moduli of the negative roots.
    """
    if any(to_rat(r) <= 0 for r in list(neg_roots) + list(pos_roots)):
        raise ValueError("root moduli must be positive")
    factors = [ExactPoly((to_rat(eta), 1)) for eta in neg_roots]
    factors += [ExactPoly((-to_rat(r), 1)) for r in pos_roots]
    factors += [ExactPoly((to_rat(v), -to_rat(u), 1)) for u, v in quad_factors]
    return reduce(mul, factors, ExactPoly((1,)))


# variable transforms

def reverse(p: ExactPoly) -> ExactPoly:
    """``x^d p(1/x)``; refuses polynomials with ``p(0) = 0``."""
    if p.is_zero():
        raise ValueError("cannot reverse the zero polynomial")
    if p.coeffs[0] == 0:
        raise ValueError("reversal drops degree")
    return ExactPoly(reversed(p.coeffs))


def negate_var(p: ExactPoly) -> ExactPoly:
    """``(-1)^d p(-x)``: monic stays monic."""
    d = p.degree
    return ExactPoly(c if (d - j) % 2 == 0 else -c for j, c in enumerate(p.coeffs))


def shift(p: ExactPoly, t: Number) -> ExactPoly:
    """Taylor shift ``p(x + t)`` by Horner's scheme."""
    t = to_rat(t)
    lin = ExactPoly((t, 1))
    acc = ExactPoly(())
    for c in reversed(p.coeffs):
        acc = acc * lin + c
    return acc


def scale_arg(p: ExactPoly, e: Number) -> ExactPoly:
    """``e^d p(x/e)`` for ``e > 0``; maps roots ``r`` to ``e*r``."""
    e = to_rat(e)
    if e <= 0:
        raise ValueError("scale factor must be positive")
    d = p.degree
    return ExactPoly(c * e ** (d - j) for j, c in enumerate(p.coeffs))


_MODES = {"reverse": reverse, "negate_var": negate_var}


def transform(p: ExactPoly, mode: str, arg: Number | None = None) -> ExactPoly:
    """Dispatch to one of ``reverse``, ``negate_var``, ``shift``, ``scale_arg``."""
    if p.is_zero():
        raise ValueError("transform of the zero polynomial")
    if mode in _MODES:
        return _MODES[mode](p)
    if mode == "shift":
        return shift(p, arg)
    if mode == "scale_arg":
        return scale_arg(p, arg)
    raise ValueError(f"unknown transform mode {mode!r}")


def squarefree_data(p: ExactPoly) -> tuple[int, ExactPoly]:
    """Return ``(deg gcd(p, p'), monic p / gcd(p, p'))``."""
    if p.degree < 1:
        raise ValueError("squarefree_data needs degree >= 1")
    g = poly_gcd(p, p.derivative())
    return g.degree, (p // g).monic()


# integer helpers used by the Sturm machinery

def primitive_int(p: ExactPoly) -> list[int]:
    """Integer coefficient vector proportional to ``p`` by a positive factor."""
    if p.is_zero():
        return []
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = abs(reduce(gcd, ints))
    return [a // g for a in ints]
