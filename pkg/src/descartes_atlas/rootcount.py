"""Exact real-root counting with Sturm sequences.

Sturm chains are kept as primitive integer polynomials: each pseudo-remainder
is taken with a positive multiplier and divided by its (positive) content, so
sign sequences agree with the rational chain while coefficients stay small.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import reduce

from .poly import ExactPoly, negate_var, poly_gcd, primitive_int, squarefree_data

MAX_REFINEMENTS = 10_000


class RootIsolationError(ValueError):
    pass


def _prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of ``f`` by ``g`` scaled by a positive integer."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    mult = abs(lc)
    sgn = 1 if lc > 0 else -1
    while len(r) - 1 >= dg and r:
        k = len(r) - 1 - dg
        c = r[-1]
        # r <- |lc| * r - sgn * c * x^k * g  (kills the leading term)
        r = [mult * a for a in r]
        for j, b in enumerate(g):
            r[k + j] -= sgn * c * b
        while r and r[-1] == 0:
            r.pop()
    if r:
        cont = abs(reduce(math.gcd, r))
        r = [a // cont for a in r]
    return r


def _deriv(f: list[int]) -> list[int]:
    return [j * a for j, a in enumerate(f)][1:]


def _sign_at(f: list[int], x: Fraction | None, at_inf: int = 0) -> int:
    """Sign of ``f`` at a rational ``x`` or at ``at_inf * infinity``."""
    if not f:
        return 0
    if x is None:
        s = 1 if f[-1] > 0 else -1
        if at_inf < 0 and (len(f) - 1) % 2 == 1:
            s = -s
        return s
    n, d = x.numerator, x.denominator
    # homogeneous Horner for sum a_j n^j d^(deg-j)
    acc = f[-1]
    dpow = 1
    for a in reversed(f[:-1]):
        dpow *= d
        acc = acc * n + a * dpow
    return (acc > 0) - (acc < 0)


class SturmChain:
    """Sturm sequence of the squarefree part of a nonzero polynomial."""

    def __init__(self, p: ExactPoly):
        if p.is_zero():
            raise ValueError("Sturm chain of the zero polynomial")
        if p.degree >= 1:
            _, sf = squarefree_data(p)
        else:
            sf = p
        self.squarefree = sf
        f0 = primitive_int(sf)
        chain = [f0]
        if len(f0) > 1:
            chain.append(_deriv(f0))
            while len(chain[-1]) > 1:
                r = _prem(chain[-2], chain[-1])
                if not r:
                    break
                chain.append([-a for a in r])
        self.chain = chain

    def variations(self, x: Fraction | None, at_inf: int = 0) -> int:
        signs = [s for s in (_sign_at(f, x, at_inf) for f in self.chain) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo: Fraction | None, hi: Fraction | None) -> int:
        """Distinct roots in ``(lo, hi]``; ``None`` means -inf for lo, +inf for hi."""
        vlo = self.variations(lo, -1) if lo is None else self.variations(lo)
        vhi = self.variations(hi, 1) if hi is None else self.variations(hi)
        return vlo - vhi


def _endpoint(x) -> Fraction | None:
    if x is None:
        return None
    if isinstance(x, float):
        if math.isinf(x):
            return None
        raise TypeError("finite endpoints must be exact rationals")
    return Fraction(x)


def sturm_count(p: ExactPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    Endpoints may be rationals, ``None`` or ``±math.inf`` for unbounded ends.
    """
    lo_, hi_ = _endpoint(lo), _endpoint(hi)
    if lo_ is not None and hi_ is not None and lo_ >= hi_:
        raise ValueError("need lo < hi")
    return SturmChain(p).count(lo_, hi_)


@dataclass(frozen=True)
class RootClass:
    pos: int
    neg: int
    pairs: int
    all_simple: bool
    zero_root: bool

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "RootClass":
        return cls(int(data["pos"]), int(data["neg"]), int(data["pairs"]),
                   bool(data["all_simple"]), bool(data["zero_root"]))


def real_roots_with_multiplicity(p: ExactPoly) -> int:
    total = 0
    g = p
    while g.degree >= 1:
        total += SturmChain(g).count(None, None)
        g = poly_gcd(g, g.derivative())
    return total


def classify(p: ExactPoly) -> RootClass:
    """Distinct positive/negative root counts, complex pairs and simplicity."""
    if p.degree < 1:
        raise ValueError("classify needs degree >= 1")
    chain = SturmChain(p)
    zero_root = p.coeff(0) == 0
    pos = chain.count(Fraction(0), None)
    neg = chain.count(None, Fraction(0)) - (1 if zero_root else 0)
    gdeg = p.degree - chain.squarefree.degree
    real = real_roots_with_multiplicity(p)
    return RootClass(pos=pos, neg=neg, pairs=(p.degree - real) // 2,
                     all_simple=gdeg == 0, zero_root=zero_root)


def cauchy_bound(p: ExactPoly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lc if p.degree >= 1 else Fraction(1)


def _bisect(chain: SturmChain, iv: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    lo, hi = iv
    mid = (lo + hi) / 2
    if chain.count(lo, mid) == 1:
        return lo, mid
    return mid, hi


def isolate_positive_roots(p: ExactPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]``, one per distinct positive root, ascending."""
    chain = SturmChain(p)
    bound = cauchy_bound(chain.squarefree)
    todo = [(Fraction(0), bound)]
    out = []
    steps = 0
    while todo:
        lo, hi = todo.pop()
        n = chain.count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        steps += 1
        if steps > MAX_REFINEMENTS:
            raise RootIsolationError("root isolation did not terminate")
        mid = (lo + hi) / 2
        todo += [(lo, mid), (mid, hi)]
    return sorted(out)


def isolate_negative_roots(p: ExactPoly) -> list[tuple[Fraction, Fraction]]:
    """Intervals ``(lo, hi]`` bracketing the moduli of the negative roots, ascending."""
    return isolate_positive_roots(negate_var(p))


def refine(p: ExactPoly, iv: tuple[Fraction, Fraction], width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of a root of ``p`` below ``width``."""
    chain = SturmChain(p)
    steps = 0
    while iv[1] - iv[0] > width:
        iv = _bisect(chain, iv)
        steps += 1
        if steps > MAX_REFINEMENTS:
            raise RootIsolationError("refinement cap reached")
    return iv


def moduli_order(p: ExactPoly) -> str:
    """``P``/``N`` letters of the roots of a hyperbolic polynomial by increasing modulus."""
    rc = classify(p)
    if rc.pairs or not rc.all_simple or rc.zero_root:
        raise RootIsolationError("moduli_order needs a hyperbolic square-free polynomial with p(0) != 0")
    if poly_gcd(p, negate_var(p)).degree >= 1:
        raise RootIsolationError("indistinguishable moduli: two roots share a modulus")
    pchain, nchain = SturmChain(p), SturmChain(negate_var(p))
    pos = isolate_positive_roots(p)
    neg = isolate_negative_roots(p)
    steps = 0
    while True:
        clash = None
        for i, a in enumerate(pos):
            for j, b in enumerate(neg):
                if a[0] < b[1] and b[0] < a[1]:
                    clash = (i, j)
                    break
            if clash:
                break
        if clash is None:
            break
        i, j = clash
        pos[i] = _bisect(pchain, pos[i])
        neg[j] = _bisect(nchain, neg[j])
        steps += 1
        if steps > MAX_REFINEMENTS:
            raise RootIsolationError("indistinguishable moduli")
    tagged = [(iv[0], "P") for iv in pos] + [(iv[0], "N") for iv in neg]
    return "".join(letter for _, letter in sorted(tagged))
