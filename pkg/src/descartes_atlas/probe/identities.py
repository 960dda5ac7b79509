"""Polynomial identity testing for the K_{n,q} emptiness machinery.

Each identity is checked by exact evaluation at random rational points
(numerators and denominators up to ``2^16``):

* ``CoeffList``: coefficients of ``E(x)(x^2 - u x + v)(x - 1)`` expanded
  directly versus the closed affine forms for the top four and bottom four.
* ``EsymRecurrence``: ``e_j = f_j + x_1 f_{j-1}`` where ``f`` are the
  elementary symmetric values of ``x_2, ..., x_k``.
* ``PsiPrimeFactorization``: ``Psi`` written in ``e_1..e_4``, differentiated
  exactly in ``x_1`` through the recurrence, equals both the expanded
  derivative formula and ``-(f_1 + 3x_1 - 1)(x_1(f_1 - 1) + f_1^2 - 2f_2 + 1)``.
* ``PsiAllOnes``: at ``x_i = 1`` the value is ``-(d-2)(d-3)(d-4)/2``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from ..poly import ExactPoly
from .theorem1 import SCHEMA, esym, psi

IDENTITIES = ("CoeffList", "EsymRecurrence", "PsiPrimeFactorization", "PsiAllOnes")
DEGREES = tuple(range(9, 15))
BOUND = 2 ** 16


def rand_rat(rng: random.Random, positive: bool = True) -> Fraction:
    r = Fraction(rng.randint(1, BOUND), rng.randint(1, BOUND))
    return r if positive or rng.random() < 0.5 else -r


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# CoeffList

def expanded_coeffs(xs: Sequence[Fraction], u: Fraction, v: Fraction) -> list[Fraction]:
    x = ExactPoly.x()
    E = ExactPoly((1,))
    for xi in xs:
        E = E * (x + xi)
    Q = E * (x ** 2 - u * x + v) * (x - 1)
    return [Q.coeff(j) for j in range(Q.degree + 1)]


def closed_form_coeffs(xs: Sequence[Fraction], u: Fraction, v: Fraction) -> dict[int, Fraction]:
    """Top four and bottom four coefficients from their affine formulas."""
    d = len(xs) + 3
    e = esym(xs)
    k = d - 3
    return {
        d - 1: (e[1] - 1) - u,
        d - 2: (e[2] - e[1]) - (e[1] - 1) * u + v,
        d - 3: (e[3] - e[2]) - (e[2] - e[1]) * u + (e[1] - 1) * v,
        d - 4: (e[4] - e[3]) - (e[3] - e[2]) * u + (e[2] - e[1]) * v,
        3: (e[k] - e[k - 1]) - (e[k - 1] - e[k - 2]) * u + (e[k - 2] - e[k - 3]) * v,
        2: -e[k] - (e[k] - e[k - 1]) * u + (e[k - 1] - e[k - 2]) * v,
        1: e[k] * u + (e[k] - e[k - 1]) * v,
        0: -e[k] * v,
    }


def check_coeff_list(d: int, rng: random.Random):
    xs = [rand_rat(rng) for _ in range(d - 3)]
    u, v = rand_rat(rng, False), rand_rat(rng, False)
    full = expanded_coeffs(xs, u, v)
    for j, val in closed_form_coeffs(xs, u, v).items():
        if full[j] != val:
            return {"x": [_fmt(a) for a in xs], "u": _fmt(u), "v": _fmt(v), "j": j}
    return None


# EsymRecurrence

def check_esym_recurrence(d: int, rng: random.Random):
    xs = [rand_rat(rng) for _ in range(d - 3)]
    e, f = esym(xs), esym(xs[1:]) + [Fraction(0)]
    for j in range(1, len(e)):
        if e[j] != f[j] + xs[0] * f[j - 1]:
            return {"x": [_fmt(a) for a in xs], "j": j}
    return None


# Psi and its derivative

def psi_definition(e: Sequence[Fraction]) -> Fraction:
    """``Psi`` as the numerator comparison that places ``T`` under the parabola."""
    e1, e2, e3, e4 = e[1], e[2], e[3], e[4]
    return 4 * (e3 - e2) * (e1 - 1) - 4 * (e4 - e3) - (e1 - 1) ** 2 * (e2 - e1)


def psi_prime_expanded(e, f) -> Fraction:
    e1, e2, e3 = e[1], e[2], e[3]
    f1, f2, f3 = f[1], f[2], f[3]
    return (3 * e1 ** 2 - 2 * e1 * e2 - e1 ** 2 * f1 - 4 * e1 - 2 * f1 * e1 - 2 * e2
            + 4 * f2 * e1 + 4 * e3 + 1 + 3 * f1 - 4 * f3)


def psi_prime_factored(x1: Fraction, f) -> Fraction:
    f1, f2 = f[1], f[2]
    return -(f1 + 3 * x1 - 1) * (x1 * (f1 - 1) + f1 ** 2 - 2 * f2 + 1)


def psi_prime_exact(x1: Fraction, f) -> Fraction:
    """Differentiate ``Psi(e(x1))`` as a univariate polynomial in ``x1``."""
    t = ExactPoly.x()
    e = [ExactPoly((1,))] + [f[j] + t * f[j - 1] for j in range(1, 5)]
    p = psi(e)
    return p.derivative()(x1)


def check_psi_prime(d: int, rng: random.Random):
    xs = [rand_rat(rng) for _ in range(d - 3)]
    x1 = xs[0]
    f = esym(xs[1:]) + [Fraction(0)] * 4
    e = esym(xs)
    vals = {
        "chain_rule": psi_prime_exact(x1, f),
        "expanded": psi_prime_expanded(e, f),
        "factored": psi_prime_factored(x1, f),
    }
    if psi(e) != psi_definition(e) or len(set(vals.values())) != 1:
        return {"x": [_fmt(a) for a in xs], **{k: _fmt(v) for k, v in vals.items()}}
    return None


# Psi at all ones

def psi_all_ones(d: int) -> Fraction:
    e = [Fraction(comb(d - 3, j)) for j in range(d - 2)]
    return psi(e)


def psi_all_ones_expected(d: int) -> Fraction:
    return Fraction(-(d - 2) * (d - 3) * (d - 4), 2)


CHECKS: dict[str, Callable] = {
    "CoeffList": check_coeff_list,
    "EsymRecurrence": check_esym_recurrence,
    "PsiPrimeFactorization": check_psi_prime,
}


def identity_check(which: str, degrees: Sequence[int] = DEGREES, points: int = 100, seed: int = 0) -> dict:
    if which not in IDENTITIES:
        raise ValueError(f"unknown identity {which!r}; choose from {', '.join(IDENTITIES)}")
    per_degree = {}
    failures = []
    for d in degrees:
        if which == "PsiAllOnes":
            got, want = psi_all_ones(d), psi_all_ones_expected(d)
            per_degree[str(d)] = {"value": _fmt(got), "expected": _fmt(want), "passed": got == want}
            if got != want:
                failures.append({"d": d, "value": _fmt(got)})
            continue
        rng = random.Random(f"{which}:{seed}:{d}")
        bad = 0
        for _ in range(points):
            w = CHECKS[which](d, rng)
            if w is not None:
                bad += 1
                failures.append({"d": d, **w})
        per_degree[str(d)] = {"points": points, "failures": bad, "passed": bad == 0}
    return {
        "schema": SCHEMA,
        "probe": "identities",
        "config": {"which": which, "degrees": list(degrees), "points": points, "seed": seed},
        "per_degree": per_degree,
        "failures": failures,
        "passed": not failures,
    }
