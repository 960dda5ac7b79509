"""Emptiness probe for the ``(Σ_{1,n,q,1}, (1, d-3))`` domain in the (u, v)-plane.

A realization would factor as ``E(x) (x^2 - u x + v) (x - 1)`` with
``E = prod (x + x_i)``. Every coefficient is affine in (u, v), so the sign
constraints cut out an open convex polygon; the pair is complex exactly when
``v > u^2/4``. The probe decides exactly whether the polygon meets that
region by maximizing the concave function ``g = v - u^2/4`` over the closed
polygon edge by edge. A positive maximum is confirmed by an exact strictly
interior point before it is reported as a hit.

Two diagnostic points are evaluated alongside: ``S`` (lines ``a_1`` and
``a_{d-1}``) and ``T`` (lines ``a_{d-4}`` and ``a_{d-1}``), each only when its
sufficient hypotheses hold.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from ..signpat import SignPattern

SCHEMA = "v1"
INF = None  # open end of an interval


@dataclass(frozen=True)
class Theorem1Config:
    d: int
    n: int
    q: int
    samples: int = 10_000
    seed: int = 0
    batch: int = 1000
    log_span: float = math.log(64.0)
    grid_bits: int = 12

    def __post_init__(self):
        if self.n < 4 or self.q < 4 or self.n + self.q != self.d - 1:
            raise ValueError(f"need n, q >= 4 and n + q = d - 1, got d={self.d} n={self.n} q={self.q}")


def esym(xs: Sequence[Fraction]) -> list[Fraction]:
    """Elementary symmetric values ``[e_0, e_1, ..., e_k]``."""
    e = [Fraction(1)] + [Fraction(0)] * len(xs)
    for x in xs:
        for j in range(len(e) - 1, 0, -1):
            e[j] += x * e[j - 1]
    return e


@dataclass(frozen=True)
class Theorem1Instance:
    d: int
    xs: tuple[Fraction, ...]

    @property
    def e(self) -> list[Fraction]:
        return esym(self.xs)

    @property
    def E1(self) -> Fraction:
        return sum((1 / x for x in self.xs), Fraction(0))

    @property
    def E2(self) -> Fraction:
        inv = [1 / x for x in self.xs]
        return esym(inv)[2]

    def base(self) -> list[Fraction]:
        """Ascending coefficients of ``E(x) (x - 1)``."""
        E = self.e[::-1]  # ascending: e_{d-3}, ..., e_1, 1
        F = [Fraction(0)] * (len(E) + 1)
        for k, c in enumerate(E):
            F[k + 1] += c
            F[k] -= c
        return F

    def forms(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """``a_j = alpha + beta u + gamma v`` for j = 0..d."""
        F = self.base()

        def f(k):
            return F[k] if 0 <= k < len(F) else Fraction(0)
        return [(f(j - 2), -f(j - 1), f(j)) for j in range(self.d + 1)]

    def coeffs(self, u, v) -> list[Fraction]:
        return [a + b * u + g * v for a, b, g in self.forms()]


def target_signs(d: int, n: int, q: int) -> list[int]:
    """Required sign of ``a_j`` for j = 0..d."""
    s = SignPattern.from_runs([1, n, q, 1]).signs[::-1]
    return [1 if ch == "+" else -1 for ch in s]


# exact feasibility of {s_j a_j > 0} ∩ {v > u^2/4}

def _interval_on_line(cons, line):
    """Closed parameter interval of ``line`` inside the other constraints.

    ``line`` is a point ``p`` plus direction ``r``; each constraint is
    ``alpha + beta u + gamma v >= 0``. Returns (lo, hi) or None if empty.
    """
    (pu, pv), (ru, rv) = line
    lo: Optional[Fraction] = INF
    hi: Optional[Fraction] = INF
    for a, b, g in cons:
        c0 = a + b * pu + g * pv
        c1 = b * ru + g * rv
        if c1 == 0:
            if c0 < 0:
                return None
            continue
        t = -c0 / c1
        if c1 > 0:
            lo = t if lo is INF or t > lo else lo
        else:
            hi = t if hi is INF or t < hi else hi
    if lo is not INF and hi is not INF and lo > hi:
        return None
    return lo, hi


def _clamp(t, lo, hi):
    if lo is not INF and t < lo:
        return lo
    if hi is not INF and t > hi:
        return hi
    return t


def _gap(u, v):
    return v - u * u / 4


def _edge_max(cons, j):
    """Maximum of ``v - u^2/4`` on constraint line ``j`` within the closed polygon.

    Returns ``(value, point)``; value ``None`` means unbounded above, and
    ``(-1, None)`` is returned for an empty edge.
    """
    a, b, g = cons[j]
    others = cons[:j] + cons[j + 1:]
    if g != 0:
        # v = m u + c, parametrized by u
        m, c = -b / g, -a / g
        iv = _interval_on_line(others, ((Fraction(0), c), (Fraction(1), m)))
        if iv is None:
            return Fraction(-1), None
        u = _clamp(2 * m, *iv)
        return _gap(u, m * u + c), (u, m * u + c)
    if b == 0:
        return Fraction(-1), None
    u0 = -a / b
    iv = _interval_on_line(others, ((u0, Fraction(0)), (Fraction(0), Fraction(1))))
    if iv is None:
        return Fraction(-1), None
    lo, hi = iv
    if hi is INF:
        return None, (u0, lo if lo is not INF else Fraction(0))
    return _gap(u0, hi), (u0, hi)


def _interior_point(cons):
    """An exact point with every constraint strictly positive, or None."""
    A = np.array([[-float(b), -float(g), 1.0] for a, b, g in cons])
    rhs = np.array([float(a) for a, b, g in cons])
    scale = np.maximum(np.abs(A[:, :2]).max(axis=1), 1e-300)
    A = A / scale[:, None]
    A[:, 2] = 1.0
    rhs = rhs / scale
    res = linprog(c=[0, 0, -1], A_ub=A, b_ub=rhs, bounds=[(None, None), (None, None), (None, 1.0)],
                  method="highs")
    if res.status != 0 or res.x[2] <= 0:
        return None
    u, v = (Fraction(float(z)).limit_denominator(10 ** 12) for z in res.x[:2])
    if all(a + b * u + g * v > 0 for a, b, g in cons):
        return u, v
    return None


def feasible_point(forms, signs):
    """Exact point in the open polygon above the parabola, or None.

    ``forms[j] = (alpha, beta, gamma)``; the constraint is ``signs[j] * a_j > 0``.
    """
    cons = []
    for (a, b, g), s in zip(forms, signs):
        a, b, g = s * a, s * b, s * g
        if b == 0 and g == 0:
            if a <= 0:
                return None
            continue
        cons.append((a, b, g))
    if not cons:
        return Fraction(0), Fraction(1)
    upward = all(g >= 0 for a, b, g in cons)
    best, best_pt = None, None
    for j in range(len(cons)):
        val, pt = _edge_max(cons, j)
        if pt is None:
            continue
        if val is None or upward:
            best, best_pt = None, pt
            break
        if best is None or val > best:
            best, best_pt = val, pt
    if best_pt is None:
        return None
    if best is not None and best <= 0:
        return None
    # confirm with a strictly interior point
    q = _interior_point(cons)
    if q is None:
        return None
    pu, pv = best_pt
    if best is None:
        # unbounded upward: lift far enough that the parabola is cleared
        pv = max(pv, q[1]) + pu * pu + q[0] * q[0] + 1
    for k in range(200):
        lam = Fraction(1, 2 ** k)
        u = pu + lam * (q[0] - pu)
        v = pv + lam * (q[1] - pv)
        if _gap(u, v) > 0 and all(a + b * u + g * v > 0 for a, b, g in cons):
            return u, v
    return None


# diagnostics

def in_I(e1: Fraction) -> bool:
    """``23 - 4 sqrt(30) < e1 < 23 + 4 sqrt(30)``, decided exactly."""
    return e1 * e1 - 46 * e1 + 49 < 0


def at_least_c_plus(e1: Fraction) -> bool:
    return e1 > 23 and e1 * e1 - 46 * e1 + 49 >= 0


def point_S(inst: Theorem1Instance):
    e = inst.e
    d = inst.d
    den = e[d - 4] - e[d - 3]
    if den == 0:
        return None
    return e[1] - 1, e[d - 3] * (e[1] - 1) / den


def point_T(inst: Theorem1Instance):
    e = inst.e
    den = e[2] - e[1]
    if den == 0:
        return None
    return e[1] - 1, ((e[3] - e[2]) * (e[1] - 1) - (e[4] - e[3])) / den


def s_applicable(inst: Theorem1Instance) -> bool:
    e1 = inst.e[1]
    return in_I(e1) or (at_least_c_plus(e1) and min(inst.xs) <= 1)


def t_applicable(inst: Theorem1Instance) -> bool:
    e = inst.e
    return min(inst.xs) >= 1 and e[2] > e[1]


def below_parabola(pt) -> bool:
    return pt is not None and _gap(*pt) < 0


def psi(e: Sequence[Fraction]) -> Fraction:
    e1, e2, e3, e4 = e[1], e[2], e[3], e[4]
    return e1 ** 3 - e1 ** 2 * e2 - 2 * e1 ** 2 - 2 * e1 * e2 + 4 * e1 * e3 + e1 + 3 * e2 - 4 * e4


# sampling

REGIMES = ("general", "all_ge_one", "small_x1")


def _grid(rng: random.Random, lo: float, hi: float, bits: int) -> Fraction:
    z = math.exp(rng.uniform(lo, hi))
    return Fraction(max(1, round(z * 2 ** bits)), 2 ** bits)


def draw_instance(cfg: Theorem1Config, rng: random.Random, regime: str) -> Theorem1Instance:
    k = cfg.d - 3
    L, b = cfg.log_span, cfg.grid_bits
    if regime == "general":
        xs = [_grid(rng, -L, L, b) for _ in range(k)]
    elif regime == "all_ge_one":
        xs = [_grid(rng, 0.0, L, b) for _ in range(k)]
    else:
        # one modulus at most 1, the rest large enough to push e_1 past c_+
        xs = [_grid(rng, -L, 0.0, b)] + [_grid(rng, math.log(8.0), L, b) for _ in range(k - 1)]
    return Theorem1Instance(cfg.d, tuple(sorted(xs)))


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _run_batch(cfg: Theorem1Config, index: int, count: int) -> dict:
    rng = random.Random(cfg.seed + index)
    signs = target_signs(cfg.d, cfg.n, cfg.q)
    out = {"hits": [], "S_applicable": 0, "S_below_parabola": 0, "S_failures": [],
           "T_applicable": 0, "T_below_parabola": 0, "T_failures": [], "regimes": dict.fromkeys(REGIMES, 0),
           "e1_in_I": 0, "psi_negative_when_all_ge_one": 0}
    for i in range(count):
        regime = REGIMES[(index * cfg.batch + i) % len(REGIMES)]
        out["regimes"][regime] += 1
        inst = draw_instance(cfg, rng, regime)
        xs = [_fmt(x) for x in inst.xs]
        pt = feasible_point(inst.forms(), signs)
        if pt is not None:
            out["hits"].append({"x": xs, "u": _fmt(pt[0]), "v": _fmt(pt[1])})
        e = inst.e
        out["e1_in_I"] += in_I(e[1])
        if s_applicable(inst):
            out["S_applicable"] += 1
            if below_parabola(point_S(inst)):
                out["S_below_parabola"] += 1
            else:
                out["S_failures"].append({"x": xs})
        if t_applicable(inst):
            out["T_applicable"] += 1
            if below_parabola(point_T(inst)):
                out["T_below_parabola"] += 1
            else:
                out["T_failures"].append({"x": xs})
            out["psi_negative_when_all_ge_one"] += psi(e) < 0
    return out


def _merge(parts: list[dict]) -> dict:
    acc: dict = {}
    for p in parts:
        for k, v in p.items():
            if isinstance(v, list):
                acc.setdefault(k, []).extend(v)
            elif isinstance(v, dict):
                d = acc.setdefault(k, {})
                for kk, vv in v.items():
                    d[kk] = d.get(kk, 0) + vv
            else:
                acc[k] = acc.get(k, 0) + v
    return acc


METHOD = ("exact: maximize v - u^2/4 over each edge of the closed sign-constraint polygon; "
          "if every constraint allows v -> +inf the region is unbounded above the parabola; "
          "positive maxima are confirmed by an exact strictly interior point")


def theorem1_probe(d: int, n: int, q: int, samples: int = 10_000, seed: int = 0,
                   timing: bool = False, **kw) -> dict:
    cfg = Theorem1Config(d, n, q, samples, seed, **kw)
    t0 = time.perf_counter()
    parts = []
    done, index = 0, 0
    while done < cfg.samples:
        count = min(cfg.batch, cfg.samples - done)
        parts.append(_run_batch(cfg, index, count))
        done += count
        index += 1
    m = _merge(parts) if parts else _merge([_run_batch(cfg, 0, 0)])
    diagnostics = {k: m[k] for k in ("S_applicable", "S_below_parabola", "T_applicable", "T_below_parabola",
                                     "e1_in_I", "psi_negative_when_all_ge_one", "regimes")}
    diagnostics["S_failures"] = m["S_failures"]
    diagnostics["T_failures"] = m["T_failures"]
    cfg_json = asdict(cfg)
    return {
        "schema": SCHEMA,
        "probe": "theorem1",
        "config": cfg_json,
        "method": METHOD,
        "samples": cfg.samples,
        "hits": m["hits"],
        "diagnostics": diagnostics,
        "elapsed": round(time.perf_counter() - t0, 3) if timing else None,
    }
