"""Witness search: recipes and planner first, then randomized sampling.

Random phase, in order:

1. root-space sampling: negative/positive root moduli and complex pairs drawn
   log-uniformly, coefficients expanded in floating point, scored by the
   smallest relative margin ``s_j a_j / |a_j|_max`` against the target signs;
2. coefficient sampling: log-uniform magnitudes with the target signs, real
   roots counted from companion-matrix eigenvalues;
3. Nelder-Mead refinement of the best root-space candidates.

Any float candidate is rationalized (coefficient denominators <= ``max_den``
first, exact root products as a fallback) and certified exactly.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from ..couples import Couple
from ..poly import ExactPoly, from_roots
from ..realize import Involute, Leaf, RealizationError, Witness, realize_recipe, try_certify


@dataclass(frozen=True)
class SearchConfig:
    budget: int = 10_000
    seed: int = 0
    batch: int = 2048
    spans: tuple[float, ...] = (1.5, 3.0, 6.0)
    random_share: float = 0.6
    refine_starts: int = 12
    refine_evals: int = 400
    max_den: int = 10 ** 6
    use_recipes: bool = True


@dataclass(frozen=True)
class NotFound:
    couple: Couple
    budget_spent: int
    best_margin: float | None = None

    def to_json(self) -> dict:
        return {"found": False, "couple": self.couple.to_json(),
                "budget_spent": self.budget_spent, "best_margin": self.best_margin}


@dataclass
class SearchResult:
    result: Witness | NotFound
    strategy: str
    spent: int
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return isinstance(self.result, Witness)


# vectorized polynomial expansion

def _mul_linear(c, scale, a):
    n, L = c.shape
    out = np.zeros((n, L + 1))
    out[:, 1:] += c
    out[:, :-1] += a[:, None] * c
    sc = np.zeros((n, L + 1))
    sc[:, 1:] += scale
    sc[:, :-1] += np.abs(a)[:, None] * scale
    return out, sc


def _mul_quad(c, scale, b, v, rho):
    n, L = c.shape
    out = np.zeros((n, L + 2))
    out[:, 2:] += c
    out[:, 1:-1] += b[:, None] * c
    out[:, :-2] += v[:, None] * c
    sc = np.zeros((n, L + 2))
    sc[:, 2:] += scale
    sc[:, 1:-1] += 2 * rho[:, None] * scale
    sc[:, :-2] += (rho ** 2)[:, None] * scale
    return out, sc


class RootSpace:
    """Parameters ``[log|neg roots|, log pos roots, (log rho, theta) per pair]``."""

    def __init__(self, couple: Couple):
        self.couple = couple
        self.n, self.m, self.k = couple.neg, couple.pos, couple.lam
        self.dim = self.n + self.m + 2 * self.k
        s = couple.pattern.signs[::-1]  # ascending
        self.target = np.array([1.0 if ch == "+" else -1.0 for ch in s])

    def sample(self, rng: np.random.Generator, size: int, span: float) -> np.ndarray:
        p = rng.uniform(-span, span, (size, self.dim))
        if self.k:
            th = rng.uniform(0.02, math.pi - 0.02, (size, self.k))
            p[:, self.n + self.m + 1::2] = th
        return p

    def expand(self, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        N = p.shape[0]
        c = np.ones((N, 1))
        sc = np.ones((N, 1))
        for i in range(self.n):
            c, sc = _mul_linear(c, sc, np.exp(p[:, i]))
        for i in range(self.n, self.n + self.m):
            c, sc = _mul_linear(c, sc, -np.exp(p[:, i]))
        for j in range(self.k):
            lr = p[:, self.n + self.m + 2 * j]
            th = p[:, self.n + self.m + 2 * j + 1]
            rho = np.exp(lr)
            c, sc = _mul_quad(c, sc, -2 * rho * np.cos(th), rho ** 2, rho)
        return c, sc

    def margin(self, p: np.ndarray) -> np.ndarray:
        p = np.clip(p, -30, 30)
        c, sc = self.expand(p)
        rel = self.target[None, :] * c / sc
        return rel.min(axis=1)

    def normalize(self, p: np.ndarray) -> np.ndarray:
        """Rescale all moduli by their geometric mean (sign patterns are scale invariant)."""
        q = p.copy()
        logs = list(range(self.n + self.m)) + [self.n + self.m + 2 * j for j in range(self.k)]
        if logs:
            w = np.array([1.0] * (self.n + self.m) + [2.0] * self.k)
            mean = float(np.dot(q[logs], w) / w.sum())
            q[logs] -= mean
        return q

    def exact_candidates(self, p: np.ndarray, max_den: int):
        p = self.normalize(np.asarray(p, dtype=float))
        c, _ = self.expand(p[None, :])
        yield ExactPoly([Fraction(float(a)).limit_denominator(max_den) for a in c[0][:-1]] + [1])
        neg = [Fraction(math.exp(x)).limit_denominator(max_den) for x in p[:self.n]]
        pos = [Fraction(math.exp(x)).limit_denominator(max_den) for x in p[self.n:self.n + self.m]]
        quads = []
        for j in range(self.k):
            rho = math.exp(p[self.n + self.m + 2 * j])
            th = p[self.n + self.m + 2 * j + 1]
            u = Fraction(2 * rho * math.cos(th)).limit_denominator(max_den)
            v = Fraction(rho * rho).limit_denominator(max_den)
            quads.append((u, v))
        if all(x > 0 for x in neg + pos):
            yield from_roots(neg, pos, quads)
        neg = [Fraction(math.exp(x)) for x in p[:self.n]]
        pos = [Fraction(math.exp(x)) for x in p[self.n:self.n + self.m]]
        quads = [(Fraction(2 * math.exp(p[self.n + self.m + 2 * j]) * math.cos(p[self.n + self.m + 2 * j + 1])),
                  Fraction(math.exp(p[self.n + self.m + 2 * j])) ** 2) for j in range(self.k)]
        yield from_roots(neg, pos, quads)


def _coefficient_batch(couple: Couple, rng: np.random.Generator, size: int, span: float):
    """Random coefficient vectors with the target signs; returns (coeffs, hit mask)."""
    d = couple.degree
    s = np.array([1.0 if ch == "+" else -1.0 for ch in couple.pattern.signs[::-1]])
    mags = np.exp(rng.uniform(-span, span, (size, d)))
    a = np.concatenate([s[None, :d] * mags, np.ones((size, 1))], axis=1)
    comp = np.zeros((size, d, d))
    comp[:, 0, :] = -a[:, d - 1::-1]
    if d > 1:
        idx = np.arange(d - 1)
        comp[:, idx + 1, idx] = 1.0
    roots = np.linalg.eigvals(comp)
    mod = np.maximum(np.abs(roots), 1e-300)
    real = np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, mod)
    near = (~real) & (np.abs(roots.imag) <= 1e-6 * mod)
    pos = (real & (roots.real > 0)).sum(axis=1)
    neg = (real & (roots.real < 0)).sum(axis=1)
    hit = (pos == couple.pos) & (neg == couple.neg) & (~near.any(axis=1))
    return a, hit


def _certify_coeffs(a: np.ndarray, couple: Couple, max_den: int) -> Witness | None:
    poly = ExactPoly([Fraction(float(x)).limit_denominator(max_den) for x in a[:-1]] + [1])
    return try_certify(poly, couple)


def _from_recipes(c: Couple) -> tuple[Witness | None, str]:
    from ..library import MissingBlock, builtin_recipes
    from ..plan import default_planner
    try:
        table = builtin_recipes()
    except MissingBlock:
        table = {}
    for which, mate in (("", c), ("ir", c.involution("ir")), ("im", c.involution("im"))):
        r = table.get(mate)
        if r is not None:
            if which:
                r = Involute(r, which, c)
            return realize_recipe(r), "builtin recipe"
    r = default_planner().recipe(c)
    if r is not None:
        return realize_recipe(r), "planner"
    return None, ""


def _random_phase(c: Couple, cfg: SearchConfig) -> SearchResult:
    rng = np.random.default_rng(cfg.seed)
    space = RootSpace(c)
    spent = 0
    best: list[tuple[float, np.ndarray]] = []
    stats = {"root_samples": 0, "coeff_samples": 0, "refine_evals": 0, "float_hits": 0}
    limit = int(cfg.budget * cfg.random_share)
    rnd = 0

    def try_params(p) -> Witness | None:
        for poly in space.exact_candidates(p, cfg.max_den):
            w = try_certify(poly, c)
            if w is not None:
                return w
        return None

    while spent < limit:
        size = min(cfg.batch, limit - spent)
        span = cfg.spans[rnd % len(cfg.spans)]
        if rnd % 2 == 0 or c.degree < 2:
            P = space.sample(rng, size, span)
            mg = space.margin(P)
            spent += size
            stats["root_samples"] += size
            order = np.argsort(-mg, kind="stable")
            for i in order[:cfg.refine_starts]:
                best.append((float(mg[i]), P[i]))
            best.sort(key=lambda t: -t[0])
            del best[cfg.refine_starts:]
            for i in order[:3]:
                if mg[i] > 0:
                    stats["float_hits"] += 1
                    w = try_params(P[i])
                    if w is not None:
                        return SearchResult(w, "root-space sampling", spent, stats)
        else:
            a, hit = _coefficient_batch(c, rng, size, span)
            spent += size
            stats["coeff_samples"] += size
            for i in np.flatnonzero(hit)[:3]:
                stats["float_hits"] += 1
                w = _certify_coeffs(a[i], c, cfg.max_den)
                if w is not None:
                    return SearchResult(w, "coefficient sampling", spent, stats)
        rnd += 1

    starts = [p for _, p in best]
    while spent < cfg.budget and space.dim > 0:
        if not starts:
            # fresh starting points once the first pool is used up
            size = min(cfg.batch, cfg.budget - spent)
            P = space.sample(rng, size, cfg.spans[rnd % len(cfg.spans)])
            mg = space.margin(P)
            spent += size
            stats["root_samples"] += size
            rnd += 1
            starts = [P[i] for i in np.argsort(-mg, kind="stable")[:cfg.refine_starts]]
            continue
        evals = min(cfg.refine_evals, cfg.budget - spent)
        if evals < 2:
            break
        res = minimize(lambda p: -float(space.margin(p[None, :])[0]), starts.pop(0), method="Nelder-Mead",
                       options={"maxfev": evals, "xatol": 1e-10, "fatol": 1e-14})
        spent += int(res.nfev)
        stats["refine_evals"] += int(res.nfev)
        m1 = -float(res.fun)
        best.append((m1, res.x))
        if m1 > 0:
            stats["float_hits"] += 1
            w = try_params(res.x)
            if w is not None:
                return SearchResult(w, "refined root-space sampling", spent, stats)
    top = max((m for m, _ in best), default=None)
    stats["best_margin"] = top
    return SearchResult(NotFound(c, spent, top), "exhausted", spent, stats)


def search(c: Couple, config: SearchConfig | None = None) -> SearchResult:
    cfg = config or SearchConfig()
    if cfg.use_recipes:
        try:
            w, how = _from_recipes(c)
        except RealizationError:
            w, how = None, ""
        if w is not None:
            return SearchResult(w, how, 0)
    return _random_phase(c, cfg)


def witness_search(c: Couple, budget: int = 10_000, seed: int = 0, **kw) -> Witness | NotFound:
    """A certified witness for ``c``, or NotFound with the budget spent."""
    return search(c, SearchConfig(budget=budget, seed=seed, **kw)).result


def report(res: SearchResult, cfg: SearchConfig, timing: bool = False, started: float | None = None) -> dict:
    r = res.result
    out = {
        "schema": "v1",
        "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(cfg).items()},
        "couple": r.couple.to_json(),
        "found": isinstance(r, Witness),
        "strategy": res.strategy,
        "samples": res.spent,
        "stats": res.stats,
        "witness": r.to_json() if isinstance(r, Witness) else None,
        "elapsed": round(time.perf_counter() - started, 3) if timing and started is not None else None,
    }
    return out
