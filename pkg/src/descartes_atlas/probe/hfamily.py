"""Sampling probe for degree-9 products with five negative roots.

Family ``m`` (a multiplicity vector of the negative roots, listed from the
most negative root) is

    (x + mu_2)^j (x + mu_1)^k (x + 1)^l ((x + u)^2 + v) (x - c)^2

with ``v > 0``, ``c > 0``, ``mu_i > 1`` and ``u`` of either sign. A hit is a
sample whose generalized sign pattern lies in the closure of
``Σ_{1,7,2}``, ``Σ_{1,6,3}`` or ``Σ_{2,6,2}``; none is expected.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from ..poly import ExactPoly
from ..signpat import SignPattern, gen_of_poly, in_closure, is_adjacent
from .theorem1 import SCHEMA

FAMILIES: tuple[tuple[int, ...], ...] = (
    (5,), (4, 1), (3, 2), (2, 3), (1, 4),
    (2, 2, 1), (2, 1, 2), (1, 2, 2), (3, 1, 1), (1, 3, 1), (1, 1, 3),
)
TARGETS = tuple(SignPattern.from_runs(r) for r in ((1, 7, 2), (1, 6, 3), (2, 6, 2)))


@dataclass(frozen=True)
class HFamilyConfig:
    family: tuple[int, ...]
    samples: int = 10_000
    seed: int = 0
    batch: int = 1000
    log_span: float = math.log(32.0)
    grid_bits: int = 12

    def __post_init__(self):
        fam = tuple(self.family)
        if not fam or len(fam) > 3 or any(k < 1 for k in fam) or sum(fam) != 5:
            raise ValueError(f"invalid multiplicity vector {self.family!r}")
        object.__setattr__(self, "family", fam)


@dataclass(frozen=True)
class HFamilyInstance:
    family: tuple[int, ...]
    u: Fraction
    v: Fraction
    c: Fraction
    mus: tuple[Fraction, ...]  # one per component before the last, largest root modulus first

    def poly(self) -> ExactPoly:
        x = ExactPoly.x()
        p = ExactPoly((1,))
        roots = list(self.mus) + [Fraction(1)]
        for m, r in zip(self.family, roots):
            p = p * (x + r) ** m
        return p * ((x + self.u) ** 2 + self.v) * (x - self.c) ** 2

    def to_json(self) -> dict:
        return {"family": list(self.family), "u": _fmt(self.u), "v": _fmt(self.v), "c": _fmt(self.c),
                "mu": [_fmt(m) for m in self.mus]}


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _grid(rng: random.Random, L: float, bits: int) -> Fraction:
    z = math.exp(rng.uniform(-L, L))
    return Fraction(max(1, round(z * 2 ** bits)), 2 ** bits)


def closure_hits(g) -> list[str]:
    return [str(t) for t in TARGETS if in_closure(g, t)]


def draw(cfg: HFamilyConfig, rng: random.Random) -> HFamilyInstance:
    L, b = cfg.log_span, cfg.grid_bits
    u = _grid(rng, L, b) * (1 if rng.random() < 0.5 else -1)
    v, c = _grid(rng, L, b), _grid(rng, L, b)
    mus = tuple(1 + _grid(rng, L, b) for _ in cfg.family[:-1])
    return HFamilyInstance(cfg.family, u, v, c, mus)


def _run_batch(cfg: HFamilyConfig, index: int, count: int) -> dict:
    rng = random.Random(cfg.seed + index)
    out = {"hits": [], "u_positive": 0, "u_negative": 0, "patterns": {}}
    for _ in range(count):
        inst = draw(cfg, rng)
        out["u_positive" if inst.u > 0 else "u_negative"] += 1
        g = gen_of_poly(inst.poly())
        hit = closure_hits(g)
        if hit:
            out["hits"].append({**inst.to_json(), "pattern": str(g), "targets": hit})
        key = str(g)
        out["patterns"][key] = out["patterns"].get(key, 0) + 1
    return out


def boundary_spot_check(samples: int = 200, seed: int = 0) -> dict:
    """``c = 0`` in the (5) family: ``x^2`` divides the product and ``a_2 > 0``.

    The generalized pattern can then only touch ``Σ_{1,6,3}``.
    """
    rng = random.Random(seed)
    cfg = HFamilyConfig((5,), samples, seed)
    bad = []
    for _ in range(samples):
        inst = draw(cfg, rng)
        inst = HFamilyInstance(inst.family, inst.u, inst.v, Fraction(0), inst.mus)
        g = gen_of_poly(inst.poly())
        touched = [str(t) for t in TARGETS if is_adjacent(g, t)]
        if set(touched) - {str(TARGETS[1])}:
            bad.append({**inst.to_json(), "pattern": str(g), "targets": touched})
    return {"samples": samples, "violations": bad}


def h_family_probe(family: Sequence[int], samples: int = 10_000, seed: int = 0,
                   timing: bool = False, **kw) -> dict:
    cfg = HFamilyConfig(tuple(family), samples, seed, **kw)
    t0 = time.perf_counter()
    hits: list = []
    pos = neg = 0
    patterns: dict[str, int] = {}
    done, index = 0, 0
    while done < cfg.samples:
        count = min(cfg.batch, cfg.samples - done)
        part = _run_batch(cfg, index, count)
        hits += part["hits"]
        pos += part["u_positive"]
        neg += part["u_negative"]
        for k, v in part["patterns"].items():
            patterns[k] = patterns.get(k, 0) + v
        done += count
        index += 1
    return {
        "schema": SCHEMA,
        "probe": "hfamily",
        "config": asdict(cfg) | {"family": list(cfg.family)},
        "samples": cfg.samples,
        "hits": hits,
        "diagnostics": {"u_positive": pos, "u_negative": neg, "distinct_patterns": len(patterns)},
        "elapsed": round(time.perf_counter() - t0, 3) if timing else None,
    }
