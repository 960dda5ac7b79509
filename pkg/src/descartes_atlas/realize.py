"""Constructive realization of compatible couples.

Every polynomial produced here is re-certified from scratch (sign pattern read
off the coefficients, root counts from Sturm sequences) before it is wrapped
in a :class:`Witness`; nothing is trusted from the construction itself.

Recipes are small expression trees.  Each node may carry the couple it claims
to realize; :func:`realize_recipe` evaluates bottom-up and raises
:class:`ClaimMismatch` when a certified couple disagrees with the claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .couples import AdmissiblePair, Couple, descartes_pair
from .poly import ExactPoly, negate_var, poly_gcd, reverse, scale_arg, shift
from .rootcount import (RootClass, SturmChain, classify, isolate_positive_roots,
                        moduli_order, refine)
from .signpat import SignPattern, as_pattern, canonical_order, of_poly

HALVINGS = 200
_HALF = Fraction(1, 2)
_FLIP = str.maketrans("+-", "-+")


class RealizationError(RuntimeError):
    pass


class ClaimMismatch(RealizationError):
    pass


class PreconditionError(ValueError):
    pass


# recipe trees

@dataclass(frozen=True)
class Leaf:
    poly: ExactPoly
    claim: Optional[Couple] = None


@dataclass(frozen=True)
class CanonicalHyperbolic:
    sp: SignPattern
    claim: Optional[Couple] = None


@dataclass(frozen=True)
class Concat:
    left: "Recipe"
    right: "Recipe"
    claim: Optional[Couple] = None


@dataclass(frozen=True)
class AddConstant:
    base: "Recipe"
    target_neg: int
    target_pos: Optional[int] = None
    claim: Optional[Couple] = None


@dataclass(frozen=True)
class BumpMonomial:
    base: ExactPoly
    degree_k: int
    claim: Optional[Couple] = None


@dataclass(frozen=True)
class ShiftNonzero:
    base: ExactPoly
    k: int
    want: str
    claim: Optional[Couple] = None


@dataclass(frozen=True)
class Involute:
    """Move a witness to another orbit member: ``ir`` reverses, ``im`` negates the variable."""
    base: "Recipe"
    which: str
    claim: Optional[Couple] = None


Recipe = Union[Leaf, CanonicalHyperbolic, Concat, AddConstant, BumpMonomial, ShiftNonzero, Involute]


@dataclass(frozen=True)
class Witness:
    poly: ExactPoly
    couple: Couple
    classification: RootClass
    recipe: Optional[Recipe] = field(default=None, compare=False)

    def with_recipe(self, r: Recipe) -> "Witness":
        return Witness(self.poly, self.couple, self.classification, r)

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "runs": list(self.couple.runs),
            "pos": self.couple.pos,
            "neg": self.couple.neg,
            "recipe": recipe_to_json(self.recipe) if self.recipe is not None else None,
        }


def certify(poly: ExactPoly, recipe: Recipe | None = None) -> Witness:
    """Wrap ``poly`` in a Witness after independent exact checks."""
    if poly.degree < 1 or poly.lc != 1:
        raise RealizationError("witnesses are monic of degree >= 1")
    if any(c == 0 for c in poly.coeffs):
        raise RealizationError("vanishing coefficient")
    rc = classify(poly)
    if not rc.all_simple:
        raise RealizationError("multiple root")
    sp = of_poly(poly)
    return Witness(poly, Couple(sp, AdmissiblePair(rc.pos, rc.neg)), rc,
                   recipe if recipe is not None else Leaf(poly))


def _signs(poly: ExactPoly) -> str:
    return "".join("+" if c > 0 else "-" for c in reversed(poly.coeffs))


def try_certify(poly: ExactPoly, expected: Couple) -> Witness | None:
    """Certify only if ``poly`` realizes ``expected``; the cheap sign test runs first."""
    if poly.degree != expected.degree or poly.lc != 1 or any(c == 0 for c in poly.coeffs):
        return None
    if _signs(poly) != expected.pattern.signs:
        return None
    rc = classify(poly)
    if rc.all_simple and rc.pos == expected.pos and rc.neg == expected.neg:
        return Witness(poly, expected, rc, Leaf(poly))
    return None


# concatenation

def merge_patterns(s1: SignPattern, s2: SignPattern) -> SignPattern:
    """Append the tail of ``s2``, flipped when ``s1`` ends with ``-``."""
    tail = s2.signs[1:]
    if s1.signs[-1] == "-":
        tail = tail.translate(_FLIP)
    return SignPattern(s1.signs + tail)


def merge_couples(c1: Couple, c2: Couple) -> Couple:
    return Couple(merge_patterns(c1.pattern, c2.pattern),
                  AdmissiblePair(c1.pos + c2.pos, c1.neg + c2.neg))


def _concat_eps(w1: Witness, w2: Witness, eps_start: Fraction) -> tuple[Witness, Fraction]:
    target = merge_couples(w1.couple, w2.couple)
    eps = Fraction(eps_start)
    for _ in range(HALVINGS):
        w = try_certify(w1.poly * scale_arg(w2.poly, eps), target)
        if w is not None:
            return w, eps
        eps *= _HALF
    raise RealizationError(f"epsilon exhausted while concatenating into {target}")


def concat(w1: Witness, w2: Witness, eps_start: Fraction = _HALF) -> Witness:
    """``eps^d2 * P1(x) * P2(x/eps)`` for the first ``eps = 2^-j`` that certifies."""
    w, _ = _concat_eps(w1, w2, eps_start)
    return w.with_recipe(Concat(_recipe_of(w1), _recipe_of(w2), w.couple))


def _recipe_of(w: Witness) -> Recipe:
    return w.recipe if w.recipe is not None else Leaf(w.poly, w.couple)


def _linear(sign: str) -> Witness:
    return certify(ExactPoly((1, 1)) if sign == "+" else ExactPoly((-1, 1)))


def canonical_hyperbolic(sp) -> Witness:
    """Hyperbolic witness whose root moduli follow the canonical order of ``sp``.

    Starts from ``x + 1`` or ``x - 1`` and appends one linear factor per sign,
    each new root strictly smaller in modulus than all earlier ones.
    """
    sp = as_pattern(sp)
    s = sp.signs
    w = _linear("+" if s[0] == s[1] else "-")
    smallest = Fraction(1)
    for j in range(1, len(s) - 1):
        w, smallest = _concat_eps(w, _linear("+" if s[j] == s[j + 1] else "-"), smallest * _HALF)
    if w.couple.pattern != sp or w.couple.pair != descartes_pair(sp):
        raise RealizationError("canonical construction certified the wrong couple")
    if sp.degree > 1 and moduli_order(w.poly) != canonical_order(sp):
        raise RealizationError("canonical order not reproduced")
    return w.with_recipe(CanonicalHyperbolic(sp, w.couple))


# perturbation toolkit

def _critical_breakpoints(q: ExactPoly, sign: int) -> list[Fraction]:
    """Approximate ``|t|`` at which ``q + t`` (``t`` of the given sign) gains a multiple root."""
    dq = q.derivative()
    if dq.degree < 1:
        return []
    ivs = [(iv, 1) for iv in isolate_positive_roots(dq)]
    ivs += [(iv, -1) for iv in isolate_positive_roots(negate_var(dq))]
    out = []
    for iv, s in ivs:
        lo, hi = refine(dq if s > 0 else negate_var(dq), iv, (iv[1] + 1) * Fraction(1, 2 ** 40))
        xi = s * (lo + hi) / 2
        t = -q(xi)
        if t * sign > 0:
            out.append(abs(t))
    if dq.coeff(0) == 0:
        t = -q.coeff(0)
        if t * sign > 0:
            out.append(abs(t))
    return sorted(set(out))


def _simple_between(a: Fraction, b: Fraction | None) -> Fraction:
    """A short rational strictly inside ``(a, b)`` (``b=None`` means unbounded)."""
    if b is None:
        target = 2 * a + 1
        n = 1
        while n < target:
            n *= 2
        return Fraction(n)
    mid = (a + b) / 2
    den = 1
    while True:
        c = mid.limit_denominator(den)
        if a < c < b:
            return c
        den *= 10


def _sweep_once(q: ExactPoly, target: Couple, sign: int) -> Witness | None:
    bps = _critical_breakpoints(q, sign)
    edges = [Fraction(0)] + bps
    for i, a in enumerate(edges):
        b = edges[i + 1] if i + 1 < len(edges) else None
        t = sign * _simple_between(a, b)
        w = try_certify(q + t, target)
        if w is not None:
            return w
    return None


def sweep_constant(base: Witness, target_neg: int, target_pos: int | None = None) -> Witness:
    """Add a constant ``t`` (same sign as ``a_0``) so the root counts drop to the target.

    Candidate values of ``t`` sit strictly between consecutive critical values
    of ``-Q``; each candidate is certified exactly.  If no candidate hits the
    target, the base is nudged by ``2^-j`` at one coefficient and the scan is
    repeated.
    """
    N, P = base.couple.neg, base.couple.pos
    tpos = P if target_pos is None else target_pos
    if not (0 <= target_neg <= N and (N - target_neg) % 2 == 0):
        raise PreconditionError(f"target_neg must be in [0, {N}] with the parity of {N}")
    if not (0 <= tpos <= P and (P - tpos) % 2 == 0):
        raise PreconditionError(f"target_pos must be in [0, {P}] with the parity of {P}")
    if (tpos, target_neg) == (P, N):
        raise PreconditionError("sweep must lower the root count")
    target = Couple(base.couple.pattern, AdmissiblePair(tpos, target_neg))
    q = base.poly
    sign = 1 if q.coeff(0) > 0 else -1
    w = _sweep_once(q, target, sign)
    if w is not None:
        return w
    # critical values may collide: nudge coefficients where the slack is largest
    order = sorted(range(1, q.degree), key=lambda k: -abs(q.coeff(k)))
    for j in range(4, 40, 4):
        for k in order[:3]:
            a = q.coeff(k)
            nudged = q + ExactPoly.monomial(k, (1 if a > 0 else -1) * abs(a) * Fraction(1, 2 ** j))
            if try_certify(nudged, base.couple) is None:
                continue
            w = _sweep_once(nudged, target, sign)
            if w is not None:
                return w
    raise RealizationError(f"sweep failed for {target}")


def _double_positive_root(p: ExactPoly) -> bool:
    g = poly_gcd(p, p.derivative())
    if g.degree < 1:
        return False
    g2 = poly_gcd(g, g.derivative())
    n1 = SturmChain(g).count(Fraction(0), None)
    n2 = SturmChain(g2).count(Fraction(0), None) if g2.degree >= 1 else 0
    return n1 > n2


def bump_monomial(base: ExactPoly, k: int) -> ExactPoly:
    """``base + delta x^k`` for the largest ``delta = 2^-j`` turning a double positive root complex."""
    if not 0 <= k <= base.degree:
        raise PreconditionError("monomial degree out of range")
    if base.coeff(k) < 0:
        raise PreconditionError("coefficient of x^k must be nonnegative")
    if not _double_positive_root(base):
        raise PreconditionError("base has no double positive root")
    rc0 = classify(base)
    g0 = poly_gcd(base, base.derivative()).degree
    delta = _HALF
    for _ in range(HALVINGS):
        cand = base + ExactPoly.monomial(k, delta)
        if all((a > 0) == (b > 0) for a, b in zip(base.coeffs, cand.coeffs) if a != 0):
            rc = classify(cand)
            gdeg = poly_gcd(cand, cand.derivative()).degree
            if (rc.pairs == rc0.pairs + 1 and rc.pos == rc0.pos - 1
                    and rc.neg == rc0.neg and gdeg == g0 - 1):
                return cand
        delta *= _HALF
    raise RealizationError("delta exhausted")


def shift_nonzero(w: ExactPoly, k: int, want: str) -> ExactPoly:
    """``W(x + s*eps)`` making every coefficient nonzero with ``a_k`` of sign ``want``."""
    if want not in ("+", "-"):
        raise ValueError("want is '+' or '-'")
    if w.coeff(k) != 0 or w.coeff(k + 1) == 0:
        raise PreconditionError("need a_k = 0 and a_{k+1} != 0")
    # the new a_k is (k+1) a_{k+1} s eps to first order
    s = (1 if want == "+" else -1) * (1 if w.coeff(k + 1) > 0 else -1)
    eps = _HALF
    for _ in range(HALVINGS):
        cand = shift(w, s * eps)
        ok = all(c != 0 for c in cand.coeffs) and len(cand.coeffs) == len(w.coeffs)
        ok = ok and all((a > 0) == (b > 0) for a, b in zip(w.coeffs, cand.coeffs) if a != 0)
        if ok and (cand.coeff(k) > 0) == (want == "+"):
            return cand
        eps *= _HALF
    raise RealizationError("shift schedule exhausted")


def involute_poly(p: ExactPoly, which: str) -> ExactPoly:
    if which == "im":
        return negate_var(p)
    if which == "ir":
        return reverse(p).monic()
    raise ValueError("which must be 'im' or 'ir'")


# evaluation

def _check(w: Witness, claim: Couple | None, r: Recipe) -> Witness:
    if claim is not None and w.couple != claim:
        raise ClaimMismatch(f"claim mismatch: recipe claims {claim}, certified {w.couple}")
    return w.with_recipe(r)


def realize_recipe(r: Recipe) -> Witness:
    """Evaluate a recipe bottom-up, certifying every intermediate witness."""
    if isinstance(r, Leaf):
        return _check(certify(r.poly), r.claim, r)
    if isinstance(r, CanonicalHyperbolic):
        return _check(canonical_hyperbolic(r.sp), r.claim, r)
    if isinstance(r, Concat):
        w = concat(realize_recipe(r.left), realize_recipe(r.right))
        return _check(w, r.claim, r)
    if isinstance(r, AddConstant):
        w = sweep_constant(realize_recipe(r.base), r.target_neg, r.target_pos)
        return _check(w, r.claim, r)
    if isinstance(r, BumpMonomial):
        return _check(certify(bump_monomial(r.base, r.degree_k)), r.claim, r)
    if isinstance(r, ShiftNonzero):
        return _check(certify(shift_nonzero(r.base, r.k, r.want)), r.claim, r)
    if isinstance(r, Involute):
        w = realize_recipe(r.base)
        return _check(certify(involute_poly(w.poly, r.which)), r.claim, r)
    raise TypeError(f"not a recipe node: {r!r}")


def claimed(r: Recipe) -> Couple | None:
    return r.claim


# JSON trees: ["op", claim, args...]

def _cj(c: Couple | None):
    return c.to_json() if c is not None else None


def recipe_to_json(r: Recipe) -> list:
    if isinstance(r, Leaf):
        return ["leaf", _cj(r.claim), r.poly.to_json()]
    if isinstance(r, CanonicalHyperbolic):
        return ["hyperbolic", _cj(r.claim), list(r.sp.runs)]
    if isinstance(r, Concat):
        return ["concat", _cj(r.claim), recipe_to_json(r.left), recipe_to_json(r.right)]
    if isinstance(r, AddConstant):
        return ["add_constant", _cj(r.claim), recipe_to_json(r.base), r.target_neg, r.target_pos]
    if isinstance(r, BumpMonomial):
        return ["bump", _cj(r.claim), r.base.to_json(), r.degree_k]
    if isinstance(r, ShiftNonzero):
        return ["shift", _cj(r.claim), r.base.to_json(), r.k, r.want]
    if isinstance(r, Involute):
        return ["involute", _cj(r.claim), r.which, recipe_to_json(r.base)]
    raise TypeError(f"not a recipe node: {r!r}")


def recipe_from_json(data: list) -> Recipe:
    op, cj, *args = data
    claim = Couple.from_json(cj) if cj is not None else None
    if op == "leaf":
        return Leaf(ExactPoly.from_json(args[0]), claim)
    if op == "hyperbolic":
        return CanonicalHyperbolic(SignPattern.from_runs(args[0]), claim)
    if op == "concat":
        return Concat(recipe_from_json(args[0]), recipe_from_json(args[1]), claim)
    if op == "add_constant":
        tp = args[2] if len(args) > 2 else None
        return AddConstant(recipe_from_json(args[0]), int(args[1]), tp, claim)
    if op == "bump":
        return BumpMonomial(ExactPoly.from_json(args[0]), int(args[1]), claim)
    if op == "shift":
        return ShiftNonzero(ExactPoly.from_json(args[0]), int(args[1]), str(args[2]), claim)
    if op == "involute":
        return Involute(recipe_from_json(args[1]), str(args[0]), claim)
    raise ValueError(f"unknown recipe op {op!r}")


def recipe_size(r: Recipe) -> int:
    if isinstance(r, Concat):
        return 1 + recipe_size(r.left) + recipe_size(r.right)
    if isinstance(r, (AddConstant, Involute)):
        return 1 + recipe_size(r.base)
    return 1


def builtin_recipes() -> dict[Couple, Recipe]:
    from .library import builtin_recipes as _b
    return _b()
