import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from descartes_atlas.couples import descartes_pair
from descartes_atlas.library import C, builtin_recipes, g1, load_store
from descartes_atlas.poly import ExactPoly, from_roots, shift
from descartes_atlas.realize import (CanonicalHyperbolic, Concat, Involute, Leaf, PreconditionError,
                                     RealizationError, bump_monomial, canonical_hyperbolic, certify,
                                     claimed, concat, merge_couples, realize_recipe, recipe_from_json,
                                     recipe_to_json, shift_nonzero, sweep_constant)
from descartes_atlas.rootcount import classify, moduli_order
from descartes_atlas.signpat import SignPattern, all_patterns, canonical_order, of_poly
from strategies import patterns

x = ExactPoly.x()
S = SignPattern.from_runs


def independent_check(w):
    rc = classify(w.poly)
    assert rc.all_simple and not rc.zero_root
    assert of_poly(w.poly) == w.couple.pattern
    assert (rc.pos, rc.neg) == tuple(w.couple.pair)


def test_canonical_hyperbolic_examples():
    w = canonical_hyperbolic(SignPattern("+-"))
    assert w.poly == x - 1 and w.couple.pair == (1, 0)
    w = canonical_hyperbolic(SignPattern("++-+"))
    assert w.couple.pair == (2, 1) and moduli_order(w.poly) == canonical_order(SignPattern("++-+")) == "PPN"
    w = canonical_hyperbolic(S([1, 8, 1]))
    assert w.couple.pair == (2, 7)
    independent_check(w)


def test_canonical_hyperbolic_exhaustive_small():
    for d in range(1, 6):
        for sp in all_patterns(d):
            w = canonical_hyperbolic(sp)
            independent_check(w)
            assert w.couple.pair == descartes_pair(sp)
            assert moduli_order(w.poly) == canonical_order(sp)


def test_concat_examples():
    a = realize_recipe(builtin_recipes()[C([1, 4, 5, 1], 1, 5)])
    assert a.couple == C([1, 4, 5, 1], 1, 5)
    assert merge_couples(C([1, 4, 1], 0, 1), C([5, 1], 1, 4)) == C([1, 4, 5, 1], 1, 5)
    one = certify(x + 1)
    w = concat(one, one)
    assert w.couple == C([3], 0, 2)
    assert merge_couples(C([1, 3], 1, 2), C([2, 1, 1, 4, 1], 0, 2)) == C([1, 4, 1, 1, 4, 1], 1, 4)


def test_sweep_constant_lowers_negative_count():
    store = load_store()
    base = realize_recipe(Involute(recipe_from_json(store[C([4, 4, 3], 0, 8)]["recipe"]), "ir"))
    assert base.couple == C([3, 4, 4], 0, 8)
    for t in (6, 4, 2):
        w = sweep_constant(base, t)
        independent_check(w)
        assert w.couple == C([3, 4, 4], 0, t)


def test_sweep_constant_large_limit_and_preconditions():
    base = certify(from_roots([1, 2, 3, 4]))
    w = sweep_constant(base, 0)
    assert w.couple == C([5], 0, 0)
    g = certify(g1())
    with pytest.raises(PreconditionError):
        sweep_constant(g, 5)
    with pytest.raises(PreconditionError):
        sweep_constant(g, 3)


def test_bump_monomial():
    base = (x - 1) ** 2 * from_roots([2, 3, 4, 5, 6])
    out = bump_monomial(base, 4)
    rc = classify(out)
    assert rc.pairs == 1 and rc.neg == 5 and rc.pos == 0
    delta = (out - base).coeff(4)
    half = classify(base + ExactPoly.monomial(4, delta / 2))
    assert (half.pairs, half.neg, half.pos) == (1, 5, 0)
    with pytest.raises(PreconditionError):
        bump_monomial(from_roots([2, 3], [1]), 1)


def test_shift_nonzero_examples():
    out = shift_nonzero(x ** 2, 1, "+")
    eps = out.coeff(1) / 2
    assert eps > 0 and out == (x + eps) ** 2
    out = shift_nonzero(x ** 2, 1, "-")
    assert out.coeff(1) < 0
    out = shift_nonzero(x ** 3 + x, 2, "+")
    eps = out.coeff(2) / 3
    assert eps > 0 and out == shift(x ** 3 + x, eps)
    with pytest.raises(PreconditionError):
        shift_nonzero(x ** 2 + 1, 0, "+")


def test_realize_recipe_examples():
    r = builtin_recipes()
    assert realize_recipe(r[C([1, 4, 1, 1, 3, 1], 1, 5)]).couple == C([1, 4, 1, 1, 3, 1], 1, 5)
    assert realize_recipe(Leaf(g1())).couple == C([1, 7, 2], 0, 3)
    assert realize_recipe(CanonicalHyperbolic(S([3]))).couple == C([3], 0, 2)


def test_claim_mismatch_detected():
    with pytest.raises(RealizationError):
        realize_recipe(Leaf(g1(), C([1, 7, 2], 0, 1)))


def test_builtin_recipe_shapes():
    r = builtin_recipes()
    top = r[C([1, 5, 5, 1], 1, 4)]
    assert isinstance(top, Concat)
    assert claimed(top.left) == C([1, 5, 3], 0, 2) and claimed(top.right) == C([3, 1], 1, 2)
    top = r[C([1, 4, 4, 3], 1, 8)]
    assert claimed(top.left) == C([1, 1], 1, 0) and claimed(top.right) == C([4, 4, 3], 0, 8)
    top = r[C([2, 6, 2], 0, 3)]
    assert claimed(top.left) == C([2, 6, 1], 0, 2) and claimed(top.right) == C([2], 0, 1)


def test_recipe_json_round_trip():
    for c, rec in list(builtin_recipes().items())[:10]:
        back = recipe_from_json(recipe_to_json(rec))
        assert realize_recipe(back).couple == c


@settings(max_examples=25)
@given(st.data())
def test_concatenation_certifies_merged_couple(data):
    sp1, sp2 = data.draw(patterns(1, 4)), data.draw(patterns(1, 4))
    w1, w2 = canonical_hyperbolic(sp1), canonical_hyperbolic(sp2)
    w = concat(w1, w2)
    independent_check(w)
    assert w.couple == merge_couples(w1.couple, w2.couple)
    assert w.couple.pattern.runs[:len(sp1.runs) - 1] == sp1.runs[:-1]
