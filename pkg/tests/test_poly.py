from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from descartes_atlas.poly import (ExactPoly, from_roots, mul, negate_var, reverse, scale_arg, shift,
                                  squarefree_data, transform)
from strategies import pos_rationals, rationals

x = ExactPoly.x()
polys = st.lists(rationals, min_size=2, max_size=7).map(ExactPoly).filter(lambda p: p.degree >= 1)


def test_from_roots_difference_of_squares():
    assert from_roots([1], [1]) == x ** 2 - 1


def test_from_roots_quadratic_factor():
    assert from_roots(quad_factors=[(0, 1)]) == x ** 2 + 1


def test_from_roots_descending_example_degree_nine():
    p = from_roots([2, 5, 7, 8], [1, 3, 4, 6, 9])
    assert p.degree == 9
    for r in (-2, -5, -7, -8, 1, 3, 4, 6, 9):
        assert p(r) == 0


def test_from_roots_rejects_nonpositive_moduli():
    with pytest.raises(ValueError):
        from_roots([0])


def test_mul_examples():
    assert (x + 1) * (x - 1) == x ** 2 - 1
    assert mul(x ** 2 - x + 1, x - 1) == x ** 3 - 2 * x ** 2 + 2 * x - 1
    p = 3 * x ** 4 - x + Fraction(2, 7)
    assert p * 1 == p
    assert p * 0 == ExactPoly(())


def test_transform_examples():
    assert transform(x ** 2 + 2 * x + 3, "reverse") == 3 * x ** 2 + 2 * x + 1
    assert transform(x ** 3 - x ** 2, "negate_var") == x ** 3 + x ** 2
    assert transform(x + 1, "scale_arg", Fraction(1, 4)) == x + Fraction(1, 4)
    assert transform(x ** 2, "shift", 1) == x ** 2 + 2 * x + 1


def test_transform_errors():
    with pytest.raises(ValueError):
        transform(ExactPoly(()), "reverse")
    with pytest.raises(ValueError):
        reverse(x ** 2 + x)
    with pytest.raises(ValueError):
        scale_arg(x + 1, 0)
    with pytest.raises(ValueError):
        transform(x, "rotate")


def test_squarefree_examples():
    g, s = squarefree_data((x - 1) ** 2 * (x + 2))
    assert g == 1 and s == ((x - 1) * (x + 2)).monic()
    assert squarefree_data(x ** 2 + 1)[0] == 0
    assert squarefree_data((x + 1) ** 5)[0] == 4


def test_json_round_trip_and_rejection():
    p = x ** 3 - Fraction(5, 3) * x + 7
    assert ExactPoly.from_json(p.to_json()) == p
    assert ExactPoly.from_json('["1/2", "0", "1"]') == x ** 2 + Fraction(1, 2)
    for bad in ('{"a": 1}', '[true]', '[1.5]'):
        with pytest.raises(ValueError):
            ExactPoly.from_json(bad)


def test_division_identity():
    p = x ** 5 - 3 * x ** 2 + 1
    q = 2 * x ** 2 + x - 1
    d, r = divmod(p, q)
    assert d * q + r == p and r.degree < q.degree


@given(polys)
def test_reverse_involutive(p):
    if p.coeff(0) != 0:
        assert reverse(reverse(p)) == p


@given(polys)
def test_negate_var_involutive(p):
    assert negate_var(negate_var(p)) == p


@given(polys)
def test_reverse_and_negate_commute_up_to_normalization(p):
    if p.coeff(0) != 0:
        assert reverse(negate_var(p)).monic() == negate_var(reverse(p)).monic()


@given(polys, polys)
def test_negate_var_multiplicative(p, q):
    assert negate_var(p * q) == negate_var(p) * negate_var(q)


@given(polys, rationals)
def test_shift_inverse(p, t):
    assert shift(shift(p, t), -t) == p


@given(polys, pos_rationals, rationals)
def test_scale_arg_moves_roots(p, e, r):
    assert scale_arg(p, e)(e * r) == e ** p.degree * p(r)


@given(st.lists(pos_rationals, max_size=4), st.lists(pos_rationals, max_size=4), st.booleans())
def test_squarefree_iff_distinct_roots(neg, pos, repeat):
    if repeat and neg:
        neg = neg + neg[:1]
    if not neg and not pos:
        return
    p = from_roots(neg, pos)
    distinct = len(set(neg)) == len(neg) and len(set(pos)) == len(pos)
    assert (squarefree_data(p)[0] == 0) == distinct
