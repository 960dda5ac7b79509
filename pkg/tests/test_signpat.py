import random

import pytest
from hypothesis import given, settings

from descartes_atlas.library import g1
from descartes_atlas.poly import ExactPoly, negate_var
from descartes_atlas.realize import canonical_hyperbolic
from descartes_atlas.rootcount import moduli_order
from descartes_atlas.signpat import (GenSignPattern, SignPattern, all_patterns, canonical_order, counts,
                                     gen_of_poly, im_pattern, in_closure, involution, ir_pattern,
                                     is_adjacent, of_poly, orbit)
from strategies import patterns

x = ExactPoly.x()
SMALL = [sp for d in range(1, 9) for sp in all_patterns(d)]


def test_runs_codec_examples():
    assert SignPattern.from_runs([2, 3, 1, 1, 3]).signs == "++---+-+++"
    assert SignPattern.from_runs([1, 3, 1]).signs == "+---+"
    assert SignPattern("++").runs == (2,)
    assert SignPattern.parse("(+,−,−,−,+)") == SignPattern.parse("1,3,1")


def test_invalid_patterns():
    for bad in ("+", "-+", "+0-", "+a"):
        with pytest.raises(ValueError):
            SignPattern(bad)
    with pytest.raises(ValueError):
        SignPattern.from_runs([1, 0, 2])


def test_counts_examples():
    assert counts(SignPattern.from_runs([1, 3, 1])) == (2, 2)
    assert counts(SignPattern.from_runs([1, 4, 4, 1])) == (3, 6)
    assert counts(SignPattern.from_runs([10])) == (0, 9)


def test_of_poly_examples():
    assert of_poly(g1()).runs == (1, 7, 2)
    with pytest.raises(ValueError):
        of_poly(x ** 2 - 1)
    assert of_poly(x ** 3 + x ** 2 - x + 1).signs == "++-+"


def test_involution_examples():
    assert involution(SignPattern("++-+"), "im").signs == "+---"
    for d in range(3, 9):
        s = SignPattern.from_runs([1, d - 1, 1])
        assert involution(s, "ir") == s
        assert involution(s, "im").runs == (2,) + (1,) * (d - 3) + (2,)
    with pytest.raises(ValueError):
        involution(SignPattern("++"), "iz")


def test_orbit_examples():
    assert len(orbit(SignPattern("++-+"))) == 4
    for d in range(2, 9):
        assert len(orbit(SignPattern.from_runs([1, d - 1, 1]))) == 2


def test_canonical_order_examples():
    assert canonical_order(SignPattern("+--+-+++-")) == "PNNPPPNP"
    assert canonical_order(SignPattern("+" * 6)) == "NNNNN"
    assert canonical_order(SignPattern("+-")) == "P"


def test_adjacency_examples():
    assert is_adjacent("+0-", "++-")
    assert not is_adjacent("+--", "++-")
    assert is_adjacent("+00-", "+-+-")
    assert not is_adjacent("++-", "++-")
    assert in_closure("++-", "++-")
    assert GenSignPattern("+00-").has_consecutive_zeros()
    assert gen_of_poly(x ** 2 - 1).signs == "+0-"


def test_group_laws_exhaustive():
    for sp in SMALL:
        a, b = im_pattern(sp), ir_pattern(sp)
        assert im_pattern(a) == sp and ir_pattern(b) == sp
        assert ir_pattern(a) == im_pattern(b)
        c, p = counts(sp)
        assert counts(a) == (p, c) and counts(b) == (c, p)
        assert a != sp
        small = ir_pattern(sp) == sp or ir_pattern(a) == sp
        assert len(orbit(sp)) == (2 if small else 4)


def test_canonical_hyperbolic_moduli_order_sampled():
    rng = random.Random(3)
    for sp in rng.sample(SMALL, 60):
        assert moduli_order(canonical_hyperbolic(sp).poly) == canonical_order(sp)


@settings(max_examples=300)
@given(patterns(1, 9))
def test_of_poly_negate_var_is_im(sp):
    rng = random.Random(sp.signs)
    cs = [rng.randint(1, 20) * (1 if s == "+" else -1) for s in reversed(sp.signs)]
    q = ExactPoly(cs)
    assert of_poly(q) == sp
    assert of_poly(negate_var(q)) == im_pattern(sp)


@given(patterns(1, 10))
def test_runs_round_trip(sp):
    assert SignPattern.from_runs(sp.runs) == sp
    assert sum(sp.runs) == sp.degree + 1
