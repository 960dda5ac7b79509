"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from descartes_atlas.couples import Couple, admissible_pairs
from descartes_atlas.signpat import SignPattern

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
pos_rationals = st.builds(Fraction, st.integers(1, 60), st.integers(1, 12))


def patterns(min_d=1, max_d=8):
    return st.integers(min_d, max_d).flatmap(
        lambda d: st.text("+-", min_size=d, max_size=d).map(lambda t: SignPattern("+" + t)))


def couples(min_d=1, max_d=8):
    return patterns(min_d, max_d).flatmap(
        lambda sp: st.sampled_from(admissible_pairs(sp)).map(lambda pr: Couple(sp, pr)))
