from itertools import product

import pytest
from hypothesis import given

from descartes_atlas.couples import (AdmissiblePair, Couple, IncompatibleCouple, admissible_pairs,
                                     couple_count, descartes_pair, enumerate_couples, enumerate_orbits,
                                     is_compatible)
from descartes_atlas.signpat import SignPattern, all_patterns, counts, orbit
from strategies import couples

S = SignPattern.from_runs


def brute_count(d):
    n = 0
    for tail in product("+-", repeat=d):
        signs = "+" + "".join(tail)
        c = sum(a != b for a, b in zip(signs, signs[1:]))
        p = d - c
        n += sum(1 for i in range(c + 1) for j in range(p + 1) if (c - i) % 2 == 0 and (p - j) % 2 == 0)
    return n


def test_descartes_pair_examples():
    assert descartes_pair(S([1, 4, 4, 1])) == (3, 6)
    assert descartes_pair(S([2])) == (0, 1)


def test_admissible_pairs_examples():
    assert sorted(admissible_pairs(S([1, 3, 1]))) == sorted([(2, 2), (2, 0), (0, 2), (0, 0)])
    prs = admissible_pairs(S([1, 8, 1]))
    assert len(prs) == 8 and {p for p, _ in prs} == {0, 2} and {n for _, n in prs} == {1, 3, 5, 7}
    assert admissible_pairs(S([2])) == [(0, 1)]


def test_enumerate_examples():
    assert {(c.pattern.signs, tuple(c.pair)) for c in enumerate_couples(1)} == {("++", (0, 1)), ("+-", (1, 0))}
    assert sum(1 for _ in enumerate_couples(2)) == 6
    for d in range(1, 7):
        assert sum(1 for _ in enumerate_couples(d)) == brute_count(d) == couple_count(d)


def test_compatibility_examples():
    assert is_compatible(S([1, 3, 1]), (0, 2))
    assert not is_compatible(S([1, 3, 1]), (1, 2))
    assert is_compatible(S([1, 4, 5, 1]), (1, 7))
    with pytest.raises(IncompatibleCouple):
        Couple(S([1, 3, 1]), AdmissiblePair(1, 2))


def test_orbit_pair_swap():
    c = Couple(S([1, 3, 1]), AdmissiblePair(0, 2))
    assert c.involution("im").pair == (2, 0)
    assert c.involution("ir").pair == (0, 2)


def test_orbit_laws_exhaustive():
    for d in range(1, 9):
        for c in enumerate_couples(d):
            o = orbit(c)
            assert len(o) in (2, 4)
            assert all(m.mu == c.mu and m.lam == c.lam for m in o.members)
            assert c.involution("im").involution("im") == c
            assert c.involution("ir").involution("ir") == c
            assert c.involution("im").involution("ir") == c.involution("ir").involution("im")


def test_orbit_partition_covers_each_couple_once():
    for d in range(1, 7):
        seen = [m for o in enumerate_orbits(d) for m in o.members]
        assert len(seen) == len(set(seen)) == couple_count(d)


@given(couples(1, 10))
def test_descartes_pair_is_maximal(c):
    dp = descartes_pair(c.pattern)
    assert is_compatible(c.pattern, dp)
    assert c.pos <= dp.pos and c.neg <= dp.neg
    assert dp == counts(c.pattern)


@given(couples(1, 10))
def test_json_and_canonical(c):
    assert Couple.from_json(c.to_json()) == c
    can = c.canonical()
    assert can in orbit(c).members
    assert can == min(orbit(c).members, key=lambda m: m.sort_key())
