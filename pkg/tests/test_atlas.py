import dataclasses
import json

import pytest

from descartes_atlas import atlas as A
from descartes_atlas.atlas import (NONREALIZABLE, REALIZABLE, UNKNOWN, Atlas, AtlasEntry, default_atlas,
                                   derive, k_match, parse_recipe_key, recipe_for, recipe_key)
from descartes_atlas.consistency import two_change_couples
from descartes_atlas.couples import enumerate_couples
from descartes_atlas.library import C
from descartes_atlas.probe.search import NotFound, witness_search
from descartes_atlas.realize import realize_recipe


@pytest.fixture(scope="module")
def atlas():
    return default_atlas()


def test_status_examples(atlas):
    e = atlas.status(C([1, 3, 1], 0, 2))
    assert e.status == NONREALIZABLE and "degree 4" in e.citation
    e = atlas.status(C([1, 4, 5, 1], 1, 7))
    assert e.status == NONREALIZABLE and "K_{n,q}" in e.citation
    assert atlas.status(C([1, 4, 4, 2], 1, 7)).status == UNKNOWN


def test_status_resolves_through_orbit(atlas):
    c = C([1, 3, 1], 0, 2)
    for m in (c.involution("im"), c.involution("ir")):
        assert atlas.status(m).representative == c.canonical()


def test_list_examples(atlas):
    six = atlas.list(6, NONREALIZABLE)
    want = {C([1, 5, 1], 0, 2), C([1, 5, 1], 0, 4), C([1, 1, 1, 3, 1], 0, 2), C([2, 4, 1], 0, 4)}
    assert {e.representative for e in six} == {c.canonical() for c in want}
    assert len(atlas.list(8, NONREALIZABLE)) == 19
    mu1 = atlas.list(9, NONREALIZABLE, where=lambda e: e.representative.mu >= 1)
    assert [e.representative for e in mu1] == [C([1, 4, 4, 1], 1, 6).canonical()]
    keys = [e.representative.sort_key() for e in atlas.list(5)]
    assert keys == sorted(keys)
    with pytest.raises(ValueError):
        atlas.list(15)


def test_k_match_structural():
    assert k_match(C([1, 4, 4, 1], 1, 6)) == (4, 4)
    assert k_match(C([1, 5, 6, 1], 1, 9)) == (5, 6)
    assert k_match(C([1, 5, 6, 1], 1, 9).involution("im")) == (5, 6)
    assert k_match(C([1, 3, 5, 1], 1, 6)) is None
    assert k_match(C([1, 4, 4, 1], 1, 4)) is None


def test_orbit_invariance_exhaustive():
    for d in range(1, 10):
        for c in enumerate_couples(d):
            s = derive(c)[0]
            assert derive(c.involution("im"))[0] == s
            assert derive(c.involution("ir"))[0] == s


def test_every_entry_has_citation_and_valid_shape(atlas):
    for e in atlas.rows:
        assert e.citation.strip()
        assert e.representative == e.representative.canonical()
        assert AtlasEntry.from_json(e.to_json()) == e


def test_realizable_replay_sampled(atlas):
    rows = [e for e in atlas.rows if e.status == REALIZABLE and e.recipe_key][::97]
    for e in rows:
        kind, member = parse_recipe_key(e.recipe_key)
        assert member.canonical() == e.representative
        assert realize_recipe(recipe_for(e.recipe_key)).couple == member


def test_recipe_key_round_trip():
    c = C([1, 4, 4, 1], 1, 6)
    assert parse_recipe_key(recipe_key("plan", c)) == ("plan", c)


def test_two_change_couples_are_all_covered(atlas):
    cs = two_change_couples(10)
    assert all(c.degree == 9 for c in cs)
    assert all(atlas.status(c).status in (REALIZABLE, NONREALIZABLE) for c in cs)


def test_stored_refutation_overrides_catalog(atlas):
    c = C([2, 6, 2], 0, 5)
    assert A._derive_catalog(c)[0] == NONREALIZABLE
    e = atlas.status(c)
    assert e.status == REALIZABLE and "overridden" in e.citation and e.recipe_key.startswith("store:")


def test_shipped_atlas_is_consistent_without_replay(atlas):
    assert atlas.consistency_check(replay=False) == []


def test_shipped_atlas_replays_in_full(atlas):
    assert atlas.consistency_check(replay=True) == []


def _replace(atlas, c, **kw):
    rep = c.canonical()
    return Atlas([dataclasses.replace(e, **kw) if e.representative == rep else e for e in atlas.rows])


def test_flipped_status_gives_one_violation(atlas):
    bad = _replace(atlas, C([1, 3, 3], 0, 2), status=NONREALIZABLE, recipe_key=None)
    assert len(bad.consistency_check(replay=False)) == 1
    bad = _replace(atlas, C([1, 5, 1], 0, 2), status=REALIZABLE)
    assert len(bad.consistency_check(replay=False)) == 1


def test_deleted_recipe_gives_one_violation(atlas):
    bad = _replace(atlas, C([1, 4, 5], 0, 3), recipe_key=None)
    assert len(bad.consistency_check(replay=False)) == 1


def test_broken_recipe_key_gives_one_violation(atlas):
    c = C([1, 2, 2], 0, 0)
    bad = _replace(atlas, c, recipe_key=recipe_key("plan", C([1, 3, 1], 0, 0)))
    assert len(bad.consistency_check(replay=True, degrees=[4])) == 1


def test_duplicate_row_detected(atlas):
    dup = Atlas(atlas.rows + [atlas.rows[10]])
    assert len(dup.consistency_check(replay=False)) == 1


def test_save_load_round_trip(atlas, tmp_path):
    p = tmp_path / "a.json"
    atlas.save(p)
    back = Atlas.load(p)
    assert [e.to_json() for e in back.rows] == [e.to_json() for e in atlas.rows]
    assert json.loads(p.read_text())["schema"] == "atlas-v1"


def test_nonrealizable_entries_resist_standard_search(atlas):
    for e in atlas.rows:
        if e.status == NONREALIZABLE and e.degree <= 9:
            r = witness_search(e.representative, budget=10_000, seed=0)
            assert isinstance(r, NotFound), e.representative.label()
