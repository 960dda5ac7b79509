"""Manufacture and freeze exact leaf witnesses for the planner.

Stage 1 fills every planner gap for degrees <= 8 (one witness per orbit).
Stage 2 covers the building blocks of the builtin recipes and every
two-sign-change couple of degree 9 that the planner still cannot build.
Couples that resist the search are listed; they are expected to be exactly
the non-realizable ones.

    python3 scripts/manufacture_witnesses.py [--budget N] [--seeds K]
"""

from __future__ import annotations

import argparse
import time

from descartes_atlas import library, plan
from descartes_atlas.couples import Couple, admissible_pairs, enumerate_orbits
from descartes_atlas.probe.search import SearchConfig, search
from descartes_atlas.realize import Leaf
from descartes_atlas.signpat import SignPattern


def refresh():
    library.known_leaves.cache_clear()
    library.builtin_recipes.cache_clear()
    plan.default_planner.cache_clear()


def hunt(c: Couple, budget: int, seeds: int):
    for seed in range(seeds):
        res = search(c, SearchConfig(budget=budget, seed=seed, use_recipes=False))
        if res.found:
            return res, seed
    return None, None


def freeze(store, c, budget, seeds, log):
    t = time.perf_counter()
    res, seed = hunt(c, budget, seeds)
    dt = time.perf_counter() - t
    if res is None:
        log.append(str(c))
        print(f"  no witness  {c}  ({dt:.1f}s)", flush=True)
        return False
    w = res.result
    store[c] = library.store_entry(c, Leaf(w.poly, c), f"{res.strategy}, seed {seed}")
    print(f"  frozen      {c}  via {res.strategy} ({dt:.1f}s)", flush=True)
    return True


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int, default=50_000)
    ap.add_argument("--seeds", type=int, default=4)
    args = ap.parse_args(argv)

    store = library.load_store()
    resisted: list[str] = []

    print("stage 1: planner gaps, degree <= 8", flush=True)
    for d in range(1, 9):
        refresh()
        P = plan.default_planner()
        for o in enumerate_orbits(d):
            c = o.representative
            if c in store or P.feasible(c):
                continue
            freeze(store, c, args.budget, args.seeds, resisted)
        library.save_store(store)

    print("stage 2: recipe blocks and degree-9 couples with two sign changes", flush=True)
    refresh()
    targets = list(library.missing_blocks())
    for m in range(1, 9):
        for n in range(1, 10 - m):
            q = 10 - m - n
            sp = SignPattern.from_runs([m, n, q])
            targets += [Couple(sp, pr) for pr in admissible_pairs(sp)]
    for c in targets:
        refresh()
        if c in store or plan.default_planner().feasible(c):
            continue
        if freeze(store, c, args.budget, args.seeds, resisted):
            library.save_store(store)
    library.save_store(store)
    refresh()
    print(f"{len(store)} frozen witnesses; {len(resisted)} couples resisted the search", flush=True)
    for r in resisted:
        print("  ", r, flush=True)


if __name__ == "__main__":
    main()
