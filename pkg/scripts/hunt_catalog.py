"""Large-budget witness search over catalogued non-realizable orbits.

Any witness found contradicts the catalog; it is certified exactly and, with
``--freeze``, added to the witness store.

    python3 scripts/hunt_catalog.py [--degrees 9] [--budget N] [--seeds K] [--freeze]
"""

from __future__ import annotations

import argparse
import json
import time

from descartes_atlas import library
from descartes_atlas.atlas import SMALL_NONREALIZABLE, TWO_CHANGE_D9_NONREALIZABLE
from descartes_atlas.probe.search import SearchConfig, search
from descartes_atlas.realize import Leaf


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--degrees", default="9")
    ap.add_argument("--budget", type=int, default=200_000)
    ap.add_argument("--seeds", type=int, default=8)
    ap.add_argument("--freeze", action="store_true")
    args = ap.parse_args(argv)
    degrees = {int(d) for d in args.degrees.split(",")}

    pool = [c for d in sorted(SMALL_NONREALIZABLE) if d in degrees for c in SMALL_NONREALIZABLE[d]]
    if 9 in degrees:
        pool += TWO_CHANGE_D9_NONREALIZABLE
    seen, targets = set(), []
    for c in pool:
        if c.canonical() not in seen:
            seen.add(c.canonical())
            targets.append(c)

    store = library.load_store()
    found = []
    for c in targets:
        if any(m in store for m in (c, c.involution("ir"), c.involution("im"))):
            print(f"already refuted  {c}", flush=True)
            continue
        t = time.perf_counter()
        hit = None
        for seed in range(args.seeds):
            res = search(c, SearchConfig(budget=args.budget, seed=seed, use_recipes=False))
            if res.found:
                hit = (res, seed)
                break
        dt = time.perf_counter() - t
        if hit is None:
            print(f"resisted         {c}  ({dt:.0f}s)", flush=True)
            continue
        res, seed = hit
        print(f"WITNESS          {c}  seed {seed}: {json.dumps(res.result.poly.to_json())}", flush=True)
        found.append(c)
        if args.freeze:
            store[c] = library.store_entry(c, Leaf(res.result.poly, c), f"{res.strategy}, seed {seed}")
            library.save_store(store)
    print(f"{len(found)} catalogued orbits contradicted", flush=True)


if __name__ == "__main__":
    main()
