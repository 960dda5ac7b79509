"""Rebuild the shipped atlas file from the rule engine, recipes and witness store.

    python3 scripts/build_atlas.py [--out PATH] [--check]
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from pathlib import Path

from descartes_atlas.atlas import ATLAS_PATH, build_atlas


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=ATLAS_PATH)
    ap.add_argument("--check", action="store_true", help="run the consistency check with full replay")
    args = ap.parse_args(argv)

    t = time.perf_counter()
    atlas = build_atlas()
    atlas.save(args.out)
    print(f"{len(atlas.rows)} entries written to {args.out} in {time.perf_counter() - t:.1f}s")
    tally = Counter((e.degree, e.status) for e in atlas.rows)
    for d in sorted({d for d, _ in tally}):
        print(f"  d={d:2d}  " + "  ".join(f"{s}={tally[d, s]}" for s in ("Realizable", "NonRealizable", "Unknown")
                                         if tally[d, s]))
    missing = [e for e in atlas.rows if e.status == "Realizable" and e.recipe_key is None and e.degree <= 9]
    print(f"  realizable entries of degree <= 9 without a recipe: {len(missing)}")
    for e in missing[:20]:
        print("    ", e.representative)
    if args.check:
        t = time.perf_counter()
        viol = atlas.consistency_check(replay=True)
        print(f"consistency check: {len(viol)} violations ({time.perf_counter() - t:.1f}s)")
        for v in viol:
            print("  ", v["subject"], "; ".join(v["problems"]))


if __name__ == "__main__":
    main()
