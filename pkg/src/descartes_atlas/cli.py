"""Command-line interface.

Exit codes: 0 success, 1 domain or usage error, 2 consistency violation
(a non-empty ``atlas check`` report or a probe hit).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .couples import AdmissiblePair, Couple, IncompatibleCouple, enumerate_couples, enumerate_orbits
from .poly import ExactPoly
from .signpat import SignPattern, canonical_order, of_poly

SCHEMA = "v1"
EXIT_OK, EXIT_DOMAIN, EXIT_VIOLATION = 0, 1, 2


class DomainError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    output: str = "table"
    seed: int = 0
    budget: int = 10_000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


# output

def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)) and all(not isinstance(x, (dict, list)) for x in v):
        return ",".join(str(x) for x in v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def render_table(payload: dict) -> str:
    """Flat rendering of the same payload the json mode prints."""
    lines = []
    scalars = {k: v for k, v in payload.items() if not (isinstance(v, list) and v and isinstance(v[0], dict))}
    width = max((len(k) for k in scalars), default=0)
    for k, v in scalars.items():
        lines.append(f"{k.ljust(width)}  {_scalar(v)}")
    for k, v in payload.items():
        if k in scalars:
            continue
        cols = list(dict.fromkeys(c for row in v for c in row))
        cells = [[_scalar(row.get(c)) for c in cols] for row in v]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        lines.append("")
        lines.append(f"{k} ({len(v)})")
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        for r in cells:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)))
    return "\n".join(lines)


def emit(payload: dict, mode: str, out) -> None:
    payload = {"schema": SCHEMA, **payload}
    if mode == "json":
        out.write(json.dumps(payload, ensure_ascii=False, sort_keys=False) + "\n")
    else:
        out.write(render_table(payload) + "\n")


# argument helpers

def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}")


def _pattern(args) -> SignPattern:
    if getattr(args, "pattern", None):
        try:
            return SignPattern.parse(args.pattern)
        except ValueError as exc:
            raise DomainError(str(exc))
    if not getattr(args, "runs", None):
        raise DomainError("give --runs or --pattern")
    try:
        return SignPattern.from_runs(_ints(args.runs))
    except ValueError as exc:
        raise DomainError(str(exc))


def _couple(args) -> Couple:
    sp = _pattern(args)
    if args.pos is None or args.neg is None:
        raise DomainError("give --pos and --neg")
    try:
        return Couple(sp, AdmissiblePair(args.pos, args.neg))
    except (IncompatibleCouple, ValueError) as exc:
        raise DomainError(str(exc))


def _add_couple_flags(p, pair=True):
    p.add_argument("--runs", help="run lengths, e.g. 1,4,4,1")
    p.add_argument("--pattern", help="raw sign string, e.g. +----+")
    if pair:
        p.add_argument("--pos", type=int)
        p.add_argument("--neg", type=int)


def _entry_json(e) -> dict:
    return {"couple": e.representative.label(), **e.to_json()}


# commands

def cmd_couples(args) -> tuple[dict, int]:
    d = args.degree
    try:
        if args.by_orbit:
            rows = [{"representative": o.representative.label(), "size": len(o),
                     "members": [m.label() for m in o.members]} for o in enumerate_orbits(d)]
            return {"command": "couples", "degree": d, "by_orbit": True, "count": len(rows), "orbits": rows}, 0
        rows = [{"couple": c.label(), "runs": list(c.runs), "pos": c.pos, "neg": c.neg}
                for c in enumerate_couples(d)]
    except ValueError as exc:
        raise DomainError(str(exc))
    return {"command": "couples", "degree": d, "by_orbit": False, "count": len(rows), "couples": rows}, 0


def cmd_status(args) -> tuple[dict, int]:
    from .atlas import default_atlas
    c = _couple(args)
    try:
        e = default_atlas().status(c)
    except ValueError as exc:
        raise DomainError(str(exc))
    return {"command": "status", "query": c.label(), **_entry_json(e)}, 0


def cmd_realize(args) -> tuple[dict, int]:
    from .atlas import NONREALIZABLE, default_atlas, parse_recipe_key, recipe_for
    from .probe.search import SearchConfig, search
    from .realize import realize_recipe
    c = _couple(args)
    e = default_atlas().status(c)
    out = {"command": "realize", "query": c.label(), "status": e.status, "citation": e.citation}
    if e.status == NONREALIZABLE:
        return {**out, "found": False, "witness": None}, EXIT_DOMAIN
    w = None
    how = None
    if e.recipe_key is not None:
        from .plan import _orbit_moves
        from .realize import Involute
        r = recipe_for(e.recipe_key)
        _, member = parse_recipe_key(e.recipe_key)
        for m, moves in _orbit_moves(c):
            if m == member:
                cur = m
                for which in moves:
                    cur = cur.involution(which)
                    r = Involute(r, which, cur)
                w, how = realize_recipe(r), e.recipe_key
                break
    if w is None:
        res = search(c, SearchConfig(budget=args.budget, seed=args.seed))
        if res.found:
            w, how = res.result, res.strategy
    if w is None:
        return {**out, "found": False, "witness": None}, EXIT_DOMAIN
    return {**out, "found": True, "via": how, "poly": w.poly.to_json(), "text": str(w.poly),
            "classification": w.classification.to_json()}, 0


def cmd_classify(args) -> tuple[dict, int]:
    from .rootcount import classify
    from .signpat import gen_of_poly
    try:
        p = ExactPoly.from_json(args.poly)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed polynomial JSON: {exc}")
    if p.degree < 1:
        raise DomainError("polynomial must have degree >= 1")
    if p.lc < 0:
        p = -p
    rc = classify(p)
    g = gen_of_poly(p)
    runs = list(of_poly(p).runs) if "0" not in g.signs else None
    return {"command": "classify", "degree": p.degree, **rc.to_json(), "signs": g.signs, "runs": runs}, 0


def cmd_canonical(args) -> tuple[dict, int]:
    from .realize import canonical_hyperbolic
    from .rootcount import moduli_order
    sp = _pattern(args)
    w = canonical_hyperbolic(sp)
    return {"command": "canonical", "runs": list(sp.runs), "signs": sp.signs,
            "canonical_order": canonical_order(sp), "moduli_order": moduli_order(w.poly),
            "couple": w.couple.label(), "poly": w.poly.to_json(), "text": str(w.poly)}, 0


def cmd_probe(args) -> tuple[dict, int]:
    kind = args.kind
    if kind == "theorem1":
        from .probe.theorem1 import theorem1_probe
        try:
            rep = theorem1_probe(args.d, args.n, args.q, samples=args.samples, seed=args.seed, timing=args.timing)
        except ValueError as exc:
            raise DomainError(str(exc))
        bad = rep["hits"] or rep["diagnostics"]["S_failures"] or rep["diagnostics"]["T_failures"]
        return {"command": "probe theorem1", **_strip(rep)}, EXIT_VIOLATION if bad else 0
    if kind == "hfamily":
        from .probe.hfamily import FAMILIES, h_family_probe
        fams = FAMILIES if args.family == "all" else [tuple(_ints(args.family))]
        reports = []
        for f in fams:
            try:
                reports.append(_strip(h_family_probe(f, samples=args.samples, seed=args.seed, timing=args.timing)))
            except ValueError as exc:
                raise DomainError(str(exc))
        hits = sum(len(r["hits"]) for r in reports)
        return {"command": "probe hfamily", "total_hits": hits, "reports": reports}, EXIT_VIOLATION if hits else 0
    if kind == "identities":
        from .probe.identities import IDENTITIES, identity_check
        which = IDENTITIES if args.which == "all" else [args.which]
        try:
            reports = [_strip(identity_check(w, points=args.points, seed=args.seed)) for w in which]
        except ValueError as exc:
            raise DomainError(str(exc))
        ok = all(r["passed"] for r in reports)
        return {"command": "probe identities", "passed": ok, "reports": reports}, 0 if ok else EXIT_VIOLATION
    if kind == "search":
        from .atlas import NONREALIZABLE, default_atlas
        from .probe.search import SearchConfig, report, search
        c = _couple(args)
        cfg = SearchConfig(budget=args.budget, seed=args.seed)
        import time
        t0 = time.perf_counter()
        res = search(c, cfg)
        rep = _strip(report(res, cfg, timing=args.timing, started=t0))
        bad = res.found and default_atlas().status(c, with_recipe=False).status == NONREALIZABLE
        return {"command": "probe search", **rep}, EXIT_VIOLATION if bad else 0
    raise DomainError(f"unknown probe {kind!r}")


def _strip(rep: dict) -> dict:
    return {k: v for k, v in rep.items() if k != "schema"}


def cmd_atlas(args) -> tuple[dict, int]:
    from .atlas import default_atlas
    A = default_atlas()
    if args.action == "dump":
        return {"command": "atlas dump", "source": A.source, "entries": [_entry_json(e) for e in A.rows]}, 0
    degrees = _ints(args.degrees) if args.degrees else None
    viol = A.consistency_check(replay=not args.no_replay, degrees=degrees)
    rows = [{"subject": v["subject"], "problems": "; ".join(v["problems"])} for v in viol]
    return ({"command": "atlas check", "source": A.source, "entries": len(A.rows), "violations": rows,
             "ok": not rows}, EXIT_VIOLATION if rows else 0)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("json", "table"), default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10_000)

    ap = _Parser(prog="descartes-atlas", description="Sign patterns, admissible pairs and their realizability.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("couples", parents=[common], help="enumerate couples or orbits")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--by-orbit", action="store_true")
    p.set_defaults(func=cmd_couples)

    p = sub.add_parser("status", parents=[common], help="atlas lookup")
    _add_couple_flags(p)
    p.set_defaults(func=cmd_status)

    p = sub.add_parser("realize", parents=[common], help="exact witness from a recipe or the search")
    _add_couple_flags(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("classify", parents=[common], help="root counts of a polynomial")
    p.add_argument("--poly", required=True, help='ascending coefficients, e.g. \'["-1/1","0/1","1/1"]\'')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("canonical", parents=[common], help="canonical order and hyperbolic witness")
    _add_couple_flags(p, pair=False)
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("probe", parents=[common], help="probe reports")
    p.add_argument("kind", choices=("theorem1", "hfamily", "identities", "search"))
    p.add_argument("--d", type=int, default=9)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--family", default="all", help="multiplicity vector such as 2,1,2, or 'all'")
    p.add_argument("--which", default="all")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")
    _add_couple_flags(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("atlas", parents=[common], help="database check or dump")
    p.add_argument("action", choices=("check", "dump"))
    p.add_argument("--no-replay", action="store_true")
    p.add_argument("--degrees", help="replay recipes only for these degrees, e.g. 4,5,6")
    p.set_defaults(func=cmd_atlas)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        cfg = CliConfig(args.command, args.output, args.seed, args.budget)
        payload, code = args.func(args)
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    emit(payload, cfg.output, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
