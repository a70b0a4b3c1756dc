"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 parse error, 3 invalid
parameters, 4 contradiction found by bound propagation.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import List, Optional

from . import quotient
from .algebra import AlgebraError, ParseError, Presentation
from .bounds import INF, BoundContradiction, default_grid, fmt, space_table, tc_table
from .catalog import CatalogError, list_catalog, parse_designator
from .checks import run_suite
from .cuplength import DIRECT, FACTORIZED, cup_length_power
from .kunneth import KunnethError
from .ringfile import load_ring

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PARAM, EXIT_CONTRADICTION = 0, 1, 2, 3, 4


def _emit(args, text: str, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _resolve(target: str):
    """A catalog designator or a ring file path -> (label, presentation)."""
    if os.path.exists(target) or target.endswith(".ring"):
        return target, load_ring(target)
    entry = parse_designator(target)
    return entry.designator, entry.presentation


def cmd_catalog(args) -> int:
    fams = list_catalog()
    rows = [
        f"{f.designator:<14} {f.title:<10} coeff {f.coefficients:<4} "
        + " ".join(f"{p}>={lo}" for p, lo in zip(f.params, f.minimums))
        + f"   tc_n = {f.tc_formula}"
        for f in fams
    ]
    payload = [
        {"designator": f.designator, "title": f.title, "coefficients": f.coefficients,
         "params": dict(zip(f.params, f.minimums)), "tc_formula": f.tc_formula}
        for f in fams
    ]
    _emit(args, "\n".join(rows), payload)
    return EXIT_OK


def cmd_nil(args) -> int:
    label, p = _resolve(args.target)
    res = cup_length_power(p, args.power, args.mode, threads=args.threads)
    names = [f"{p.generators[i % p.algebra.ngens].name}<{i // p.algebra.ngens + 1}>"
             if args.power > 1 else p.generators[i].name for i in res.witness]
    text = "\n".join([
        f"space      {label}",
        f"power      {args.power}",
        f"mode       {res.mode}",
        f"cup-length {res.cup_length}",
        f"nil index  {res.nil_index}",
        f"witness    {' * '.join(names) if names else '(empty)'}",
    ])
    payload = {"space": label, "power": args.power, "mode": res.mode,
               "cup_length": res.cup_length, "nil_index": res.nil_index, "witness": names}
    _emit(args, text, payload)
    return EXIT_OK


def cmd_bounds(args) -> int:
    entry = parse_designator(args.target)
    table = space_table(entry, args.n)
    rows = table.rows(entry.designator)
    lines = [f"{'quantity':<10} {'n':>2} {'lower':>5} {'upper':>5}  resolved  provenance"]
    for r in rows:
        q = "cat(X^n)" if r["quantity"] == "cat_power" else r["quantity"]
        lines.append(
            f"{q:<10} {r['n']:>2} {r['lower']:>5} {str(r['upper']):>5}  "
            f"{'yes' if r['resolved'] else 'no':<8}  {' | '.join(r['provenance'])}"
        )
    _emit(args, f"space {entry.designator}\n" + "\n".join(lines), rows)
    return EXIT_OK


_RANGE = re.compile(r"^(\d+)(?:-(\d+))?$")


def parse_grid(text: Optional[str]) -> List[str]:
    """``"sphere:1-4,conf:2-3:3"`` -> designators; None means the default grid."""
    if text is None:
        return default_grid()
    out = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        fam, *ranges = item.split(":")
        combos = [[]]
        for r in ranges:
            mo = _RANGE.match(r)
            if not mo:
                raise CatalogError(f"bad range {r!r} in grid item {item!r}")
            lo = int(mo.group(1))
            hi = int(mo.group(2) or lo)
            combos = [c + [v] for c in combos for v in range(lo, hi + 1)]
        out += [":".join([fam, *map(str, c)]) for c in combos]
    return out


def cmd_table(args) -> int:
    grid = parse_grid(args.grid)
    cells = tc_table(grid, args.n_max, threads=args.threads) if args.n_max >= 1 else []
    header = f"{'space':<16}" + "".join(f"{'n=' + str(j):>8}" for j in range(1, args.n_max + 1))
    lines = [header] if grid else []
    by_space = {}
    for c in cells:
        by_space.setdefault(c.space, []).append(c)
    for sp, row in by_space.items():
        parts = []
        for c in row:
            v = str(int(c.lower)) if c.resolved else f"[{int(c.lower)},{fmt(c.upper)}]"
            if not c.matches:
                v += "!"
            parts.append(f"{v:>8}")
        lines.append(f"{sp:<16}" + "".join(parts))
    bad = [c for c in cells if not c.matches]
    lines.append(f"{len(cells)} cells, {len(cells) - len(bad)} resolved and matching the closed form")
    payload = {
        "n_max": args.n_max,
        "cells": [c.as_dict() for c in cells],
        "all_resolved": all(c.resolved for c in cells),
        "all_match": not bad,
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_check_paths(args) -> int:
    rep = run_suite(args.suite, seed=args.seed, levels=args.levels)
    lines = [f"suite {rep.suite} (seed {rep.seed})"]
    for c in rep.checks:
        lines.append(f"  {'PASS' if c.ok else 'FAIL'}  {c.name}: worst {c.worst:.3g} (tol {c.tol:g})"
                     + (f"  [{c.detail}]" if c.detail else ""))
    lines.append("all checks passed" if rep.passed else "FAILED")
    _emit(args, "\n".join(lines), rep.as_dict())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_ring_show(args) -> int:
    label, p = _resolve(args.target)
    ranks = [quotient.rank(p, d) for d in range(p.top_degree + 1)]
    tors = {d: quotient.torsion(p, d) for d in range(p.top_degree + 1)}
    lines = [f"# {label}", p.describe(), f"# coefficients {p.coefficients}",
             f"# kunneth-safe {'yes' if p.kunneth_safe else 'no'}",
             "# ranks " + " ".join(f"H^{d}={r}" for d, r in enumerate(ranks))]
    torsion_lines = [f"# torsion H^{d}: {t}" for d, t in tors.items() if t]
    payload = {"space": label, "presentation": p.describe(), "kunneth_safe": p.kunneth_safe,
               "ranks": ranks, "torsion": {str(d): t for d, t in tors.items() if t}}
    _emit(args, "\n".join(lines + torsion_lines), payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="basedtc", parents=[common],
                                 description="Cup-length and category bounds for based topological complexity.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", parents=[common], help="list the built-in space families")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("nil", parents=[common], help="cup-length and nilpotency index of H*(X^n)")
    s.add_argument("target", help="space designator (e.g. rp:3) or ring file")
    s.add_argument("--power", type=int, default=1)
    s.add_argument("--mode", choices=[DIRECT, FACTORIZED], default=FACTORIZED)
    s.set_defaults(func=cmd_nil)

    s = sub.add_parser("bounds", parents=[common], help="propagated intervals for cat, tc, TC, ltc, LTC")
    s.add_argument("target")
    s.add_argument("--n", type=int, default=2)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("table", parents=[common], help="reproduce the tc_n table")
    s.add_argument("--n-max", type=int, default=4)
    s.add_argument("--grid", default=None, help='e.g. "sphere:1-4,conf:2-4:1-4"; "" for none')
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("check-paths", parents=[common], help="numeric checks of the path formulas")
    s.add_argument("--suite", choices=["reparam", "lift", "section"], required=True)
    s.add_argument("--levels", type=int, default=5)
    s.set_defaults(func=cmd_check_paths)

    s = sub.add_parser("ring", parents=[common], help="inspect a presentation")
    rsub = s.add_subparsers(dest="ring_command", required=True)
    r = rsub.add_parser("show", parents=[common])
    r.add_argument("target")
    r.set_defaults(func=cmd_ring_show)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code not in (0, None) else EXIT_OK
    for name, default in (("json", False), ("seed", 0), ("threads", 1)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BoundContradiction as e:
        print(f"contradiction: {e}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (CatalogError, KunnethError, AlgebraError, ValueError, OSError) as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
