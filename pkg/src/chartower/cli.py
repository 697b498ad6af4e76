"""Command-line surface.

Subcommands: chartable, towers, triangle, limit, glauberman, monomial,
verify-main, symplectic. Exit codes: 0 pass, 1 assertion failure, 2 usage
error. All output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from chartower.group import parse_group_file, subgroup_closure


def _load_group(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read group file {path}: {exc}")
    try:
        return parse_group_file(text)
    except ValueError as exc:
        raise UsageError(f"malformed group file {path}: {exc}")


class UsageError(Exception):
    pass


def _parse_gen_list(g, spec: str):
    """Generator-index list like '0,2' -> subgroup closure."""
    if spec.strip() in ("", "-"):
        return g.subgroup([g.identity])
    try:
        idxs = [int(x) for x in spec.split(",")]
        rows = [g.gen_idx[i] for i in idxs]
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad generator-index list {spec!r}: {exc}")
    return subgroup_closure(g, rows)


def _parse_series(g, spec: str):
    """Series spec: terms joined by '/', each a generator-index list."""
    terms = [g.subgroup([g.identity])]
    for part in spec.split("/"):
        terms.append(_parse_gen_list(g, part))
    if terms[-1].order != g.order:
        terms.append(g.whole)
    return terms


def _series_pi(terms):
    first = next((t for t in terms if t.order > 1), None)
    ambient = terms[-1]
    all_primes = _primes(ambient.order)
    if first is None:
        return frozenset(all_primes)
    return frozenset(all_primes - _primes(first.order))


def _primes(n):
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_chartable(args) -> int:
    from chartower.chartable import character_table
    g = _load_group(args.file)
    table = character_table(g.whole)
    table.verify()
    print(f"group of order {g.order} with {len(table)} irreducible characters")
    print("degrees:", " ".join(map(str, table.degrees)))
    for i, chi in enumerate(table):
        print(f"chi[{i}] " + " | ".join(v.serialize() for v in chi.values))
    return 0


def cmd_towers(args) -> int:
    from chartower.towers import NormalSeries, enumerate_towers, \
        towers_up_to_conjugacy
    g = _load_group(args.file)
    terms = _parse_series(g, args.series)
    ser = NormalSeries(g.whole, terms, _series_pi(terms))
    towers = enumerate_towers(ser)
    classes = towers_up_to_conjugacy(ser)
    print(f"series orders: {' <| '.join(str(t.order) for t in terms)}")
    print(f"towers: {len(towers)} in {len(classes)} conjugacy classes")
    for i, cls in enumerate(classes):
        t = cls[0]
        degs = ",".join(str(c.degree_int()) for c in t.chars)
        print(f"class[{i}] size={len(cls)} degrees=({degs})")
    return 0


def cmd_triangle(args) -> int:
    from chartower.towers import (NormalSeries, enumerate_towers,
                                  triangular_of_tower, derived_cell)
    g = _load_group(args.file)
    terms = _parse_series(g, args.series)
    ser = NormalSeries(g.whole, terms, _series_pi(terms))
    towers = enumerate_towers(ser)
    if not 0 <= args.tower < len(towers):
        raise UsageError(f"tower index out of range 0..{len(towers)-1}")
    tri = triangular_of_tower(towers[args.tower], allow_deep=True)
    print(tri)
    print("q-cells (rows i, columns j): order/degree of (Q_2i-1,2j, beta)")
    for i in range(1, tri.l + 1):
        cells = []
        for j in range(i - 1, tri.k + 1):
            grp, chr_ = derived_cell(tri, "q", i, j)
            cells.append(f"{grp.order}/{chr_.degree_int()}")
        print(f"  i={i}: " + "  ".join(cells))
    print("p-cells (rows r, columns s): order/degree of (P_2r,2s+1, alpha)")
    for r in range(1, tri.k + 1):
        cells = []
        for s in range(r - 1, tri.l):
            grp, chr_ = derived_cell(tri, "p", r, s)
            cells.append(f"{grp.order}/{chr_.degree_int()}")
        print(f"  r={r}: " + "  ".join(cells))
    return 0


def cmd_limit(args) -> int:
    from chartower.chartable import character_table, trivial_character
    from chartower.group import is_nilpotent
    from chartower.limits import LinearQuintuple, faithful, linear_limit
    g = _load_group(args.file)
    N = _parse_gen_list(g, args.N)
    from chartower.group import is_normal
    if not is_normal(N, g.whole):
        raise UsageError("N is not normal in G")
    table = character_table(N)
    if not 0 <= args.psi < len(table):
        raise UsageError(f"psi index out of range 0..{len(table)-1}")
    psi = table[args.psi]
    triv = g.subgroup([g.identity])
    q = LinearQuintuple(g.whole, triv, trivial_character(triv), N, psi)
    step = 0
    while True:
        from chartower.limits import proper_reductions, reduce_quintuple
        steps = proper_reductions(q)
        if not steps:
            break
        pick = steps[0]
        q = reduce_quintuple(q, pick.Aprime, pick.phiprime)
        step += 1
        hid = abs(hash(pick.phiprime.values)) % 10 ** 8
        print(f"step {step}: A' order={pick.Aprime.order} phi' id={hid:08d} "
              f"-> |G|={q.G.order}")
    fl = faithful(q)
    flq = fl.quintuple
    print(f"limit: {q.G.order},{q.A.order},{q.N.order}, "
          f"faithful-kernel={fl.kernel.order}, "
          f"N-nilpotent={is_nilpotent(flq.N)}")
    return 0


def cmd_glauberman(args) -> int:
    from chartower.correspond import make_action, a_correspondence_map
    g = _load_group(args.file)
    A = _parse_gen_list(g, args.actor)
    B = _parse_gen_list(g, args.acted)
    H = _parse_gen_list(g, args.carrier) if args.carrier else B
    act = make_action(g.whole, A, B, H)
    m = a_correspondence_map(act)
    print(f"|A|={A.order} |B|={B.order} |H|={H.order}; "
          f"{len(m['bwd'])} corresponding pairs")
    for psi, out in sorted(m["fwd"].values(), key=lambda t: t[0].serialize()):
        print(f"  deg {psi.degree_int()} -> deg {out.degree_int()} "
              f"on |{out.sub.order}|")
    return 0


def cmd_monomial(args) -> int:
    from chartower.chartable import character_table
    from chartower.limits import monomial_witnesses
    g = _load_group(args.file)
    table = character_table(g.whole)
    wit = monomial_witnesses(g.whole)
    bad = [i for i, chi in enumerate(table) if chi.values not in wit]
    if not bad:
        print(f"all {len(table)} irreducibles monomial")
        return 0
    print(f"{len(bad)} of {len(table)} irreducibles NOT monomial: "
          + " ".join(map(str, bad)))
    return 1


def cmd_verify_main(args) -> int:
    from chartower.verify import verify_main
    reports = []
    if args.catalog:
        from chartower.catalog import catalog_entries
        for e in catalog_entries():
            if e.order > args.max_order:
                continue
            if e.excluded:
                if not args.json:
                    print(f"{e.name}: excluded ({e.excluded})")
                continue
            g = e.group()
            reports.append(verify_main(g.whole, e.name))
            if not args.json:
                for ln in reports[-1].summary_lines():
                    print(ln)
    else:
        if not args.file:
            raise UsageError("verify-main needs a group file or --catalog")
        g = _load_group(args.file)
        reports.append(verify_main(g.whole, Path(args.file).stem))
        if not args.json:
            for ln in reports[-1].summary_lines():
                print(ln)
    ok = all(r.passed for r in reports)
    if args.json:
        blob = {"pass": ok, "groups": [r.as_dict() for r in reports]}
        print(json.dumps(blob, sort_keys=True))
    else:
        print(f"verify-main: {'PASS' if ok else 'FAIL'} "
              f"({len(reports)} groups)")
    return 0 if ok else 1


def cmd_symplectic(args) -> int:
    from chartower.symplectic import SympModule, classify
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read module file: {exc}")
    mod = SympModule.parse(text)
    out = classify(mod)
    print(f"p={mod.p} dim={mod.dim} actors={len(mod.actors)} "
          f"kind={out['kind']}")
    if out["witness"] is not None:
        print("witness basis rows:")
        for row in out["witness"]:
            print("  " + " ".join(str(int(x)) for x in row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chartower",
        description="exact character-theory engine for odd-order groups")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("chartable", help="print the character table")
    p.add_argument("file")
    p.set_defaults(func=cmd_chartable)

    p = sub.add_parser("towers", help="enumerate character towers")
    p.add_argument("file")
    p.add_argument("--series", required=True,
                   help="terms joined by '/', each a comma-separated "
                        "generator-index list")
    p.set_defaults(func=cmd_towers)

    p = sub.add_parser("triangle", help="triangular set and its cell tables")
    p.add_argument("file")
    p.add_argument("--series", required=True)
    p.add_argument("--tower", type=int, default=0)
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("limit", help="canonical linear limit of (G,1,1,N,psi)")
    p.add_argument("file")
    p.add_argument("--N", required=True, help="generator-index list for N")
    p.add_argument("--psi", type=int, required=True)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("glauberman", help="A-correspondence tables")
    p.add_argument("file")
    p.add_argument("--actor", required=True)
    p.add_argument("--acted", required=True)
    p.add_argument("--carrier", default=None)
    p.set_defaults(func=cmd_glauberman)

    p = sub.add_parser("monomial", help="monomiality of all irreducibles")
    p.add_argument("file")
    p.set_defaults(func=cmd_monomial)

    p = sub.add_parser("verify-main", help="run the main-theorem harness")
    p.add_argument("file", nargs="?")
    p.add_argument("--catalog", action="store_true")
    p.add_argument("--max-order", type=int, default=375)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_main)

    p = sub.add_parser("symplectic", help="classify a symplectic module dump")
    p.add_argument("file")
    p.set_defaults(func=cmd_symplectic)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, ValueError) as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
