"""Command-line front end.

Exit codes: 0 success, 2 verification failure, 3 unsupported configuration,
4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .burnside import BurnsideTheory, ordinary_itr, power_vector, source_subgroup_classes
from .chartab import MissingTable, TableProvider, element_classes
from .groups import CapExceeded, Group, SubgroupLattice, parse_group
from .gsets import power_context, transitive_gset, j_generator_subgroups, \
    transitive_stabilizer_survey
from .height2 import (DEFAULT_CHOICE, PairClassData, height2_power_fixture,
                      induction_diagram_commutes, restriction_diagram_commutes)
from .reports import PipelineReport, burnside_labels, fmt_matrix, source_orbit_labels

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_UNSUPPORTED = 3
EXIT_CAP = 4


def main(argv=None):
    parser = argparse.ArgumentParser(prog="greenops",
                                     description="exact power operations on "
                                                 "Mackey and Green functors")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("pipeline", help="run the power-operation pipeline")
    p.add_argument("--group", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--theory", choices=["burnside", "ru", "cl"], required=True)
    p.add_argument("--ideal", choices=["none", "itr", "j"], default="j")
    p.add_argument("--format", choices=["json", "markdown"], default="markdown")
    p.add_argument("--out", default=None)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["mackey-axioms", "stab-surjectivity",
                                     "j-closure", "green-map", "power-formulas",
                                     "ru-examples", "cl-examples"])
    v.add_argument("--group", default=None)
    v.add_argument("--m", type=int, default=None)
    v.add_argument("--theory", choices=["burnside", "ru", "cl"], default=None)
    v.add_argument("--ideal", choices=["itr", "j"], default="j")
    v.add_argument("--max-order", type=int, default=8)
    v.add_argument("--max-m", type=int, default=3)

    r = sub.add_parser("report-examples", help="regenerate the golden files")
    r.add_argument("--out", required=True)

    g = sub.add_parser("gset-dump", help="orbit decomposition as JSON")
    g.add_argument("--group", required=True)
    g.add_argument("--subgroup", default=None,
                   help="generators in cycle notation, e.g. '(0 1)(2 3)'")
    g.add_argument("--power", type=int, default=1)

    b1 = sub.add_parser("burnside-marks", help="table of marks as CSV")
    b1.add_argument("group")

    b2 = sub.add_parser("burnside-pow", help="power operation on A(G)")
    b2.add_argument("group")
    b2.add_argument("m", type=int)
    b2.add_argument("coeffs", help="comma-separated, in table-of-marks basis order")

    c = sub.add_parser("charfun-table", help="validate and print a character table")
    c.add_argument("group")

    h = sub.add_parser("height2", help="print the order-2 height-2 tables")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except MissingTable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def _dispatch(args):
    if args.cmd == "pipeline":
        return cmd_pipeline(args)
    if args.cmd == "verify":
        return cmd_verify(args)
    if args.cmd == "report-examples":
        return cmd_report_examples(args.out)
    if args.cmd == "gset-dump":
        return cmd_gset_dump(args)
    if args.cmd == "burnside-marks":
        return cmd_burnside_marks(args.group)
    if args.cmd == "burnside-pow":
        return cmd_burnside_pow(args.group, args.m, args.coeffs)
    if args.cmd == "charfun-table":
        return cmd_charfun_table(args.group)
    if args.cmd == "height2":
        return cmd_height2()
    raise ValueError(args.cmd)


def cmd_pipeline(args):
    G = parse_group(args.group)
    rep = PipelineReport(G, args.m, args.theory, args.ideal)
    text = rep.to_json() if args.format == "json" else rep.to_markdown()
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        ext = "json" if args.format == "json" else "md"
        path = os.path.join(args.out,
                            f"{args.theory}_{args.group}_m{args.m}_{args.ideal}.{ext}")
        with open(path, "w") as fh:
            fh.write(text)
        print(path)
    else:
        print(text)
    return EXIT_OK if rep.verification.ok or args.ideal != "j" else EXIT_VERIFY


def _verify_groups(max_order):
    names = ["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8",
             "C2xC4", "C2xC2xC2", "D8", "C9", "C3xC3", "C10", "C11", "C12",
             "C2xC6", "S3xC2"]
    out = []
    for n in names:
        G = parse_group(n)
        if G.order <= max_order:
            out.append(G)
    return out


def cmd_verify(args):
    ok = True
    if args.suite == "stab-surjectivity":
        for G in _verify_groups(args.max_order):
            for m in range(2, args.max_m + 1):
                sv = transitive_stabilizer_survey(G, m)
                gl = j_generator_subgroups(G, G.full_subgroup(), m)
                jw = gl.wreath_class_keys(power_context(G, m))
                good = sv == jw
                ok &= good
                print(f"stab-surjectivity {G.name} m={m}: "
                      f"{'pass' if good else 'FAIL'} ({len(sv)} classes)")
    elif args.suite in ("j-closure", "green-map", "mackey-axioms"):
        groups = [parse_group(args.group)] if args.group else _verify_groups(args.max_order)
        ms = [args.m] if args.m else list(range(2, args.max_m + 1))
        theories = [args.theory] if args.theory else ["burnside", "ru", "cl"]
        for G in groups:
            for m in ms:
                for theory in theories:
                    try:
                        rep = PipelineReport(G, m, theory, args.ideal)
                    except MissingTable:
                        print(f"{args.suite} {G.name} m={m} {theory}: skipped (no table)")
                        continue
                    if args.suite == "mackey-axioms":
                        from .mackey import verify_green_axioms
                        r = verify_green_axioms(rep.up)
                        good = r.ok
                    else:
                        good = rep.verification.ok
                    ok &= good
                    print(f"{args.suite} {G.name} m={m} {theory} ideal={args.ideal}: "
                          f"{'pass' if good else 'FAIL'}")
    elif args.suite == "power-formulas":
        from .formulas import burnside_formula_checks
        for name, good in burnside_formula_checks():
            ok &= good
            print(f"power-formulas {name}: {'pass' if good else 'FAIL'}")
    elif args.suite == "ru-examples":
        for spec, m in (("C2", 2), ("S3", 2), ("S3", 3)):
            rep = PipelineReport(parse_group(spec), m, "ru", "j")
            good = rep.verification.ok
            ok &= good
            print(f"ru-examples RU {spec} m={m}: {'pass' if good else 'FAIL'}")
    elif args.suite == "cl-examples":
        for spec, m in (("C2", 2), ("S3", 2), ("S3", 3)):
            rep = PipelineReport(parse_group(spec), m, "cl", "j")
            good = rep.verification.ok
            ok &= good
            print(f"cl-examples Cl {spec} m={m}: {'pass' if good else 'FAIL'}")
        good = restriction_diagram_commutes([5, 7, 11, 13]) and \
            induction_diagram_commutes(3)
        ok &= good
        print(f"cl-examples height-2 diagrams: {'pass' if good else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


EXAMPLE_REPORTS = [
    ("C2", 2, "burnside", "itr"),
    ("C2", 2, "burnside", "j"),
    ("S3", 2, "burnside", "itr"),
    ("S3", 2, "burnside", "j"),
    ("C3", 3, "burnside", "j"),
    ("C2", 2, "ru", "j"),
    ("S3", 2, "ru", "j"),
    ("S3", 3, "ru", "j"),
    ("S3", 2, "cl", "j"),
    ("S3", 3, "cl", "j"),
    ("C2", 2, "cl", "j"),
]


def cmd_report_examples(outdir):
    os.makedirs(outdir, exist_ok=True)
    for spec, m, theory, ideal in EXAMPLE_REPORTS:
        rep = PipelineReport(parse_group(spec), m, theory, ideal)
        base = f"{theory}_{spec}_m{m}_{ideal}"
        with open(os.path.join(outdir, base + ".md"), "w") as fh:
            fh.write(rep.to_markdown())
        with open(os.path.join(outdir, base + ".json"), "w") as fh:
            fh.write(rep.to_json())
    with open(os.path.join(outdir, "height2_Z2_p2_m2.md"), "w") as fh:
        fh.write(height2_markdown())
    with open(os.path.join(outdir, "ordinary_itr.md"), "w") as fh:
        fh.write(ordinary_itr_markdown())
    print(outdir)
    return EXIT_OK


def height2_markdown():
    rows = [(0, 0), (0, 1), (1, 0), (1, 1)]
    slot_names = {(0, 0): "a", (0, 1): "b", (1, 0): "c", (1, 1): "d"}
    L = ["# height-2 power operation for the order-2 group (p = 2, m = 2)", "",
         "input (a, b, c, d) on pair classes (0,0), (0,1), (1,0), (1,1)", "",
         "| row\\col | (e,e) | (e,s) | (s,e) | (s,s) |",
         "|---|---|---|---|---|"]
    for r in rows:
        cells = []
        for s in rows:
            if s == (0, 0):
                cells.append(f"{slot_names[r]}^2")
            elif r == s or r == (0, 0):
                cells.append("a")
            else:
                cells.append(DEFAULT_CHOICE[(r, s)])
        L.append("| " + str(r) + " | " + " | ".join(cells) + " |")
    L += ["", "restriction and induction diagrams commute after collapsing the",
          "first column and the diagonal; see the verification suite.", ""]
    return "\n".join(L)


def ordinary_itr_markdown():
    L = ["# partition-transfer ideal of the integers", "",
         "| m | generator |", "|---|---|"]
    for m in (2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 25, 27, 30):
        L.append(f"| {m} | ({ordinary_itr(m)}) |")
    L.append("")
    return "\n".join(L)


def cmd_gset_dump(args):
    G = parse_group(args.group)
    if args.subgroup:
        from .groups import perm_from_cycles
        import re
        cycles = [tuple(int(x) for x in c.split())
                  for c in re.findall(r"\(([^()]*)\)", args.subgroup)]
        p = perm_from_cycles(G.degree, cycles)
        H = G.subgroup_generated([G.index_of(p)])
    else:
        H = G.trivial_subgroup()
    if args.power == 1:
        X = transitive_gset(G, H)
        lat = SubgroupLattice(G)
        th = BurnsideTheory(G, lat)
        vec = th.decompose_gset_over(G.full_subgroup(), X)
        mod = th.module(G.full_subgroup())
        orbits = [{"stabilizer": f"order{mod.classes[i].order}.{i}", "length":
                   G.order // mod.classes[i].order, "count": c}
                  for i, c in enumerate(vec) if c]
    else:
        ctx = power_context(G, args.power)
        th = BurnsideTheory(ctx.W, ctx.lattice)
        vec = power_vector(ctx, th, G.full_subgroup(),
                           _one_hot_for(ctx, th, G, H))
        mod = th.module(ctx.level_subgroup(G.full_subgroup()))
        labels = burnside_labels(ctx, th, ctx.level_subgroup(G.full_subgroup()))
        orbits = [{"stabilizer": labels[i],
                   "length": ctx.W.order // mod.classes[i].order, "count": c}
                  for i, c in enumerate(vec) if c]
    print(json.dumps({"orbits": orbits}, indent=1, sort_keys=True))
    return EXIT_OK


def _one_hot_for(ctx, th, G, H):
    src = source_subgroup_classes(ctx, th, G.full_subgroup())
    vec = [0] * len(src)
    for i, K in enumerate(src):
        if K.order == H.order and _conjugate_in(G, K, H):
            vec[i] = 1
            return vec
    raise ValueError("subgroup not found in lattice")


def _conjugate_in(G, A, B):
    for g in range(G.order):
        if A.conjugate(g).mask == B.mask:
            return True
    return False


def cmd_burnside_marks(spec):
    """Rows are basis orbits, columns subgroup classes: entry |(G/A)^X|."""
    G = parse_group(spec)
    lat = SubgroupLattice(G)
    th = BurnsideTheory(G, lat)
    mod = th.module(G.full_subgroup())
    labels = source_orbit_labels(G, G.full_subgroup(), mod.classes)
    print("," + ",".join(labels))
    for ai in range(mod.rank):
        row = mod.mark_vector(ai)
        print(labels[ai] + "," + ",".join(str(x) for x in row))
    return EXIT_OK


def cmd_burnside_pow(spec, m, coeffs):
    G = parse_group(spec)
    ctx = power_context(G, m)
    th = BurnsideTheory(ctx.W, ctx.lattice)
    xvec = [int(c) for c in coeffs.split(",")]
    full = G.full_subgroup()
    src = source_subgroup_classes(ctx, th, full)
    if len(xvec) != len(src):
        raise ValueError(f"need {len(src)} coefficients for A({G.name})")
    out = power_vector(ctx, th, full, xvec)
    labels = burnside_labels(ctx, th, ctx.level_subgroup(full))
    terms = [f"{c}*{labels[i]}" for i, c in enumerate(out) if c]
    print(" + ".join(terms) if terms else "0")
    return EXIT_OK


def cmd_charfun_table(spec):
    G = parse_group(spec)
    prov = TableProvider(G)
    tab = prov.table(G.full_subgroup())
    tab.validate()
    classes = ", ".join(f"{len(c)}x(order {G.element_order(c[0])})"
                        for c in tab.classes)
    print(f"group {G.name}: {tab.n_classes} classes: {classes}")
    for name, row in zip(tab.names, tab.irr):
        print(f"{name}: " + " ".join(v.text() for v in row))
    print("orthogonality: pass")
    return EXIT_OK


def cmd_height2():
    print(height2_markdown())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
