"""Closed-form orbit-count checks for the small Burnside power operations.

Each entry compares the computed decomposition of X^m against a polynomial
formula in the multiplicities, over the coefficient grid 0..4.
"""

from __future__ import annotations

import itertools
from math import comb

from .burnside import BurnsideTheory, power_vector, source_subgroup_classes
from .groups import Subgroup, cyclic_group, symmetric_group
from .gsets import power_context


def _class_names_c2s2(ctx, mod):
    names = {}
    for i, C in enumerate(mod.classes):
        if C.order == 1:
            names[i] = "G"
        elif C.order == 4:
            names[i] = "1"
        else:
            gp = {int(ctx.g_part[x]) for x in C.indices}
            sp = {int(ctx.s_part[x]) for x in C.indices}
            names[i] = "G/C2" if sp == {0} else ("G/S2" if gp == {0} else "G/D")
    return names


def _class_names_c3s2(ctx, mod):
    names = {}
    for i, C in enumerate(mod.classes):
        names[i] = {1: "G", 3: "G/C3", 2: "G/S2", 6: "1"}[C.order]
    return names


def _class_names_s3s2(ctx, mod):
    names = {}
    for i, C in enumerate(mod.classes):
        gp = Subgroup(ctx.G, tuple(sorted({int(ctx.g_part[x]) for x in C.indices})))
        sp = {int(ctx.s_part[x]) for x in C.indices}
        o = C.order
        sigma_in = any(int(ctx.g_part[x]) == 0 and int(ctx.s_part[x]) != 0
                       for x in C.indices)
        if o == 1:
            names[i] = "G"
        elif o == 12:
            names[i] = "1"
        elif o == gp.order and len(sp) == 1:
            names[i] = {2: "G/C2", 3: "G/C3", 6: "G/S3"}[o]
        elif gp.order == 1:
            names[i] = "G/S2"
        elif sigma_in:
            names[i] = {4: "G/C2xS2", 6: "G/C3xS2", 12: "G/S3xS2"}[o]
        else:
            names[i] = {2: "G/D", 6: "G/DC3"}[o]
    return names


def _class_names_c3s3(ctx, mod):
    names = {}
    for i, C in enumerate(mod.classes):
        gp = {int(ctx.g_part[x]) for x in C.indices}
        o = C.order
        if o == 1:
            names[i] = "G"
        elif o == 18:
            names[i] = "1"
        elif o == 2:
            names[i] = "G/C2"
        elif o == 3:
            sp = {int(ctx.s_part[x]) for x in C.indices}
            if len(sp) == 1:
                names[i] = "G/C3"
            elif len(gp) == 1:
                names[i] = "G/C3R"
            else:
                names[i] = "G/Delta"
        elif o == 6:
            names[i] = "G/C3xC2" if len(gp) == 3 else "G/S3"
        else:
            names[i] = "G/C3xC3R"
    return names


def _run_grid(G, m, namer, formula, grid=range(5), method="marks"):
    ctx = power_context(G, m)
    th = BurnsideTheory(ctx.W, ctx.lattice)
    full = G.full_subgroup()
    mod = th.module(ctx.level_subgroup(full))
    names = namer(ctx, mod)
    src = source_subgroup_classes(ctx, th, full)
    nvars = len(src)
    for coeffs in itertools.product(grid, repeat=nvars):
        v = power_vector(ctx, th, full, list(coeffs), method=method)
        got = {}
        for i, c in enumerate(v):
            got[names[i]] = got.get(names[i], 0) + c
        want = formula(*coeffs)
        for key in set(got) | set(want):
            if got.get(key, 0) != want.get(key, 0):
                return False, (coeffs, got, want)
    return True, None


def p2_e(grid=range(5)):
    """P_2 on the trivial group: k points squared."""
    def formula(k):
        return {"G": (k * k - k) // 2, "1": k}

    def namer(ctx, mod):
        return {i: ("G" if C.order == 1 else "1") for i, C in enumerate(mod.classes)}

    return _run_grid(cyclic_group(1), 2, namer, formula, grid)


def p2_c2(grid=range(5)):
    def formula(n, k):
        return {"G": n * n - n + k * n, "G/C2": (k * k - k) // 2,
                "G/S2": n, "G/D": n, "1": k}
    return _run_grid(cyclic_group(2), 2, _class_names_c2s2, formula, grid)


def p2_c3(grid=range(5)):
    def formula(n, k):
        return {"G": n * k + (3 * n * n - n) // 2, "G/C3": (k * k - k) // 2,
                "G/S2": n, "1": k}
    return _run_grid(cyclic_group(3), 2, _class_names_c3s2, formula, grid)


def p2_s3(grid=range(3)):
    def formula(n, j, i, k):
        # source basis order: stabilizer e, C2, C3, S3 -> orbits G, G/C2, G/C3, 1
        return {"G": 3 * n * n - 2 * n + 2 * n * i + 3 * n * j + n * k + i * j
                     + (j * j - j) // 2,
                "G/C3": i * i - i + i * k,
                "G/C2": (j * j - j) // 2 + j * k,
                "G/S3": (k * k - k) // 2,
                "G/S2": n,
                "G/C3xS2": i,
                "G/C2xS2": j,
                "G/D": 3 * n + j,
                "G/DC3": i,
                "1": k}
    return _run_grid(symmetric_group(3), 2, _class_names_s3s2, formula, grid)


def p3_e(grid=range(5)):
    def formula(k):
        return {"G": comb(k, 3), "G/C2": k * (k - 1), "1": k}

    def namer(ctx, mod):
        return {i: {1: "G", 2: "G/C2", 3: "G/C3R", 6: "1"}[C.order]
                for i, C in enumerate(mod.classes)}

    return _run_grid(cyclic_group(1), 3, namer, formula, grid)


def p3_c3(grid=range(5)):
    def formula(n, k):
        return {"G": n * comb(k, 2) + k * (3 * n * n - n) // 2
                     + 6 * comb(n, 2) + 9 * comb(n, 3),
                "G/C3": comb(k, 3),
                "G/S3": n,
                "G/C3xC2": k * (k - 1),
                "G/C2": 2 * n * k + 2 * n + 6 * comb(n, 2),
                "G/Delta": n,
                "1": k}
    return _run_grid(cyclic_group(3), 3, _class_names_c3s3, formula, grid)


def burnside_formula_checks(grid=range(5)):
    """All closed-form checks; returns (name, passed) pairs."""
    out = []
    for name, fn, g in (("P2/e", p2_e, grid), ("P2/C2", p2_c2, grid),
                        ("P2/C3", p2_c3, grid), ("P2/S3", p2_s3, range(3)),
                        ("P3/e", p3_e, grid), ("P3/C3", p3_c3, grid)):
        good, witness = fn(g)
        out.append((name, good))
    return out
