"""Deterministic reports and golden files for the worked examples.

Quotients of the class-function and representation-ring functors are
presented through the long-cycle evaluation isomorphism (the quotient by the
partition transfers is identified with the theory at the plain group), which
is how the four-corner diagrams print their matrices. Burnside levels stay in
orbit coordinates with fixture labels.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .burnside import BurnsideTheory, power_vector, sigma_fixed_matrix
from .charfun import (ClTheory, RUTheory, adams_psi, power_vector_cl,
                      power_vector_ru)
from .cyclotomic import Cyclo
from .groups import Group, Subgroup, SubgroupLattice
from .gsets import PowerContext, power_context
from .linalg import IntLattice, FieldLattice, mat_vec, smith_normal_form
from .mackey import (GreenFunctor, LevelQuotient, MackeyIdeal,
                     PowerOperationInstance, QuotientFunctor, apply_matrix,
                     induce_up, itr_ideal, j_ideal, quotient, restrict_down,
                     verify_green_map, _transpose)


# -- long-cycle evaluation -------------------------------------------------------


def evaluation_matrix(theory, ctx: PowerContext, H: Subgroup):
    """The map R(H x S_m) -> R(H x e) evaluating at the long cycle.

    For class functions this reads off the values f(h, sigma_m); for
    representation rings it is 1 (x) ev_sigma. Its kernel is checked to be
    exactly the partition-transfer ideal, realizing the identification of the
    quotient with the theory at H.
    """
    V = ctx.level_subgroup(H)
    down = ctx.lift_G(H)
    sigma = ctx.long_cycle_index()
    if isinstance(theory, RUTheory):
        modV = theory.module(V)
        modH = theory.module(down)
        cols = []
        for chi in modV.table.irr:
            vals = [chi[modV.table.class_of(
                ctx.pair_index[(int(ctx.g_part[cls[0]]), sigma)])]
                for cls in modH.table.classes]
            cols.append(modH.table.decompose(vals))
        return _transpose(cols)
    if isinstance(theory, ClTheory):
        modV = theory.module(V)
        modH = theory.module(down)
        M = [[Fraction(0)] * modV.rank for _ in range(modH.rank)]
        for hi in range(modH.rank):
            h = modH.classes[hi][0]
            w = ctx.pair_index[(int(ctx.g_part[h]), sigma)]
            M[hi][modV.class_of(w)] = Fraction(1)
        return M
    raise TypeError("evaluation presentation applies to cl and ru theories")


def integer_kernel(M, ncols):
    """Basis of the integer kernel of the column action x -> M x."""
    if not M:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    d, U, V = smith_normal_form(M)
    out = []
    for j in range(ncols):
        dj = d[j] if j < len(d) else 0
        if dj == 0:
            out.append([V[i][j] for i in range(ncols)])
    return out


def check_evaluation_iso(theory, ctx, H, itr_lattice):
    """ker(ev) == I_Tr and ev surjective, per level."""
    E = evaluation_matrix(theory, ctx, H)
    modV_rank = len(E[0]) if E else 0
    if isinstance(theory, RUTheory):
        ker = IntLattice(modV_rank, integer_kernel(E, modV_rank))
        same = ker.rows == itr_lattice.rows
        img = IntLattice(len(E), [apply_matrix(E, [int(k == j) for k in range(modV_rank)])
                                  for j in range(modV_rank)])
        onto = img.rank == len(E) and all(
            [int(k == i) for k in range(len(E))] in img for i in range(len(E)))
    else:
        ker = FieldLattice(modV_rank, Fraction(0), Fraction(1))
        # field kernel: columns reduce; use rational nullspace via RREF of E
        ker = _field_kernel(E, modV_rank)
        same = (ker.rank == itr_lattice.rank
                and all(r in itr_lattice for r in ker.rows))
        onto = _field_rank(E) == len(E)
    return same and onto


def _field_kernel(M, ncols):
    rows = [[Fraction(x) for x in row] for row in M]
    lat = FieldLattice(ncols, Fraction(0), Fraction(1))
    # RREF of M, then free columns give kernel vectors
    pivots = []
    r = 0
    work = [list(row) for row in rows]
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    for j in free:
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for ri, c in enumerate(pivots):
            vec[c] = -work[ri][j]
        lat.add(vec)
    return lat


def _field_rank(M):
    if not M:
        return 0
    lat = FieldLattice(len(M[0]), Fraction(0), Fraction(1))
    for row in M:
        lat.add([Fraction(x) for x in row])
    return lat.rank


class EvalPresentation:
    """Quotient levels of cl/ru pipelines in down-level coordinates."""

    def __init__(self, theory, ctx, base_lattice, ideal: MackeyIdeal,
                 down: GreenFunctor):
        self.theory = theory
        self.ctx = ctx
        self.base_lattice = base_lattice
        self.ideal = ideal
        self.down = down
        self.ev = []
        self.levels = []
        itr = itr_ideal(ideal.functor, ctx)
        for ci in range(ideal.functor.n_levels):
            H = base_lattice.classes[ci].rep
            assert check_evaluation_iso(theory, ctx, H, itr.lattices[ci]), \
                "long-cycle evaluation is not the partition-transfer quotient"
            E = evaluation_matrix(theory, ctx, H)
            self.ev.append(E)
            rank_h = down.level(ci).rank
            if theory.is_integer:
                lat = IntLattice(rank_h)
            else:
                lat = FieldLattice(rank_h, Fraction(0), Fraction(1))
            for v in ideal.lattices[ci].basis():
                lat.add(apply_matrix(E, v))
            self.levels.append(LevelQuotient(rank_h, lat,
                                             down.level(ci).basis_names,
                                             integer=theory.is_integer))

    def project_big(self, ci, vec):
        """Quotient coordinates of an element of the induced level."""
        return self.levels[ci].project(apply_matrix(self.ev[ci], vec))

    def induced_from_big(self, M_big, src, dst):
        """Transport a map of induced levels to evaluation coordinates."""
        qs = self.levels[src]
        cols = []
        for lift in qs.lift:
            big = self._section(src, lift)
            cols.append(self.project_big(dst, apply_matrix(M_big, big)))
        return _transpose(cols)

    def _section(self, ci, down_vec):
        """Preimage under ev of a down-level vector.

        Evaluation restricted to the columns pairing each character with the
        trivial S_m factor is the identity, so those columns give an exact
        integral section.
        """
        E = self.ev[ci]
        rank_h = len(E)
        ncols = len(E[0])
        key = f"_section_cols_{ci}"
        cols = getattr(self, key, None)
        if cols is None:
            cols = []
            for i in range(rank_h):
                unit = [int(k == i) for k in range(rank_h)]
                j = next(jj for jj in range(ncols)
                         if all(E[r][jj] == unit[r] for r in range(rank_h)))
                cols.append(j)
            setattr(self, key, cols)
        x = [0 if self.theory.is_integer else Fraction(0)] * ncols
        for i, j in enumerate(cols):
            x[j] = down_vec[i]
        return x


# -- fixture labels ---------------------------------------------------------------


def subgroup_display_name(ctx: PowerContext, V: Subgroup, Lam: Subgroup,
                          counter=None, prefix="Gamma"):
    """Best-effort display name of a stabilizer class inside H x S_m."""
    W = ctx.W
    if Lam.order == 1:
        return prefix
    if Lam.mask == V.mask:
        return "1"
    g_parts = sorted({int(ctx.g_part[x]) for x in Lam.indices})
    s_parts = sorted({int(ctx.s_part[x]) for x in Lam.indices})
    ka = sum(1 for x in Lam.indices if int(ctx.s_part[x]) == 0)
    kb = sum(1 for x in Lam.indices if int(ctx.g_part[x]) == 0)
    split = (ka * kb == Lam.order)
    name = None
    if split:
        a_name = _g_subname(ctx.G, Subgroup(ctx.G, tuple(
            sorted({int(ctx.g_part[x]) for x in Lam.indices if int(ctx.s_part[x]) == 0}))))
        b_name = _s_subname(ctx, [int(ctx.s_part[x]) for x in Lam.indices
                                  if int(ctx.g_part[x]) == 0])
        pieces = [p for p in (a_name, b_name) if p]
        name = "x".join(pieces) if pieces else None
    else:
        # graph-like
        A = Subgroup(ctx.G, tuple(g_parts))
        if Lam.order == len(g_parts):   # graph of a homomorphism
            if Lam.order == 2:
                name = "D"
            elif ctx.m == 2 and Lam.order == 6:
                name = "DC3"
            elif Lam.order == 3:
                name = "Delta"
            else:
                name = f"D({_g_subname(ctx.G, A)})"
        elif Lam.order == 2 * len(g_parts) and ctx.m == 3 and len(g_parts) == 3:
            name = "DeltaC2"
    if name is None:
        if counter is not None:
            counter[0] += 1
            name = f"Lam{counter[0]}"
        else:
            name = f"o{Lam.order}"
    return f"{prefix}/{name}"


def _g_subname(G: Group, A: Subgroup):
    if A.order == 1:
        return ""
    if A.order == G.order:
        return G.name
    orders = sorted(G.element_order(x) for x in A.indices)
    if A.order == orders[-1]:
        return f"C{A.order}"
    if A.order == 4 and orders == [1, 2, 2, 2]:
        return "V4"
    if A.order == 6:
        return "S3"
    return f"U{A.order}"


def _s_subname(ctx: PowerContext, s_indices):
    k = len(set(s_indices))
    if k == 1:
        return ""
    sym = ctx.sym
    if k == sym.order:
        return f"S{ctx.m}"
    orders = sorted(sym.element_order(x) for x in set(s_indices))
    if k == orders[-1]:
        return f"C{k}^R" if ctx.m == 3 and k == 3 else f"C{k}"
    return f"T{k}"


def burnside_labels(ctx: PowerContext, theory: BurnsideTheory, V: Subgroup):
    mod = theory.module(V)
    counter = [0]
    # the ambient of a level H x S_m: "Gamma" at the top, the product name
    # (e.g. "C2xS2") below it, matching how the diagrams are written
    h_indices = sorted({int(ctx.g_part[x]) for x in V.indices})
    H = Subgroup(ctx.G, tuple(h_indices))
    if H.order == ctx.G.order:
        prefix = "Gamma"
    elif H.order == 1:
        prefix = f"S{ctx.m}"
    else:
        prefix = f"{_g_subname(ctx.G, H)}xS{ctx.m}"
    labels = [subgroup_display_name(ctx, V, Lam, counter, prefix) for Lam in mod.classes]
    return labels


def source_orbit_labels(G: Group, H: Subgroup, classes):
    """Labels of A(H): coset orbits H/K with the free orbit named after H."""
    out = []
    for K in classes:
        if K.order == H.order:
            out.append("1")
        elif K.order == 1:
            out.append(_h_name(G, H))
        else:
            out.append(f"{_h_name(G, H)}/{_g_subname(G, K)}")
    return out


def _h_name(G: Group, H: Subgroup):
    if H.order == G.order:
        return G.name
    if H.order == 1:
        return "e"
    return _g_subname(G, H) or f"H{H.order}"


def cl_class_labels(data):
    """e / tau / rho style labels for element classes."""
    P = data.V.parent
    out = []
    used = {}
    for cls in data.classes:
        o = P.element_order(cls[0])
        base = {1: "e", 2: "tau", 3: "rho", 4: "r", 6: "s6"}.get(o, f"g{o}")
        n = used.get(base, 0)
        used[base] = n + 1
        out.append(base if n == 0 else f"{base}^{n + 1}" if o == 3 else f"{base}.{n}")
    return out


def ru_char_labels(mod):
    names = list(mod.basis_names)
    if names == ["1", "L"]:
        return ["1", "s"]
    return names


# -- report generation --------------------------------------------------------------


def fmt_matrix(M):
    if not M:
        return "[]"
    return "[" + "; ".join(" ".join(_fmt_scalar(x) for x in row) for row in M) + "]"


def _fmt_scalar(x):
    if isinstance(x, Cyclo):
        return x.text()
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else str(x)
    return str(x)


class PipelineReport:
    """Everything the CLI prints for one (group, m, theory, ideal) run."""

    def __init__(self, G: Group, m: int, theory_name: str, ideal_name: str):
        self.G = G
        self.m = m
        self.theory_name = theory_name
        self.ideal_name = ideal_name
        self.ctx = power_context(G, m)
        self.base_lattice = SubgroupLattice(G)
        if theory_name == "burnside":
            self.theory = BurnsideTheory(self.ctx.W, self.ctx.lattice)
        elif theory_name == "ru":
            self.theory = RUTheory(self.ctx.W, self.ctx.lattice)
        elif theory_name == "cl":
            self.theory = ClTheory(self.ctx.W, self.ctx.lattice)
        else:
            raise ValueError(f"unsupported theory {theory_name!r}")
        self.up = induce_up(self.theory, self.ctx, self.base_lattice)
        self.down = restrict_down(self.theory, self.ctx, self.base_lattice)
        self.P = PowerOperationInstance(
            source=self.down, target=self.up, ctx=self.ctx, m=m,
            total_op=self._total_op)
        if ideal_name == "itr":
            self.ideal = itr_ideal(self.up, self.ctx)
        elif ideal_name == "j":
            self.ideal = j_ideal(self.up, self.ctx)
        elif ideal_name == "none":
            self.ideal = MackeyIdeal(self.up, [self.up.new_lattice(ci)
                                               for ci in range(self.up.n_levels)])
        else:
            raise ValueError(f"unknown ideal {ideal_name!r}")
        self.Q = quotient(self.up, self.ideal)
        self.eval_pres = None
        if theory_name in ("ru", "cl") and ideal_name in ("itr", "j"):
            self.eval_pres = EvalPresentation(self.theory, self.ctx,
                                              self.base_lattice, self.ideal,
                                              self.down)
        self.verification = verify_green_map(self.P, self.ideal)

    def _total_op(self, ci, vec):
        H = self.base_lattice.classes[ci].rep
        if self.theory_name == "burnside":
            return power_vector(self.ctx, self.theory, H, vec)
        if self.theory_name == "ru":
            return power_vector_ru(self.ctx, self.theory, H, vec)
        return power_vector_cl(self.ctx, self.theory, H, vec)

    # -- presentation helpers ------------------------------------------------

    def level_name(self, ci):
        H = self.base_lattice.classes[ci].rep
        return f"[{_h_name(self.G, H)}]"

    def source_basis(self, ci):
        H = self.base_lattice.classes[ci].rep
        mod = self.down.level(ci)
        if self.theory_name == "burnside":
            from .burnside import source_subgroup_classes
            return source_orbit_labels(self.G, H,
                                       source_subgroup_classes(self.ctx, self.theory, H))
        if self.theory_name == "ru":
            return ru_char_labels(mod)
        return cl_class_labels(mod)

    def quotient_presentation(self, ci):
        if self.eval_pres is not None:
            return self.eval_pres.levels[ci].presentation_with_names(self.source_basis(ci))
        q = self.Q.levels[ci]
        if self.theory_name == "burnside":
            labels = burnside_labels(self.ctx, self.theory,
                                     self.ctx.level_subgroup(self.base_lattice.classes[ci].rep))
            return q.presentation_with_names(labels)
        return q.presentation()

    def power_matrix(self, ci):
        rank = self.down.level(ci).rank
        cols = []
        for i in range(rank):
            e_i = [int(k == i) for k in range(rank)]
            big = self.P.power(ci, e_i)
            if self.eval_pres is not None:
                cols.append(self.eval_pres.project_big(ci, big))
            else:
                cols.append(self.Q.project(ci, big))
        return _transpose(cols)

    def quotient_res(self, hi, ki):
        if self.eval_pres is not None:
            return self.eval_pres.induced_from_big(self.up.res_pair(hi, ki), ki, hi)
        return self.Q.res_pair(hi, ki)

    def quotient_tr(self, hi, ki):
        if self.eval_pres is not None:
            return self.eval_pres.induced_from_big(self.up.tr_pair(hi, ki), hi, ki)
        return self.Q.tr_pair(hi, ki)

    def source_res(self, hi, ki):
        return self.down.res_pair(hi, ki)

    def source_tr(self, hi, ki):
        return self.down.tr_pair(hi, ki)

    # -- output -----------------------------------------------------------------

    def to_markdown(self):
        L = []
        L.append(f"# {self.theory_name} power operation: group {self.G.name}, "
                 f"m = {self.m}, ideal = {self.ideal_name}")
        L.append("")
        L.append("## Source levels")
        for ci in range(self.down.n_levels):
            L.append(f"- {self.level_name(ci)}: {{{', '.join(self.source_basis(ci))}}}")
        L.append("")
        L.append("## Quotient levels")
        for ci in range(self.down.n_levels):
            parts = self.quotient_presentation(ci)
            disp = " + ".join(f"{ring}{{{lbl}}}" for ring, lbl in parts) or "0"
            L.append(f"- {self.level_name(ci)}: {disp}")
        L.append("")
        L.append("## Structure maps (source | quotient)")
        for hi, ki in self.down.subconj_pairs():
            L.append(f"- res {self.level_name(ki)} -> {self.level_name(hi)}: "
                     f"{fmt_matrix(self.source_res(hi, ki))} | "
                     f"{fmt_matrix(self.quotient_res(hi, ki))}")
            L.append(f"- tr  {self.level_name(hi)} -> {self.level_name(ki)}: "
                     f"{fmt_matrix(self.source_tr(hi, ki))} | "
                     f"{fmt_matrix(self.quotient_tr(hi, ki))}")
        L.append("")
        L.append("## Reduced power operation")
        for ci in range(self.down.n_levels):
            L.append(f"- P{self.level_name(ci)}: {fmt_matrix(self.power_matrix(ci))}")
        L.append("")
        L.append("## Verification")
        for c in self.verification.checks:
            L.append(f"- {c.name}: {'pass' if c.passed else 'FAIL'}")
        L.append("")
        return "\n".join(L)

    def to_json(self):
        data = {
            "schema": "greenops.report/v1",
            "group": self.G.name,
            "order": self.G.order,
            "m": self.m,
            "theory": self.theory_name,
            "ideal": self.ideal_name,
            "levels": [],
            "maps": [],
            "power": [],
            "verification": {c.name: c.passed for c in self.verification.checks},
        }
        for ci in range(self.down.n_levels):
            data["levels"].append({
                "label": self.level_name(ci),
                "source_basis": self.source_basis(ci),
                "quotient": [[ring, lbl] for ring, lbl in self.quotient_presentation(ci)],
            })
            data["power"].append({
                "label": self.level_name(ci),
                "matrix": _json_matrix(self.power_matrix(ci)),
            })
        for hi, ki in self.down.subconj_pairs():
            data["maps"].append({
                "res": [self.level_name(ki), self.level_name(hi)],
                "source": _json_matrix(self.source_res(hi, ki)),
                "quotient": _json_matrix(self.quotient_res(hi, ki)),
            })
            data["maps"].append({
                "tr": [self.level_name(hi), self.level_name(ki)],
                "source": _json_matrix(self.source_tr(hi, ki)),
                "quotient": _json_matrix(self.quotient_tr(hi, ki)),
            })
        return json.dumps(data, indent=1, sort_keys=True) + "\n"


def _json_matrix(M):
    return [[_fmt_scalar(x) for x in row] for row in M]


def functor_to_json(R: GreenFunctor) -> str:
    """Serialize a Green functor: levels, res/tr/conj matrices, products."""
    data = {
        "schema": "greenops.functor/v1",
        "group": R.base.name,
        "theory": R.theory.name,
        "levels": [],
        "maps": {"res": [], "tr": [], "conj": []},
        "mult": [],
    }
    for ci in range(R.n_levels):
        mod = R.level(ci)
        data["levels"].append({
            "label": R.level_label(ci),
            "rank": mod.rank,
            "torsion": [],
            "basis": list(mod.basis_names),
        })
        rank = mod.rank
        data["mult"].append({
            "level": R.level_label(ci),
            "one": _json_matrix([R.one(ci)])[0],
            "products": [[_json_matrix([R.mult(ci, i, j)])[0]
                          for j in range(rank)] for i in range(rank)],
        })
        for k, cmat in enumerate(R.weyl_generators(ci)):
            data["maps"]["conj"].append({
                "level": R.level_label(ci),
                "generator": k,
                "matrix": _json_matrix(cmat),
            })
    for hi, ki in R.subconj_pairs():
        data["maps"]["res"].append({
            "from": R.level_label(ki), "to": R.level_label(hi),
            "matrix": _json_matrix(R.res_pair(hi, ki)),
        })
        data["maps"]["tr"].append({
            "from": R.level_label(hi), "to": R.level_label(ki),
            "matrix": _json_matrix(R.tr_pair(hi, ki)),
        })
    return json.dumps(data, indent=1, sort_keys=True) + "\n"
