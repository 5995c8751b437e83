"""Mackey/Green functor framework over exact coefficients.

A GreenFunctor is indexed by the subgroup classes of a base group; each level
is a module supplied by a *theory* (Burnside, representation ring, class
functions) living over an ambient parent group. Induced and restricted
functors along G x S_m -> G pick levels at H x S_m and H x {e}.

Transfer ideals, quotients, and the reduced-power-operation checks all work
on these objects; integer levels use Hermite/Smith normal forms, field levels
reduced echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .groups import Group, Subgroup, SubgroupLattice
from .gsets import PowerContext, j_generator_subgroups
from .linalg import (FieldLattice, IntLattice, mat_inverse_unimodular, mat_mul,
                     mat_vec, smith_normal_form)


@dataclass
class Module:
    V: Subgroup
    rank: int
    basis_names: list


def apply_matrix(M, v):
    out = []
    for row in M:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def apply_matrix_many(M, vecs):
    """Apply an integer matrix to many integer vectors (numpy fast path)."""
    vecs = list(vecs)
    if not vecs or not M:
        return [apply_matrix(M, v) for v in vecs]
    try:
        import numpy as np
        A = np.array(M, dtype=np.int64)
        X = np.array(vecs, dtype=np.int64).T
        if abs(A).max(initial=0) < 2 ** 20 and abs(X).max(initial=0) < 2 ** 30:
            out = A @ X
            return [[int(x) for x in col] for col in out.T]
    except (TypeError, ValueError, OverflowError):
        pass
    return [apply_matrix(M, v) for v in vecs]


def compose(M2, M1):
    """Matrix of applying M1 then M2."""
    return mat_mul(M2, M1)


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_scale(c, v):
    return [c * x for x in v]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


class GreenFunctor:
    """Levels over the subgroup classes of ``base``, backed by ``theory``."""

    def __init__(self, base: Group, base_lattice: SubgroupLattice, theory,
                 level_map, embed, name=""):
        self.base = base
        self.base_lattice = base_lattice
        self.theory = theory
        self.level_map = level_map      # Subgroup of base -> Subgroup of theory.parent
        self.embed = embed              # base element index -> parent element index
        self.name = name
        self._levels = {}
        self._res = {}
        self._tr = {}

    # -- levels ---------------------------------------------------------------

    @property
    def n_levels(self):
        return len(self.base_lattice.classes)

    def level_subgroup(self, ci: int) -> Subgroup:
        return self.level_map(self.base_lattice.classes[ci].rep)

    def level(self, ci: int) -> Module:
        mod = self._levels.get(ci)
        if mod is None:
            mod = self.theory.module(self.level_subgroup(ci))
            self._levels[ci] = mod
        return mod

    def level_label(self, ci: int) -> str:
        rep = self.base_lattice.classes[ci].rep
        return f"[{rep.order}:{ci}]"

    def subconj_pairs(self):
        """(hi, ki) pairs with class hi strictly subconjugate-or-equal in ki."""
        out = []
        for hi in range(self.n_levels):
            for ki in range(self.n_levels):
                if hi != ki and self.base_lattice.is_subconjugate(hi, ki):
                    out.append((hi, ki))
        return out

    # -- structure maps --------------------------------------------------------

    def res_pair(self, hi: int, ki: int):
        """Restriction matrix: level ki -> level hi (hi subconjugate to ki)."""
        key = (hi, ki)
        if key not in self._res:
            w = self.base_lattice.subconjugate_witness(hi, ki)
            assert w is not None
            H = self.base_lattice.classes[hi].rep
            K = self.base_lattice.classes[ki].rep
            Hw = H.conjugate(w)
            VH, VK = self.level_map(H), self.level_map(K)
            VHw = self.level_map(Hw)
            res = self.theory.res(VHw, VK)
            if w:
                back = self.theory.conj(self.theory.parent.inv[self.embed(w)], VHw)
                res = compose(back, res)
            self._res[key] = res
        return self._res[key]

    def tr_pair(self, hi: int, ki: int):
        """Transfer matrix: level hi -> level ki."""
        key = (hi, ki)
        if key not in self._tr:
            w = self.base_lattice.subconjugate_witness(hi, ki)
            assert w is not None
            H = self.base_lattice.classes[hi].rep
            K = self.base_lattice.classes[ki].rep
            Hw = H.conjugate(w)
            VH, VK = self.level_map(H), self.level_map(K)
            VHw = self.level_map(Hw)
            tr = self.theory.tr(VHw, VK)
            if w:
                fwd = self.theory.conj(self.embed(w), VH)
                tr = compose(tr, fwd)
            self._tr[key] = tr
        return self._tr[key]

    def weyl_generators(self, ci: int):
        """Conjugation matrices at a level, for generators of the normalizer."""
        H = self.base_lattice.classes[ci].rep
        N = self.base_lattice.classes[ci].normalizer
        V = self.level_map(H)
        out = []
        for g in N.gen_indices:
            if g == 0:
                continue
            out.append(self.theory.conj(self.embed(int(g)), V))
        return out

    def mult(self, ci: int, i: int, j: int):
        return self.theory.mult(self.level_subgroup(ci), i, j)

    def mult_vec(self, ci: int, u, v):
        hook = getattr(self.theory, "mult_vec", None)
        if hook is not None:
            return hook(self.level_subgroup(ci), u, v)
        rank = self.level(ci).rank
        out = [0] * rank
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                prod = self.mult(ci, i, j)
                for k, c in enumerate(prod):
                    if c:
                        out[k] = out[k] + a * b * c
        return out

    def one(self, ci: int):
        return self.theory.one(self.level_subgroup(ci))

    def new_lattice(self, ci: int):
        rank = self.level(ci).rank
        if self.theory.is_integer:
            return IntLattice(rank)
        return FieldLattice(rank, Fraction(0), Fraction(1))


def plain_green_functor(theory, base: Group, base_lattice: SubgroupLattice,
                        name="") -> GreenFunctor:
    return GreenFunctor(base, base_lattice, theory,
                        level_map=lambda H: H, embed=lambda g: g, name=name)


def restrict_down(theory, ctx: PowerContext, base_lattice: SubgroupLattice,
                  name="") -> GreenFunctor:
    """The restricted functor: level [H] is the theory module at H x {e}."""
    return GreenFunctor(ctx.G, base_lattice, theory,
                        level_map=ctx.lift_G,
                        embed=lambda g: ctx.pair_index[(g, 0)],
                        name=name or f"down({theory.name})")


def induce_up(theory, ctx: PowerContext, base_lattice: SubgroupLattice,
              name="") -> GreenFunctor:
    """The induced functor: level [H] is the theory module at H x S_m."""
    return GreenFunctor(ctx.G, base_lattice, theory,
                        level_map=ctx.level_subgroup,
                        embed=lambda g: ctx.pair_index[(g, 0)],
                        name=name or f"up({theory.name})")


# -- verification reports ------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object = None

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        extra = f" witness={self.witness}" if not self.passed else ""
        return f"{self.name}: {status}{extra}"


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, name, passed, witness=None):
        self.checks.append(CheckResult(name, passed, witness))

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def summary(self):
        return "\n".join(repr(c) for c in self.checks)


def verify_mackey_axioms(R: GreenFunctor, max_pairs=None) -> Report:
    """Functoriality along towers plus the double-coset formula.

    Checks run on concrete subgroup chains H <= K <= L inside the base group,
    so no conjugation witnesses are involved.
    """
    rep = Report()
    lat = R.base_lattice
    towers = []
    for L in (cls.rep for cls in lat.classes):
        subs_in_L = [s for s in lat.all_subgroups if s.mask & ~L.mask == 0]
        for K in subs_in_L:
            for H in subs_in_L:
                if H.mask & ~K.mask == 0:
                    towers.append((H, K, L))
    bad_res = bad_tr = None
    for H, K, L in towers:
        res1 = compose(R.theory.res(R.level_map(H), R.level_map(K)),
                       R.theory.res(R.level_map(K), R.level_map(L)))
        if res1 != R.theory.res(R.level_map(H), R.level_map(L)):
            bad_res = (H.indices, K.indices, L.indices)
            break
        tr1 = compose(R.theory.tr(R.level_map(K), R.level_map(L)),
                      R.theory.tr(R.level_map(H), R.level_map(K)))
        if tr1 != R.theory.tr(R.level_map(H), R.level_map(L)):
            bad_tr = (H.indices, K.indices, L.indices)
            break
    rep.add("res-functorial", bad_res is None, bad_res)
    rep.add("tr-functorial", bad_tr is None, bad_tr)
    failures = []
    total = 0
    done = False
    for L in (cls.rep for cls in lat.classes):
        subs_in_L = [s for s in lat.all_subgroups if s.mask & ~L.mask == 0]
        for H in subs_in_L:
            for K in subs_in_L:
                total += 1
                if max_pairs and total > max_pairs:
                    done = True
                    break
                if not _double_coset_ok(R, H, K, L):
                    failures.append((H.indices, K.indices, L.indices))
                    done = True
                    break
            if done:
                break
        if done:
            break
    rep.add("double-coset", not failures, failures[:1] or None)
    return rep


def _theory_maps(R: GreenFunctor, U: Subgroup, V: Subgroup):
    VU, VV = R.level_map(U), R.level_map(V)
    return R.theory.res(VU, VV), R.theory.tr(VU, VV)


def _double_coset_ok(R: GreenFunctor, H: Subgroup, K: Subgroup, L: Subgroup) -> bool:
    """Res^L_K Tr^L_H = sum over K\\L/H of Tr conj Res, checked matricially."""
    G = R.base
    mul, inv = G.mul, G.inv
    res_KL, tr_KL = _theory_maps(R, K, L)
    res_HL, tr_HL = _theory_maps(R, H, L)
    left = compose(res_KL, tr_HL)
    # enumerate double cosets K g H
    seen = set()
    rank_H = R.theory.module(R.level_map(H)).rank
    rank_K = R.theory.module(R.level_map(K)).rank
    right = [[0] * rank_H for _ in range(rank_K)]
    for g in L.indices:
        if g in seen:
            continue
        coset = set()
        for k in K.indices:
            kg = int(mul[k, g])
            for h in H.indices:
                coset.add(int(mul[kg, h]))
        seen |= coset
        # contribution: Tr^K_{K cap gHg^-1} conj_g Res^H_{g^-1 K g cap H}
        gHg = H.conjugate(int(g))
        I1 = K.intersection(gHg)                      # inside K
        I0 = I1.conjugate(int(inv[g]))                # inside H
        res_I0 = R.theory.res(R.level_map(I0), R.level_map(H))
        cg = R.theory.conj(R.embed(int(g)), R.level_map(I0))
        tr_I1 = R.theory.tr(R.level_map(I1), R.level_map(K))
        term = compose(tr_I1, compose(cg, res_I0))
        for a in range(rank_K):
            for b in range(rank_H):
                right[a][b] += term[a][b]
    return left == right


def verify_green_axioms(R: GreenFunctor, frobenius_rank_cap=80) -> Report:
    """Ring axioms per level, restriction multiplicativity, Frobenius."""
    rep = Report()
    lat = R.base_lattice
    n = R.n_levels
    bad_comm = bad_unit = None
    for ci in range(n):
        rank = R.level(ci).rank
        one = R.one(ci)
        for i in range(rank):
            e_i = [int(k == i) for k in range(rank)]
            if R.mult_vec(ci, one, e_i) != e_i:
                bad_unit = (ci, i)
            for j in range(i, rank):
                if R.mult(ci, i, j) != R.mult(ci, j, i):
                    bad_comm = (ci, i, j)
    rep.add("levelwise-commutative-unital", bad_comm is None and bad_unit is None,
            bad_comm or bad_unit)
    # restrictions are ring maps
    bad_res = None
    for hi, ki in R.subconj_pairs():
        res = R.res_pair(hi, ki)
        rank = R.level(ki).rank
        for i in range(rank):
            e_i = [int(k == i) for k in range(rank)]
            for j in range(i, rank):
                e_j = [int(k == j) for k in range(rank)]
                lhs = apply_matrix(res, R.mult(ki, i, j))
                rhs = R.mult_vec(hi, apply_matrix(res, e_i), apply_matrix(res, e_j))
                if lhs != rhs:
                    bad_res = (hi, ki, i, j)
                    break
            if bad_res:
                break
        if bad_res:
            break
    rep.add("restriction-ring-map", bad_res is None, bad_res)
    # Frobenius reciprocity Tr(x) y = Tr(x Res(y))
    bad_frob = None
    for hi, ki in R.subconj_pairs():
        rank_h = R.level(hi).rank
        rank_k = R.level(ki).rank
        if rank_h * rank_k > frobenius_rank_cap ** 2:
            continue
        res = R.res_pair(hi, ki)
        tr = R.tr_pair(hi, ki)
        for i in range(rank_h):
            x = [int(t == i) for t in range(rank_h)]
            trx = apply_matrix(tr, x)
            for j in range(rank_k):
                y = [int(t == j) for t in range(rank_k)]
                lhs = R.mult_vec(ki, trx, y)
                rhs = apply_matrix(tr, R.mult_vec(hi, x, apply_matrix(res, y)))
                if lhs != rhs:
                    bad_frob = (hi, ki, i, j)
                    break
            if bad_frob:
                break
        if bad_frob:
            break
    rep.add("frobenius-reciprocity", bad_frob is None, bad_frob)
    mack = verify_mackey_axioms(R)
    rep.checks.extend(mack.checks)
    return rep


# -- Mackey ideals --------------------------------------------------------------


@dataclass
class MackeyIdeal:
    functor: GreenFunctor
    lattices: list
    iterations: int = 0
    label: str = ""

    def contains(self, ci, vec):
        return vec in self.lattices[ci]

    def rank(self, ci):
        return self.lattices[ci].rank

    def copy(self):
        return MackeyIdeal(self.functor, [L.copy() for L in self.lattices],
                           self.iterations, self.label)


def ideal_from_generators(R: GreenFunctor, gens_per_level, saturate=True) -> MackeyIdeal:
    """Smallest Mackey ideal containing the given per-level generators.

    Closure order per pass: multiply by basis, push along tr, pull along res,
    apply conjugation; repeated to a fixed point. Ranks only grow, so the
    loop terminates.
    """
    lattices = [R.new_lattice(ci) for ci in range(R.n_levels)]
    for ci, gens in enumerate(gens_per_level):
        lattices[ci].add_all(gens)
    pairs = R.subconj_pairs()
    iterations = 0
    changed = True
    while changed:
        changed = False
        iterations += 1
        changed |= _saturate_mult(R, lattices)
        for hi, ki in pairs:
            tr = R.tr_pair(hi, ki)
            changed |= lattices[ki].add_all(apply_matrix(tr, v)
                                            for v in lattices[hi].basis())
        for hi, ki in pairs:
            res = R.res_pair(hi, ki)
            changed |= lattices[hi].add_all(apply_matrix(res, v)
                                            for v in lattices[ki].basis())
        for ci in range(R.n_levels):
            for cmat in R.weyl_generators(ci):
                changed |= lattices[ci].add_all(apply_matrix(cmat, v)
                                                for v in lattices[ci].basis())
    return MackeyIdeal(R, lattices, iterations)


def _saturate_mult(R: GreenFunctor, lattices) -> bool:
    changed = False
    for ci in range(R.n_levels):
        L = lattices[ci]
        if not L.rank:
            continue
        rank = R.level(ci).rank
        if getattr(R.theory, "orbit_products", False) and L.is_coordinate_span():
            # orbit-basis levels: the span of a subconjugacy-closed support set
            # is automatically an ideal; just close the support downward
            supp = set(L.support())
            new = R.theory.downward_support(R.level_subgroup(ci), supp)
            for s in new - supp:
                vec = [int(k == s) for k in range(rank)]
                changed |= L.add(vec)
            continue
        for v in list(L.basis()):
            for j in range(rank):
                e_j = [int(k == j) for k in range(rank)]
                changed |= L.add(R.mult_vec(ci, v, e_j))
    return changed


def mackey_closure_report(R: GreenFunctor, ideal: MackeyIdeal) -> Report:
    """Check the per-level ideals already form a Mackey ideal (no saturation)."""
    rep = Report()
    bad_mult = None
    for ci in range(R.n_levels):
        L = ideal.lattices[ci]
        rank = R.level(ci).rank
        if getattr(R.theory, "orbit_products", False) and L.is_coordinate_span():
            supp = set(L.support())
            closed = R.theory.downward_support(R.level_subgroup(ci), supp)
            if closed != supp:
                bad_mult = (ci, sorted(closed - supp))
            continue
        for v in L.basis():
            for j in range(rank):
                e_j = [int(k == j) for k in range(rank)]
                if R.mult_vec(ci, v, e_j) not in L:
                    bad_mult = (ci, j)
                    break
            if bad_mult:
                break
        if bad_mult:
            break
    rep.add("levelwise-ideal", bad_mult is None, bad_mult)
    use_np = R.theory.is_integer
    bad_tr = None
    bad_res = None
    for hi, ki in R.subconj_pairs():
        tr = R.tr_pair(hi, ki)
        basis_h = ideal.lattices[hi].basis()
        images = apply_matrix_many(tr, basis_h) if use_np else \
            [apply_matrix(tr, v) for v in basis_h]
        if any(img not in ideal.lattices[ki] for img in images):
            bad_tr = ("tr", hi, ki)
        res = R.res_pair(hi, ki)
        basis_k = ideal.lattices[ki].basis()
        images = apply_matrix_many(res, basis_k) if use_np else \
            [apply_matrix(res, v) for v in basis_k]
        if any(img not in ideal.lattices[hi] for img in images):
            bad_res = ("res", ki, hi)
        if bad_tr or bad_res:
            break
    rep.add("transfer-closed", bad_tr is None, bad_tr)
    rep.add("restriction-closed", bad_res is None, bad_res)
    bad_conj = None
    for ci in range(R.n_levels):
        for cmat in R.weyl_generators(ci):
            basis = ideal.lattices[ci].basis()
            images = apply_matrix_many(cmat, basis) if use_np else \
                [apply_matrix(cmat, v) for v in basis]
            if any(img not in ideal.lattices[ci] for img in images):
                bad_conj = ci
                break
        if bad_conj is not None:
            break
    rep.add("conjugation-closed", bad_conj is None, bad_conj)
    return rep


def itr_ideal(R_up: GreenFunctor, ctx: PowerContext) -> MackeyIdeal:
    """The ideal of transfers from the partition subgroups H x S_i x S_j."""
    lattices = []
    for ci in range(R_up.n_levels):
        H = R_up.base_lattice.classes[ci].rep
        V = ctx.level_subgroup(H)
        L = R_up.new_lattice(ci)
        for i in range(1, ctx.m):
            P = ctx.partition_subgroup(H, i)
            L.add_all(R_up.theory.transfer_image_gens(P, V))
        lattices.append(L)
    ideal = MackeyIdeal(R_up, lattices, label="I_Tr")
    report = mackey_closure_report(R_up, ideal)
    assert report.ok, f"I_Tr not already closed: {report.failures()}"
    return ideal


def j_ideal(R_up: GreenFunctor, ctx: PowerContext, genlists=None,
            return_report=False):
    """I_Tr plus the transfers from the wreath lifts of coset-action graphs.

    The per-level ideals are generated (no saturation) and then *verified* to
    form a Mackey ideal; a closure failure raises.
    """
    lattices = []
    gen_meta = []
    for ci in range(R_up.n_levels):
        H = R_up.base_lattice.classes[ci].rep
        V = ctx.level_subgroup(H)
        L = R_up.new_lattice(ci)
        for i in range(1, ctx.m):
            P = ctx.partition_subgroup(H, i)
            L.add_all(R_up.theory.transfer_image_gens(P, V))
        if genlists is not None:
            gl = genlists[ci]
        else:
            gl = j_generator_subgroups(ctx.G, H, ctx.m,
                                       all_subs=R_up.base_lattice.all_subgroups,
                                       dedup="level")
        for entry in gl.wreath_part:
            L.add_all(R_up.theory.transfer_image_gens(entry.subgroup, V))
        gen_meta.append(gl)
        lattices.append(L)
    ideal = MackeyIdeal(R_up, lattices, label="J")
    ideal.generator_lists = gen_meta
    report = mackey_closure_report(R_up, ideal)
    if not report.ok:
        raise AssertionError(f"J not closed: {report.failures()}")
    if return_report:
        return ideal, report
    return ideal


# -- quotients -------------------------------------------------------------------


class LevelQuotient:
    """Presentation of module/lattice with labeled free and torsion parts."""

    def __init__(self, rank, lattice, basis_names, integer=True):
        self.rank = rank
        self.basis_names = basis_names
        self.lattice = lattice
        self.integer = integer
        if integer:
            self._init_integer()
        else:
            self._init_field()

    def _init_integer(self):
        B = self.lattice.basis()
        r = self.rank
        if not B:
            self.proj = identity_matrix(r)
            self.torsion = []
            self.free_rank = r
            self.lift = identity_matrix(r)
            self.coord_labels = list(self.basis_names)
            return
        # reverse columns so pivots prefer late basis labels
        rev = [list(reversed(row)) for row in B]
        d, U, V, Vinv = smith_normal_form(rev, with_vinv=True)
        # x' = x_rev . V ; lattice in x' coords = +/- d_i e_i
        keep = []
        tors = []
        for i in range(r):
            di = d[i] if i < len(d) else 0
            if di == 1:
                continue
            keep.append((i, di))
            if di > 1:
                tors.append(di)
        # projection: vec -> coords x'_i for kept i
        # x' = x_rev V  =>  x'_i = sum_j x_rev[j] V[j][i]
        proj_rows = []
        lift_rows = []
        for i, di in keep:
            proj_rows.append([V[r - 1 - j][i] for j in range(r)])  # un-reverse
            lift_rows.append([Vinv[i][r - 1 - j] for j in range(r)])
        # normalize signs: ensure each lift has a positive coefficient
        for t in range(len(keep)):
            if not any(x > 0 for x in lift_rows[t]):
                lift_rows[t] = [-x for x in lift_rows[t]]
                proj_rows[t] = [-x for x in proj_rows[t]]
        # order coordinates: free parts first (by label position), then torsion
        order = sorted(range(len(keep)),
                       key=lambda t: (keep[t][1] != 0,
                                      _label_pos(lift_rows[t])))
        self.proj = [proj_rows[t] for t in order]
        self.lift = [lift_rows[t] for t in order]
        self.torsion = [keep[t][1] for t in order if keep[t][1] > 1]
        self.free_rank = sum(1 for t in order if keep[t][1] == 0)
        self.coord_labels = [self._label_of(self.lift[t]) for t in range(len(order))]

    def _init_field(self):
        L = self.lattice
        r = self.rank
        pivot = set(L.support())
        keep = [j for j in range(r) if j not in pivot]
        self.torsion = []
        self.free_rank = len(keep)
        proj = []
        for j in keep:
            e = [Fraction(0)] * r
            e[j] = Fraction(1)
            proj.append(e)
        # projection of x: reduce by lattice then read kept coords
        self._keep = keep
        self.proj = None  # field case handled in project()
        self.lift = [[Fraction(int(t == j)) for t in range(r)] for j in keep]
        self.coord_labels = [self.basis_names[j] for j in keep]

    def _label_of(self, lift_vec):
        terms = []
        for j, c in enumerate(lift_vec):
            if not c:
                continue
            nm = self.basis_names[j]
            if c == 1:
                terms.append(nm)
            elif c == -1:
                terms.append(f"-{nm}")
            else:
                terms.append(f"{c}*{nm}")
        if not terms:
            return "0"
        # positive terms first: "L - 1" reads better than "-1 + L"
        terms.sort(key=lambda t: t.startswith("-"))
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    @property
    def q_rank(self):
        return self.free_rank + len(self.torsion)

    def project(self, vec):
        if self.integer:
            out = self._project_int(vec)
            t0 = self.free_rank
            for k, d in enumerate(self.torsion):
                out[t0 + k] %= d
            return out
        red = self.lattice.reduce(vec)
        return [red[j] for j in self._keep]

    def _project_int(self, vec):
        if not self.proj:
            return []
        npmat = getattr(self, "_np_proj", False)
        if npmat is False:
            import numpy as np
            try:
                arr = np.array(self.proj, dtype=np.int64)
                npmat = arr if abs(arr).max(initial=0) < 2 ** 20 else None
            except (OverflowError, ValueError):
                npmat = None
            self._np_proj = npmat
        if npmat is not None and all(abs(x) < 2 ** 30 for x in vec):
            import numpy as np
            return [int(x) for x in npmat @ np.array(vec, dtype=np.int64)]
        return apply_matrix(self.proj, vec)

    def lift_vec(self, qvec):
        return apply_matrix(_transpose(self.lift), qvec)

    @property
    def ring_name(self):
        return "Z" if self.integer else "Q"

    def presentation(self):
        parts = []
        for i in range(self.free_rank):
            parts.append((self.ring_name, self.coord_labels[i]))
        for k, d in enumerate(self.torsion):
            parts.append((f"Z/{d}", self.coord_labels[self.free_rank + k]))
        return parts

    def presentation_with_names(self, names):
        """Presentation relabeled through a replacement basis-name list."""
        old = self.basis_names
        self.basis_names = list(names)
        try:
            labels = [self._label_of(lift) for lift in self.lift] \
                if self.integer else [names[j] for j in self._keep]
        finally:
            self.basis_names = old
        parts = []
        for i in range(self.free_rank):
            parts.append((self.ring_name, labels[i]))
        for k, d in enumerate(self.torsion):
            parts.append((f"Z/{d}", labels[self.free_rank + k]))
        return parts


def _label_pos(lift_vec):
    return next((j for j, x in enumerate(lift_vec) if x), 0)


def _transpose(M):
    if not M:
        return []
    return [[row[i] for row in M] for i in range(len(M[0]))]


class QuotientFunctor:
    """Levelwise quotient of a Green functor by a Mackey ideal."""

    def __init__(self, R: GreenFunctor, ideal: MackeyIdeal):
        self.parent = R
        self.ideal = ideal
        self.levels = []
        for ci in range(R.n_levels):
            mod = R.level(ci)
            self.levels.append(LevelQuotient(mod.rank, ideal.lattices[ci],
                                             mod.basis_names,
                                             integer=R.theory.is_integer))
        self._res = {}
        self._tr = {}

    @property
    def n_levels(self):
        return self.parent.n_levels

    def project(self, ci, vec):
        return self.levels[ci].project(vec)

    def _induced(self, M, src, dst):
        """Quotient matrix of M: parent level src -> parent level dst."""
        qsrc, qdst = self.levels[src], self.levels[dst]
        # well-definedness: M maps the ideal at src into the ideal at dst
        basis = self.ideal.lattices[src].basis()
        images = apply_matrix_many(M, basis) if self.parent.theory.is_integer \
            else [apply_matrix(M, v) for v in basis]
        for img in images:
            assert img in self.ideal.lattices[dst], \
                "ideal not preserved; quotient map ill-defined"
        cols = []
        for lift in qsrc.lift:
            cols.append(qdst.project(apply_matrix(M, lift)))
        return _transpose(cols)

    def res_pair(self, hi, ki):
        key = (hi, ki)
        if key not in self._res:
            self._res[key] = self._induced(self.parent.res_pair(hi, ki), ki, hi)
        return self._res[key]

    def tr_pair(self, hi, ki):
        key = (hi, ki)
        if key not in self._tr:
            self._tr[key] = self._induced(self.parent.tr_pair(hi, ki), hi, ki)
        return self._tr[key]

    def mult_vec(self, ci, u, v):
        q = self.levels[ci]
        return q.project(self.parent.mult_vec(ci, q.lift_vec(u), q.lift_vec(v)))

    def presentation(self, ci):
        return self.levels[ci].presentation()


def quotient(R: GreenFunctor, ideal: MackeyIdeal) -> QuotientFunctor:
    return QuotientFunctor(R, ideal)


# -- power operations -------------------------------------------------------------


@dataclass
class PowerOperationInstance:
    source: GreenFunctor       # the restricted functor (down)
    target: GreenFunctor       # the induced functor (up)
    ctx: PowerContext
    m: int
    total_op: object           # callable (level ci, source vec) -> target vec

    def power(self, ci, vec):
        return self.total_op(ci, vec)


def effective_vectors(rank, max_support=3, max_coeff=2):
    """Nonnegative test vectors: basis elements plus small sums."""
    import itertools
    out = []
    for support in range(1, min(max_support, rank) + 1):
        for idxs in itertools.combinations(range(rank), support):
            for coeffs in itertools.product(range(1, max_coeff + 1), repeat=support):
                v = [0] * rank
                for i, c in zip(idxs, coeffs):
                    v[i] = c
                out.append(v)
    return out


def verify_green_map(P: PowerOperationInstance, ideal: MackeyIdeal,
                     max_support=3, max_coeff=2, mult_pairs=True) -> Report:
    """Additivity, multiplicativity, res and tr commutation of P mod ideal."""
    rep = Report()
    R_up = P.target
    R_down = P.source
    Q = QuotientFunctor(R_up, ideal)
    n = R_up.n_levels
    pcache = {}

    def power_mod(ci, vec):
        key = (ci, tuple(vec))
        out = pcache.get(key)
        if out is None:
            out = Q.project(ci, P.power(ci, list(vec)))
            pcache[key] = out
        return out

    # (a) additivity on effective vectors: P(v) = sum_i c_i P(e_i) mod ideal
    bad_add = None
    for ci in range(n):
        rank = R_down.level(ci).rank
        base = [power_mod(ci, [int(k == i) for k in range(rank)])
                for i in range(rank)]
        for v in effective_vectors(rank, max_support, max_coeff):
            got = power_mod(ci, v)
            want = [0] * len(got)
            for i, c in enumerate(v):
                if c:
                    want = vec_add(want, vec_scale(c, base[i]))
            want = _renormalize(Q, ci, want)
            if got != want:
                bad_add = (ci, v)
                break
        if bad_add:
            break
    rep.add("additivity", bad_add is None, bad_add)

    # (b) multiplicativity on basis pairs
    bad_mul = None
    if mult_pairs:
        for ci in range(n):
            rank = R_down.level(ci).rank
            for i in range(rank):
                e_i = [int(k == i) for k in range(rank)]
                for j in range(i, rank):
                    e_j = [int(k == j) for k in range(rank)]
                    prod = R_down.mult_vec(ci, e_i, e_j)
                    if any(x < 0 for x in prod):
                        continue
                    lhs = power_mod(ci, prod)
                    rhs = Q.levels[ci].project(
                        R_up.mult_vec(ci, P.power(ci, e_i), P.power(ci, e_j)))
                    if lhs != rhs:
                        bad_mul = (ci, i, j)
                        break
                if bad_mul:
                    break
            if bad_mul:
                break
    rep.add("multiplicativity", bad_mul is None, bad_mul)

    # (c) restriction commutation, (d) transfer commutation
    bad_res = None
    bad_tr = None
    use_np = R_up.theory.is_integer
    for hi, ki in R_up.subconj_pairs():
        res_src = R_down.res_pair(hi, ki)
        tr_src = R_down.tr_pair(hi, ki)
        res_q = Q.res_pair(hi, ki)
        tr_q = Q.tr_pair(hi, ki)
        rank_k = R_down.level(ki).rank
        rank_h = R_down.level(hi).rank
        vecs_k = effective_vectors(rank_k, max_support, max_coeff)
        vecs_h = effective_vectors(rank_h, max_support, max_coeff)
        pk = [power_mod(ki, v) for v in vecs_k]
        ph = [power_mod(hi, v) for v in vecs_h]
        lhs_res = apply_matrix_many(res_q, pk) if use_np else \
            [apply_matrix(res_q, p) for p in pk]
        for v, lhs in zip(vecs_k, lhs_res):
            lhs = _renormalize(Q, hi, lhs)
            rhs = power_mod(hi, apply_matrix(res_src, v))
            if lhs != rhs:
                bad_res = (hi, ki, v)
                break
        lhs_tr = apply_matrix_many(tr_q, ph) if use_np else \
            [apply_matrix(tr_q, p) for p in ph]
        for v, lhs in zip(vecs_h, lhs_tr):
            lhs = _renormalize(Q, ki, lhs)
            rhs = power_mod(ki, apply_matrix(tr_src, v))
            if lhs != rhs:
                bad_tr = (hi, ki, v, lhs, rhs)
                break
        if bad_res or bad_tr:
            break
    rep.add("restriction-commutes", bad_res is None, bad_res)
    rep.add("transfer-commutes", bad_tr is None, bad_tr)
    return rep


def _renormalize(Q: QuotientFunctor, ci, qvec):
    """Reduce torsion coordinates of a quotient-coordinate vector."""
    q = Q.levels[ci]
    out = list(qvec)
    t0 = q.free_rank
    for k, d in enumerate(q.torsion):
        out[t0 + k] %= d
    return out
