"""The Burnside ring theory: orbits, tables of marks, and the power operation
X -> X^m, together with the module splitting of A(L x H) over strata of H.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .groups import CapExceeded, Group, Subgroup, SubgroupLattice, direct_product
from .gsets import (GSet, PowerContext, TupleSpace, ordered_cosets,
                    transitive_gset, POINT_CAP)
from .mackey import Module

ENUM_CAP = 100_000


class BurnsideLevel(Module):
    """A(V): free on the V-conjugacy classes of subgroups of V."""

    def __init__(self, theory, V: Subgroup):
        self.theory = theory
        self.V = V
        parent = theory.parent
        members = [s for s in theory.lattice.all_subgroups if s.mask & ~V.mask == 0]
        by_mask = {s.mask: s for s in members}
        seen = set()
        classes = []
        class_members = []
        for s in members:
            if s.mask in seen:
                continue
            orbit = {s.mask}
            frontier = [s]
            while frontier:
                t = frontier.pop()
                for g in V.gen_indices:
                    c = t.conjugate(int(g))
                    if c.mask not in orbit:
                        orbit.add(c.mask)
                        frontier.append(c)
            assert orbit <= set(by_mask), "lattice missing a conjugate"
            seen |= orbit
            reps = sorted(orbit)
            rep = min((by_mask[m2] for m2 in orbit), key=lambda t: t.indices)
            classes.append(rep)
            class_members.append(reps)
        order = sorted(range(len(classes)), key=lambda i: (classes[i].order,
                                                           classes[i].indices))
        self.classes = [classes[i] for i in order]
        self.class_members = [class_members[i] for i in order]
        self.class_of_mask = {}
        for ci, mems in enumerate(self.class_members):
            for msk in mems:
                self.class_of_mask[msk] = ci
        self.norm_orders = [V.order // len(m) for m in self.class_members]
        super().__init__(V=V, rank=len(self.classes),
                         basis_names=[f"V/{c.order}.{i}" for i, c in enumerate(self.classes)])
        self._marks_rows = None
        self._mark_vectors = {}
        self._mult_cache = {}
        self._subconj = None

    # -- marks -------------------------------------------------------------

    @property
    def marks_rows(self):
        """Sparse rows: marks_rows[X] = (cols, vals) with vals = |(V/A)^X|."""
        if self._marks_rows is None:
            rows = []
            n = self.rank
            for xi in range(n):
                X_members = self.class_members[xi]
                normX = self.V.order // len(X_members)   # |N_V(X)|
                cols, vals = [], []
                for ai in range(xi, n):
                    A = self.classes[ai]
                    if A.order % self.classes[xi].order:
                        continue
                    contained = sum(1 for msk in X_members if msk & ~A.mask == 0)
                    if contained:
                        num = contained * normX
                        assert num % A.order == 0
                        cols.append(ai)
                        vals.append(num // A.order)
                assert cols and cols[0] == xi, "marks diagonal missing"
                rows.append((cols, vals))
            self._marks_rows = rows
        return self._marks_rows

    def mark_vector(self, ai):
        """Dense marks of the basis orbit V/A_ai, indexed by X-classes."""
        v = self._mark_vectors.get(ai)
        if v is None:
            v = [0] * self.rank
            for xi in range(self.rank):
                cols, vals = self.marks_rows[xi]
                for c, val in zip(cols, vals):
                    if c == ai:
                        v[xi] = val
                        break
            self._mark_vectors[ai] = v
        return v

    def solve_marks(self, t):
        """Coefficients c with sum_A c_A |(V/A)^X| = t[X]; exact and integral."""
        n = self.rank
        c = [0] * n
        rows = self.marks_rows
        for xi in range(n - 1, -1, -1):
            cols, vals = rows[xi]
            acc = t[xi]
            diag = None
            for col, val in zip(cols, vals):
                if col == xi:
                    diag = val
                elif c[col]:
                    acc -= val * c[col]
            assert diag, "marks diagonal vanished"
            q, r = divmod(acc, diag)
            assert r == 0, "non-integral orbit decomposition"
            c[xi] = q
        return c

    def _solve_layers(self):
        """Order-descending layers plus sparse off-diagonal layer blocks."""
        if getattr(self, "_layers", None) is None:
            import scipy.sparse as sp
            n = self.rank
            diag = np.zeros(n, dtype=np.int64)
            data, ri, ci = [], [], []
            for xi in range(n):
                cols, vals = self.marks_rows[xi]
                for col, val in zip(cols, vals):
                    if col == xi:
                        diag[xi] = val
                    else:
                        data.append(val)
                        ri.append(xi)
                        ci.append(col)
            off = sp.csr_matrix((np.array(data, dtype=np.int64),
                                 (np.array(ri), np.array(ci))), shape=(n, n))
            orders = [c.order for c in self.classes]
            layers = []
            start = n
            while start > 0:
                o = orders[start - 1]
                lo = start
                while lo > 0 and orders[lo - 1] == o:
                    lo -= 1
                layers.append((lo, start, off[lo:start]))
                start = lo
            self._layers = (diag, layers)
        return self._layers

    def solve_marks_fast(self, t_arr):
        """Layered integer solve of the marks system (int64, checked)."""
        diag, layers = self._solve_layers()
        n = self.rank
        c = np.zeros(n, dtype=np.int64)
        t_arr = np.asarray(t_arr, dtype=np.int64)
        for lo, hi, block in layers:
            rhs = t_arr[lo:hi] - block @ c
            q, r = np.divmod(rhs, diag[lo:hi])
            assert not r.any(), "non-integral orbit decomposition"
            c[lo:hi] = q
        return c

    def subconjugate(self, bi, ai) -> bool:
        if self._subconj is None:
            self._subconj = {}
        key = (bi, ai)
        got = self._subconj.get(key)
        if got is None:
            A = self.classes[ai]
            got = any(msk & ~A.mask == 0 for msk in self.class_members[bi])
            self._subconj[key] = got
        return got


class BurnsideTheory:
    """Burnside rings of all subgroups of one parent group."""

    name = "burnside"
    is_integer = True
    orbit_products = True

    def __init__(self, parent: Group, lattice: SubgroupLattice = None):
        self.parent = parent
        self.lattice = lattice or SubgroupLattice(parent)
        self._modules = {}
        self._res_cache = {}
        self._tr_cache = {}
        self._conj_cache = {}

    def module(self, V: Subgroup) -> BurnsideLevel:
        mod = self._modules.get(V.indices)
        if mod is None:
            mod = BurnsideLevel(self, V)
            self._modules[V.indices] = mod
        return mod

    def one(self, V: Subgroup):
        mod = self.module(V)
        vec = [0] * mod.rank
        vec[mod.class_of_mask[V.mask]] = 1
        return vec

    def mult(self, V: Subgroup, i: int, j: int):
        mod = self.module(V)
        key = (min(i, j), max(i, j))
        out = mod._mult_cache.get(key)
        if out is None:
            mi = mod.mark_vector(i)
            mj = mod.mark_vector(j)
            out = mod.solve_marks([a * b for a, b in zip(mi, mj)])
            mod._mult_cache[key] = out
        return list(out)

    def mult_vec(self, V: Subgroup, u, v):
        """Product of two elements via pointwise marks (exact, vectorized)."""
        mod = self.module(V)
        mu = self._marks_of_vec(mod, u)
        mv = self._marks_of_vec(mod, v)
        return [int(x) for x in mod.solve_marks_fast(mu * mv)]

    @staticmethod
    def _marks_of_vec(mod, vec):
        tab = getattr(mod, "_mark_matrix", None)
        if tab is None:
            tab = np.array([mod.mark_vector(a) for a in range(mod.rank)],
                           dtype=np.int64).T
            mod._mark_matrix = tab
        return tab @ np.asarray(vec, dtype=np.int64)

    def downward_support(self, V: Subgroup, supp):
        """Close a set of class indices under subconjugacy (downward)."""
        mod = self.module(V)
        out = set(supp)
        for bi in range(mod.rank):
            if bi in out:
                continue
            if any(mod.subconjugate(bi, ai) for ai in supp):
                out.add(bi)
        return out

    def decompose_gset_over(self, V: Subgroup, gset: GSet, point_ids=None):
        """Orbit-count vector of a V-stable point set inside a parent GSet."""
        mod = self.module(V)
        action = gset.action
        pts = list(range(gset.size)) if point_ids is None else list(point_ids)
        ptset = set(pts)
        seen = set()
        vec = [0] * mod.rank
        for p in pts:
            if p in seen:
                continue
            orbit = {p}
            frontier = [p]
            while frontier:
                x = frontier.pop()
                for g in V.gen_indices:
                    y = int(action[g, x])
                    assert y in ptset, "point set not V-stable"
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            seen |= orbit
            rep = min(orbit)
            col = action[:, rep]
            stab_members = [int(x) for x in V.indices if int(col[x]) == rep]
            stab = Subgroup(self.parent, tuple(stab_members))
            assert len(orbit) * stab.order == V.order
            vec[mod.class_of_mask[stab.mask]] += 1
        return vec

    def res(self, U: Subgroup, V: Subgroup):
        key = (U.indices, V.indices)
        M = self._res_cache.get(key)
        if M is not None:
            return M
        assert U.mask & ~V.mask == 0
        modU = self.module(U)
        modV = self.module(V)
        parent = self.parent
        mul = parent.mul
        cols = []
        for A in modV.classes:
            # decompose V/A over U
            coset_id = {}
            reps = []
            for g in V.indices:
                if g in coset_id:
                    continue
                cid = len(reps)
                for x in mul[g, A.arr]:
                    coset_id[int(x)] = cid
                reps.append(int(g))
            vec = [0] * modU.rank
            visited = set()
            for cid in range(len(reps)):
                if cid in visited:
                    continue
                orbit = {cid}
                frontier = [cid]
                while frontier:
                    x = frontier.pop()
                    for u in U.gen_indices:
                        y = coset_id[int(mul[int(u), reps[x]])]
                        if y not in orbit:
                            orbit.add(y)
                            frontier.append(y)
                visited |= orbit
                r = reps[min(orbit)]
                conj = parent.conj_perm(r)
                stab_mask = 0
                for a in A.indices:
                    stab_mask |= 1 << int(conj[a])
                stab_mask &= U.mask
                vec[modU.class_of_mask[stab_mask]] += 1
            cols.append(vec)
        M = [[cols[j][i] for j in range(modV.rank)] for i in range(modU.rank)]
        self._res_cache[key] = M
        return M

    def tr(self, U: Subgroup, V: Subgroup):
        key = (U.indices, V.indices)
        M = self._tr_cache.get(key)
        if M is not None:
            return M
        assert U.mask & ~V.mask == 0
        modU = self.module(U)
        modV = self.module(V)
        M = [[0] * modU.rank for _ in range(modV.rank)]
        for j, L in enumerate(modU.classes):
            M[modV.class_of_mask[L.mask]][j] = 1
        self._tr_cache[key] = M
        return M

    def conj(self, g: int, V: Subgroup):
        key = (int(g), V.indices)
        M = self._conj_cache.get(key)
        if M is not None:
            return M
        target = V.conjugate(int(g))
        modV = self.module(V)
        modT = self.module(target)
        perm = self.parent.conj_perm(int(g))
        M = [[0] * modV.rank for _ in range(modT.rank)]
        for j, A in enumerate(modV.classes):
            mask = 0
            for a in A.indices:
                mask |= 1 << int(perm[a])
            M[modT.class_of_mask[mask]][j] = 1
        self._conj_cache[key] = M
        return M

    def transfer_image_gens(self, U: Subgroup, V: Subgroup):
        modU = self.module(U)
        modV = self.module(V)
        out = []
        seen = set()
        for L in modU.classes:
            ci = modV.class_of_mask[L.mask]
            if ci not in seen:
                seen.add(ci)
                vec = [0] * modV.rank
                vec[ci] = 1
                out.append(vec)
        return out


# -- the m-th power operation ---------------------------------------------------


def realize_h_set(ctx: PowerContext, H: Subgroup, xvec, source_classes):
    """The H-set of an effective Burnside vector, as a partial G-action table."""
    G = ctx.G
    mul = G.mul
    pieces = []
    total = 0
    for c, K in zip(xvec, source_classes):
        assert c >= 0, "power operation needs an effective element"
        if c:
            cosets = ordered_cosets(G, H, K)
            pieces.append((K, cosets, c))
            total += c * len(cosets)
    action = np.zeros((G.order, total), dtype=np.int32)
    offset = 0
    for K, cosets, c in pieces:
        pos = {}
        for i, cos in enumerate(cosets):
            for x in cos:
                pos[x] = i
        block = np.zeros((G.order, len(cosets)), dtype=np.int32)
        for h in H.indices:
            block[h] = [pos[int(mul[h, cos[0]])] for cos in cosets]
        for rep in range(c):
            action[:, offset:offset + len(cosets)] = block + offset
            offset += len(cosets)
    return GSet(G, total, action)


def source_subgroup_classes(ctx: PowerContext, theory: BurnsideTheory, H: Subgroup):
    """The A(H)-basis, as subgroups of G (from the H x {e} level)."""
    lifted = theory.module(ctx.lift_G(H))
    out = []
    for C in lifted.classes:
        gidx = tuple(sorted(int(ctx.g_part[i]) for i in C.indices))
        out.append(Subgroup(ctx.G, gidx))
    return out


def power_vector(ctx: PowerContext, theory: BurnsideTheory, H: Subgroup, xvec,
                 method="auto"):
    """P_m of an effective element of A(H), landing in A(H x S_m).

    ``method``: "enumerate" builds all |X|^m tuples and orbit-decomposes;
    "marks" counts fixed points blockwise and solves the marks system.
    """
    V = ctx.level_subgroup(H)
    modV = theory.module(V)
    src = source_subgroup_classes(ctx, theory, H)
    size = sum(c * (H.order // K.order) for c, K in zip(xvec, src))
    if method == "auto":
        method = "marks"
    if method == "enumerate":
        if size ** ctx.m > ENUM_CAP:
            raise CapExceeded("power enumeration exceeds cap")
        X = realize_h_set(ctx, H, xvec, src)
        import itertools
        space = TupleSpace(ctx, X, itertools.product(range(X.size), repeat=ctx.m))
        vec = [0] * modV.rank
        for orb in _decompose_over(ctx, space, V):
            vec[modV.class_of_mask[orb]] += 1
        return vec
    t = _power_marks(ctx, theory, H, xvec, src, modV)
    out = [int(x) for x in modV.solve_marks_fast(t)]
    assert all(c >= 0 for c in out)
    return out


def _decompose_over(ctx: PowerContext, space: TupleSpace, V: Subgroup):
    """Stabilizer masks of V-orbit representatives on a tuple space."""
    seen = [False] * space.size
    gens = V.gen_indices
    out = []
    for i, t in enumerate(space.tuples):
        if seen[i]:
            continue
        orbit = [i]
        seen[i] = True
        frontier = [t]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nt = ctx.act_tuple(space.X, int(g), cur)
                j = space.index[nt]
                if not seen[j]:
                    seen[j] = True
                    orbit.append(j)
                    frontier.append(nt)
        rep = space.tuples[min(orbit)]
        members = [w for w in V.indices if ctx.act_tuple(space.X, int(w), rep) == rep]
        stab_mask = 0
        for w in members:
            stab_mask |= 1 << int(w)
        assert len(orbit) * len(members) == V.order
        out.append(stab_mask)
    return out


def _power_marks(ctx: PowerContext, theory: BurnsideTheory, H: Subgroup, xvec,
                 src, modV):
    """Fixed-point counts |(X^m)^Lam| for every subgroup class of V = H x S_m.

    A tuple fixed by Lam is a Lam-equivariant map {1..m} -> X, so the count is
    a product over sigma-orbit blocks of |X^{U_block}|.
    """
    cache_key = (modV.V.indices, H.indices)
    fixdata = getattr(modV, "_power_fix", None)
    if fixdata is None or getattr(modV, "_power_fix_key", None) != cache_key:
        G, mul = ctx.G, ctx.G.mul
        coset_tables = []
        for K in src:
            cosets = ordered_cosets(G, H, K)
            kmasks = []
            for cos in cosets:
                conj = G.conj_perm(cos[0])
                kmask = 0
                for a in K.indices:
                    kmask |= 1 << int(conj[a])
                kmasks.append(kmask)
            coset_tables.append(kmasks)
        rows = []
        starts = []
        for Lam in modV.classes:
            sigmas = [ctx.s_images[ctx.s_part[w]] for w in Lam.indices]
            starts.append(len(rows))
            # orbits of the sigma-projection on the m slots
            slot_seen = [False] * ctx.m
            for slot in range(ctx.m):
                if slot_seen[slot]:
                    continue
                orb = {slot}
                frontier = [slot]
                while frontier:
                    x = frontier.pop()
                    for s in sigmas:
                        y = int(s[x])
                        if y not in orb:
                            orb.add(y)
                            frontier.append(y)
                for x in orb:
                    slot_seen[x] = True
                i0 = min(orb)
                umask = 0
                for w, s in zip(Lam.indices, sigmas):
                    if int(s[i0]) == i0:
                        umask |= 1 << int(ctx.g_part[w])
                rows.append([sum(1 for kmask in kmasks if umask & ~kmask == 0)
                             for kmasks in coset_tables])
        fixdata = (np.array(rows, dtype=np.int64),
                   np.array(starts, dtype=np.intp))
        modV._power_fix = fixdata
        modV._power_fix_key = cache_key
    flat, starts = fixdata
    dots = flat @ np.asarray(xvec, dtype=np.int64)
    return np.multiply.reduceat(dots, starts)


def sigma_fixed_matrix(ctx: PowerContext, theory: BurnsideTheory, H: Subgroup):
    """The S_m-fixed-point map A(H x S_m) -> A(H) on basis orbits."""
    V = ctx.level_subgroup(H)
    modV = theory.module(V)
    lifted = theory.module(ctx.lift_G(H))
    mul = ctx.W.mul
    sym_mask = 0
    for j in range(ctx.sym.order):
        sym_mask |= 1 << ctx.pair_index[(0, j)]
    cols = []
    HxE = ctx.lift_G(H)
    for Lam in modV.classes:
        # points of V/Lam fixed by e x S_m, as an H-set
        coset_id = {}
        reps = []
        for g in V.indices:
            if g in coset_id:
                continue
            cid = len(reps)
            for x in mul[g, Lam.arr]:
                coset_id[int(x)] = cid
            reps.append(int(g))
        fixed = []
        for cid, r in enumerate(reps):
            conj = ctx.W.conj_perm(r)
            cmask = 0
            for a in Lam.indices:
                cmask |= 1 << int(conj[a])
            if sym_mask & ~cmask == 0:
                fixed.append(cid)
        # decompose the fixed cosets over H x {e}
        fixedset = set(fixed)
        vec = [0] * lifted.rank
        visited = set()
        for cid in fixed:
            if cid in visited:
                continue
            orbit = {cid}
            frontier = [cid]
            while frontier:
                x = frontier.pop()
                for u in HxE.gen_indices:
                    y = coset_id[int(mul[int(u), reps[x]])]
                    assert y in fixedset
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            visited |= orbit
            r = reps[min(orbit)]
            conj = ctx.W.conj_perm(r)
            stab_mask = 0
            for a in Lam.indices:
                stab_mask |= 1 << int(conj[a])
            stab_mask &= HxE.mask
            vec[lifted.class_of_mask[stab_mask]] += 1
        cols.append(vec)
    return [[cols[j][i] for j in range(modV.rank)] for i in range(lifted.rank)]


def ordinary_itr(m: int) -> int:
    """gcd of the middle binomial coefficients: p for prime powers, else 1."""
    assert m >= 2
    from math import comb
    d = 0
    for i in range(1, m):
        d = gcd(d, comb(m, i))
    return d


def burnside_green_functor(G: Group, lattice: SubgroupLattice = None):
    """The Burnside ring Green functor of G, levels A(H) over [H <= G]."""
    from .mackey import plain_green_functor
    lattice = lattice or SubgroupLattice(G)
    theory = BurnsideTheory(G, lattice)
    return plain_green_functor(theory, G, lattice, name=f"A_{G.name}")


# -- the A(L x H) splitting -----------------------------------------------------


@dataclass
class SplittingStratum:
    K: Subgroup              # subgroup of the H factor (as subgroup of L x H)
    weyl: Group              # W_H(K) as a permutation group on N/K cosets
    target: Group            # L x W_H(K)
    target_theory: BurnsideTheory
    free_classes: list       # indices of W-free classes in A(L x W)
    weyl_hom: dict           # H-part element index -> weyl element index (on N)


class BurnsideSplitting:
    """A(L x H) = sum over [K <= H] of A(L, W_H(K)), with explicit inverse."""

    def __init__(self, L: Group, H: Group):
        self.L = L
        self.H = H
        self.P = direct_product(L, H)
        self.lattice = SubgroupLattice(self.P)
        self.theory = BurnsideTheory(self.P, self.lattice)
        self.module = self.theory.module(self.P.full_subgroup())
        (_, _, self.embed_L, self.embed_H, self.proj_L, self.proj_H,
         self.pair_index) = self.P.factors
        self.h_mask = 0
        for j in range(H.order):
            self.h_mask |= 1 << self.pair_index[(0, j)]
        self.strata = {}
        self._build_strata()

    def _h_subgroup(self, mask) -> Subgroup:
        idx = [i for i in range(self.P.order) if mask >> i & 1]
        hidx = sorted(self.proj_H.map[i] for i in idx)
        return Subgroup(self.H, tuple(hidx))

    def _build_strata(self):
        from .groups import Perm, Group as G_
        h_lat = SubgroupLattice(self.H)
        for ci, cls in enumerate(h_lat.classes):
            K = cls.rep
            N = cls.normalizer
            cosets = ordered_cosets(self.H, N, K)
            pos = {}
            for i, cos in enumerate(cosets):
                for x in cos:
                    pos[x] = i
            mulH = self.H.mul
            weyl_hom = {}
            perms = []
            for nidx in N.indices:
                images = tuple(pos[int(mulH[nidx, cos[0]])] for cos in cosets)
                weyl_hom[int(nidx)] = images
            gen_perms = [Perm(weyl_hom[int(g)]) for g in N.gen_indices]
            weyl = Group(len(cosets), gen_perms or [Perm(range(len(cosets)))],
                         name=f"W_H(K{ci})")
            target = direct_product(self.L, weyl)
            t_theory = BurnsideTheory(target)
            t_mod = t_theory.module(target.full_subgroup())
            w_mask = 0
            tpair = target.factors[6]
            for j in range(weyl.order):
                w_mask |= 1 << tpair[(0, j)]
            free = [i for i, C in enumerate(t_mod.classes)
                    if not any((1 << x) & w_mask and x != 0 for x in C.indices)]
            self.strata[ci] = SplittingStratum(
                K=K, weyl=weyl, target=target, target_theory=t_theory,
                free_classes=free,
                weyl_hom={n: weyl.index[img] for n, img in weyl_hom.items()})
        self.h_lattice = h_lat

    def phi_basis(self, gi: int):
        """Image stratum and class index of the basis orbit (L x H)/Gamma."""
        Gamma = self.module.classes[gi]
        k_sub = self._h_subgroup(Gamma.mask & self.h_mask)
        # move K into its class representative position
        ci = self.h_lattice.class_index(k_sub)
        K0 = self.h_lattice.classes[ci].rep
        w = None
        for g in range(self.H.order):
            if k_sub.conjugate(g).mask == K0.mask:
                w = g
                break
        Gamma = Gamma.conjugate(self.embed_H.map[w])
        stratum = self.strata[ci]
        tpair = stratum.target.factors[6]
        members = set()
        for idx in Gamma.indices:
            l_part = self.proj_L.map[idx]
            h_part = self.proj_H.map[idx]
            members.add(tpair[(l_part, stratum.weyl_hom[h_part])])
        img = Subgroup(stratum.target, tuple(sorted(members)))
        k_size = bin(Gamma.mask & self.h_mask).count("1")
        assert img.order * k_size == Gamma.order, "Phi image has wrong order"
        t_mod = stratum.target_theory.module(stratum.target.full_subgroup())
        ti = t_mod.class_of_mask[img.mask]
        assert ti in stratum.free_classes, "Phi image not Weyl-free"
        return ci, ti

    def phi_inverse_basis(self, ci: int, ti: int):
        """Coefficient vector in A(L x H) of Y x_W H/K for a stratum orbit Y."""
        stratum = self.strata[ci]
        t_mod = stratum.target_theory.module(stratum.target.full_subgroup())
        GammaP = t_mod.classes[ti]
        target = stratum.target
        mulT = target.mul
        # points of Y = (L x W)/GammaP
        coset_id = {}
        reps = []
        for g in range(target.order):
            if g in coset_id:
                continue
            cid = len(reps)
            for x in mulT[g, GammaP.arr]:
                coset_id[int(x)] = cid
            reps.append(int(g))
        K = stratum.K
        N = self.h_lattice.classes[ci].normalizer
        h_cosets = ordered_cosets(self.H, self.H.full_subgroup(), K)
        hpos = {}
        for i, cos in enumerate(h_cosets):
            for x in cos:
                hpos[x] = i
        mulH = self.H.mul
        tpair = target.factors[6]
        # balanced product points: (y, z) modulo (w.y, z) ~ (y, z.w)
        npts = len(reps) * len(h_cosets)

        def pid(y, z):
            return y * len(h_cosets) + z

        parent_uf = list(range(npts))

        def find(a):
            while parent_uf[a] != a:
                parent_uf[a] = parent_uf[parent_uf[a]]
                a = parent_uf[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent_uf[rb] = ra

        for n_idx in N.indices:
            w_elt = stratum.weyl_hom[int(n_idx)]
            t_elt = tpair[(0, w_elt)]
            for y in range(len(reps)):
                wy = coset_id[int(mulT[t_elt, reps[y]])]
                for z in range(len(h_cosets)):
                    # z . w : right action hK -> h n K
                    zn = hpos[int(mulH[h_cosets[z][0], int(n_idx)])]
                    union(pid(wy, z), pid(y, zn))
        # classes
        cls_of = {}
        for a in range(npts):
            cls_of.setdefault(find(a), len(cls_of))
        size = len(cls_of)
        act = np.zeros((self.P.order, size), dtype=np.int32)
        for pidx in range(self.P.order):
            l_part = self.proj_L.map[pidx]
            h_part = self.proj_H.map[pidx]
            t_elt = tpair[(l_part, 0)]
            for y in range(len(reps)):
                ly = coset_id[int(mulT[t_elt, reps[y]])]
                for z in range(len(h_cosets)):
                    hz = hpos[int(mulH[h_part, h_cosets[z][0]])]
                    act[pidx, cls_of[find(pid(y, z))]] = cls_of[find(pid(ly, hz))]
        gs = GSet(self.P, size, act)
        return self.theory.decompose_gset_over(self.P.full_subgroup(), gs)

    def roundtrip_check(self):
        """Phi then its inverse is the identity on every basis orbit."""
        for gi in range(self.module.rank):
            ci, ti = self.phi_basis(gi)
            vec = self.phi_inverse_basis(ci, ti)
            expect = [int(t == gi) for t in range(self.module.rank)]
            if vec != expect:
                return False, (gi, ci, ti, vec)
        # surjectivity onto the free strata basis
        hit = {(ci, ti) for ci, ti in (self.phi_basis(gi)
                                       for gi in range(self.module.rank))}
        want = {(ci, ti) for ci, st in self.strata.items() for ti in st.free_classes}
        return hit == want, (sorted(hit - want), sorted(want - hit))
