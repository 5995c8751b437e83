"""Finite G-sets, tuple stabilizers, zeta sections, and transfer-ideal data.

The ambient product G x S_m and its index bookkeeping live in PowerContext;
tuple spaces (m-th powers, fiber powers and their off-diagonal parts) are kept
as explicit point lists with a shared action convention:

    ((g, sigma) . t)[sigma(k)] = g . t[k]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from .groups import (CapExceeded, Group, Subgroup, Homomorphism, close_indices,
                     direct_product, graph_of_action, symmetric_group)

POINT_CAP = 100_000


class GSet:
    """A finite set with a group action, stored as an action table."""

    def __init__(self, group: Group, size: int, action: np.ndarray, point_labels=None):
        self.group = group
        self.size = size
        self.action = action  # shape (group.order, size)
        self.point_labels = point_labels

    def validate(self):
        """Check the action laws; exhaustively when the table is small."""
        act = self.action
        ident = act[0]
        assert all(int(ident[p]) == p for p in range(self.size)), "identity law"
        mul = self.group.mul
        full = self.group.order * self.size <= 10_000
        gs = range(self.group.order) if full else self.group.gen_indices
        hs = range(self.group.order) if full else self.group.gen_indices
        for g in gs:
            for h in hs:
                gh = int(mul[g, h])
                if not np.array_equal(act[gh], act[g][act[h]]):
                    raise AssertionError("compatibility law fails")
        return True

    def orbits(self):
        """List of sorted point tuples."""
        seen = np.zeros(self.size, dtype=bool)
        out = []
        gens = self.group.gen_indices
        for p in range(self.size):
            if seen[p]:
                continue
            orb = {p}
            frontier = [p]
            seen[p] = True
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = int(self.action[g, x])
                    if not seen[y]:
                        seen[y] = True
                        orb.add(y)
                        frontier.append(y)
            out.append(tuple(sorted(orb)))
        return out

    def stabilizer(self, point: int) -> Subgroup:
        col = self.action[:, point]
        members = np.nonzero(col == point)[0]
        return Subgroup(self.group, tuple(int(x) for x in members))

    def fixed_points(self, sub: Subgroup):
        ok = np.ones(self.size, dtype=bool)
        for g in sub.gen_indices:
            ok &= self.action[g] == np.arange(self.size)
        return [int(p) for p in np.nonzero(ok)[0]]

    def restricted_to(self, sub: Subgroup, as_group: Group = None,
                      index_map=None) -> "GSet":
        """The same points viewed as a set over a subgroup (reindexed)."""
        if as_group is None:
            raise ValueError("need the subgroup as a standalone group")
        rows = [self.action[index_map[i]] for i in range(as_group.order)]
        return GSet(as_group, self.size, np.array(rows), self.point_labels)


@dataclass
class Orbit:
    rep: int
    length: int
    stabilizer: Subgroup


@dataclass
class OrbitDecomposition:
    gset: object
    orbits: list

    def counts_by(self, classify) -> dict:
        out = {}
        for orb in self.orbits:
            key = classify(orb.stabilizer)
            out[key] = out.get(key, 0) + 1
        return out

    def check_orbit_stabilizer(self):
        n = self.gset.group.order if isinstance(self.gset, GSet) else self.gset.ctx.W.order
        for orb in self.orbits:
            assert orb.length * orb.stabilizer.order == n, "orbit-stabilizer violation"
        return True


def transitive_gset(G: Group, H: Subgroup) -> GSet:
    """Left coset space G/H with left multiplication action."""
    cosets = H.left_cosets()
    point_of = {}
    for p, cos in enumerate(cosets):
        for g in cos:
            point_of[g] = p
    act = np.empty((G.order, len(cosets)), dtype=np.int32)
    mul = G.mul
    reps = [c[0] for c in cosets]
    for g in range(G.order):
        act[g] = [point_of[int(mul[g, r])] for r in reps]
    gs = GSet(G, len(cosets), act, point_labels=[f"{G.elements[c[0]]!r}H" for c in cosets])
    gs.coset_reps = reps
    gs.point_of_element = point_of
    gs.stabilizer_subgroup = H
    return gs


def disjoint_union_gset(G: Group, pieces) -> GSet:
    """Disjoint union of (GSet, multiplicity) pairs over the same group."""
    blocks = []
    labels = []
    offset = 0
    for gs, mult in pieces:
        for c in range(mult):
            blocks.append(gs.action + offset)
            labels.extend(f"{lbl}#{c}" for lbl in (gs.point_labels or map(str, range(gs.size))))
            offset += gs.size
    if not blocks:
        return GSet(G, 0, np.empty((G.order, 0), dtype=np.int32), [])
    return GSet(G, offset, np.concatenate(blocks, axis=1), labels)


class PowerContext:
    """A group G with chosen m: the ambient W = G x S_m plus index tables."""

    def __init__(self, G: Group, m: int):
        self.G = G
        self.m = m
        self.sym = symmetric_group(m)
        self.W = direct_product(G, self.sym, name=f"{G.name}xS{m}")
        (_, _, self.embed_G, self.embed_S,
         self.proj_G, self.proj_S, self.pair_index) = self.W.factors
        self.g_part = np.array(self.proj_G.map, dtype=np.int32)
        self.s_part = np.array(self.proj_S.map, dtype=np.int32)
        self.s_images = np.array([p.images for p in self.sym.elements], dtype=np.int32)
        self._conj_key_cache = {}
        self._lattice = None

    @property
    def lattice(self):
        if self._lattice is None:
            from .groups import SubgroupLattice
            self._lattice = SubgroupLattice(self.W)
        return self._lattice

    # -- subgroup constructors -------------------------------------------

    def lift_G(self, H: Subgroup) -> Subgroup:
        """H x {e} inside W for H <= G."""
        idx = [self.pair_index[(int(i), 0)] for i in H.indices]
        return Subgroup(self.W, tuple(sorted(idx)),
                        gen_indices=tuple(self.pair_index[(int(i), 0)] for i in H.gen_indices))

    def product_subgroup(self, H: Subgroup, s_indices) -> Subgroup:
        """H x S for H <= G and a set of S_m element indices forming a subgroup."""
        idx = [self.pair_index[(int(i), int(j))] for i in H.indices for j in s_indices]
        return Subgroup(self.W, tuple(sorted(idx)))

    def level_subgroup(self, H: Subgroup) -> Subgroup:
        """H x S_m."""
        return self.product_subgroup(H, range(self.sym.order))

    def sym_block_subgroup(self, i: int) -> tuple:
        """Element indices of S_i x S_j (first i points, last m-i points)."""
        keep = []
        for t, p in enumerate(self.sym.elements):
            if all(p.images[k] < i for k in range(i)):
                keep.append(t)
        return tuple(keep)

    def partition_subgroup(self, H: Subgroup, i: int) -> Subgroup:
        """H x S_i x S_{m-i} inside W."""
        return self.product_subgroup(H, self.sym_block_subgroup(i))

    def long_cycle_index(self) -> int:
        images = tuple((k + 1) % self.m for k in range(self.m))
        return self.sym.index[images]

    def parts(self, w: int):
        return int(self.g_part[w]), int(self.s_part[w])

    # -- tuple actions ------------------------------------------------------

    def act_tuple(self, X: GSet, w: int, tup):
        g = self.g_part[w]
        s = self.s_images[self.s_part[w]]
        row = X.action[g]
        out = [0] * self.m
        for k in range(self.m):
            out[int(s[k])] = int(row[tup[k]])
        return tuple(out)

    def tuple_stabilizer(self, X: GSet, tup) -> Subgroup:
        members = []
        for w in range(self.W.order):
            if self.act_tuple(X, w, tup) == tuple(tup):
                members.append(w)
        return Subgroup(self.W, tuple(members))

    # -- conjugacy keys (lattice-free dedup) ---------------------------------

    def conjugacy_key(self, sub: Subgroup):
        """Canonical key of the W-conjugacy class of a subgroup of W."""
        key = self._conj_key_cache.get(sub.mask)
        if key is not None:
            return key
        seen = {sub.mask}
        best = sub.indices
        frontier = [sub]
        while frontier:
            s = frontier.pop()
            for g in self.W.gen_indices:
                c = s.conjugate(int(g))
                if c.mask not in seen:
                    seen.add(c.mask)
                    frontier.append(c)
                    if c.indices < best:
                        best = c.indices
        for msk in seen:
            self._conj_key_cache[msk] = best
        return best

    def conjugacy_key_under(self, sub: Subgroup, acting: Subgroup):
        """Canonical key of the conjugacy class under a subgroup of W."""
        seen = {sub.mask}
        best = sub.indices
        frontier = [sub]
        while frontier:
            s = frontier.pop()
            for g in acting.gen_indices:
                c = s.conjugate(int(g))
                if c.mask not in seen:
                    seen.add(c.mask)
                    frontier.append(c)
                    if c.indices < best:
                        best = c.indices
        return best


_CTX_CACHE = {}


def power_context(G: Group, m: int) -> PowerContext:
    key = (id(G), m)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = PowerContext(G, m)
        _CTX_CACHE[key] = ctx
    return ctx


class TupleSpace:
    """An explicit W-stable set of m-tuples of points of a G-set X."""

    def __init__(self, ctx: PowerContext, X: GSet, tuples):
        self.ctx = ctx
        self.X = X
        self.tuples = list(tuples)
        self.index = {t: i for i, t in enumerate(self.tuples)}

    @property
    def size(self):
        return len(self.tuples)

    def act(self, w: int, i: int) -> int:
        return self.index[self.ctx.act_tuple(self.X, w, self.tuples[i])]

    def decompose(self) -> OrbitDecomposition:
        ctx = self.ctx
        seen = [False] * len(self.tuples)
        gens = ctx.W.gen_indices
        orbits = []
        for i, t in enumerate(self.tuples):
            if seen[i]:
                continue
            orbit = [i]
            seen[i] = True
            frontier = [t]
            while frontier:
                cur = frontier.pop()
                for g in gens:
                    nt = ctx.act_tuple(self.X, g, cur)
                    j = self.index[nt]
                    if not seen[j]:
                        seen[j] = True
                        orbit.append(j)
                        frontier.append(nt)
            rep = self.tuples[min(orbit)]
            stab = ctx.tuple_stabilizer(self.X, rep)
            orbits.append(Orbit(rep=min(orbit), length=len(orbit), stabilizer=stab))
        dec = OrbitDecomposition(self, orbits)
        for orb in dec.orbits:
            assert orb.length * orb.stabilizer.order == ctx.W.order
        return dec

    def stabilizer_class_counts(self) -> dict:
        dec = self.decompose()
        return dec.counts_by(self.ctx.conjugacy_key)


def power_tuples(ctx: PowerContext, X: GSet) -> TupleSpace:
    """All m-tuples X^m (checked against the point cap)."""
    if X.size ** ctx.m > POINT_CAP:
        raise CapExceeded(f"{X.size}^{ctx.m} tuples exceed cap {POINT_CAP}")
    import itertools
    return TupleSpace(ctx, X, itertools.product(range(X.size), repeat=ctx.m))


def power_gset(X: GSet, m: int, ctx: PowerContext = None) -> GSet:
    """X^m as an explicit GSet over W = G x S_m."""
    if ctx is None:
        ctx = power_context(X.group, m)
    space = power_tuples(ctx, X)
    act = np.empty((ctx.W.order, space.size), dtype=np.int32)
    for w in range(ctx.W.order):
        act[w] = [space.act(w, i) for i in range(space.size)]
    labels = [str(t) for t in space.tuples]
    return GSet(ctx.W, space.size, act, labels)


def fiber_power(ctx: PowerContext, H: Subgroup, L: Subgroup):
    """(G/H)^(x_{G/L} m) with its diagonal and off-diagonal part Z^{L,H}.

    Returns (space, diagonal_ids, z_ids): the tuple space of the fiber power,
    plus index masks for the diagonal copy of G/H and for Z^{L,H}.
    """
    G = ctx.G
    assert H.mask & ~L.mask == 0, "need H <= L"
    XH = transitive_gset(G, H)
    XL = transitive_gset(G, L)
    to_L = [XL.point_of_element[XH.coset_reps[p]] for p in range(XH.size)]
    fibers = {}
    for p, q in enumerate(to_L):
        fibers.setdefault(q, []).append(p)
    import itertools
    tuples = []
    for q in sorted(fibers):
        tuples.extend(itertools.product(fibers[q], repeat=ctx.m))
    if len(tuples) > POINT_CAP:
        raise CapExceeded("fiber power exceeds point cap")
    tuples.sort()
    space = TupleSpace(ctx, XH, tuples)
    diag, z = [], []
    for i, t in enumerate(space.tuples):
        (diag if all(x == t[0] for x in t) else z).append(i)
    return space, diag, z


def z_orbit_decomposition(ctx: PowerContext, H: Subgroup, L: Subgroup):
    """Orbit decomposition of Z^{L,H} (the fiber power minus the diagonal)."""
    space, _, z_ids = fiber_power(ctx, H, L)
    sub = TupleSpace(ctx, space.X, [space.tuples[i] for i in z_ids])
    return sub.decompose()


def stabilizer_of_tuple(X: GSet, tup, ctx: PowerContext = None) -> Subgroup:
    """Stabilizer in G x S_m of an m-tuple of points of the G-set X."""
    if ctx is None:
        ctx = power_context(X.group, len(tup))
    return ctx.tuple_stabilizer(X, tuple(tup))


# -- coset actions, graphs, wreath lifts -------------------------------------


def ordered_cosets(G: Group, S: Subgroup, K: Subgroup):
    """Cosets of K inside S, each a sorted index tuple, by smallest member."""
    assert K.mask & ~S.mask == 0, "need K <= S"
    mul = G.mul
    seen = set()
    cosets = []
    for s in S.indices:
        if s in seen:
            continue
        cos = tuple(sorted(int(x) for x in mul[s, K.arr]))
        seen.update(cos)
        cosets.append(cos)
    cosets.sort(key=lambda c: c[0])
    return cosets


def coset_action_hom(G: Group, S: Subgroup, K: Subgroup, sym: Group):
    """The action map a_{S/K}: S -> S_n on the ordered cosets of K in S.

    Returns a dict {s index in G: index in sym} for every s in S.
    """
    cosets = ordered_cosets(G, S, K)
    n = len(cosets)
    assert n == sym.degree
    pos = {}
    for i, cos in enumerate(cosets):
        for g in cos:
            pos[g] = i
    mul = G.mul
    out = {}
    for s in S.indices:
        # a(s) sends i to the coset position of s*c_i
        images = tuple(pos[int(mul[s, cos[0]])] for cos in cosets)
        out[int(s)] = sym.index[images]
    return out


def graph_subgroup(a, ambient: Group) -> Subgroup:
    """Graph subgroup of a homomorphism into the S_m factor of ``ambient``.

    ``a`` is either a Homomorphism from the full first factor, or a dict
    {index in G: index in S_m} defined on a subgroup.
    """
    _, _, _, _, _, _, pair_index = ambient.factors
    if isinstance(a, Homomorphism):
        items = list(enumerate(a.map))
    else:
        items = sorted(a.items())
    s_idx = [s for s, _ in items]
    t_idx = [t for _, t in items]
    return graph_of_action(ambient, s_idx, t_idx)


def graph_of_coset_action(ctx_n: PowerContext, S: Subgroup, K: Subgroup) -> Subgroup:
    """Gamma(a_{S/K}) inside G x S_n for n = [S:K]."""
    a = coset_action_hom(ctx_n.G, S, K, ctx_n.sym)
    return graph_subgroup(a, ctx_n.W)


def wreath_graph(q: int, Lam: Subgroup, ctx_qn: PowerContext) -> Subgroup:
    """The preimage of Lam <= G x S_n inside G x S_qn (q-block embedding)."""
    W_n = Lam.parent
    _, _, _, _, proj_G_n, proj_S_n, _ = W_n.factors
    sym_n = W_n.factors[1]
    n = sym_n.degree
    m = q * n
    assert ctx_qn.m == m
    import itertools
    taus = list(itertools.permutations(range(q)))
    members = []
    for lam in Lam.indices:
        g = proj_G_n.map[lam]
        sigma = sym_n.elements[proj_S_n.map[lam]].images
        for tau_vec in itertools.product(taus, repeat=n):
            images = [0] * m
            for a in range(n):
                for r in range(q):
                    images[a * q + r] = sigma[a] * q + tau_vec[a][r]
            w = ctx_qn.sym.index[tuple(images)]
            members.append(ctx_qn.pair_index[(g, w)])
    sub = Subgroup(ctx_qn.W, tuple(sorted(members)))
    assert sub.order == factorial(q) ** n * Lam.order
    closed = close_indices(ctx_qn.W.mul, list(sub.gen_indices))
    assert len(closed) == sub.order, "wreath lift not closed"
    return sub


def zeta_section(ctx: PowerContext, S: Subgroup, K: Subgroup, q: int):
    """The q-fold shuffle of the ordered coset list S/K, inside (G/K)^m.

    Returns (X, tup) with X = G/K and tup the tuple of point indices; its
    stabilizer is conjugate to the q-block wreath lift of Gamma(a_{S/K}).
    """
    assert K.mask & ~S.mask == 0 and K.order < S.order, "need K < S"
    n = S.order // K.order
    assert n * q == ctx.m
    X = transitive_gset(ctx.G, K)
    cosets = ordered_cosets(ctx.G, S, K)
    pts = [X.point_of_element[c[0]] for c in cosets]
    tup = []
    for p in pts:
        tup.extend([p] * q)
    return X, tuple(tup)


# -- J generator lists --------------------------------------------------------


@dataclass
class WreathEntry:
    subgroup: Subgroup
    S: Subgroup
    K: Subgroup
    n: int
    q: int


@dataclass
class JGeneratorList:
    level: Subgroup
    m: int
    partition_part: list
    wreath_part: list

    def wreath_class_keys(self, ctx: PowerContext):
        return {ctx.conjugacy_key(e.subgroup) for e in self.wreath_part}


def _subgroups_below(G: Group, L: Subgroup, all_subs=None):
    if all_subs is None:
        from .groups import enumerate_subgroups
        all_subs = enumerate_subgroups(G)
    return [s for s in all_subs if s.mask & ~L.mask == 0]


def j_generator_subgroups(G: Group, L: Subgroup, m: int, all_subs=None,
                          dedup="ambient") -> JGeneratorList:
    """Partition subgroups L x S_i x S_j plus the wreath lifts of coset-action
    graphs for K < S <= L with [S:K] dividing m (the index n != 1, q = m/n).

    ``dedup="ambient"`` identifies entries conjugate inside G x S_m (the
    classification the stabilizer survey matches at L = G); ``dedup="level"``
    identifies only inside L x S_m, which is what transfer images into the
    level at L actually depend on.
    """
    ctx = power_context(G, m)
    level_amb = ctx.level_subgroup(L)

    def key_of(sub):
        if dedup == "level":
            return ctx.conjugacy_key_under(sub, level_amb)
        return ctx.conjugacy_key(sub)

    partition = []
    seen = set()
    for i in range(1, m):
        sub = ctx.partition_subgroup(L, i)
        key = key_of(sub)
        if key not in seen:
            seen.add(key)
            partition.append(sub)
    below = _subgroups_below(G, L, all_subs)
    candidates = []
    for n in range(2, m + 1):
        if m % n:
            continue
        q = m // n
        for S in below:
            if S.order % n:
                continue
            for K in below:
                if K.order * n != S.order or K.mask & ~S.mask:
                    continue
                candidates.append((n, q, S, K))
    candidates.sort(key=lambda c: (c[0], c[2].order, c[2].indices, c[3].indices))
    wreath = []
    wseen = set()
    for n, q, S, K in candidates:
        ctx_n = power_context(G, n)
        gamma = graph_of_coset_action(ctx_n, S, K)
        lifted = wreath_graph(q, gamma, ctx) if q > 1 else gamma
        key = key_of(lifted)
        if key not in wseen:
            wseen.add(key)
            wreath.append(WreathEntry(subgroup=lifted, S=S, K=K, n=n, q=q))
    return JGeneratorList(level=L, m=m, partition_part=partition, wreath_part=wreath)


def j_generator_subgroups_normal(G: Group, H: Subgroup, m: int, all_subs=None) -> JGeneratorList:
    """Wreath generators restricted to K = H for a normal subgroup H."""
    if not H.is_normal_in(G.full_subgroup()):
        raise ValueError("subgroup is not normal")
    ctx = power_context(G, m)
    partition = []
    seen = set()
    full = G.full_subgroup()
    for i in range(1, m):
        sub = ctx.partition_subgroup(full, i)
        key = ctx.conjugacy_key(sub)
        if key not in seen:
            seen.add(key)
            partition.append(sub)
    if all_subs is None:
        from .groups import enumerate_subgroups
        all_subs = enumerate_subgroups(G)
    candidates = []
    for n in range(2, m + 1):
        if m % n:
            continue
        q = m // n
        for S in all_subs:
            if S.order == H.order * n and H.mask & ~S.mask == 0:
                candidates.append((n, q, S))
    candidates.sort(key=lambda c: (c[0], c[2].indices))
    wreath = []
    wseen = set()
    for n, q, S in candidates:
        ctx_n = power_context(G, n)
        gamma = graph_of_coset_action(ctx_n, S, H)
        lifted = wreath_graph(q, gamma, ctx) if q > 1 else gamma
        key = ctx.conjugacy_key(lifted)
        if key not in wseen:
            wseen.add(key)
            wreath.append(WreathEntry(subgroup=lifted, S=S, K=H, n=n, q=q))
    return JGeneratorList(level=full, m=m, partition_part=partition, wreath_part=wreath)


def transitive_stabilizer_survey(G: Group, m: int, all_subs=None):
    """Conjugacy classes of stabilizers of off-diagonal tuples with transitive
    image in S_m, surveyed exhaustively over all proper subgroups H < G."""
    ctx = power_context(G, m)
    if all_subs is None:
        from .groups import enumerate_subgroups
        all_subs = enumerate_subgroups(G)
    # one representative H per G-conjugacy class of proper subgroups
    reps = []
    seen_keys = set()
    for s in all_subs:
        if s.order == G.order:
            continue
        key = _g_conj_key(G, s)
        if key not in seen_keys:
            seen_keys.add(key)
            reps.append(s)
    found = set()
    import itertools
    for H in reps:
        X = transitive_gset(G, H)
        if X.size ** m > POINT_CAP:
            raise CapExceeded("survey exceeds point cap")
        space = TupleSpace(ctx, X, (t for t in itertools.product(range(X.size), repeat=m)
                                    if any(x != t[0] for x in t)))
        for orb in space.decompose().orbits:
            stab = orb.stabilizer
            if _transitive_sigma_image(ctx, stab):
                found.add(ctx.conjugacy_key(stab))
    return found


def _transitive_sigma_image(ctx: PowerContext, sub: Subgroup) -> bool:
    reach = {0}
    frontier = [0]
    sigmas = [ctx.s_images[ctx.s_part[w]] for w in sub.gen_indices]
    while frontier:
        p = frontier.pop()
        for s in sigmas:
            qq = int(s[p])
            if qq not in reach:
                reach.add(qq)
                frontier.append(qq)
    return len(reach) == ctx.m


def _g_conj_key(G: Group, sub: Subgroup):
    seen = {sub.mask}
    best = sub.indices
    frontier = [sub]
    while frontier:
        s = frontier.pop()
        for g in G.gen_indices:
            c = s.conjugate(int(g))
            if c.mask not in seen:
                seen.add(c.mask)
                frontier.append(c)
                if c.indices < best:
                    best = c.indices
    return best


def long_cycle_stabilized_tuples(ctx: PowerContext, H: Subgroup):
    """For each g, the tuples with first entry eH fixed by (g, long cycle)."""
    X = transitive_gset(ctx.G, H)
    sigma = ctx.long_cycle_index()
    out = {}
    import itertools
    for g in range(ctx.G.order):
        w = ctx.pair_index[(g, sigma)]
        fixed = []
        for t in itertools.product(range(X.size), repeat=ctx.m):
            if t[0] != X.point_of_element[0]:
                continue
            if ctx.act_tuple(X, w, t) == t:
                fixed.append(t)
        out[g] = fixed
    return out
