"""Finite permutation groups: elements, subgroups, lattices, homomorphisms.

Everything is exact and deterministic: elements are stored sorted by their
image tuples, subgroup-class representatives are the lexicographically
smallest members, so repeated runs produce identical orderings.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, factorial

import numpy as np

DEFAULT_ELEMENT_CAP = 20_000


class CapExceeded(Exception):
    """A construction would exceed the configured element/point cap."""


def element_cap() -> int:
    return int(os.environ.get("MF_CAP_ELEMENTS", DEFAULT_ELEMENT_CAP))


class Perm:
    """A permutation of {0..degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        # (p*q)(i) = p(q(i))
        q = other.images
        p = self.images
        return Perm(tuple(p[q[i]] for i in range(len(p))))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return lcm_of_cycle_lengths(self.images)

    def cycles(self, include_fixed=False):
        """Disjoint cycles, each a tuple of points, smallest point first."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple:
        lens = sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True)
        return tuple(lens)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def lcm_of_cycle_lengths(images) -> int:
    seen = [False] * len(images)
    out = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        ln = 1
        seen[start] = True
        j = images[start]
        while j != start:
            seen[j] = True
            j = images[j]
            ln += 1
        out = out * ln // gcd(out, ln)
    return out


def identity_perm(degree: int) -> Perm:
    return Perm(range(degree))


def perm_from_cycles(degree: int, cycles) -> Perm:
    images = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + (cyc[0],) if isinstance(cyc, tuple) else cyc[1:] + [cyc[0]]):
            images[a] = b
    return Perm(images)


class Group:
    """A finite permutation group with fully enumerated elements.

    Elements are sorted lexicographically by image tuple (the identity is
    always index 0) and multiplication is cached as an integer table.
    """

    def __init__(self, degree, generators, name=None, _elements=None):
        self.degree = degree
        self.generators = list(generators)
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        if _elements is None:
            _elements = _close(self.generators, degree)
        self.elements = _elements
        self.index = {p.images: i for i, p in enumerate(self.elements)}
        self.name = name or f"<group deg {degree} order {len(self.elements)}>"
        self.order = len(self.elements)
        self.gen_indices = tuple(sorted({self.index[g.images] for g in self.generators})) or (0,)
        # product bookkeeping, filled by direct_product
        self.factors = None  # (A, B, embed_A, embed_B, proj_A, proj_B, pair_index)
        self.model = None  # tag like ("sym", n) or ("cyclic", n) for table lookup
        self._mul = None
        self._inv = None
        self._conj_perm_cache = {}
        self._order_cache = None

    # -- element arithmetic on indices ------------------------------------

    @property
    def mul(self) -> np.ndarray:
        if self._mul is None:
            n = self.order
            pts = np.array([p.images for p in self.elements], dtype=np.int32)
            # mul[i, j] = index of elements[i] * elements[j]
            table = np.empty((n, n), dtype=np.int32)
            key = {p.images: i for i, p in enumerate(self.elements)}
            for i, p in enumerate(self.elements):
                rows = pts[:, :]  # element j acts first, then p
                composed = np.array(p.images, dtype=np.int32)[rows]
                for j in range(n):
                    table[i, j] = key[tuple(composed[j].tolist())]
            self._mul = table
        return self._mul

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            n = self.order
            inv = np.empty(n, dtype=np.int32)
            col = self.mul
            for i in range(n):
                inv[i] = int(np.nonzero(col[i] == 0)[0][0])
            self._inv = inv
        return self._inv

    def conj_perm(self, g: int) -> np.ndarray:
        """Array c with c[x] = index of g * x * g^-1."""
        c = self._conj_perm_cache.get(g)
        if c is None:
            gi = int(self.inv[g])
            c = self.mul[self.mul[g], gi]
            self._conj_perm_cache[g] = c
        return c

    def element_order(self, i: int) -> int:
        if self._order_cache is None:
            self._order_cache = [None] * self.order
        o = self._order_cache[i]
        if o is None:
            o = self.elements[i].order()
            self._order_cache[i] = o
        return o

    def identity_index(self) -> int:
        return 0

    def perm(self, i: int) -> Perm:
        return self.elements[i]

    def index_of(self, p: Perm) -> int:
        return self.index[p.images]

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"

    # -- whole-group views --------------------------------------------------

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)), gen_indices=self.gen_indices)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), gen_indices=(0,))

    def subgroup_from_elements(self, indices) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(indices))))

    def subgroup_generated(self, gen_indices) -> "Subgroup":
        members = close_indices(self.mul, [0] + list(gen_indices))
        return Subgroup(self, tuple(sorted(members)), gen_indices=tuple(sorted(set(gen_indices))) or (0,))

    def conjugacy_classes(self):
        """Element conjugacy classes; reps are lexicographically minimal."""
        n = self.order
        seen = [False] * n
        classes = []
        for i in range(n):
            if seen[i]:
                continue
            orbit = {i}
            frontier = [i]
            while frontier:
                x = frontier.pop()
                for g in self.gen_indices:
                    y = int(self.conj_perm(g)[x])
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            members = tuple(sorted(orbit))
            for m in members:
                seen[m] = True
            classes.append(members)
        classes.sort(key=lambda mem: mem[0])
        return classes


def _close(generators, degree):
    """BFS closure; returns elements sorted lex with identity first."""
    cap = element_cap()
    ident = identity_perm(degree)
    seen = {ident.images: ident}
    frontier = [ident]
    gens = list(generators)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                p = w * g
                if p.images not in seen:
                    seen[p.images] = p
                    nxt.append(p)
                    if len(seen) > cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
        frontier = nxt
    return sorted(seen.values(), key=lambda p: p.images)


def close_indices(mul, gen_indices):
    members = {0}
    frontier = [0]
    gens = [g for g in gen_indices]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(mul[x, g])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return members


def make_group(generators, name=None) -> Group:
    """Close a generator list into a Group (identity first, cap enforced)."""
    if not generators:
        raise ValueError("need at least one generator (use identity for the trivial group)")
    deg = generators[0].degree
    return Group(deg, generators, name=name)


class Subgroup:
    """Subgroup of a parent Group, stored as a sorted element-index tuple."""

    __slots__ = ("parent", "indices", "mask", "gen_indices", "_arr")

    def __init__(self, parent: Group, indices, gen_indices=None):
        self.parent = parent
        self.indices = tuple(indices)
        m = 0
        for i in self.indices:
            m |= 1 << i
        self.mask = m
        self._arr = None
        if gen_indices is None:
            gen_indices = _find_generators(parent, self.indices)
        self.gen_indices = tuple(gen_indices)

    @property
    def arr(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.array(self.indices, dtype=np.int32)
        return self._arr

    @property
    def order(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.mask & ~self.mask == 0

    def conjugate(self, g: int) -> "Subgroup":
        c = self.parent.conj_perm(g)
        return Subgroup(self.parent, tuple(sorted(int(x) for x in c[self.arr])),
                        gen_indices=tuple(int(c[i]) for i in self.gen_indices))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(i for i in self.indices if i in other))

    def generators(self):
        return [self.parent.elements[i] for i in self.gen_indices]

    def is_normal_in(self, other: "Subgroup") -> bool:
        return all(self.conjugate(g).mask == self.mask for g in other.gen_indices)

    def normalizer_in(self, other: "Subgroup") -> "Subgroup":
        keep = [g for g in other.indices
                if self.conjugate(int(g)).mask == self.mask]
        return Subgroup(self.parent, tuple(keep))

    def centralizes(self, i: int) -> bool:
        mul = self.parent.mul
        return all(mul[j, i] == mul[i, j] for j in self.indices)

    def is_abelian(self) -> bool:
        mul = self.parent.mul
        idx = self.gen_indices
        return all(mul[a, b] == mul[b, a] for a in idx for b in idx)

    def commutator_subgroup(self) -> "Subgroup":
        mul, inv = self.parent.mul, self.parent.inv
        comms = set()
        for a in self.indices:
            for b in self.indices:
                comms.add(int(mul[mul[a, b], mul[inv[a], inv[b]]]))
        members = close_indices_within(mul, comms, self.indices)
        return Subgroup(self.parent, tuple(sorted(members)))

    def left_cosets(self):
        """Coset index-tuples, each sorted, ordered by smallest member."""
        mul = self.parent.mul
        seen = set()
        cosets = []
        for g in range(self.parent.order):
            if g in seen:
                continue
            cos = tuple(sorted(int(x) for x in mul[g, self.arr]))
            seen.update(cos)
            cosets.append(cos)
        cosets.sort(key=lambda c: c[0])
        return cosets

    def key(self):
        return self.indices

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.indices == other.indices)

    def __hash__(self):
        return hash((id(self.parent), self.indices))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


def close_indices_within(mul, seeds, ambient):
    members = {0} | set(seeds)
    frontier = list(members)
    gens = sorted(set(seeds))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(mul[x, g])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return members


def _find_generators(parent: Group, indices) -> tuple:
    """Small generating set for the subgroup on the given indices."""
    have = {0}
    gens = []
    mul = parent.mul
    target = set(indices)
    for i in indices:
        if i in have:
            continue
        gens.append(i)
        have = close_indices_within(mul, gens, indices)
        if have == target:
            break
    return tuple(gens) if gens else (0,)


class Homomorphism:
    """Group homomorphism given on generators; multiplicativity is checked."""

    def __init__(self, source: Group, target: Group, gen_images, check=True):
        self.source = source
        self.target = target
        self.gen_images = {g: h for g, h in gen_images.items()}
        self.map = self._build()
        if check:
            self._check()

    @classmethod
    def from_map(cls, source: Group, target: Group, full_map, check=True):
        hom = cls.__new__(cls)
        hom.source = source
        hom.target = target
        hom.gen_images = {g: full_map[g] for g in source.gen_indices}
        hom.map = list(full_map)
        if check:
            hom._check()
        return hom

    def _build(self):
        mul_t = self.target.mul
        out = [None] * self.source.order
        out[0] = 0
        frontier = [0]
        mul_s = self.source.mul
        while frontier:
            nxt = []
            for x in frontier:
                for g, h in self.gen_images.items():
                    y = int(mul_s[x, g])
                    if out[y] is None:
                        out[y] = int(mul_t[out[x], h])
                        nxt.append(y)
            frontier = nxt
        if any(v is None for v in out):
            raise ValueError("generator images do not cover the source group")
        return out

    def _check(self):
        mul_s = self.source.mul
        mul_t = self.target.mul
        f = self.map
        for a in range(self.source.order):
            fa = f[a]
            row_s = mul_s[a]
            for b in range(self.source.order):
                if f[int(row_s[b])] != int(mul_t[fa, f[b]]):
                    raise ValueError("not a homomorphism")

    def __call__(self, i: int) -> int:
        return self.map[i]

    def image_subgroup(self) -> Subgroup:
        return self.target.subgroup_from_elements(set(self.map))

    def restricted_to(self, sub: Subgroup):
        """Image indices of a source subgroup (as a set)."""
        return {self.map[i] for i in sub.indices}


# -- lattices ----------------------------------------------------------------


@dataclass
class SubgroupClass:
    rep: Subgroup
    members: list  # masks of all conjugates
    normalizer: Subgroup = None


class SubgroupLattice:
    """All subgroups of a group, conjugacy classes, subconjugacy witnesses."""

    def __init__(self, group: Group):
        self.group = group
        self.all_subgroups = enumerate_subgroups(group)
        self.by_mask = {s.mask: i for i, s in enumerate(self.all_subgroups)}
        self.classes = self._classify()
        self.class_of_mask = {}
        for ci, cls in enumerate(self.classes):
            for m in cls.members:
                self.class_of_mask[m] = ci
        self._subconj = {}
        self._lagrange_check()

    def _classify(self):
        G = self.group
        n = len(self.all_subgroups)
        seen = [False] * n
        classes = []
        for i, sub in enumerate(self.all_subgroups):
            if seen[i]:
                continue
            orbit = {sub.mask}
            frontier = [sub]
            members = [sub]
            while frontier:
                s = frontier.pop()
                for g in G.gen_indices:
                    c = s.conjugate(int(g))
                    if c.mask not in orbit:
                        orbit.add(c.mask)
                        frontier.append(c)
                        members.append(c)
            rep = min(members, key=lambda s: s.indices)
            for s in members:
                seen[self.by_mask[s.mask]] = True
            classes.append(SubgroupClass(rep=rep, members=sorted(orbit)))
        classes.sort(key=lambda c: (c.rep.order, c.rep.indices))
        full = self.group.full_subgroup()
        for cls in classes:
            cls.normalizer = cls.rep.normalizer_in(full)
        return classes

    def _lagrange_check(self):
        for cls in self.classes:
            assert self.group.order % cls.rep.order == 0, "Lagrange violation"

    def __len__(self):
        return len(self.classes)

    def class_index(self, sub: Subgroup) -> int:
        ci = self.class_of_mask.get(sub.mask)
        if ci is None:
            raise KeyError("subgroup not in lattice (wrong parent?)")
        return ci

    def subconjugate_witness(self, hi: int, ki: int):
        """Witness g with g*H*g^-1 <= K for class reps, or None."""
        key = (hi, ki)
        if key in self._subconj:
            return self._subconj[key]
        H = self.classes[hi].rep
        K = self.classes[ki].rep
        wit = None
        if K.order % H.order == 0:
            for g in range(self.group.order):
                if H.conjugate(g).mask & ~K.mask == 0:
                    wit = g
                    break
        self._subconj[key] = wit
        return wit

    def is_subconjugate(self, hi: int, ki: int) -> bool:
        return self.subconjugate_witness(hi, ki) is not None


def is_subconjugate(H: Subgroup, K: Subgroup):
    """(bool, witness Perm or None): some conjugate of H lies in K."""
    if H.parent is not K.parent:
        raise ValueError("subgroups of different parents")
    if K.order % H.order:
        return False, None
    G = H.parent
    for g in range(G.order):
        if H.conjugate(g).mask & ~K.mask == 0:
            return True, G.elements[g]
    return False, None


def enumerate_subgroups(group: Group):
    """Every subgroup, by closing the cyclic subgroups under joins."""
    n = group.order
    mul = group.mul
    # distinct cyclic subgroups, keyed by member mask, with one generator each
    cyc = {}
    for g in range(n):
        members = [0]
        x = g
        while x != 0:
            members.append(x)
            x = int(mul[x, g])
        key = _mask(members)
        if key not in cyc:
            cyc[key] = (tuple(sorted(members)), g)
    found = {}  # mask -> (indices tuple, gen indices tuple)
    found[_mask([0])] = ((0,), (0,))
    for key, (members, g) in cyc.items():
        found[key] = (members, (g,))
    frontier = list(found.keys())
    cyc_items = sorted(cyc.items(), key=lambda kv: kv[1][0])
    while frontier:
        nxt = []
        for mask in frontier:
            members, gens = found[mask]
            for ckey, (cmembers, cg) in cyc_items:
                if ckey & ~mask == 0:
                    continue
                jmask, jmembers = _join(mul, n, members, gens, cg)
                if jmask not in found:
                    found[jmask] = (jmembers, gens + (cg,))
                    nxt.append(jmask)
        frontier = nxt
    subs = [Subgroup(group, members, gen_indices=gens)
            for members, gens in found.values()]
    subs.sort(key=lambda s: (s.order, s.indices))
    return subs


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def _join(mul, n, members, gens, new_gen):
    """Subgroup generated by a closed subgroup plus one element.

    Runs over cosets: the result is a union of right cosets of the input.
    """
    size = len(members)
    base = np.array(members, dtype=np.int32)
    in_set = np.zeros(n, dtype=bool)
    in_set[base] = True
    all_members = [base]
    reps = [0]
    gen_list = list(gens) + [int(new_gen)]
    qi = 0
    while qi < len(reps):
        r = reps[qi]
        qi += 1
        for g in gen_list:
            t = int(mul[r, g])
            if not in_set[t]:
                coset = mul[base, t]
                in_set[coset] = True
                all_members.append(coset)
                reps.append(t)
    out = np.concatenate(all_members)
    out.sort()
    return _mask(out.tolist()), tuple(int(x) for x in out)


# -- named groups and products ----------------------------------------------


def cyclic_group(n: int) -> Group:
    if n == 1:
        g = Group(1, [identity_perm(1)], name="C1")
    else:
        g = Group(n, [Perm(tuple((i + 1) % n for i in range(n)))], name=f"C{n}")
    g.model = ("cyclic", n)
    return g


def symmetric_group(n: int) -> Group:
    if n == 1:
        g = Group(1, [identity_perm(1)], name="S1")
    elif n == 2:
        g = Group(2, [Perm((1, 0))], name="S2")
    else:
        cycle = Perm(tuple((i + 1) % n for i in range(n)))
        swap = Perm((1, 0) + tuple(range(2, n)))
        g = Group(n, [cycle, swap], name=f"S{n}")
    g.model = ("sym", n)
    return g


def dihedral8() -> Group:
    r = Perm((1, 2, 3, 0))
    s = Perm((2, 1, 0, 3))
    g = Group(4, [r, s], name="D8")
    g.model = ("dihedral", 8)
    return g


def group_from_table(names, table, name=None) -> Group:
    """Permutation group from an abstract multiplication table (regular action).

    ``table[i][j]`` is the index of the product; index 0 must be the identity.
    """
    n = len(names)
    gens = []
    for j in range(1, n):
        gens.append(Perm(tuple(table[j][i] for i in range(n))))
    # left translations L_j(i) = j*i give the regular representation
    g = Group(n, gens, name=name)
    assert g.order == n, "table not a group"
    return g


def direct_product(a: Group, b: Group, name=None) -> Group:
    """Direct product acting on disjoint points, with projections/embeddings."""
    if a.order * b.order > element_cap():
        raise CapExceeded("product order exceeds cap")
    da, db = a.degree, b.degree
    elements = []
    for pa in a.elements:
        for pb in b.elements:
            elements.append(Perm(pa.images + tuple(x + da for x in pb.images)))
    elements.sort(key=lambda p: p.images)
    gens = [Perm(p.images + tuple(range(da, da + db))) for p in a.generators]
    gens += [Perm(tuple(range(da)) + tuple(x + da for x in p.images)) for p in b.generators]
    name = name or f"{a.name}x{b.name}"
    g = Group(da + db, gens, name=name, _elements=elements)
    # index bookkeeping
    pair_index = {}
    to_a = np.empty(g.order, dtype=np.int32)
    to_b = np.empty(g.order, dtype=np.int32)
    for i, p in enumerate(g.elements):
        ia = a.index[p.images[:da]]
        ib = b.index[tuple(x - da for x in p.images[da:])]
        pair_index[(ia, ib)] = i
        to_a[i] = ia
        to_b[i] = ib
    embed_a = Homomorphism.from_map(a, g, [pair_index[(i, 0)] for i in range(a.order)], check=False)
    embed_b = Homomorphism.from_map(b, g, [pair_index[(0, j)] for j in range(b.order)], check=False)
    proj_a = Homomorphism.from_map(g, a, [int(x) for x in to_a], check=False)
    proj_b = Homomorphism.from_map(g, b, [int(x) for x in to_b], check=False)
    g.factors = (a, b, embed_a, embed_b, proj_a, proj_b, pair_index)
    return g


def graph_of_action(ambient: Group, s_indices, sigma_images) -> Subgroup:
    """Graph subgroup of G x S_m from parallel lists of factor indices.

    ``s_indices[k]`` (index in the first factor) pairs with
    ``sigma_images[k]`` (index in the second factor).
    """
    _, _, _, _, _, _, pair_index = _product_parts(ambient)
    idx = [pair_index[(int(s), int(t))] for s, t in zip(s_indices, sigma_images)]
    sub = ambient.subgroup_from_elements(idx)
    assert sub.order == len(set(s_indices)), "graph not a subgroup: map was not a homomorphism"
    return sub


def _product_parts(g: Group):
    if g.factors is None:
        raise ValueError(f"{g.name} was not built as a direct product")
    return g.factors


_NAME_RE = re.compile(r"^(C|S|D)(\d+)$")


def named_group(token: str) -> Group:
    m = _NAME_RE.match(token)
    if not m:
        raise ValueError(f"unknown group name {token!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        return cyclic_group(n)
    if kind == "S":
        if factorial(n) > element_cap():
            raise CapExceeded(f"S{n} exceeds element cap")
        return symmetric_group(n)
    if kind == "D" and n == 8:
        return dihedral8()
    raise ValueError(f"unknown group name {token!r}")


def parse_group(spec: str) -> Group:
    """Parse a group description.

    Either a built-in name (``C6``, ``S3``, ``D8``, products via ``x`` like
    ``S3xS2``) or the explicit text format::

        deg 4
        (0 1 2 3)
        (0 2)
    """
    spec = spec.strip()
    if spec.startswith("deg"):
        lines = [ln.strip() for ln in spec.splitlines() if ln.strip()]
        deg = int(lines[0].split()[1])
        gens = []
        for ln in lines[1:]:
            cycles = [tuple(int(x) for x in c.split())
                      for c in re.findall(r"\(([^()]*)\)", ln)]
            gens.append(perm_from_cycles(deg, cycles))
        if not gens:
            gens = [identity_perm(deg)]
        return make_group(gens, name=f"deg{deg}-custom")
    parts = spec.split("x")
    g = named_group(parts[0])
    for token in parts[1:]:
        g = direct_product(g, named_group(token))
    return g
