"""Class-function and representation-ring theories.

Cl(V) is the ring of functions on conjugacy classes (a product of fields in
the indicator basis); RU(V) is the character lattice inside it, with basis the
irreducible characters. Both share the same induction formula

    Tr(f)(k) = sum over k-fixed cosets gU of f(g^-1 k g).

The power operation sends f to (h, sigma) |-> prod over cycles of f(h^len),
and modulo the partition transfers it becomes the Adams operation psi_m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chartab import (CharacterTable, MissingTable, TableProvider,
                      element_classes, induced_character_values,
                      one_dim_characters)
from .cyclotomic import Cyclo, cyclo_sum
from .groups import Group, Subgroup, SubgroupLattice
from .gsets import PowerContext
from .mackey import Module


# -- shared class bookkeeping ---------------------------------------------------


class ClassData(Module):
    """Element conjugacy classes of a subgroup, with power-map helpers."""

    def __init__(self, V: Subgroup):
        self.V = V
        self.classes = element_classes(V)
        self._class_of = {}
        for ci, cls in enumerate(self.classes):
            for x in cls:
                self._class_of[x] = ci
        P = V.parent
        labels = [f"[{P.elements[cls[0]]!r}]" for cls in self.classes]
        super().__init__(V=V, rank=len(self.classes), basis_names=labels)

    def class_of(self, x: int) -> int:
        return self._class_of[x]

    def power_class(self, ci: int, k: int) -> int:
        """Class of g^k for g in class ci."""
        P = self.V.parent
        x = self.classes[ci][0]
        y = 0
        for _ in range(k % P.element_order(x) if k else 0):
            y = int(P.mul[y, x])
        return self._class_of[y]


def _coset_reps(P: Group, small: Subgroup, big: Subgroup):
    mul = P.mul
    seen = set()
    reps = []
    for x in big.indices:
        if x in seen:
            continue
        seen.update(int(mul[x, s]) for s in small.indices)
        reps.append(int(x))
    return reps


class ClTheory:
    """The class-function Green functor, with Fraction coordinates."""

    name = "cl"
    is_integer = False
    orbit_products = False

    def __init__(self, parent: Group, lattice: SubgroupLattice = None):
        self.parent = parent
        self.lattice = lattice
        self._modules = {}
        self._tr_cache = {}
        self._res_cache = {}

    def module(self, V: Subgroup) -> ClassData:
        mod = self._modules.get(V.indices)
        if mod is None:
            mod = ClassData(V)
            self._modules[V.indices] = mod
        return mod

    def one(self, V: Subgroup):
        return [Fraction(1)] * self.module(V).rank

    def mult(self, V: Subgroup, i: int, j: int):
        mod = self.module(V)
        return [Fraction(int(k == i and i == j)) for k in range(mod.rank)]

    def res(self, U: Subgroup, V: Subgroup):
        key = (U.indices, V.indices)
        M = self._res_cache.get(key)
        if M is None:
            modU, modV = self.module(U), self.module(V)
            M = [[Fraction(int(modV.class_of(modU.classes[u][0]) == c))
                  for c in range(modV.rank)] for u in range(modU.rank)]
            self._res_cache[key] = M
        return M

    def tr(self, U: Subgroup, V: Subgroup):
        key = (U.indices, V.indices)
        M = self._tr_cache.get(key)
        if M is None:
            modU, modV = self.module(U), self.module(V)
            P = self.parent
            mul, inv = P.mul, P.inv
            reps = _coset_reps(P, U, V)
            M = [[Fraction(0)] * modU.rank for _ in range(modV.rank)]
            for vk in range(modV.rank):
                k = modV.classes[vk][0]
                for g in reps:
                    conj = int(mul[int(mul[inv[g], k]), g])
                    if conj in U:
                        M[vk][modU.class_of(conj)] += 1
            self._tr_cache[key] = M
        return M

    def conj(self, g: int, V: Subgroup):
        target = V.conjugate(int(g))
        modV, modT = self.module(V), self.module(target)
        perm = self.parent.conj_perm(int(g))
        M = [[Fraction(0)] * modV.rank for _ in range(modT.rank)]
        for c in range(modV.rank):
            x = modV.classes[c][0]
            M[modT.class_of(int(perm[x]))][c] = Fraction(1)
        return M

    def transfer_image_gens(self, U: Subgroup, V: Subgroup):
        M = self.tr(U, V)
        rank_u = self.module(U).rank
        return [[row[j] for row in M] for j in range(rank_u)]


def power_vector_cl(ctx: PowerContext, theory: ClTheory, H: Subgroup, fvec):
    """P_m of a class function (values on classes of H x {e}), at H x S_m."""
    src = theory.module(ctx.lift_G(H))
    V = ctx.level_subgroup(H)
    modV = theory.module(V)
    out = []
    for cls in modV.classes:
        w = cls[0]
        g, s = ctx.parts(w)
        g_lift = ctx.pair_index[(g, 0)]
        prod = Fraction(1)
        for cyc in ctx.sym.elements[s].cycles(include_fixed=True):
            ci = src.class_of(_power_index(ctx.W, g_lift, len(cyc)))
            prod *= fvec[ci]
            if not prod:
                break
        out.append(prod)
    return out


def _power_index(P: Group, x: int, k: int):
    y = 0
    for _ in range(k):
        y = int(P.mul[y, x])
    return y


def adams_psi(mod: ClassData, fvec, m: int):
    """psi_m(f)(g) = f(g^m) on the classes of mod."""
    return [fvec[mod.power_class(ci, m)] for ci in range(mod.rank)]


def p_split_classes(mod: ClassData, p: int):
    """(p-divisible, p-prime) class index lists."""
    P = mod.V.parent
    div, prime = [], []
    for ci, cls in enumerate(mod.classes):
        (div if P.element_order(cls[0]) % p == 0 else prime).append(ci)
    return div, prime


# -- representation rings ---------------------------------------------------------


class RULevel(Module):
    def __init__(self, V: Subgroup, table: CharacterTable):
        self.V = V
        self.table = table
        super().__init__(V=V, rank=len(table.irr), basis_names=list(table.names))


class RUTheory:
    """Representation rings via character tables; integer coordinates."""

    name = "ru"
    is_integer = True
    orbit_products = False

    def __init__(self, parent: Group, lattice: SubgroupLattice = None):
        self.parent = parent
        self.lattice = lattice
        self.provider = TableProvider(parent)
        self._modules = {}
        self._tr_cache = {}
        self._res_cache = {}
        self._brauer_cache = {}

    def module(self, V: Subgroup) -> RULevel:
        mod = self._modules.get(V.indices)
        if mod is None:
            mod = RULevel(V, self.provider.table(V))
            self._modules[V.indices] = mod
        return mod

    def one(self, V: Subgroup):
        mod = self.module(V)
        for i, row in enumerate(mod.table.irr):
            if all(v == Cyclo.rational(1) for v in row):
                return [int(k == i) for k in range(mod.rank)]
        raise AssertionError("no trivial character found")

    def mult(self, V: Subgroup, i: int, j: int):
        mod = self.module(V)
        vals = [a * b for a, b in zip(mod.table.irr[i], mod.table.irr[j])]
        return mod.table.decompose(vals)

    def res(self, U: Subgroup, V: Subgroup):
        key = (U.indices, V.indices)
        M = self._res_cache.get(key)
        if M is None:
            modU, modV = self.module(U), self.module(V)
            cols = []
            for chi in modV.table.irr:
                vals = [chi[modV.table.class_of(cls[0])] for cls in modU.table.classes]
                cols.append(modU.table.decompose(vals))
            M = [[cols[j][i] for j in range(modV.rank)] for i in range(modU.rank)]
            self._res_cache[key] = M
        return M

    def tr(self, U: Subgroup, V: Subgroup):
        key = (U.indices, V.indices)
        M = self._tr_cache.get(key)
        if M is None:
            modU, modV = self.module(U), self.module(V)
            cols = []
            for chi in modU.table.irr:
                vals = induced_character_values(
                    self.parent, U, V,
                    lambda e, c=chi, t=modU.table: c[t.class_of(e)],
                    modV.table.classes)
                cols.append(modV.table.decompose(vals))
            M = [[cols[j][i] for j in range(modU.rank)] for i in range(modV.rank)]
            self._tr_cache[key] = M
        return M

    def conj(self, g: int, V: Subgroup):
        target = V.conjugate(int(g))
        modV, modT = self.module(V), self.module(target)
        perm_inv = self.parent.conj_perm(int(self.parent.inv[g]))
        cols = []
        for chi in modV.table.irr:
            vals = [chi[modV.table.class_of(int(perm_inv[cls[0]]))]
                    for cls in modT.table.classes]
            cols.append(modT.table.decompose(vals))
        return [[cols[j][i] for j in range(modV.rank)] for i in range(modT.rank)]

    def transfer_image_gens(self, U: Subgroup, V: Subgroup):
        """Z-basis of the image of Ind: RU(U) -> RU(V), via Brauer induction.

        Every virtual character of U is an integer combination of characters
        induced from one-dimensional characters of subgroups, so inductions of
        those from all subgroups of U span the image without needing a
        character table for U itself.
        """
        key = (U.indices, V.indices)
        gens = self._brauer_cache.get(key)
        if gens is not None:
            return gens
        if self.lattice is None:
            self.lattice = SubgroupLattice(self.parent)
        modV = self.module(V)
        gens = []
        subs = [s for s in self.lattice.all_subgroups if s.mask & ~U.mask == 0]
        seen = set()
        for B in subs:
            keyB = _conj_key_in(B, U)
            if keyB in seen:
                continue
            seen.add(keyB)
            for phi in one_dim_characters(B):
                vals = induced_character_values(self.parent, B, V,
                                                lambda e, p=phi: p[e],
                                                modV.table.classes)
                gens.append(modV.table.decompose(vals))
        self._brauer_cache[key] = gens
        return gens


def _conj_key_in(B: Subgroup, U: Subgroup):
    seen = {B.mask}
    best = B.indices
    frontier = [B]
    while frontier:
        s = frontier.pop()
        for g in U.gen_indices:
            c = s.conjugate(int(g))
            if c.mask not in seen:
                seen.add(c.mask)
                frontier.append(c)
                if c.indices < best:
                    best = c.indices
    return best


def power_vector_ru(ctx: PowerContext, theory: RUTheory, H: Subgroup, xvec):
    """V |-> V^(tensor m) on characters: chi(h, sigma) = prod chi(h^len)."""
    assert all(c >= 0 for c in xvec), "power operation needs a genuine character"
    src = theory.module(ctx.lift_G(H))
    V = ctx.level_subgroup(H)
    modV = theory.module(V)
    chi = src.table.values_of(xvec)
    vals = []
    for cls in modV.table.classes:
        w = cls[0]
        g, s = ctx.parts(w)
        g_lift = ctx.pair_index[(g, 0)]
        prod = Cyclo.rational(1)
        for cyc in ctx.sym.elements[s].cycles(include_fixed=True):
            prod = prod * chi[src.table.class_of(_power_index(ctx.W, g_lift, len(cyc)))]
        vals.append(prod)
    out = modV.table.decompose(vals)
    assert all(c >= 0 for c in out), "power of a character is a character"
    return out


def adams_psi_ru(table: CharacterTable, xvec, m: int):
    """psi_m on RU via the character embedding; integrality asserted."""
    P = table.V.parent
    chi = table.values_of(xvec)
    vals = [chi[table.class_of(_power_index(P, cls[0], m))]
            for cls in table.classes]
    return table.decompose(vals)


# -- class functions as standalone values ------------------------------------------


def cl_green_functor(G: Group, lattice: SubgroupLattice = None):
    """The class-function Green functor of G, levels Cl(H)."""
    from .mackey import plain_green_functor
    lattice = lattice or SubgroupLattice(G)
    theory = ClTheory(G, lattice)
    return plain_green_functor(theory, G, lattice, name=f"Cl_{G.name}")


def ru_green_functor(G: Group, lattice: SubgroupLattice = None):
    """The representation-ring Green functor of G, levels RU(H).

    Raises MissingTable when some subgroup has no built-in character table.
    """
    from .mackey import plain_green_functor
    lattice = lattice or SubgroupLattice(G)
    theory = RUTheory(G, lattice)
    for cls in lattice.classes:
        theory.module(cls.rep)
    return plain_green_functor(theory, G, lattice, name=f"RU_{G.name}")


def j_ideal_cl(G: Group, p: int):
    """The J-ideal of the induced class-function functor at m = p."""
    from .gsets import power_context
    from .mackey import induce_up, j_ideal
    ctx = power_context(G, p)
    lattice = SubgroupLattice(G)
    theory = ClTheory(ctx.W, ctx.lattice)
    up = induce_up(theory, ctx, lattice)
    return j_ideal(up, ctx), up, ctx


@dataclass
class ClassFunction:
    """Exact class function on a subgroup's conjugacy classes."""
    data: ClassData
    values: list

    @staticmethod
    def indicator(data: ClassData, ci: int) -> "ClassFunction":
        return ClassFunction(data, [Fraction(int(k == ci)) for k in range(data.rank)])

    def __add__(self, other):
        return ClassFunction(self.data, [a + b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        return ClassFunction(self.data, [a * b for a, b in zip(self.values, other.values)])

    def psi(self, m: int) -> "ClassFunction":
        return ClassFunction(self.data, adams_psi(self.data, self.values, m))
