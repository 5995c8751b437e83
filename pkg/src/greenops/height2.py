"""Height-2 generalized class functions: commuting pairs of p-power order.

Cl2(V) is the ring of functions on simultaneous-conjugacy classes of
commuting pairs (a, b) with both entries of p-power order. Restriction is
levelwise inclusion; induction mirrors the one-variable transfer:

    Tr(f)(a, b) = sum over cosets gU fixed by <a, b> of f(g^-1 a g, g^-1 b g).

The power operation is implemented only for the fixture the theory pins down
exactly: the group of order 2 with p = 2, m = 2, where it depends on a choice
table for the off-diagonal values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import Group, Subgroup


def _is_p_power_order(P: Group, x: int, p: int) -> bool:
    o = P.element_order(x)
    while o % p == 0:
        o //= p
    return o == 1


class PairClassData:
    """Commuting p-power pairs of a subgroup, up to simultaneous conjugacy."""

    def __init__(self, V: Subgroup, p: int):
        self.V = V
        self.p = p
        P = V.parent
        mul = P.mul
        pts = [x for x in V.indices if _is_p_power_order(P, x, p)]
        pairs = [(a, b) for a in pts for b in pts
                 if int(mul[a, b]) == int(mul[b, a])]
        pair_set = set(pairs)
        seen = set()
        classes = []
        for pr in pairs:
            if pr in seen:
                continue
            orbit = {pr}
            frontier = [pr]
            while frontier:
                a, b = frontier.pop()
                for g in V.gen_indices:
                    c = P.conj_perm(int(g))
                    npair = (int(c[a]), int(c[b]))
                    if npair not in orbit:
                        orbit.add(npair)
                        frontier.append(npair)
            assert orbit <= pair_set
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda cls: cls[0])
        self.classes = classes
        self._class_of = {}
        for ci, cls in enumerate(classes):
            for pr in cls:
                self._class_of[pr] = ci

    @property
    def rank(self):
        return len(self.classes)

    def class_of(self, a: int, b: int) -> int:
        return self._class_of[(a, b)]

    def labels(self):
        P = self.V.parent
        return [f"({P.elements[c[0][0]]!r},{P.elements[c[0][1]]!r})" for c in self.classes]


def pair_res(small: PairClassData, big: PairClassData):
    """Restriction matrix Cl2(big) -> Cl2(small)."""
    M = [[Fraction(0)] * big.rank for _ in range(small.rank)]
    for u, cls in enumerate(small.classes):
        a, b = cls[0]
        M[u][big.class_of(a, b)] = Fraction(1)
    return M


def pair_tr(small: PairClassData, big: PairClassData):
    """Induction matrix Cl2(small) -> Cl2(big), by the fixed-coset formula."""
    P = big.V.parent
    mul, inv = P.mul, P.inv
    U, V = small.V, big.V
    seen = set()
    reps = []
    for x in V.indices:
        if x in seen:
            continue
        seen.update(int(mul[x, s]) for s in U.indices)
        reps.append(int(x))
    M = [[Fraction(0)] * small.rank for _ in range(big.rank)]
    for vk, cls in enumerate(big.classes):
        a, b = cls[0]
        for g in reps:
            gi = int(inv[g])
            ca = int(mul[int(mul[gi, a]), g])
            cb = int(mul[int(mul[gi, b]), g])
            if ca in U and cb in U:
                M[vk][small.class_of(ca, cb)] += 1
    return M


# -- the order-2 fixture -----------------------------------------------------


DEFAULT_CHOICE = {
    # row (x1, x2) in C2^2, column (s1, s2) in S2^2 -> slot of the input value
    ((0, 1), (1, 0)): "b", ((0, 1), (1, 1)): "b",
    ((1, 0), (0, 1)): "c", ((1, 0), (1, 1)): "b",
    ((1, 1), (0, 1)): "c", ((1, 1), (1, 0)): "b",
}


def height2_power_fixture(fvec, choice=None):
    """The order-2, p = 2, m = 2 power operation table.

    ``fvec`` lists the four input values (a, b, c, d) on the pair classes
    (0,0), (0,1), (1,0), (1,1); the result is a 4x4 table over row = C2-pair,
    column = S2-pair. Diagonal-style entries square the input; the six
    off-diagonal cells come from the choice table (slots "a".."d").
    """
    if choice is None:
        choice = DEFAULT_CHOICE
    a, b, c, d = fvec
    slots = {"a": a, "b": b, "c": c, "d": d}
    rows = [(0, 0), (0, 1), (1, 0), (1, 1)]
    cols = [(0, 0), (0, 1), (1, 0), (1, 1)]
    diag_input = {(0, 0): a, (0, 1): b, (1, 0): c, (1, 1): d}
    out = {}
    for r in rows:
        for s in cols:
            if s == (0, 0):
                out[(r, s)] = diag_input[r] * diag_input[r]
            elif r == s:
                out[(r, s)] = a
            elif r == (0, 0):
                out[(r, s)] = a
            else:
                out[(r, s)] = slots[choice[(r, s)]]
    return out


def height2_power_point(value):
    """P_2 on the trivial group: a -> (a^2, a, a, a) over S2-pair classes."""
    return {(0, 0): value * value, (0, 1): value, (1, 0): value, (1, 1): value}


def collapsed_cells():
    """Cells killed by the transfer ideal: the first column (partition
    transfers) and the diagonal (transfer from the diagonal subgroup)."""
    killed = {(r, (0, 0)) for r in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    killed |= {((0, 1), (0, 1)), ((1, 0), (1, 0)), ((1, 1), (1, 1))}
    return killed


def restriction_diagram_commutes(fvec, choice=None) -> bool:
    """Restrict to the S2 factor after P_2 vs P_2 of the restriction."""
    table = height2_power_fixture(fvec, choice)
    killed = collapsed_cells()
    a = fvec[0]
    target = height2_power_point(a)
    for s in [(0, 1), (1, 0), (1, 1)]:
        if (((0, 0), s)) in killed:
            continue
        if table[((0, 0), s)] != target[s]:
            return False
    return True


def induction_diagram_commutes(fvec_point, choice=None) -> bool:
    """Induce a point-level value up both ways around the square."""
    a = fvec_point
    # left: induce to the order-2 group: (2a, 0, 0, 0); then P_2
    up = height2_power_fixture([2 * a, 0, 0, 0], choice)
    # right: P_2 to S2-pairs (a^2, a, a, a), then induce to the product:
    # transfers from e x S2 double the value on pairs with trivial C2 part
    killed = collapsed_cells()
    rows = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for r in rows:
        for s in [(0, 1), (1, 0), (1, 1)]:
            if (r, s) in killed:
                continue
            want = 2 * a if r == (0, 0) else 0
            if up[(r, s)] != want:
                return False
    return True
