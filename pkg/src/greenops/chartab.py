"""Exact character tables for the groups this library computes with.

Tables are built structurally: abelian groups get their dual group directly,
direct products tensor their factor tables, and the small nonabelian types we
support (order 6 and 8, plus S4) come from TOML fixtures whose classes are
matched by (element order, class size). Anything else raises MissingTable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .cyclotomic import Cyclo, cyclo_sum
from .groups import Group, Subgroup, close_indices_within

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class MissingTable(Exception):
    """No built-in character table covers this group."""


def element_classes(V: Subgroup):
    """Conjugacy classes of V (sorted index tuples, ordered by min element)."""
    P = V.parent
    members = set(V.indices)
    seen = set()
    classes = []
    for x in V.indices:
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in V.gen_indices:
                z = int(P.conj_perm(int(g))[y])
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        assert orbit <= members
        cls = tuple(sorted(orbit))
        seen.update(orbit)
        classes.append(cls)
    classes.sort(key=lambda c: c[0])
    return classes


class CharacterTable:
    """Irreducible characters of a subgroup V, exact cyclotomic values."""

    def __init__(self, V: Subgroup, classes, irr_values, names):
        self.V = V
        self.classes = classes
        self.class_sizes = [len(c) for c in classes]
        self.irr = [list(row) for row in irr_values]   # rows over classes
        self.names = list(names)
        self._class_of = {}
        for ci, cls in enumerate(classes):
            for x in cls:
                self._class_of[x] = ci

    @property
    def n_classes(self):
        return len(self.classes)

    def class_of(self, elem_index: int) -> int:
        return self._class_of[elem_index]

    def inner(self, u, v) -> Cyclo:
        total = cyclo_sum(Cyclo.rational(sz) * a * b.conjugate()
                          for sz, a, b in zip(self.class_sizes, u, v))
        return total * Fraction(1, self.V.order)

    def decompose(self, values, integral=True):
        """Coordinates of a class function in the irreducible basis."""
        out = []
        for chi in self.irr:
            c = self.inner(values, chi)
            if integral:
                assert c.is_rational() and c.rational_value().denominator == 1, \
                    f"non-integral multiplicity {c}"
                out.append(int(c.rational_value()))
            else:
                out.append(c)
        return out

    def values_of(self, coords):
        """Class-function values of an integer vector in the irr basis."""
        out = [Cyclo.rational(0)] * self.n_classes
        for c, row in zip(coords, self.irr):
            if c:
                for j in range(self.n_classes):
                    out[j] = out[j] + Cyclo.rational(c) * row[j]
        return out

    def validate(self):
        n = self.n_classes
        assert len(self.irr) == n, "irreducible count != class count"
        for i in range(n):
            for j in range(n):
                got = self.inner(self.irr[i], self.irr[j])
                want = Cyclo.rational(1 if i == j else 0)
                assert got == want, f"orthogonality fails at ({i},{j}): {got}"
        e_cls = self.class_of(0)
        dim2 = sum(int(r[e_cls].rational_value()) ** 2 for r in self.irr)
        assert dim2 == self.V.order, "sum of squared dimensions != |V|"
        return True


def trivial_table(V: Subgroup) -> CharacterTable:
    return CharacterTable(V, [(0,)], [[Cyclo.rational(1)]], ["1"])


def abelian_table(V: Subgroup) -> CharacterTable:
    """The dual group of an abelian V, by exhaustive homomorphism search."""
    P = V.parent
    mul = P.mul
    elems = list(V.indices)
    pos = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    orders = [P.element_order(x) for x in elems]
    exponent = 1
    for o in orders:
        exponent = exponent * o // gcd(exponent, o)
    # greedy generators
    gens = []
    span = {0}
    for x in elems:
        if x not in span:
            gens.append(x)
            span = close_indices_within(mul, set(gens), elems)
        if len(span) == n:
            break
    if not gens:
        return trivial_table(V)
    # one factorization edge set: value[x*g] = value[x] + t_g
    import itertools
    chars = []
    steps = [exponent // P.element_order(g) for g in gens]
    ranges = [range(0, exponent, st) for st in steps]
    for ts in itertools.product(*ranges):
        val = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, t in zip(gens, ts):
                    y = int(mul[x, g])
                    w = (val[x] + t) % exponent
                    if y in val:
                        if val[y] != w:
                            ok = False
                            break
                    else:
                        val[y] = w
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(val) != n:
            continue
        # verify all edges, not just tree edges
        good = all((val[x] + t) % exponent == val[int(mul[x, g])]
                   for x in elems for g, t in zip(gens, ts))
        if good:
            chars.append(val)
    assert len(chars) == n, f"abelian dual has wrong size {len(chars)} != {n}"
    classes = [(x,) for x in elems]
    # trivial character first, then by exponent vectors
    chars.sort(key=lambda val: (any(val[x] for x in elems),
                                [val[x] for x in elems]))
    irr = [[Cyclo.root(exponent, val[c[0]]) for c in classes] for val in chars]
    if len(gens) == 1:
        # cyclic: name by the exponent at the generator
        g0 = gens[0]
        names = []
        for val in chars:
            k = val[g0] * P.element_order(g0) // exponent
            names.append("1" if k == 0 else ("L" if k == 1 else f"L^{k}"))
    else:
        names = ["1" if not any(val[x] for x in elems) else f"chi{i}"
                 for i, val in enumerate(chars)]
    return CharacterTable(V, classes, irr, names)


@lru_cache(maxsize=None)
def _load_fixture(name: str):
    with open(os.path.join(DATA_DIR, f"{name}.toml"), "rb") as fh:
        return tomllib.load(fh)


def fixture_table(V: Subgroup, fixture_name: str) -> CharacterTable:
    """Build a table from TOML data, matching classes by (order, size).

    Classes sharing a signature are assigned in list order; for the shipped
    fixtures every such assignment differs by a group automorphism, and the
    orthogonality validation gates the result either way.
    """
    data = _load_fixture(fixture_name)
    if V.order != data["order"]:
        raise MissingTable(f"fixture {fixture_name} has order {data['order']}")
    classes = element_classes(V)
    P = V.parent
    cols_by_sig = {}
    for col, cls in enumerate(data["classes"]):
        cols_by_sig.setdefault((cls["order"], cls["size"]), []).append(col)
    perm = []
    used = {sig: 0 for sig in cols_by_sig}
    for cls in classes:
        sig = (P.element_order(cls[0]), len(cls))
        if sig not in cols_by_sig or used[sig] >= len(cols_by_sig[sig]):
            raise MissingTable(f"class signature {sig} not matched by fixture {fixture_name}")
        perm.append(cols_by_sig[sig][used[sig]])
        used[sig] += 1
    assert sorted(perm) == list(range(len(data["classes"])))
    irr = []
    for row in data["irreducibles"]:
        irr.append([_parse_value(row["values"][perm[j]]) for j in range(len(classes))])
    tab = CharacterTable(V, classes, irr, [row["name"] for row in data["irreducibles"]])
    tab.validate()
    return tab


def _parse_value(v):
    if isinstance(v, int):
        return Cyclo.rational(v)
    if isinstance(v, dict):
        return cyclo_sum(Cyclo.root(v["conductor"], k) * Fraction(c)
                         for k, c in enumerate(v["coeffs"]))
    raise ValueError(f"bad fixture value {v!r}")


def one_dim_characters(V: Subgroup):
    """All 1-dimensional characters of V, as dicts element-index -> Cyclo.

    Computed through the commutator quotient, so V need not be abelian.
    """
    P = V.parent
    C = V.commutator_subgroup()
    mul = P.mul
    # cosets of C in V
    seen = set()
    cosets = []
    for x in V.indices:
        if x in seen:
            continue
        cos = tuple(sorted(int(mul[x, c]) for c in C.indices))
        seen.update(cos)
        cosets.append(cos)
    cosets.sort(key=lambda c: c[0])
    coset_of = {}
    for i, cos in enumerate(cosets):
        for x in cos:
            coset_of[x] = i
    n = len(cosets)
    # quotient multiplication on coset reps
    qmul = [[coset_of[int(mul[cosets[i][0], cosets[j][0]])] for j in range(n)]
            for i in range(n)]
    qorder = [1] * n
    for i in range(n):
        k, x = 1, i
        while x != 0:
            x = qmul[x][i]
            k += 1
        qorder[i] = k if i else 1
    exponent = 1
    for o in qorder:
        exponent = exponent * o // gcd(exponent, o)
    # greedy generators of the quotient
    gens = []
    span = {0}
    for x in range(n):
        if x not in span:
            gens.append(x)
            frontier = list(span)
            span = set(span)
            # closure under new generator set
            changed = True
            while changed:
                changed = False
                for a in list(span):
                    for g in gens:
                        b = qmul[a][g]
                        if b not in span:
                            span.add(b)
                            changed = True
        if len(span) == n:
            break
    import itertools
    out = []
    ranges = [range(0, exponent, exponent // qorder[g]) for g in gens]
    for ts in itertools.product(*ranges):
        val = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, t in zip(gens, ts):
                    y = qmul[x][g]
                    w = (val[x] + t) % exponent
                    if y in val:
                        if val[y] != w:
                            ok = False
                            break
                    else:
                        val[y] = w
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(val) != n:
            continue
        if not all((val[x] + t) % exponent == val[qmul[x][g]]
                   for x in range(n) for g, t in zip(gens, ts)):
            continue
        out.append({x: Cyclo.root(exponent, val[coset_of[x]]) for x in V.indices})
    assert len(out) == n, "wrong number of linear characters"
    out.sort(key=lambda d: [str(d[x]) for x in V.indices])
    return out


class TableProvider:
    """Character tables for subgroups of one root group.

    Split rules record internal direct-product decompositions of the root so
    that product subgroups get tensor tables.
    """

    def __init__(self, root: Group):
        self.root = root
        self.split_rules = []
        self._cache = {}
        self._register_group(root, root.full_subgroup().indices, None)

    def _register_group(self, g: Group, ambient_indices, embed):
        """Record split rules of g, translated into root element indices."""
        if g.factors is None:
            return
        a, b, embed_a, embed_b, _, _, pair_index = g.factors
        if embed is None:
            lift = lambda i: i
        else:
            lift = embed
        mask_a = [lift(pair_index[(i, 0)]) for i in range(a.order)]
        mask_b = [lift(pair_index[(0, j)]) for j in range(b.order)]
        decomp = {}
        mul = self.root.mul
        for ia in mask_a:
            for ib in mask_b:
                decomp[int(mul[ia, ib])] = (ia, ib)
        self.split_rules.append((frozenset(mask_a), frozenset(mask_b), decomp))
        self._register_group(a, mask_a, lambda i, L=lift, E=embed_a: L(E.map[i]))
        self._register_group(b, mask_b, lambda i, L=lift, E=embed_b: L(E.map[i]))

    def table(self, V: Subgroup) -> CharacterTable:
        tab = self._cache.get(V.indices)
        if tab is None:
            tab = self._build(V)
            self._cache[V.indices] = tab
        return tab

    def _build(self, V: Subgroup) -> CharacterTable:
        if V.order == 1:
            return trivial_table(V)
        if V.is_abelian():
            return abelian_table(V)
        for set_a, set_b, decomp in self.split_rules:
            part_a = [x for x in V.indices if x in set_a]
            part_b = [x for x in V.indices if x in set_b]
            if (len(part_a) * len(part_b) != V.order
                    or len(part_a) == V.order or len(part_b) == V.order):
                continue
            if all(x in decomp and decomp[x][0] in V and decomp[x][1] in V
                   for x in V.indices):
                A = Subgroup(self.root, tuple(part_a))
                B = Subgroup(self.root, tuple(part_b))
                return self._tensor(V, A, B, decomp)
        if V.order == 6:
            return fixture_table(V, "s3")
        if V.order == 8:
            return fixture_table(V, "d8" if self._order4_count(V) == 2 else "q8")
        if V.order == 24:
            try:
                return fixture_table(V, "s4")
            except (MissingTable, AssertionError):
                pass
        raise MissingTable(f"no character table for subgroup of order {V.order}")

    def _order4_count(self, V):
        return sum(1 for x in V.indices if self.root.element_order(x) == 4)

    def _tensor(self, V, A, B, decomp):
        ta = self.table(A)
        tb = self.table(B)
        classes = element_classes(V)
        irr = []
        names = []
        for i, ra in enumerate(ta.irr):
            for j, rb in enumerate(tb.irr):
                row = []
                for cls in classes:
                    xa, xb = decomp[cls[0]]
                    row.append(ra[ta.class_of(xa)] * rb[tb.class_of(xb)])
                irr.append(row)
                names.append(f"{ta.names[i]}*{tb.names[j]}")
        return CharacterTable(V, classes, irr, names)


def induced_character_values(P: Group, small: Subgroup, big: Subgroup,
                             f_of_elem, big_classes):
    """Values of Ind(f) on the classes of ``big``; f given elementwise on small."""
    mul, inv = P.mul, P.inv
    # coset reps of small in big
    seen = set()
    reps = []
    for x in big.indices:
        if x in seen:
            continue
        cos = [int(mul[x, s]) for s in small.indices]
        seen.update(cos)
        reps.append(x)
    out = []
    for cls in big_classes:
        k = cls[0]
        total = Cyclo.rational(0)
        for g in reps:
            conj = int(mul[int(mul[inv[g], k]), g])
            if conj in small:
                total = total + f_of_elem(conj)
        out.append(total)
    return out
