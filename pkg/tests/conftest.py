"""Shared fixtures: the small groups outside the name catalog."""

import pytest

from greenops.groups import Group, Perm, group_from_table, make_group


def quaternion_group() -> Group:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {n: t for t, n in enumerate(names)}
    base = {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def neg(n):
        return n[1:] if n.startswith("-") else "-" + n

    def mul(a, b):
        sign = a.startswith("-") ^ b.startswith("-")
        ua, ub = a.lstrip("-"), b.lstrip("-")
        if ua == "1":
            out = ub
        elif ub == "1":
            out = ua
        elif ua == ub:
            out = "-1"
        else:
            out = base[(ua, ub)]
        return neg(out) if sign else out

    table = [[idx[mul(a, b)] for b in names] for a in names]
    g = group_from_table(names, table, name="Q8")
    assert g.order == 8
    return g


def dicyclic12_group() -> Group:
    """Dic3 = <a, b | a^6, b^2 = a^3, b a b^-1 = a^-1>, regular action."""
    elems = [(i, j) for j in range(2) for i in range(6)]
    idx = {e: t for t, e in enumerate(elems)}

    def mul(x, y):
        i, j = x
        k, l = y
        if j == 0:
            out = ((i + k) % 6, l)
        else:
            # b a^k = a^-k b ; b b = a^3
            out = ((i - k) % 6, 1) if l == 0 else ((i - k + 3) % 6, 0)
        return out

    # reindex with identity first
    order = sorted(range(12), key=lambda t: elems[t] != (0, 0))
    names = [elems[t] for t in order]
    pos = {n: t for t, n in enumerate(names)}
    table = [[pos[mul(a, b)] for b in names] for a in names]
    g = group_from_table(names, table, name="Dic3")
    assert g.order == 12
    assert sum(1 for i in range(12) if g.element_order(i) == 2) == 1
    return g


def alternating4_group() -> Group:
    g = make_group([Perm((1, 2, 0, 3)), Perm((1, 0, 3, 2))], name="A4")
    assert g.order == 12
    return g


def dihedral10_group() -> Group:
    g = make_group([Perm((1, 2, 3, 4, 0)), Perm((0, 4, 3, 2, 1))], name="D10")
    assert g.order == 10
    return g


def dihedral12_group() -> Group:
    g = make_group([Perm((1, 2, 3, 4, 5, 0)), Perm((0, 5, 4, 3, 2, 1))],
                   name="D12")
    assert g.order == 12
    return g


@pytest.fixture
def q8():
    return quaternion_group()
