import pytest

from greenops.groups import (CapExceeded, Perm, Subgroup, SubgroupLattice,
                             cyclic_group, dihedral8, direct_product,
                             group_from_table, is_subconjugate, make_group,
                             parse_group, symmetric_group)


def test_perm_arithmetic():
    p = Perm((1, 2, 0))
    q = Perm((1, 0, 2))
    assert (p * q).images == (2, 1, 0)
    assert p.inverse().images == (2, 0, 1)
    assert p.order() == 3
    assert q.order() == 2
    assert Perm((1, 0, 3, 2)).cycle_type() == (2, 2)


def test_perm_rejects_non_bijection():
    with pytest.raises(ValueError):
        Perm((0, 0, 1))


def test_make_group_small():
    g = make_group([Perm((1, 0))])
    assert g.order == 2
    s3 = make_group([Perm((1, 2, 0)), Perm((1, 0, 2))])
    assert s3.order == 6
    d8 = make_group([Perm((1, 2, 3, 0)), Perm((2, 1, 0, 3))])
    # brute-force closure oracle: |D8| = 8
    assert d8.order == 8
    assert d8.elements[0].is_identity()


def test_make_group_cap(monkeypatch):
    monkeypatch.setenv("MF_CAP_ELEMENTS", "5")
    with pytest.raises(CapExceeded):
        make_group([Perm((1, 2, 0)), Perm((1, 0, 2))])


def test_mul_table_consistent():
    g = symmetric_group(3)
    for i in range(g.order):
        for j in range(g.order):
            assert g.elements[int(g.mul[i, j])] == g.elements[i] * g.elements[j]
    for i in range(g.order):
        assert int(g.mul[i, int(g.inv[i])]) == 0


def test_direct_product_orders():
    a = direct_product(cyclic_group(2), symmetric_group(2))
    assert a.order == 4
    b = direct_product(symmetric_group(3), symmetric_group(2))
    assert b.order == 12
    assert len(SubgroupLattice(b)) == 10
    c = direct_product(cyclic_group(3), symmetric_group(3))
    assert c.order == 18
    # exhaustive enumeration gives 9 classes (14 subgroups); the claimed
    # tenth basis orbit would need a subgroup that is not actually closed
    lat = SubgroupLattice(c)
    assert len(lat.all_subgroups) == 14
    assert len(lat) == 9


def test_projections_are_homomorphisms():
    p = direct_product(symmetric_group(3), cyclic_group(2))
    _, _, embed_a, embed_b, proj_a, proj_b, pair = p.factors
    proj_a._check()
    proj_b._check()
    embed_a._check()
    embed_b._check()
    for i in range(p.order):
        assert pair[(proj_a.map[i], proj_b.map[i])] == i


def test_subgroup_lattice_counts():
    assert len(SubgroupLattice(cyclic_group(2))) == 2
    assert len(SubgroupLattice(symmetric_group(3))) == 4
    lat8 = SubgroupLattice(dihedral8())
    assert len(lat8.all_subgroups) == 10
    assert len(lat8) == 8
    for cls in lat8.classes:
        assert dihedral8().order % cls.rep.order == 0


def test_element_conjugacy_classes():
    assert len(symmetric_group(3).conjugacy_classes()) == 3
    assert len(cyclic_group(3).conjugacy_classes()) == 3
    assert len(dihedral8().conjugacy_classes()) == 5


def test_subconjugacy_witness():
    g = symmetric_group(3)
    h1 = g.subgroup_generated([g.index_of(Perm((1, 0, 2)))])
    h2 = g.subgroup_generated([g.index_of(Perm((2, 1, 0)))])
    ok, w = is_subconjugate(h1, h2)
    assert ok
    conj = h1.conjugate(g.index_of(w))
    assert conj.mask & ~h2.mask == 0
    c3 = g.subgroup_generated([g.index_of(Perm((1, 2, 0)))])
    ok, w = is_subconjugate(c3, h2)
    assert not ok and w is None


def test_lattice_subconjugacy_is_partial_order():
    lat = SubgroupLattice(dihedral8())
    n = len(lat)
    for i in range(n):
        assert lat.is_subconjugate(i, i)
        for j in range(n):
            for k in range(n):
                if lat.is_subconjugate(i, j) and lat.is_subconjugate(j, k):
                    assert lat.is_subconjugate(i, k)


def test_normalizers():
    lat = SubgroupLattice(dihedral8())
    for cls in lat.classes:
        N = cls.normalizer
        assert cls.rep.mask & ~N.mask == 0
        for g in N.indices:
            assert cls.rep.conjugate(int(g)).mask == cls.rep.mask


def test_parse_group():
    assert parse_group("C6").order == 6
    assert parse_group("S3xS2").order == 12
    assert parse_group("D8").order == 8
    custom = parse_group("deg 4\n(0 1 2 3)\n(0 2)")
    assert custom.order == 8
    with pytest.raises(ValueError):
        parse_group("E8")


def test_group_from_table_quaternion():
    # Q8 via its multiplication table: elements 1,-1,i,-i,j,-j,k,-k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {n: t for t, n in enumerate(names)}

    def neg(n):
        return n[1:] if n.startswith("-") else "-" + n

    base = {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(a, b):
        sign = (a.startswith("-")) ^ (b.startswith("-"))
        ua, ub = a.lstrip("-"), b.lstrip("-")
        if ua == "1":
            out = ub
        elif ub == "1":
            out = ua
        elif ua == ub:
            out = "-1"
        else:
            out = base[(ua, ub)]
        if sign:
            out = neg(out)
        return out

    table = [[idx[mul(a, b)] for b in names] for a in names]
    q8 = group_from_table(names, table, name="Q8")
    assert q8.order == 8
    assert sum(1 for i in range(8) if q8.element_order(i) == 4) == 6
    assert len(SubgroupLattice(q8)) == 6
