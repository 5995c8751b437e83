import pytest

from greenops.chartab import (MissingTable, TableProvider, abelian_table,
                              element_classes, induced_character_values,
                              one_dim_characters)
from greenops.cyclotomic import Cyclo
from greenops.groups import (Perm, cyclic_group, dihedral8, direct_product,
                             make_group, parse_group, symmetric_group)


@pytest.mark.parametrize("spec", ["C1", "C2", "C3", "C4", "C5", "C6", "C7",
                                  "C8", "C2xC2", "C2xC4", "C3xC3", "C2xC2xC2"])
def test_abelian_tables(spec):
    g = parse_group(spec)
    t = TableProvider(g).table(g.full_subgroup())
    t.validate()
    assert t.n_classes == g.order
    assert t.names[0] == "1"


@pytest.mark.parametrize("spec,n", [("S3", 3), ("D8", 5), ("S4", 5)])
def test_fixture_tables(spec, n):
    g = parse_group(spec)
    t = TableProvider(g).table(g.full_subgroup())
    t.validate()
    assert t.n_classes == n


def test_s3_values():
    g = symmetric_group(3)
    t = TableProvider(g).table(g.full_subgroup())
    assert t.names == ["1", "s", "W"]
    vals = [[v.rational_value() for v in row] for row in t.irr]
    assert vals == [[1, 1, 1], [1, -1, 1], [2, 0, -1]]


def test_cyclic_table_names_and_values():
    g = cyclic_group(3)
    t = TableProvider(g).table(g.full_subgroup())
    assert t.names == ["1", "L", "L^2"]
    z3 = Cyclo.root(3)
    # L takes the generator to a primitive root
    gen_cls = t.class_of(1)
    assert t.irr[1][gen_cls] in (z3, z3 * z3)


def test_product_tables():
    p = direct_product(symmetric_group(3), cyclic_group(2))
    prov = TableProvider(p)
    t = prov.table(p.full_subgroup())
    t.validate()
    assert t.n_classes == 6
    # nested products
    q = direct_product(p, cyclic_group(2))
    t2 = TableProvider(q).table(q.full_subgroup())
    t2.validate()
    assert t2.n_classes == 12


def test_subgroup_tables_of_product():
    p = direct_product(symmetric_group(3), cyclic_group(2))
    prov = TableProvider(p)
    # the twisted S3 = {(x, sgn x)} is order-6 nonabelian, not a split product
    pair = p.factors[6]
    s3 = symmetric_group(3)
    members = []
    for i, perm in enumerate(s3.elements):
        par = 0 if perm.order() in (1, 3) else 1
        members.append(pair[(i, par)])
    tw = p.subgroup_from_elements(members)
    assert tw.order == 6 and not tw.is_abelian()
    prov.table(tw).validate()
    # a diagonal C6
    rho = s3.index_of(Perm((1, 2, 0)))
    c6 = p.subgroup_generated([pair[(rho, 1)]])
    assert c6.order == 6
    prov.table(c6).validate()


def test_missing_table():
    a4 = make_group([Perm((1, 2, 0, 3)), Perm((1, 0, 3, 2))], name="A4")
    assert a4.order == 12
    with pytest.raises(MissingTable):
        TableProvider(a4).table(a4.full_subgroup())


def test_q8_table(q8):
    t = TableProvider(q8).table(q8.full_subgroup())
    t.validate()
    assert t.n_classes == 5
    # discriminated from D8 by order-4 element counts
    assert sum(1 for i in range(8) if q8.element_order(i) == 4) == 6
    d8 = dihedral8()
    assert sum(1 for i in range(8) if d8.element_order(i) == 4) == 2


def test_one_dim_characters():
    s3 = symmetric_group(3)
    lin = one_dim_characters(s3.full_subgroup())
    assert len(lin) == 2
    tau = s3.index_of(Perm((1, 0, 2)))
    rho = s3.index_of(Perm((1, 2, 0)))
    vals = sorted((str(d[tau]), str(d[rho])) for d in lin)
    assert vals == [("-1", "1"), ("1", "1")]
    d8 = dihedral8()
    assert len(one_dim_characters(d8.full_subgroup())) == 4
    c4 = cyclic_group(4)
    assert len(one_dim_characters(c4.full_subgroup())) == 4


def test_induced_character_frobenius():
    """<Ind f, chi> = <f, Res chi> on every pair, for C2 <= S3."""
    s3 = symmetric_group(3)
    prov = TableProvider(s3)
    big = prov.table(s3.full_subgroup())
    c2 = s3.subgroup_generated([s3.index_of(Perm((1, 0, 2)))])
    small = prov.table(c2)
    for f_row in small.irr:
        ind = induced_character_values(
            s3, c2, s3.full_subgroup(),
            lambda e, r=f_row, t=small: r[t.class_of(e)], big.classes)
        for j, chi in enumerate(big.irr):
            lhs = big.inner(ind, chi)
            res = [chi[big.class_of(cls[0])] for cls in small.classes]
            rhs = small.inner(f_row, res)
            assert lhs == rhs


def test_element_classes_sorted():
    s3 = symmetric_group(3)
    classes = element_classes(s3.full_subgroup())
    assert classes[0] == (0,)
    assert [c[0] for c in classes] == sorted(c[0] for c in classes)
