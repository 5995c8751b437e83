import itertools
from fractions import Fraction

import pytest

from greenops.charfun import (ClTheory, RUTheory, adams_psi, adams_psi_ru,
                              cl_green_functor, p_split_classes,
                              power_vector_cl, power_vector_ru,
                              ru_green_functor)
from greenops.chartab import MissingTable
from greenops.cyclotomic import Cyclo
from greenops.groups import (Perm, SubgroupLattice, cyclic_group, dihedral8,
                             make_group, parse_group, symmetric_group)
from greenops.gsets import power_context
from greenops.linalg import mat_mul
from greenops.mackey import (PowerOperationInstance, induce_up, itr_ideal,
                             j_ideal, quotient, restrict_down,
                             verify_green_axioms, verify_green_map)
from greenops.reports import (EvalPresentation, PipelineReport,
                              check_evaluation_iso, evaluation_matrix)


def test_cl_transfer_c2():
    c2 = cyclic_group(2)
    th = ClTheory(c2)
    M = th.tr(c2.trivial_subgroup(), c2.full_subgroup())
    assert M == [[Fraction(2)], [Fraction(0)]]
    R = th.res(c2.trivial_subgroup(), c2.full_subgroup())
    assert mat_mul(R, M) == [[Fraction(2)]]


def test_cl_transfer_s3_tau_indicator():
    s3 = symmetric_group(3)
    th = ClTheory(s3)
    tau = s3.subgroup_generated([s3.index_of(Perm((1, 0, 2)))])
    M = th.tr(tau, s3.full_subgroup())
    # indicator of the involution class transfers to value 1 at [tau]
    col = [row[1] for row in M]
    assert col == [Fraction(0), Fraction(1), Fraction(0)]
    # and the identity column counts the index
    col0 = [row[0] for row in M]
    assert col0 == [Fraction(3), Fraction(0), Fraction(0)]


@pytest.mark.parametrize("spec", ["C2", "C3", "S3", "D8"])
@pytest.mark.parametrize("m", [2, 3])
def test_class_mod_transfer_is_psi(spec, m):
    """P_m followed by long-cycle evaluation equals the Adams operation, on a
    full basis of indicator class functions."""
    G = parse_group(spec)
    ctx = power_context(G, m)
    th = ClTheory(ctx.W)
    full = G.full_subgroup()
    src = th.module(ctx.lift_G(full))
    V = ctx.level_subgroup(full)
    modV = th.module(V)
    sigma = ctx.long_cycle_index()
    for ci in range(src.rank):
        f = [Fraction(int(k == ci)) for k in range(src.rank)]
        Pf = power_vector_cl(ctx, th, full, f)
        psi = adams_psi(src, f, m)
        for gi in range(src.rank):
            g = src.classes[gi][0]
            w = ctx.pair_index[(int(ctx.g_part[g]), sigma)]
            assert Pf[modV.class_of(w)] == psi[gi]


def test_psi_ring_map_and_characters():
    for spec in ["C2", "C3", "S3", "D8"]:
        G = parse_group(spec)
        lat = SubgroupLattice(G)
        th = RUTheory(G, lat)
        tab = th.module(G.full_subgroup()).table
        rank = len(tab.irr)
        for m in (2, 3):
            # psi_m is a ring map: check on all basis pairs
            for i in range(rank):
                e_i = [int(k == i) for k in range(rank)]
                pi = adams_psi_ru(tab, e_i, m)
                for j in range(rank):
                    e_j = [int(k == j) for k in range(rank)]
                    pj = adams_psi_ru(tab, e_j, m)
                    prod = th.mult(G.full_subgroup(), i, j)
                    lhs = adams_psi_ru(tab, prod, m)
                    # multiply pi * pj through values
                    vi = tab.values_of(pi)
                    vj = tab.values_of(pj)
                    rhs = tab.decompose([a * b for a, b in zip(vi, vj)])
                    assert lhs == rhs


def test_ru_c2_tr_and_relations():
    c2 = cyclic_group(2)
    th = RUTheory(c2, SubgroupLattice(c2))
    tr = th.tr(c2.trivial_subgroup(), c2.full_subgroup())
    assert [row[0] for row in tr] == [1, 1]  # regular representation 1 + s
    tab = th.module(c2.full_subgroup()).table
    assert adams_psi_ru(tab, [0, 1], 2) == [1, 0]  # psi^2(s) = 1
    assert th.mult(c2.full_subgroup(), 1, 1) == [1, 0]  # s^2 = 1


def test_ru_s3_relations():
    s3 = symmetric_group(3)
    th = RUTheory(s3, SubgroupLattice(s3))
    V = s3.full_subgroup()
    assert th.module(V).basis_names == ["1", "s", "W"]
    assert th.mult(V, 1, 1) == [1, 0, 0]
    assert th.mult(V, 1, 2) == [0, 0, 1]
    assert th.mult(V, 2, 2) == [1, 1, 1]


def test_ru_c3_relations():
    c3 = cyclic_group(3)
    th = RUTheory(c3, SubgroupLattice(c3))
    V = c3.full_subgroup()
    assert th.mult(V, 1, 1) == [0, 0, 1]
    assert th.mult(V, 1, 2) == [1, 0, 0]


def test_ru_green_functor_axioms():
    R = ru_green_functor(symmetric_group(3))
    rep = verify_green_axioms(R)
    assert rep.ok, rep.failures()


def test_ru_missing_table():
    a4 = make_group([Perm((1, 2, 0, 3)), Perm((1, 0, 3, 2))], name="A4")
    with pytest.raises(MissingTable):
        ru_green_functor(a4)


def test_ru_power_one_dimensional():
    """For 1-dimensional characters the power operation is multiplicative
    along cycles: squaring s lands on the trivial character mod transfers."""
    c2 = cyclic_group(2)
    ctx = power_context(c2, 2)
    th = RUTheory(ctx.W, ctx.lattice)
    full = c2.full_subgroup()
    out = power_vector_ru(ctx, th, full, [0, 1])
    # evaluate at the long cycle: psi^2(s) = 1
    E = evaluation_matrix(th, ctx, full)
    from greenops.mackey import apply_matrix
    assert apply_matrix(E, out) == [1, 0]


def test_evaluation_iso_cl_and_ru():
    for spec, m in [("C2", 2), ("S3", 2), ("S3", 3), ("C3", 3)]:
        G = parse_group(spec)
        ctx = power_context(G, m)
        lat = SubgroupLattice(G)
        for theory_cls in (ClTheory, RUTheory):
            th = theory_cls(ctx.W, ctx.lattice)
            up = induce_up(th, ctx, lat)
            itr = itr_ideal(up, ctx)
            for ci in range(up.n_levels):
                H = lat.classes[ci].rep
                assert check_evaluation_iso(th, ctx, H, itr.lattices[ci])


def test_rupipeline_matches_paper_s3_m2():
    rep = PipelineReport(symmetric_group(3), 2, "ru", "j")
    assert rep.verification.ok
    # quotient levels Z, Z, Z{1,L,L^2}, Z{1,W}
    pres = [rep.quotient_presentation(ci) for ci in range(4)]
    assert pres[0] == [("Z", "1")]
    assert pres[1] == [("Z", "1")]
    assert pres[2] == [("Z", "1"), ("Z", "L"), ("Z", "L^2")]
    assert pres[3] == [("Z", "1"), ("Z", "W")]
    assert rep.power_matrix(3) == [[1, 1, 0], [0, 0, 1]]
    assert rep.power_matrix(2) == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert rep.quotient_res(2, 3) == [[1, 0], [0, 1], [0, 1]]
    assert rep.quotient_tr(2, 3) == [[2, 0, 0], [0, 1, 1]]
    assert rep.quotient_res(1, 3) == [[1, 2]]
    assert rep.quotient_tr(1, 3) == [[1], [1]]
    assert rep.quotient_tr(0, 1) == [[2]]


def test_rupipeline_matches_paper_s3_m3():
    rep = PipelineReport(symmetric_group(3), 3, "ru", "j")
    assert rep.verification.ok
    pres = [rep.quotient_presentation(ci) for ci in range(4)]
    assert pres[0] == [("Z", "1")]
    assert pres[1] == [("Z", "1"), ("Z", "s")]
    assert pres[2] == [("Z", "1"), ("Z/3", "L - 1")]
    assert pres[3] == [("Z", "1"), ("Z", "s")]
    assert rep.power_matrix(3) == [[1, 0, 1], [0, 1, 1]]
    assert rep.power_matrix(2) == [[1, 1, 1], [0, 0, 0]]
    assert rep.power_matrix(1) == [[1, 0], [0, 1]]
    assert rep.quotient_res(1, 3) == [[1, 0], [0, 1]]
    assert rep.quotient_tr(1, 3) == [[2, 1], [1, 2]]
    assert rep.quotient_res(2, 3) == [[1, 1], [0, 0]]
    assert rep.quotient_tr(2, 3) == [[1, 0], [1, 0]]
    assert rep.quotient_tr(0, 2) == [[3], [0]]
    assert rep.quotient_res(0, 2) == [[1, 0]]


def test_ruc2_quotient_constant():
    rep = PipelineReport(cyclic_group(2), 2, "ru", "j")
    assert rep.verification.ok
    assert rep.quotient_presentation(0) == [("Z", "1")]
    assert rep.quotient_presentation(1) == [("Z", "1")]
    assert rep.quotient_res(0, 1) == [[1]]
    assert rep.quotient_tr(0, 1) == [[2]]
    # the reduced map is the augmentation: 1 -> 1, s -> 1
    assert rep.power_matrix(1) == [[1, 1]]


def test_cl_pipeline_s3_diagrams():
    """The class-function diagrams at m = 2 and m = 3."""
    rep2 = PipelineReport(symmetric_group(3), 2, "cl", "j")
    assert rep2.verification.ok
    # 2-prime classes survive: S3 keeps {e, rho}; C3 all; C2 only e; e all
    pres = [rep2.quotient_presentation(ci) for ci in range(4)]
    assert [len(p) for p in pres] == [1, 1, 3, 2]
    # class order here is (e, tau, rho) for S3 levels, (e, rho, rho^2) for C3
    q = Fraction(1)
    assert rep2.quotient_res(2, 3) == [[q, 0], [0, q], [0, q]]
    assert rep2.quotient_tr(2, 3) == [[2 * q, 0, 0], [0, q, q]]
    assert rep2.quotient_tr(1, 3) == [[3 * q], [0]]
    assert rep2.quotient_res(1, 3) == [[q, 0]]
    assert rep2.power_matrix(2) == [[q, 0, 0], [0, 0, q], [0, q, 0]]
    # psi_2 keeps the 2-prime classes {e, rho}: f(e), f(rho^2) = f(rho)
    assert rep2.power_matrix(3) == [[q, 0, 0], [0, 0, q]]

    rep3 = PipelineReport(symmetric_group(3), 3, "cl", "j")
    assert rep3.verification.ok
    pres = [rep3.quotient_presentation(ci) for ci in range(4)]
    assert [len(p) for p in pres] == [1, 2, 1, 2]
    assert rep3.quotient_tr(1, 3) == [[3 * q, 0], [0, q]]
    assert rep3.quotient_res(1, 3) == [[q, 0], [0, q]]
    assert rep3.quotient_tr(2, 3) == [[2 * q], [0]]
    assert rep3.quotient_res(2, 3) == [[q, 0]]
    # psi_3 keeps the 3-prime classes {e, tau}: f(e^3), f(tau^3) = f(tau)
    assert rep3.power_matrix(3) == [[q, 0, 0], [0, q, 0]]
    assert rep3.power_matrix(2) == [[q, 0, 0]]


@pytest.mark.parametrize("spec,p", [("C2", 2), ("C4", 2), ("D8", 2),
                                    ("C3", 3), ("C9", 3)])
def test_p_group_corollary(spec, p):
    """For a p-group the J-quotient is constant with map evaluation at e."""
    G = parse_group(spec)
    rep = PipelineReport(G, p, "cl", "j")
    assert rep.verification.ok
    n = rep.down.n_levels
    for ci in range(n):
        assert len(rep.quotient_presentation(ci)) == 1
        P = rep.power_matrix(ci)
        # evaluation at the identity class (class index 0)
        assert P[0][0] == 1 and all(x == 0 for x in P[0][1:])
    for hi, ki in rep.down.subconj_pairs():
        assert rep.quotient_res(hi, ki) == [[Fraction(1)]]
        Ho = rep.base_lattice.classes[hi].rep.order
        Ko = rep.base_lattice.classes[ki].rep.order
        assert rep.quotient_tr(hi, ki) == [[Fraction(Ko, Ho)]]


@pytest.mark.parametrize("spec,p", [("C2", 2), ("C3", 3), ("S3", 2),
                                    ("S3", 3), ("D8", 2)])
def test_jpdiv(spec, p):
    """The image of J under long-cycle evaluation is the span of the
    p-divisible classes, levelwise."""
    G = parse_group(spec)
    ctx = power_context(G, p)
    lat = SubgroupLattice(G)
    th = ClTheory(ctx.W, ctx.lattice)
    up = induce_up(th, ctx, lat)
    down = restrict_down(th, ctx, lat)
    J = j_ideal(up, ctx)
    pres = EvalPresentation(th, ctx, lat, J, down)
    for ci in range(up.n_levels):
        H = lat.classes[ci].rep
        src = th.module(ctx.lift_G(H))
        div, prime = p_split_classes(src, p)
        lat_ev = pres.levels[ci].lattice
        assert lat_ev.rank == len(div)
        assert sorted(lat_ev.support()) == sorted(div)


def test_ru_cl_pipelines_agree_via_characters():
    """The reduced RU operation embeds in the reduced Cl operation."""
    for spec, m in [("C2", 2), ("S3", 2), ("S3", 3)]:
        G = parse_group(spec)
        ru = PipelineReport(G, m, "ru", "j")
        cl = PipelineReport(G, m, "cl", "j")
        assert ru.verification.ok and cl.verification.ok
        for ci in range(ru.down.n_levels):
            tab = ru.theory.module(ru.ctx.lift_G(ru.base_lattice.classes[ci].rep)).table
            keep = cl.eval_pres.levels[ci]._keep
            cl_src = cl.theory.module(cl.ctx.lift_G(cl.base_lattice.classes[ci].rep))
            for i in range(len(tab.irr)):
                e_i = [int(k == i) for k in range(len(tab.irr))]
                ru_red = ru.eval_pres.project_big(ci, ru.P.power(ci, e_i))
                # lift the reduced RU element back to character values
                lift = ru.eval_pres.levels[ci].lift_vec(ru_red)
                ru_vals = tab.values_of(lift)
                # the Cl side: power of the character's value vector
                fvec = [tab.irr[i][tab.class_of(cls[0])] for cls in cl_src.classes]
                cl_red = cl.eval_pres.project_big(ci, power_vector_cl(
                    cl.ctx, cl.theory, cl.base_lattice.classes[ci].rep, fvec))
                got = [ru_vals[tab.class_of(cl_src.classes[j][0])] for j in keep]
                assert [Cyclo.rational(x) if not isinstance(x, Cyclo) else x
                        for x in cl_red] == got, (spec, m, ci, i)


def test_j_ideal_cl_wrapper():
    from greenops.charfun import j_ideal_cl
    J, up, ctx = j_ideal_cl(cyclic_group(2), 2)
    assert up.n_levels == 2
    assert J.lattices[1].rank == 3   # kills all but the 2-prime long-cycle class


def test_class_function_type():
    from greenops.charfun import ClassData, ClassFunction
    s3 = symmetric_group(3)
    data = ClassData(s3.full_subgroup())
    f = ClassFunction.indicator(data, 1)
    g = ClassFunction.indicator(data, 1)
    assert (f * g).values == f.values
    assert (f + g).values == [x * 2 for x in f.values]
    # no square is an involution in S3, so psi_2 kills the tau indicator;
    # squares of 3-cycles are 3-cycles, so the rho indicator survives
    assert not any(f.psi(2).values)
    rho = ClassFunction.indicator(data, 2)
    assert rho.psi(2).values == rho.values
