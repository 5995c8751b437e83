import pytest

from greenops.burnside import BurnsideTheory, burnside_green_functor, power_vector
from greenops.charfun import ClTheory, cl_green_functor
from greenops.groups import SubgroupLattice, cyclic_group, parse_group, symmetric_group
from greenops.gsets import power_context
from greenops.mackey import (MackeyIdeal, PowerOperationInstance,
                             ideal_from_generators, induce_up, itr_ideal,
                             j_ideal, mackey_closure_report, quotient,
                             restrict_down, verify_green_axioms,
                             verify_green_map, verify_mackey_axioms)


def test_burnside_green_axioms_pass():
    for spec in ["C2", "C3", "C2xC2", "S3"]:
        R = burnside_green_functor(parse_group(spec))
        rep = verify_green_axioms(R)
        assert rep.ok, (spec, rep.failures())


def test_cl_green_axioms_pass():
    R = cl_green_functor(symmetric_group(3))
    rep = verify_green_axioms(R)
    assert rep.ok, rep.failures()


def test_induced_functor_axioms():
    G = cyclic_group(2)
    ctx = power_context(G, 2)
    lat = SubgroupLattice(G)
    th = BurnsideTheory(ctx.W, ctx.lattice)
    up = induce_up(th, ctx, lat)
    rep = verify_green_axioms(up)
    assert rep.ok, rep.failures()
    down = restrict_down(th, ctx, lat)
    rep2 = verify_green_axioms(down)
    assert rep2.ok, rep2.failures()


def test_injected_fault_detected():
    """Perturbing one transfer entry breaks Frobenius reciprocity."""
    R = burnside_green_functor(cyclic_group(2))
    good = verify_green_axioms(R)
    assert good.ok
    # send the point of A(e) to free-orbit + fixed-point instead of the
    # free orbit: no longer an A(C2)-module map
    tr = [row[:] for row in R.tr_pair(0, 1)]
    tr[1][0] += 1
    R._tr[(0, 1)] = tr
    bad = verify_green_axioms(R)
    assert not bad.ok
    fail = next(c for c in bad.failures() if c.name == "frobenius-reciprocity")
    assert fail.witness is not None


def test_level_identification():
    """Induced levels are the theory modules at H x S_m, restricted at H x e."""
    G = symmetric_group(3)
    ctx = power_context(G, 2)
    lat = SubgroupLattice(G)
    th = BurnsideTheory(ctx.W, ctx.lattice)
    up = induce_up(th, ctx, lat)
    down = restrict_down(th, ctx, lat)
    # A(C2 x S2) has rank 5, A(S3 x S2) rank 10
    assert up.level(1).rank == 5
    assert up.level(3).rank == 10
    # down levels match the plain Burnside ranks: A(e), A(C2), A(C3), A(S3)
    assert [down.level(ci).rank for ci in range(4)] == [1, 2, 2, 4]
    # the trivial base group gives a single level
    triv = cyclic_group(1)
    ctx1 = power_context(triv, 3)
    lat1 = SubgroupLattice(triv)
    up1 = induce_up(BurnsideTheory(ctx1.W, ctx1.lattice), ctx1, lat1)
    assert up1.n_levels == 1
    assert up1.level(0).rank == 4  # A(S3)


def test_ideal_from_generators_degenerate():
    R = burnside_green_functor(cyclic_group(2))
    zero = ideal_from_generators(R, [[], []])
    assert all(L.rank == 0 for L in zero.lattices)
    units = ideal_from_generators(R, [[R.one(0)], [R.one(1)]])
    assert [L.rank for L in units.lattices] == [R.level(0).rank, R.level(1).rank]


def test_ideal_from_generators_matches_itr():
    G = cyclic_group(2)
    ctx = power_context(G, 2)
    lat = SubgroupLattice(G)
    th = BurnsideTheory(ctx.W, ctx.lattice)
    up = induce_up(th, ctx, lat)
    itr = itr_ideal(up, ctx)
    # regenerate through the generic closure from the same generators
    gens = []
    for ci in range(up.n_levels):
        H = lat.classes[ci].rep
        V = ctx.level_subgroup(H)
        level_gens = []
        for i in range(1, ctx.m):
            P = ctx.partition_subgroup(H, i)
            level_gens.extend(th.transfer_image_gens(P, V))
        gens.append(level_gens)
    closed = ideal_from_generators(up, gens)
    for ci in range(up.n_levels):
        assert closed.lattices[ci].rows == itr.lattices[ci].rows
    assert closed.iterations <= 2  # fixed point reached immediately


def test_itr_closed_without_saturation():
    for spec, m in [("C2", 2), ("S3", 2), ("C3", 3), ("C4", 2)]:
        G = parse_group(spec)
        ctx = power_context(G, m)
        lat = SubgroupLattice(G)
        th = BurnsideTheory(ctx.W, ctx.lattice)
        up = induce_up(th, ctx, lat)
        ideal = itr_ideal(up, ctx)  # raises if not closed
        rep = mackey_closure_report(up, ideal)
        assert rep.ok


def test_quotient_by_zero_ideal():
    G = cyclic_group(2)
    ctx = power_context(G, 2)
    lat = SubgroupLattice(G)
    th = BurnsideTheory(ctx.W, ctx.lattice)
    up = induce_up(th, ctx, lat)
    zero = MackeyIdeal(up, [up.new_lattice(ci) for ci in range(up.n_levels)])
    Q = quotient(up, zero)
    for ci in range(up.n_levels):
        assert Q.levels[ci].q_rank == up.level(ci).rank
        assert Q.levels[ci].torsion == []
        # maps equal the originals
        v = [1] * up.level(ci).rank
        assert Q.levels[ci].project(v) == v


def test_green_map_witness_c2():
    """Transfer commutation fails mod I_Tr at the documented witness and
    passes mod J."""
    G = cyclic_group(2)
    ctx = power_context(G, 2)
    lat = SubgroupLattice(G)
    th = BurnsideTheory(ctx.W, ctx.lattice)
    up = induce_up(th, ctx, lat)
    down = restrict_down(th, ctx, lat)
    P = PowerOperationInstance(
        source=down, target=up, ctx=ctx, m=2,
        total_op=lambda ci, vec: power_vector(ctx, th, lat.classes[ci].rep, vec))
    itr = itr_ideal(up, ctx)
    rep = verify_green_map(P, itr)
    tc = next(c for c in rep.checks if c.name == "transfer-commutes")
    assert not tc.passed
    hi, ki, vec = tc.witness[:3]
    assert (hi, ki) == (0, 1) and vec == [1]
    others = [c for c in rep.checks if c.name != "transfer-commutes"]
    assert all(c.passed for c in others)
    J = j_ideal(up, ctx)
    assert verify_green_map(P, J).ok


def test_mackey_axioms_standalone():
    R = burnside_green_functor(parse_group("S3"))
    rep = verify_mackey_axioms(R)
    assert rep.ok
