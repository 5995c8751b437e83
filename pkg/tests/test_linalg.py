from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from greenops.linalg import (FieldLattice, IntLattice, mat_inverse_unimodular,
                             mat_mul, smith_normal_form)

vectors = st.lists(st.integers(-9, 9), min_size=4, max_size=4)


@given(st.lists(vectors, min_size=1, max_size=6))
@settings(max_examples=150, deadline=None)
def test_hnf_membership(rows):
    lat = IntLattice(4, rows)
    # every generator is contained, and reduction is idempotent
    for r in rows:
        assert r in lat
    for r in lat.rows:
        red = lat.reduce(list(r))
        assert not any(red)
    # an integer combination of generators is contained
    combo = [0, 0, 0, 0]
    for i, r in enumerate(rows):
        for j in range(4):
            combo[j] += (i + 1) * r[j]
    assert combo in lat


@given(st.lists(vectors, min_size=1, max_size=5), vectors)
@settings(max_examples=150, deadline=None)
def test_hnf_reduce_consistency(rows, probe):
    lat = IntLattice(4, rows)
    red = lat.reduce(probe)
    diff = [a - b for a, b in zip(probe, red)]
    assert diff in lat
    assert (probe in lat) == (not any(red))


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-7, 7), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_snf_properties(A):
    d, U, V = smith_normal_form(A)
    m, n = len(A), len(A[0])
    D = mat_mul(mat_mul(U, A), V)
    for i in range(m):
        for j in range(n):
            want = d[i] if i == j and i < len(d) else 0
            assert D[i][j] == want
    for i in range(len(d) - 1):
        if d[i]:
            assert d[i + 1] % d[i] == 0
        else:
            assert d[i + 1] == 0
    # transforms are unimodular: integer inverses exist
    mat_inverse_unimodular(U)
    mat_inverse_unimodular(V)


def test_hnf_canonical_example():
    lat = IntLattice(3, [[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    assert lat.rows == [[1, 1, -2], [0, 3, -3]]
    assert lat.rank == 2
    assert lat.support() == [0, 1]
    assert not lat.is_coordinate_span()
    unit = IntLattice(3, [[0, 1, 0]])
    assert unit.is_coordinate_span()


def test_field_lattice():
    one, zero = Fraction(1), Fraction(0)
    lat = FieldLattice(3, zero, one)
    assert lat.add([Fraction(2), Fraction(4), zero])
    assert lat.rows[0] == [one, Fraction(2), zero]
    assert not lat.add([Fraction(1), Fraction(2), zero])
    assert lat.add([zero, zero, Fraction(5)])
    assert [Fraction(3), Fraction(6), Fraction(7)] in lat
    assert [Fraction(3), Fraction(5), zero] not in lat
