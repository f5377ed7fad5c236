from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, strategies as st

from deriva.errors import RaggedInput
from deriva.fields import make_field
from deriva.linalg import SubspaceBasis, nullspace, rank, rref, solve


def _matrices(p, max_rows=5, max_cols=6):
    entry = st.integers(-3, 3) if p == 0 else st.integers(0, p - 1)
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=1, max_size=max_rows))


def _apply(F, rows, v):
    out = []
    for r in rows:
        s = F.zero
        for a, b in zip(r, v):
            s = F.add(s, F.mul(F(a), b))
        out.append(s)
    return out


def test_identity_has_trivial_nullspace():
    Q = make_field(0)
    assert nullspace(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).dimension == 0


def test_zero_matrix_nullspace_is_everything():
    Q = make_field(0)
    ns = nullspace(Q, [[0] * 5, [0] * 5])
    assert ns.dimension == 5 and ns == SubspaceBasis.full(Q, 5)


def test_gf3_example():
    F = make_field(3)
    ns = nullspace(F, [[1, 1, 0], [0, 1, 1]])
    assert ns.dimension == 1
    assert ns.rows == ((1, 2, 1),)


def test_ragged_rows_rejected():
    with pytest.raises(RaggedInput):
        nullspace(make_field(0), [[1, 2], [1]])
    with pytest.raises(RaggedInput):
        nullspace(make_field(0), [{0: 1}])
    with pytest.raises(RaggedInput):
        nullspace(make_field(0), [{5: 1}], 3)


def test_sparse_and_dense_rows_agree():
    Q = make_field(0)
    dense = [[1, 0, -1, 0], [0, 2, 0, 2]]
    sparse = [{0: 1, 2: -1}, {1: 2, 3: 2}]
    assert nullspace(Q, dense) == nullspace(Q, sparse, 4)


def test_rref_is_reduced():
    Q = make_field(0)
    rows = rref(Q, [[2, 4, 6], [1, 1, 1]], 3)
    assert rows == [(1, 0, -1), (0, 1, 2)]
    assert all(isinstance(x, Fraction) for r in rows for x in r)


def test_solve_consistent_and_inconsistent():
    Q = make_field(0)
    x = solve(Q, [[1, 1], [1, -1]], [3, 1], 2)
    assert x == [2, 1]
    assert solve(Q, [[1, 1], [2, 2]], [1, 3], 2) is None


def test_coordinates():
    Q = make_field(0)
    S = SubspaceBasis.span(Q, 3, [[1, 1, 0], [0, 1, 1]])
    c = S.coordinates([2, 5, 3])
    v = [sum(k * r[j] for k, r in zip(c, S.rows)) for j in range(3)]
    assert v == [2, 5, 3]
    assert S.coordinates([1, 0, 0]) is None


@pytest.mark.parametrize("p", [0, 2, 5])
@given(data=st.data())
def test_nullspace_properties(p, data):
    F = make_field(p)
    rows = data.draw(_matrices(p))
    ncols = len(rows[0])
    ns = nullspace(F, rows)
    for v in ns.rows:
        assert not any(_apply(F, rows, v))
    assert rank(F, rows, ncols) + ns.dimension == ncols
    order = data.draw(st.permutations(range(ncols)))
    assert nullspace(F, rows, column_order=order) == ns


@pytest.mark.parametrize("p", [0, 3])
@given(data=st.data())
def test_span_is_canonical(p, data):
    F = make_field(p)
    rows = data.draw(_matrices(p))
    m = len(rows[0])
    S = SubspaceBasis.span(F, m, rows)
    shuffled = data.draw(st.permutations(rows))
    assert SubspaceBasis.span(F, m, shuffled) == S
    assert all(S.contains(r) for r in rows)
    assert S.pivots == sorted(set(S.pivots))
    assert SubspaceBasis.span(F, m, S.rows) == S


@pytest.mark.parametrize("p", [0, 7])
@given(data=st.data())
def test_solve_returns_a_solution(p, data):
    F = make_field(p)
    rows = data.draw(_matrices(p))
    ncols = len(rows[0])
    entry = st.integers(-3, 3) if p == 0 else st.integers(0, p - 1)
    x0 = [F(v) for v in data.draw(st.lists(entry, min_size=ncols, max_size=ncols))]
    rhs = _apply(F, rows, x0)
    x = solve(F, rows, rhs, ncols)
    assert x is not None and _apply(F, rows, x) == rhs


def test_subspace_sum_and_inclusion():
    F = make_field(5)
    rng = Random(1)
    a = SubspaceBasis.span(F, 6, [[rng.randrange(5) for _ in range(6)] for _ in range(2)])
    b = SubspaceBasis.span(F, 6, [[rng.randrange(5) for _ in range(6)] for _ in range(2)])
    s = a + b
    assert a.is_subspace_of(s) and b.is_subspace_of(s)
    assert s.dimension <= a.dimension + b.dimension
