import pytest
from hypothesis import given, settings, strategies as st

from linkhom.arith import QQ, POLY, QQT, T, degree, poly_eval, ratfunc_reduce
from linkhom.linalg import (FiberPoint, GENERIC, from_rows, from_columns, identity, zeros, diag, entry,
                            kron, mul, same, parse_point, eval_matrix, rref, rank, kernel_basis_field,
                            inverse_field, smith_normal_form, kernel_basis_pid, det_poly, column_basis)
from linkhom.errors import Singular, DimensionError

from strategies import poly_matrices, sparse_poly_matrices, rational_matrices, rationals

t = T
one = POLY.one


def Q(rows):
    return from_rows(rows, QQ)


def PM(rows):
    return from_rows(rows, POLY)


def as_column(v, domain):
    return from_columns([v], len(v), domain)


class TestMatrix:
    def test_ragged_rows(self):
        with pytest.raises(DimensionError):
            Q([[1, 2], [3]])

    def test_kron(self):
        K = kron(Q([[1, 2], [3, 4]]), identity(2, QQ))
        assert K.shape == (4, 4)
        assert entry(K, 2, 0) == 3 and entry(K, 3, 1) == 3 and entry(K, 2, 1) == 0

    def test_products_join_domains(self):
        assert mul(Q([[1]]), PM([[t]])).domain == POLY
        assert mul(PM([[t]]).convert_to(QQT), Q([[2]])).domain == QQT

    def test_equality_across_domains(self):
        assert same(Q([[1, 0], [0, 2]]), PM([[1, 0], [0, 2]]))
        assert same(PM([[t]]).convert_to(QQT), PM([[t]]))
        assert not same(Q([[1, 0]]), Q([[1], [0]]))

    def test_empty_shapes(self):
        E = zeros(3, 0, QQ)
        assert (identity(3, QQ) * E).shape == (3, 0)
        assert inverse_field(zeros(0, 0, QQ)).shape == (0, 0)
        assert rank(E) == 0
        assert kernel_basis_field(E) == []


class TestPoints:
    def test_parse(self):
        assert parse_point("generic") == GENERIC
        assert parse_point("t=1/2") == FiberPoint(QQ(1, 2))
        assert parse_point("-3") == FiberPoint(-3)
        assert str(FiberPoint(QQ(-1, 3))) == "t=-1/3"

    def test_eval(self):
        M = diag([one, t * t, t * t], POLY)
        assert same(eval_matrix(M, FiberPoint(0)), diag([1, 0, 0], QQ))
        assert same(eval_matrix(PM([[t + 1]]), FiberPoint(1)), Q([[2]]))
        G = eval_matrix(M, GENERIC)
        assert G.domain == QQT and same(G, M)


class TestRref:
    def test_identity(self):
        R, piv = rref(identity(3, QQ))
        assert same(R, identity(3, QQ)) and piv == [0, 1, 2]

    def test_zero(self):
        R, piv = rref(zeros(2, 2, QQ))
        assert R.is_zero_matrix and piv == []

    def test_dependent_rows(self):
        R, piv = rref(Q([[1, 2], [2, 4]]))
        assert same(R, Q([[1, 2], [0, 0]])) and piv == [0]

    @given(rational_matrices())
    def test_idempotent(self, M):
        R, piv = rref(M)
        R2, piv2 = rref(R)
        assert same(R2, R) and piv2 == piv
        assert len(piv) == rank(M)


class TestKernels:
    def test_coordinate_kernel(self):
        assert set(kernel_basis_field(diag([1, 0, 0], QQ))) == {(0, 1, 0), (0, 0, 1)}

    def test_identity_kernel(self):
        assert kernel_basis_field(identity(3, QQ)) == []

    def test_function_field_kernel(self):
        [v] = kernel_basis_field(PM([[t, -one]]).convert_to(QQT))
        assert v[0] and v[1] == QQT.convert(t) * v[0]
        assert all(QQT.convert(e).denom == 1 for e in v)

    @given(rational_matrices())
    def test_kernel_annihilates(self, M):
        basis = kernel_basis_field(M)
        assert len(basis) + rank(M) == M.shape[1]
        for v in basis:
            assert (M * as_column(v, QQ)).is_zero_matrix

    def test_column_basis(self):
        assert column_basis(Q([[1, 2, 0], [0, 0, 1]])) == [(1, 0), (0, 1)]


class TestInverse:
    def test_diagonal(self):
        inv = inverse_field(diag([one, t], QQT))
        assert same(inv, diag([QQT.one, ratfunc_reduce(one, t)], QQT))

    def test_unitriangular(self):
        assert same(inverse_field(Q([[1, 1], [0, 1]])), Q([[1, -1], [0, 1]]))

    def test_singular(self):
        with pytest.raises(Singular):
            inverse_field(Q([[1, 2], [2, 4]]))

    def test_not_square(self):
        with pytest.raises(DimensionError):
            inverse_field(Q([[1, 2]]))

    @given(rational_matrices(max_rows=4, max_cols=4))
    def test_inverse_product(self, M):
        rows, cols = M.shape
        if rows != cols or rank(M) < rows:
            return
        assert same(M * inverse_field(M), identity(rows, QQ))


def check_snf(M):
    snf = smith_normal_form(M)
    U, D, V = snf.U, snf.D, snf.V
    assert same(U * M.convert_to(POLY) * V, D)
    assert degree(det_poly(U)) == 0
    assert degree(det_poly(V)) == 0
    rows, cols = D.shape
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert not entry(D, i, j)
    diagonal = snf.diagonal()
    nonzero = [d for d in diagonal if d]
    assert diagonal[:len(nonzero)] == nonzero
    for d in nonzero:
        assert d.LC == 1
    for a, b in zip(nonzero, nonzero[1:]):
        assert not b % a
    assert len(nonzero) == snf.rank == rank(M)
    return snf


class TestSmithNormalForm:
    def test_already_diagonal(self):
        assert smith_normal_form(diag([t, t * t], POLY)).diagonal() == [t, t * t]

    def test_minors(self):
        assert smith_normal_form(PM([[one, t], [0, t]])).diagonal() == [one, t]

    def test_unit_entry(self):
        assert smith_normal_form(PM([[t, one], [0, 0]])).diagonal() == [one, POLY.zero]

    def test_divisibility_fixup(self):
        # diag(t, t + 1) is not in normal form: its invariant factors are 1, t^2 + t
        snf = check_snf(diag([t, t + 1], POLY))
        assert snf.diagonal() == [one, t * t + t]

    def test_zero_and_single_row(self):
        check_snf(zeros(2, 3, POLY))
        check_snf(PM([[t * t - one, t - one]]))

    @given(poly_matrices(max_rows=6, max_cols=6, max_degree=3))
    @settings(max_examples=300)
    def test_invariants(self, M):
        check_snf(M)

    @given(sparse_poly_matrices(max_size=12))
    @settings(max_examples=500)
    def test_invariants_up_to_twelve(self, M):
        check_snf(M)

    @pytest.mark.slow
    @given(poly_matrices(max_rows=12, max_cols=12, max_degree=3, min_rows=7, min_cols=7))
    @settings(max_examples=20)
    def test_invariants_large_dense(self, M):
        check_snf(M)


class TestPidKernel:
    def test_nonzerodivisor(self):
        assert kernel_basis_pid(PM([[t]])) == []

    def test_zero_matrix(self):
        basis = kernel_basis_pid(zeros(2, 2, POLY))
        assert len(basis) == 2
        assert rank(from_columns(basis, 2, POLY)) == 2

    def test_saturated_line(self):
        assert kernel_basis_pid(PM([[t, -one]])) == [(one, t)]

    @given(poly_matrices(max_rows=4, max_cols=5), st.lists(rationals(), min_size=5, max_size=5))
    def test_stays_independent_at_points(self, M, points):
        basis = kernel_basis_pid(M)
        assert len(basis) == M.shape[1] - rank(M)
        if not basis:
            return
        B = from_columns(basis, M.shape[1], POLY)
        assert (M * B).is_zero_matrix
        for a in points:
            assert rank(eval_matrix(B, FiberPoint(a))) == len(basis)


class TestRankAndDeterminant:
    @given(poly_matrices(max_rows=5, max_cols=5), rationals())
    def test_specialisation_never_raises_rank(self, M, a):
        generic = rank(M)
        assert generic == rank(eval_matrix(M, GENERIC))
        assert rank(eval_matrix(M, FiberPoint(a))) <= generic

    def test_det(self):
        assert det_poly(PM([[t, one], [one, t]])) == t * t - one
        assert det_poly(PM([[0, one], [one, 0]])) == -one
        assert det_poly(zeros(0, 0, POLY)) == one

    @given(poly_matrices(max_rows=3, max_cols=3, min_rows=3, min_cols=3), rationals())
    def test_det_commutes_with_evaluation(self, M, a):
        local = eval_matrix(M, FiberPoint(a))
        assert bool(poly_eval(det_poly(M), a)) == (rank(local) == 3)
