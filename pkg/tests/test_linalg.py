from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from exactlie.linalg import (
    LinearSolver,
    RationalMatrix,
    SolutionSpace,
    assemble_rows,
    echelon_basis,
    format_rational,
    nullspace,
    parse_rational,
    rank,
    rref,
    solve,
)

F = Fraction


def dense(m):
    return [[F(x) for x in row] for row in m]


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    sparse = draw(st.booleans())
    entry = st.one_of(st.just(F(0)), st.just(F(0)), small) if sparse else small
    return RationalMatrix.from_dense([[draw(entry) for _ in range(c)] for _ in range(r)], ncols=c)


def to_sympy(m: RationalMatrix):
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


class TestRationals:
    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
    def test_canonical_form(self, p, q):
        x = F(p, q)
        s = format_rational(x)
        assert parse_rational(s) == x
        assert "/-" not in s
        if x.denominator == 1:
            assert "/" not in s

    def test_normalizes(self):
        assert F(2, -4) == F(-1, 2)
        assert format_rational(F(6, 4)) == "3/2"
        assert parse_rational("-10/4") == F(-5, 2)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            parse_rational("1/0")


class TestMatrix:
    def test_storage_is_sparse(self):
        m = RationalMatrix.from_dense([[0, 1], [0, 0]])
        assert m.nnz == 1
        assert m[1, 1] == 0

    @given(matrices())
    def test_text_round_trip(self, m):
        assert RationalMatrix.from_text(m.to_text()) == m

    def test_identity_zeros(self):
        assert RationalMatrix.identity(2).to_dense() == dense([[1, 0], [0, 1]])
        assert RationalMatrix.zeros(2, 3).nnz == 0


class TestRref:
    def test_rank_one(self):
        r, piv = rref(RationalMatrix.from_dense([[2, 4], [1, 2]]))
        assert r.to_dense() == dense([[1, 2], [0, 0]])
        assert piv == [0]

    def test_identity(self):
        r, piv = rref(RationalMatrix.identity(3))
        assert r == RationalMatrix.identity(3)
        assert piv == [0, 1, 2]

    def test_invertible(self):
        r, piv = rref(RationalMatrix.from_dense([[1, 1], [1, -1]]))
        assert r == RationalMatrix.identity(2)
        assert piv == [0, 1]

    @settings(max_examples=60)
    @given(matrices())
    def test_matches_sympy(self, m):
        ours, piv = rref(m)
        theirs, tpiv = to_sympy(m).rref()
        assert list(tpiv) == piv
        assert ours == RationalMatrix.from_dense(
            [[F(int(x.p), int(x.q)) for x in theirs.row(i)] for i in range(m.nrows)], ncols=m.ncols
        )

    @given(matrices())
    def test_idempotent(self, m):
        r, piv = rref(m)
        assert rref(r) == (r, piv)


class TestNullspace:
    def test_single_equation(self):
        s = nullspace(RationalMatrix.from_dense([[1, 1]]))
        assert s.basis == ((F(-1), F(1)),)

    def test_identity(self):
        s = nullspace(RationalMatrix.identity(4))
        assert s.basis == () and s.constraint_rank == 4

    def test_zero_matrix(self):
        assert nullspace(RationalMatrix.zeros(2, 3)).dim == 3

    @settings(max_examples=80)
    @given(matrices())
    def test_rank_nullity_and_annihilation(self, m):
        s = nullspace(m)
        assert s.dim + s.constraint_rank == m.ncols
        for v in s.basis:
            assert not any(m.matvec(v))

    @settings(max_examples=60)
    @given(matrices())
    def test_same_basis_as_sympy(self, m):
        ours = nullspace(m).basis
        theirs = [tuple(F(int(x.p), int(x.q)) for x in v) for v in to_sympy(m).nullspace()]
        assert list(ours) == theirs

    def test_block_structure_split(self):
        # two disconnected blocks must give the same answer as one dense solve
        m = RationalMatrix.from_dense([[1, 2, 0, 0], [0, 0, 3, 3], [2, 4, 0, 0]])
        assert nullspace(m).basis == ((F(-2), F(1), F(0), F(0)), (F(0), F(0), F(-1), F(1)))

    def test_rank_nullity_enforced(self):
        with pytest.raises(ValueError):
            SolutionSpace(3, ((F(1), F(0), F(0)),), 1, 1)

    @given(matrices())
    def test_serialization(self, m):
        s = nullspace(m)
        assert SolutionSpace.from_dict(s.to_dict()) == s


class TestRank:
    def test_examples(self):
        assert rank(RationalMatrix.identity(5)) == 5
        assert rank(RationalMatrix.zeros(3, 3)) == 0
        assert rank(RationalMatrix.from_dense([[1, 2], [2, 4], [3, 6]])) == 1

    @given(matrices())
    def test_matches_sympy(self, m):
        assert rank(m) == to_sympy(m).rank()


class TestSolve:
    def test_identity(self):
        assert solve(RationalMatrix.identity(2), [3, 4]) == [3, 4]

    def test_free_coordinate_zero(self):
        assert solve(RationalMatrix.from_dense([[1, 1]]), [2]) == [2, 0]

    def test_inconsistent(self):
        assert solve(RationalMatrix.from_dense([[1], [1]]), [1, 2]) is None

    @settings(max_examples=80)
    @given(matrices(), st.data())
    def test_consistent_systems_are_solved(self, m, data):
        x = [data.draw(small) for _ in range(m.ncols)]
        b = m.matvec(x)
        y = solve(m, b)
        assert y is not None and m.matvec(y) == b

    @given(matrices(), st.data())
    def test_solver_reuse(self, m, data):
        solver = LinearSolver(m)
        for _ in range(3):
            b = [data.draw(small) for _ in range(m.nrows)]
            y = solver.solve(b)
            if y is None:
                # inconsistent exactly when appending b raises the rank
                aug = RationalMatrix.from_dense([list(r) + [bi] for r, bi in zip(m.to_dense(), b)], ncols=m.ncols + 1)
                assert rank(aug) > rank(m)
            else:
                assert m.matvec(y) == b

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve(RationalMatrix.identity(2), [1])


class TestAssembly:
    def test_drops_zero_and_duplicate_rows(self):
        m = assemble_rows([{0: 1, 1: 2}, {}, {0: F(1, 2), 1: 1}, {0: 0}], 2)
        assert m.nrows == 1

    def test_echelon_basis_spans(self):
        vs = [(1, 1, 0), (2, 2, 0), (0, 1, 1)]
        b = echelon_basis(vs, 3)
        assert len(b) == 2
        assert rank(RationalMatrix.from_dense(b + [list(map(F, v)) for v in vs], ncols=3)) == 2
