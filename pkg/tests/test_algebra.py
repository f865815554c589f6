import json
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gl, rootsystem, simple, sl
from exactlie.algebra import LieAlgebra, bracket, build_gl, build_sl, trace_decompose, verify_structure
from exactlie.roots import root_string
from oracles import structure_tensor

F = Fraction
SIMPLE = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]
coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def elements(L):
    return st.lists(coef, min_size=L.dim, max_size=L.dim).map(L.element)


def corrupted(L: LieAlgebra) -> LieAlgebra:
    doc = L.to_dict()
    i, j, k, v = doc["structure"][-1]
    doc["structure"][-1] = [i, j, k, str(-Fraction(v))]
    return LieAlgebra.from_dict(doc)


class TestSimpleConstruction:
    def test_a1_relations(self):
        L = simple("A", 1)
        h, x, y = (L.basis(i) for i in range(3))
        assert bracket(L, h, x) == 2 * x
        assert bracket(L, h, y) == -2 * y
        assert bracket(L, x, y) == h

    @pytest.mark.parametrize("t,dim", [(("A", 2), 8), (("G", 2), 14), (("B", 3), 21), (("D", 4), 28)])
    def test_dimension(self, t, dim):
        assert simple(*t).dim == dim

    def test_a2_unit_constants(self):
        L = simple("A", 2)
        for (i, j), vec in L.structure.items():
            if i in L.root_of and j in L.root_of:
                assert all(abs(v) == 1 for v in vec.values())

    @pytest.mark.parametrize("t", SIMPLE)
    def test_constants_are_root_string_integers(self, t):
        # |N_{b,c}| = p + 1 where p is the length of the b-string below c
        L = simple(*t)
        rs = rootsystem(*t)
        index = {r: i for i, r in L.root_of.items()}
        seen = set()
        for (i, j) in L.structure:
            if i not in L.root_of or j not in L.root_of:
                continue
            b, c = L.root_of[i], L.root_of[j]
            s = tuple(x + y for x, y in zip(b, c))
            if not any(s):
                continue
            vec = L.structure[(i, j)]
            assert set(vec) == {index[s]}
            p, _ = root_string(rs, b, c)
            assert abs(vec[index[s]]) == p + 1
            seen.add(abs(vec[index[s]]))
        if t == ("G", 2):
            assert seen == {1, 2, 3}

    @pytest.mark.parametrize("t", SIMPLE)
    def test_structure_valid(self, t):
        r = verify_structure(simple(*t))
        assert (r.antisym_ok, r.jacobi_ok, r.serre_ok, r.grading_ok) == (True, True, True, True)
        assert r.ok and not r.failures

    @pytest.mark.parametrize("t", [("A", 2), ("G", 2)])
    def test_killing_form_nondegenerate(self, t):
        # independent semisimplicity check: Cartan's criterion on the dense tensor
        L = simple(*t)
        c = structure_tensor(L)
        n = L.dim
        ad = [sympy.Matrix(n, n, lambda k, j: sympy.Rational(c[i][j][k].numerator, c[i][j][k].denominator)) for i in range(n)]
        K = sympy.Matrix(n, n, lambda a, b: (ad[a] * ad[b]).trace())
        assert K.det() != 0


class TestMatrixAlgebras:
    def test_gl2_products(self):
        L = gl(2)
        E11, E12, E21, E22 = (L.basis(i) for i in range(4))
        assert L.dim == 4
        assert bracket(L, E11, E12) == E12
        assert bracket(L, E12, E21) == E11 - E22

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_identity_central(self, n):
        L = gl(n)
        I = L.identity_element()
        for i in range(L.dim):
            assert bracket(L, I, L.basis(i)).is_zero()

    @pytest.mark.parametrize("n,dim", [(2, 3), (3, 8), (4, 15)])
    def test_sl_dimension(self, n, dim):
        assert sl(n).dim == dim

    @pytest.mark.parametrize("n", [2, 3])
    def test_gl_matches_matrix_commutator(self, n):
        L = gl(n)
        units = []
        for i, j in product(range(n), repeat=2):
            m = sympy.zeros(n, n)
            m[i, j] = 1
            units.append(m)
        for a, b in product(range(L.dim), repeat=2):
            comm = units[a] * units[b] - units[b] * units[a]
            expected = {k: F(int(comm[k // n, k % n])) for k in range(L.dim) if comm[k // n, k % n]}
            assert L.bracket_basis(a, b) == expected

    @pytest.mark.parametrize("build", [lambda: gl(2), lambda: gl(3), lambda: sl(2), lambda: sl(3)])
    def test_structure_valid(self, build):
        r = verify_structure(build())
        assert r.antisym_ok and r.jacobi_ok and r.serre_ok is None

    def test_sl_rejects_small(self):
        with pytest.raises(ValueError):
            build_sl(1)
        with pytest.raises(ValueError):
            build_gl(0)


class TestTraceDecompose:
    def test_examples(self):
        L = gl(2)
        assert trace_decompose(L, L.identity_element()) == (1, L.zero())
        assert trace_decompose(L, L.basis(1)) == (0, L.basis(1))
        E11 = L.basis(0)
        assert trace_decompose(L, E11) == (F(1, 2), E11 - F(1, 2) * L.identity_element())

    @given(st.data())
    def test_recombines(self, data):
        L = gl(3)
        x = data.draw(elements(L))
        c, u = trace_decompose(L, x)
        assert L.trace(u) == 0 and c * L.identity_element() + u == x

    def test_requires_gl(self):
        with pytest.raises(TypeError):
            trace_decompose(sl(2), sl(2).basis(0))


class TestBracketProperties:
    @settings(max_examples=30)
    @given(st.sampled_from([("A", 2), ("B", 2), ("G", 2), ("gl", 3)]), st.data())
    def test_bilinear_antisymmetric_jacobi(self, key, data):
        L = gl(3) if key[0] == "gl" else simple(*key)
        x, y, z = (data.draw(elements(L)) for _ in range(3))
        a = data.draw(coef)
        assert bracket(L, x, y) == -bracket(L, y, x)
        assert bracket(L, a * x + y, z) == a * bracket(L, x, z) + bracket(L, y, z)
        jac = bracket(L, x, bracket(L, y, z)) + bracket(L, y, bracket(L, z, x)) + bracket(L, z, bracket(L, x, y))
        assert jac.is_zero()

    def test_elements_of_different_algebras(self):
        with pytest.raises(ValueError):
            bracket(gl(2), gl(2).basis(0), sl(2).basis(0))


class TestSerialization:
    @pytest.mark.parametrize("build", [lambda: simple("A", 2), lambda: simple("G", 2), lambda: gl(2), lambda: sl(3)])
    def test_round_trip(self, build):
        L = build()
        back = LieAlgebra.from_json(L.to_json())
        assert back.to_json() == L.to_json()
        assert back.structure == L.structure
        assert back.kind == L.kind

    def test_exact_strings(self):
        doc = json.loads(simple("G", 2).to_json())
        assert all(isinstance(e[3], str) for e in doc["structure"])

    def test_corrupted_tensor_fails_jacobi(self):
        bad = corrupted(simple("A", 2))
        r = verify_structure(bad)
        assert r.antisym_ok and not r.jacobi_ok and r.failures

    def test_rejects_inconsistent_input(self):
        doc = {"dim": 2, "structure": [[0, 1, 0, "1"], [1, 0, 0, "1"]]}
        with pytest.raises(ValueError):
            LieAlgebra.from_dict(doc)
        with pytest.raises(ValueError):
            LieAlgebra.from_dict({"dim": 2, "structure": [[1, 1, 0, "1"]]})
        with pytest.raises(IndexError):
            LieAlgebra.from_dict({"dim": 2, "structure": [[0, 1, 5, "1"]]})

    def test_custom_algebra(self):
        # two-dimensional nonabelian algebra [a, b] = b
        L = LieAlgebra.from_dict({"dim": 2, "labels": ["a", "b"], "structure": [[0, 1, 1, "1"]]})
        assert str(L) == "custom"
        assert verify_structure(L).ok
        assert bracket(L, L.basis(1), L.basis(0)) == -L.basis(1)
