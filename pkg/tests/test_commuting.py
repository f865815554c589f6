from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gl, simple, sl
from exactlie.algebra import bracket
from exactlie.commuting import (
    NotCommutingError,
    commutes_on,
    commuting_space,
    decompose_gl,
    decompose_simple,
    is_commuting,
    random_elements,
    reconstruct_gl,
    sigma_as_trace,
)
from exactlie.derivations import LinearMap
from oracles import brute_force_commuting_equations, sympy_nullspace

F = Fraction
coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def trace_map(L):
    tr = L.trace_covector()
    ident = L.identity_element().coeffs
    return LinearMap(L, [{k: tr[j] * v for k, v in ident.items()} for j in range(L.dim)])


class TestSpace:
    def test_a1(self):
        assert commuting_space(simple("A", 1)).dim == 1

    def test_gl2(self):
        assert commuting_space(gl(2)).dim == 5

    @pytest.mark.parametrize("build", [lambda: simple("A", 2), lambda: gl(2), lambda: sl(3)])
    def test_matches_brute_force(self, build):
        L = build()
        assert commuting_space(L).space.basis == tuple(sympy_nullspace(brute_force_commuting_equations(L), L.dim ** 2))


class TestPolarization:
    @settings(max_examples=20)
    @given(st.data())
    def test_polarized_implies_original(self, data):
        L = gl(2)
        maps = commuting_space(L).maps()
        phi = LinearMap(L, [{} for _ in range(L.dim)])
        for g in maps:
            phi = phi + data.draw(coef) * g
        x = L.element(data.draw(st.lists(coef, min_size=4, max_size=4)))
        assert bracket(L, phi(x), x).is_zero()

    @settings(max_examples=20)
    @given(st.data())
    def test_original_implies_polarized(self, data):
        # a map failing the polarized condition fails [phi(x), x] = 0 at x = e_i + e_j
        L = simple("A", 2)
        v = data.draw(st.lists(st.one_of(st.just(F(0)), coef), min_size=64, max_size=64))
        phi = LinearMap.from_vector(L, v)
        holds_everywhere = all(
            bracket(L, phi(L.basis(i) + L.basis(j)), L.basis(i) + L.basis(j)).is_zero() and bracket(L, phi(L.basis(i)), L.basis(i)).is_zero()
            for i in range(L.dim) for j in range(L.dim)
        )
        assert is_commuting(L, phi) == holds_everywhere

    def test_samples(self):
        L = simple("B", 2)
        samples = random_elements(L, 50, seed=1)
        assert samples == random_elements(L, 50, seed=1)
        assert commutes_on(L, LinearMap.scalar(L, 3), samples)
        assert not commutes_on(L, LinearMap(L, [{1: 1}] + [{}] * (L.dim - 1)), samples)


class TestDecompositions:
    def test_scalar(self):
        L = simple("A", 2)
        assert decompose_simple(L, LinearMap.scalar(L, 3)) == 3
        assert decompose_simple(L, LinearMap.scalar(L, 0)) == 0

    def test_b2_basis(self):
        L = simple("B", 2)
        for phi in commuting_space(L).maps():
            assert decompose_simple(L, phi) is not None

    def test_rejects_non_commuting(self):
        L = simple("A", 1)
        with pytest.raises(NotCommutingError):
            decompose_simple(L, LinearMap(L, [{1: 1}, {}, {}]))

    def test_gl_identity(self):
        L = gl(2)
        sigma, lam = decompose_gl(LinearMap.scalar(L, 1))
        assert not any(sigma) and lam == 1

    def test_gl_trace(self):
        L = gl(3)
        sigma, lam = decompose_gl(trace_map(L))
        assert sigma == L.trace_covector() and lam == 0
        c, rest = sigma_as_trace(L, sigma)
        assert c == 1 and not any(rest)

    @pytest.mark.parametrize("n", [2, 3])
    def test_gl_basis(self, n):
        L = gl(n)
        space = commuting_space(L)
        assert space.dim == n * n + 1
        for phi in space.maps():
            sigma, lam = decompose_gl(phi)
            assert reconstruct_gl(L, sigma, lam) == phi
