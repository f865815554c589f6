from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rootsystem
from exactlie.roots import (
    RankError,
    RootSystem,
    RootSystemType,
    cartan_matrix,
    connected,
    dot,
    is_root,
    root_string,
    verify_all_connected,
)
from oracles import root_table

F = Fraction
ALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("G", 2), ("E", 6), ("E", 7), ("E", 8)]


def beta(m, *terms):
    v = [F(0)] * m
    for c, i in terms:
        v[i - 1] += c
    return tuple(v)


class TestType:
    @pytest.mark.parametrize("family,rank", [("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("X", 2)])
    def test_out_of_bounds(self, family, rank):
        with pytest.raises(ValueError):
            RootSystemType(family, rank)

    def test_rank_error_names_bound(self):
        with pytest.raises(RankError, match="3"):
            RootSystemType("C", 2)


class TestGenerate:
    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_matches_coordinate_table(self, family, rank):
        rs = rootsystem(family, rank)
        assert len(set(rs.roots)) == len(rs.roots)
        assert set(rs.roots) == root_table(family, rank)

    def test_a1(self):
        rs = rootsystem("A", 1)
        assert set(rs.roots) == {beta(2, (1, 1), (-1, 2)), beta(2, (1, 2), (-1, 1))}

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_base_properties(self, family, rank):
        rs = rootsystem(family, rank)
        assert rs.rank == rank
        assert len(rs.positives) * 2 == len(rs.roots)
        for k, r in enumerate(rs.roots):
            coeffs = rs.coefficients[k]
            assert all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)
            recon = tuple(sum(c * s[i] for c, s in zip(coeffs, rs.simple_roots)) for i in range(rs.ambient_dim))
            assert recon == r
        assert [rs.height(k) for k in rs.positives] == sorted(rs.height(k) for k in rs.positives)

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_negatives_follow_positives(self, family, rank):
        rs = rootsystem(family, rank)
        p = len(rs.positives)
        for k in range(p):
            assert rs.negative(k) == k + p

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_json_round_trip(self, family, rank):
        rs = rootsystem(family, rank)
        back = RootSystem.from_json(rs.to_json())
        assert back == rs
        assert back.to_json() == rs.to_json()


class TestCartan:
    def test_a1(self):
        assert cartan_matrix(rootsystem("A", 1)).to_dense() == [[2]]

    def test_a2(self):
        assert cartan_matrix(rootsystem("A", 2)).to_dense() == [[2, -1], [-1, 2]]

    def test_g2(self):
        c = cartan_matrix(rootsystem("G", 2)).to_dense()
        assert c[0][1] * c[1][0] == 3

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_cartan_shape(self, family, rank):
        c = cartan_matrix(rootsystem(family, rank)).to_dense()
        for i, j in product(range(rank), repeat=2):
            if i == j:
                assert c[i][j] == 2
            else:
                assert c[i][j] <= 0 and (c[i][j] == 0) == (c[j][i] == 0)
                assert c[i][j] * c[j][i] in (0, 1, 2, 3)


class TestMembership:
    def test_examples(self):
        assert is_root(rootsystem("A", 2), beta(3, (1, 1), (-1, 3)))
        assert not is_root(rootsystem("A", 2), (0, 0, 0))
        assert not is_root(rootsystem("A", 1), beta(2, (1, 1), (1, 2)))

    def test_wrong_dimension(self):
        with pytest.raises(ValueError):
            is_root(rootsystem("A", 2), (1, -1))


class TestConnected:
    def test_negatives(self):
        rs = rootsystem("B", 3)
        for r in rs.roots:
            assert connected(rs, r, tuple(-x for x in r)) == []

    def test_sum_is_root(self):
        rs = rootsystem("A", 2)
        assert connected(rs, beta(3, (1, 1), (-1, 2)), beta(3, (1, 2), (-1, 3))) == []

    def test_d4_one_step(self):
        rs = rootsystem("D", 4)
        a, b = beta(4, (1, 1), (-1, 2)), beta(4, (1, 3), (-1, 4))
        chain = connected(rs, a, b)
        assert len(chain) == 1
        g = chain[0]
        assert is_root(rs, tuple(x + y for x, y in zip(a, g)))
        assert is_root(rs, tuple(x + y for x, y in zip(g, b)))

    @pytest.mark.parametrize("family,rank", [("A", 2), ("G", 2), ("B", 3), ("C", 3), ("F", 4)])
    def test_chains_are_valid(self, family, rank):
        rs = rootsystem(family, rank)
        ok = set(rs.roots) | {tuple([F(0)] * rs.ambient_dim)}
        for a, b in product(rs.roots[:: max(1, len(rs.roots) // 12)], repeat=2):
            chain = connected(rs, a, b)
            assert chain is not None
            walk = [a] + chain + [b]
            for x, y in zip(walk, walk[1:]):
                assert tuple(p + q for p, q in zip(x, y)) in ok

    @pytest.mark.parametrize("family,rank", ALL_TYPES)
    def test_all_connected(self, family, rank):
        assert verify_all_connected(rootsystem(family, rank)) == (True, [])

    def test_reports_disconnected_components(self):
        # A1 x A1 in orthogonal coordinates: a reducible system
        roots = tuple(tuple(map(F, v)) for v in ((1, -1, 0, 0), (0, 0, 1, -1), (-1, 1, 0, 0), (0, 0, -1, 1)))
        r = RootSystem(rootsystem("A", 1).rstype, 4, roots, (0, 1), (0, 1), ((1, 0), (0, 1), (-1, 0), (0, -1)))
        ok, failures = verify_all_connected(r)
        assert not ok and len(failures) == 1
        assert connected(r, r.roots[0], r.roots[1]) is None


class TestRootString:
    def test_a2(self):
        rs = rootsystem("A", 2)
        a1, a2 = beta(3, (1, 1), (-1, 2)), beta(3, (1, 2), (-1, 3))
        assert root_string(rs, a1, a2) == (0, 1)
        assert root_string(rs, a1, beta(3, (1, 1), (-1, 3))) == (1, 0)

    def test_b2_short_through_long(self):
        rs = rootsystem("B", 2)
        assert root_string(rs, beta(2, (1, 2)), beta(2, (1, 1), (-1, 2))) == (0, 2)

    @settings(max_examples=40)
    @given(st.sampled_from(ALL_TYPES[1:-1]), st.data())
    def test_string_length_matches_cartan_integer(self, t, data):
        rs = rootsystem(*t)
        a = data.draw(st.sampled_from(rs.roots))
        b = data.draw(st.sampled_from([r for r in rs.roots if r != a and r != tuple(-x for x in a)]))
        p, q = root_string(rs, a, b)
        assert p - q == 2 * dot(b, a) / dot(a, a)
        assert p + q <= 3

    def test_rejects_parallel(self):
        rs = rootsystem("A", 2)
        with pytest.raises(ValueError):
            root_string(rs, rs.roots[0], rs.roots[0])
