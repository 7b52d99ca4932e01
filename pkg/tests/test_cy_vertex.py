"""Vertex series in the large-volume limit: hook products, mirror sums, checks."""

from fractions import Fraction

import pytest

from vertexlab.charlab import Character, Monomial, TruncSeries, plethystic_exp
from vertexlab.cy_vertex import (
    Chamber,
    bracket_ratio,
    crc_check,
    cy_vertex_mirror,
    cy_vertex_topological,
    grpp_series,
    rpp_series,
    schur_principal,
    series_params,
)
from vertexlab.partitions import m_quotient, n_stat, transpose


# 1/((1-Q)^2 (1-Q^3)) by direct convolution, frozen
PLANE_21 = [1, 2, 3, 5, 7, 9, 12]


def geometric_checks(series, var, order):
    for k in range(order + 1):
        assert series.coeff({var: k}) == 1


class TestSchurPrincipal:
    def test_single_box(self):
        pre, s = schur_principal((1,), 8)
        assert pre == Fraction(1, 2)
        geometric_checks(s, "Q", 8)

    def test_staircase(self):
        pre, s = schur_principal((2, 1), 6)
        assert pre == Fraction(5, 2)
        for k, c in enumerate(PLANE_21):
            assert s.coeff({"Q": k}) == c

    def test_empty(self):
        pre, s = schur_principal((), 4)
        assert pre == 0
        assert s == TruncSeries.one(("Q",), 4)

    def test_prefactor_is_n_stat(self):
        for lam in [(3,), (2, 2), (4, 2, 1)]:
            pre, _ = schur_principal(lam, 2)
            assert pre == n_stat(lam)


class TestBracketRatio:
    def test_single_box_vs_empty(self):
        s = bracket_ratio((1,), (), Monomial.var("A1"), 6)
        geometric_checks(s, "A1", 6)

    def test_empty_empty(self):
        s = bracket_ratio((), (), Monomial.var("A1"), 6)
        assert s.coeff({}) == 1
        assert len(s.coeffs) == 1

    @pytest.mark.parametrize(
        "lam,mu", [((2, 1), (3, 1)), ((2,), (1, 1)), ((3,), ())]
    )
    def test_transpose_symmetry(self, lam, mu):
        # the doubly-indexed product is symmetric under swapping the two
        # index families, which exchanges (lam, mu) with their transposes
        a = Monomial.var("A1")
        assert bracket_ratio(lam, mu, a, 6) == bracket_ratio(
            transpose(mu), transpose(lam), a, 6
        )

    def test_trivial_twist_rejected(self):
        with pytest.raises(ValueError):
            bracket_ratio((1,), (1,), Monomial.one(), 4)


class TestTopological:
    def test_m1_single_box(self):
        s = cy_vertex_topological(((1,),), 7)
        geometric_checks(s, "Q", 7)

    def test_m2_box_empty(self):
        s = cy_vertex_topological(((1,), ()), 5).prune("Q", 5)
        for i in range(6):
            for j in range(6):
                assert s.coeff({"Q": i, "A1": j}) == 1

    def test_all_empty(self):
        s = cy_vertex_topological(((), ()), 4)
        assert s.coeff({}) == 1
        assert len(s.coeffs) == 1


class TestMirror:
    def test_m1_single_box_resolved(self):
        s = cy_vertex_mirror(((1,),), Chamber.resolved(1), 7)
        geometric_checks(s, "Q", 7)

    def test_m2_box_empty_matches_topological(self):
        order = 5
        top = cy_vertex_topological(((1,), ()), order)
        mir = cy_vertex_mirror(((1,), ()), Chamber.resolved(2), order)
        assert top == mir

    def test_all_empty(self):
        for chamber in (Chamber.resolved(2), Chamber.orbifold(2)):
            s = cy_vertex_mirror(((), ()), chamber, 4)
            assert s.coeff({}) == 1
            assert len(s.coeffs) == 1

    def test_m2_orbifold_chamber(self):
        # label ((1),()) is the 2-quotient of (1,1); the series counts the
        # colored RPPs of that shape: one for each pair d1 >= d0 >= 0
        s = cy_vertex_mirror(((1,), ()), Chamber.orbifold(2), 6)
        for d0 in range(7):
            for d1 in range(7 - d0):
                want = 1 if d1 >= d0 else 0
                assert s.coeff({"z0": d0, "z1": d1}) == want


class TestRppSeries:
    def test_m1_staircase_gansner(self):
        s = rpp_series((2, 1), 1, 6)
        for k, c in enumerate(PLANE_21):
            assert s.coeff({"Q": k}) == c

    def test_m1_matches_hook_product(self):
        for lam in [(2,), (3, 1), (2, 2, 1)]:
            _, hooks = schur_principal(lam, 6)
            assert rpp_series(lam, 1, 6) == hooks

    def test_m2_column_pair(self):
        s = rpp_series((1, 1), 2, 6)
        for d0 in range(7):
            for d1 in range(7 - d0):
                want = 1 if d1 >= d0 else 0
                assert s.coeff({"z0": d0, "z1": d1}) == want

    def test_empty(self):
        s = rpp_series((), 2, 3)
        assert s.coeff({}) == 1
        assert len(s.coeffs) == 1


class TestGrppSeries:
    def test_m2_box_first_slot(self):
        s = grpp_series(((1,), ()), 5)
        for i in range(6):
            for j in range(6):
                assert s.coeff({"Q": i, "A1": j}) == 1

    def test_m1_reduces_to_rpp(self):
        s = grpp_series(((2, 1),), 6)
        for k, c in enumerate(PLANE_21):
            assert s.coeff({"Q": k}) == c

    def test_three_way_small(self):
        order = 4
        for legs in [((2,), ()), ((), (2,)), ((1, 1), ())]:
            g = grpp_series(legs, order)
            top = cy_vertex_topological(legs, order).prune("Q", order)
            mir = cy_vertex_mirror(legs, Chamber.resolved(2), order).prune("Q", order)
            assert g == top, legs
            assert g == mir, legs

    def test_multi_leg_rejected(self):
        with pytest.raises(ValueError):
            grpp_series(((1,), (1,)), 4)

    def test_all_empty(self):
        s = grpp_series(((), ()), 4)
        assert s.coeff({}) == 1


class TestCrcCheck:
    def test_empty(self):
        mono, ok = crc_check((), 2, 4)
        assert ok
        assert mono == Character.one()

    def test_column_pair(self):
        mono, ok = crc_check((1, 1), 2, 8)
        assert ok
        assert mono == Character.one()

    def test_nontrivial_core_rejected(self):
        with pytest.raises(ValueError):
            crc_check((1,), 2, 4)

    @pytest.mark.parametrize("lam,m", [((4,), 2), ((3, 1), 2), ((2, 2), 2), ((3, 3), 3)])
    def test_single_monomial(self, lam, m):
        assert m_quotient(lam, m)[0] == ()
        mono, ok = crc_check(lam, m, 5)
        assert ok
        assert all(mult in (1, -1) for _, mult in mono.terms())
        assert len(mono.terms()) == 1


class TestSeriesParams:
    def test_frame_admits_target_region(self):
        svars, order_w, weights, caps = series_params(((2,), (1,)), 4)
        assert svars == ("Q", "A1")
        s = TruncSeries.zero(svars, order_w, weights, caps)
        s = s.add_term({"Q": 4, "A1": 4}, 1)
        assert s.coeff({"Q": 4, "A1": 4}) == 1
