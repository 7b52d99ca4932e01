"""Unit tests for exact character arithmetic and truncated series."""

import json
import random
from fractions import Fraction

import pytest

from vertexlab.charlab import (
    Character,
    LineBundleSum,
    Monomial,
    TruncSeries,
    attracting_split,
    gamma_invariants,
    hcoh_p1,
    ohat_contribution,
    plethystic_exp,
)


def mono(**exps):
    return Monomial.from_exps(exps)


def char(*pairs):
    return Character.from_terms(pairs)


# ---------------------------------------------------------------- monomials


def test_monomial_product_and_inverse():
    a = mono(x=2, y=-1)
    b = mono(y=1, z=3)
    assert a * b == mono(x=2, z=3)
    assert a * a.inv() == Monomial.one()
    assert (a ** 3).exps() == {"x": Fraction(6), "y": Fraction(-3)}


def test_monomial_half_integer_sqrt():
    w = mono(x=3, y=-1)
    s = w.sqrt()
    assert s.exps() == {"x": Fraction(3, 2), "y": Fraction(-1, 2)}
    assert s * s == w
    with pytest.raises(ValueError):
        s.sqrt()  # quarter-integers are not representable


def test_monomial_substitute():
    w = mono(x=1, y=-2)
    image = w.substitute({"x": mono(Q=1), "y": mono(Q=-1)})
    assert image == mono(Q=3)
    # variables without an entry pass through unchanged
    assert mono(x=1, u1=1).substitute({"x": mono(Q=1)}) == mono(Q=1, u1=1)


def test_monomial_evaluate():
    w = mono(x=2, y=-1)
    assert w.evaluate({"x": Fraction(3), "y": Fraction(2)}) == Fraction(9, 2)
    with pytest.raises(ValueError):
        w.evaluate({"x": Fraction(3)})


# --------------------------------------------------------------- characters


def test_character_ring_ops():
    a = char((mono(x=1), 1), (mono(y=1), 2))
    b = char((mono(x=-1), 1), (Monomial.one(), -1))
    assert (a + b) - b == a
    prod = a * b
    assert prod == char(
        (Monomial.one(), 1),
        (mono(x=1), -1),
        (mono(x=-1, y=1), 2),
        (mono(y=1), -2),
    )
    assert a * Character.zero() == Character.zero()


def test_character_dual_and_rank():
    a = char((mono(x=1, y=-2), 3), (Monomial.one(), -1))
    assert a.dual().dual() == a
    assert a.dual() == char((mono(x=-1, y=2), 3), (Monomial.one(), -1))
    assert a.rank() == 2
    assert a.trivial_mult() == -1


def test_character_json_roundtrip_and_determinism():
    a = char((mono(x=-2, y=1), 3), (mono(z=1), -1))
    blob = json.dumps(a.to_json(), sort_keys=True)
    assert Character.from_json(json.loads(blob)) == a
    assert json.dumps(a.to_json(), sort_keys=True) == blob
    # integer exponents serialize under "exps"
    assert all("exps" in t for t in a.to_json()["terms"])


def test_character_json_half_integer_exponents():
    a = char((mono(x=Fraction(1, 2), y=-1), 2),)
    data = a.to_json()
    (term,) = data["terms"]
    assert "exps2" in term and term["exps2"] == {"x": 1, "y": -2}
    assert Character.from_json(data) == a


# ----------------------------------------------------------- gamma invariants


def test_gamma_invariants_frozen():
    c = char(
        (Monomial.one(), 1), (mono(x=1), 1), (mono(y=1), 1), (mono(x=1, y=1), 1)
    )
    assert gamma_invariants(c, 2) == char((Monomial.one(), 1), (mono(x=1, y=1), 1))
    d = char((mono(y=2), 1), (mono(y=1), 1), (Monomial.one(), 1), (mono(x=1), 1))
    assert gamma_invariants(d, 3) == Character.one()


def test_gamma_invariants_is_linear_projector():
    rng = random.Random(7)
    for _ in range(20):
        terms_a = [(mono(x=rng.randrange(-3, 4), y=rng.randrange(-3, 4),
                         z=rng.randrange(-1, 2)), rng.randrange(-2, 3))
                   for _ in range(4)]
        terms_b = [(mono(x=rng.randrange(-3, 4), y=rng.randrange(-3, 4)),
                    rng.randrange(-2, 3)) for _ in range(3)]
        a, b = Character.from_terms(terms_a), Character.from_terms(terms_b)
        m = rng.choice([2, 3, 4])
        ga = gamma_invariants(a, m)
        assert gamma_invariants(ga, m) == ga
        assert gamma_invariants(a + b, m) == ga + gamma_invariants(b, m)
    # spectator variables carry no orbifold weight
    assert gamma_invariants(char((mono(z=5, u1=-1), 2)), 3) == char(
        (mono(z=5, u1=-1), 2)
    )


# ----------------------------------------------------------- attracting split


def test_attracting_split_frozen():
    tangent = char((mono(x=-1), 1), (mono(y=-1), 1))
    pos, zero, neg = attracting_split(tangent, {"x": 1, "y": -1})
    assert neg == char((mono(x=-1), 1))
    assert pos == char((mono(y=-1), 1))
    assert zero == Character.zero()


def test_attracting_split_partitions_and_dualizes():
    rng = random.Random(11)
    sigma = {"x": 5, "y": -3, "u1": 1}
    for _ in range(20):
        c = Character.from_terms(
            (mono(x=rng.randrange(-2, 3), y=rng.randrange(-2, 3),
                  u1=rng.randrange(-2, 3)), rng.randrange(-2, 3))
            for _ in range(5)
        )
        pos, zero, neg = attracting_split(c, sigma)
        assert pos + zero + neg == c
        dpos, dzero, dneg = attracting_split(c.dual(), sigma)
        assert dpos == neg.dual() and dneg == pos.dual() and dzero == zero.dual()


# ------------------------------------------------------------------- hcoh_p1


def chi_closed_form(weight, d):
    """Textbook cohomology of O(d) on the projective line, written directly."""
    if d >= 0:
        return Character.from_terms((weight * mono(z=-k), 1) for k in range(d + 1))
    if d == -1:
        return Character.zero()
    return Character.from_terms((weight * mono(z=k), -1) for k in range(1, -d))


def test_hcoh_p1_frozen():
    one = Monomial.one()
    assert hcoh_p1(one, 0) == Character.one()
    assert hcoh_p1(one, 1) == char((Monomial.one(), 1), (mono(z=-1), 1))
    assert hcoh_p1(one, -1) == Character.zero()
    assert hcoh_p1(one, -2) == char((mono(z=1), -1))


def test_hcoh_p1_matches_closed_form_and_euler_rank():
    w = mono(x=1, y=-1)
    for d in range(-6, 7):
        c = hcoh_p1(w, d)
        assert c == chi_closed_form(w, d)
        assert c.rank() == d + 1


def test_hcoh_p1_serre_duality():
    # dual of the section character of O(d) is -z^{-1} * sections of O(-d-2)
    twist = mono(z=-1)
    for d in range(-5, 6):
        lhs = hcoh_p1(Monomial.one(), d).dual()
        rhs = Character.from_terms(
            (twist * m, -c) for m, c in hcoh_p1(Monomial.one(), -d - 2).terms()
        )
        assert lhs == rhs


# ------------------------------------------------------------ line bundle sums


def test_line_bundle_sum_algebra():
    a = LineBundleSum.line(mono(x=1), 2)
    b = LineBundleSum.line(mono(y=1), -1)
    ab = a * b
    assert ab == LineBundleSum.line(mono(x=1, y=1), 1)
    assert a.dual() == LineBundleSum.line(mono(x=-1), -2)
    assert (a + b) - b == a


def test_line_bundle_sum_chi_is_termwise():
    lbs = LineBundleSum.line(mono(x=1), 1) + LineBundleSum.line(mono(y=2), -2)
    expected = hcoh_p1(mono(x=1), 1) + Character.from_terms(
        (m, c) for m, c in hcoh_p1(mono(y=2), -2).terms()
    )
    assert lbs.chi() == expected
    # embedding a character adds degree-zero lines
    c = char((mono(x=1), 1), (Monomial.one(), -1))
    assert LineBundleSum.from_character(c).chi() == c


# ------------------------------------------------------------------ series


def qa_series(order, caps=None):
    return TruncSeries.zero(("Q", "A1"), order, caps=caps)


def test_series_basic_arithmetic():
    s = qa_series(4)
    s = s.add_term({"Q": 1}, 1).add_term({}, 1)  # 1 + Q
    t = s * s
    assert t.coeff({"Q": 2}) == 1 * 1
    assert (s - s).is_zero()
    cube = s * s * s
    assert cube.coeff({"Q": 3}) == 1
    assert cube.coeff({"Q": 2}) == 3


def test_series_truncation_by_weighted_degree():
    s = TruncSeries.zero(("Q", "A1"), 4, weights={"Q": 1, "A1": 2})
    s = s.add_term({}, 1).add_term({"A1": 1, "Q": 1}, 1)  # wdeg(QA1) = 3
    sq = s * s
    assert sq.coeff({"A1": 1, "Q": 1}) == 2
    assert sq.coeff({"A1": 2, "Q": 2}) == 0  # wdeg 6 > 4 dropped


def test_series_negative_exponents_allowed():
    s = qa_series(3).add_term({"Q": -2, "A1": 1}, Fraction(1, 2))
    assert s.coeff({"Q": -2, "A1": 1}) == Fraction(1, 2)
    t = s * qa_series(3).add_term({"Q": 2}, 1)
    assert t.coeff({"A1": 1}) == Fraction(1, 2)


def test_series_caps_enforced():
    s = qa_series(9, caps={"A1": 2})
    s = s.add_term({"A1": 1}, 1).add_term({}, 1)
    p = s * s * s * s
    assert p.coeff({"A1": 2}) == 6
    assert p.coeff({"A1": 3}) == 0


def test_series_json_roundtrip():
    s = qa_series(5).add_term({"Q": -1, "A1": 2}, Fraction(3, 7)).add_term({}, 2)
    data = s.to_json()
    assert data["order"] == 5
    back = TruncSeries.from_json(data, ("Q", "A1"))
    assert back == s
    blob = json.dumps(data, sort_keys=True)
    assert json.dumps(s.to_json(), sort_keys=True) == blob


def test_series_prune():
    s = qa_series(6).add_term({"Q": 5}, 1).add_term({"Q": 1}, 2)
    p = s.prune("Q", 2)
    assert p.coeff({"Q": 5}) == 0 and p.coeff({"Q": 1}) == 2


# ------------------------------------------------------------ plethystic exp


def test_plethystic_exp_frozen_geometric():
    c = char((mono(Q=1), 1))
    s = plethystic_exp(c, ("Q",), 3)
    expected = TruncSeries.zero(("Q",), 3)
    for k in range(4):
        expected = expected.add_term({"Q": k}, 1)
    assert s == expected


def test_plethystic_exp_multiplicativity():
    rng = random.Random(23)
    svars = ("Q", "A1")
    for _ in range(8):
        def rand_char():
            terms = []
            for _ in range(rng.randrange(1, 4)):
                e = {"Q": rng.randrange(0, 3), "A1": rng.randrange(0, 3)}
                if e["Q"] + e["A1"] == 0:
                    e["Q"] = 1
                terms.append((Monomial.from_exps(e), rng.randrange(-2, 3) or 1))
            return Character.from_terms(terms)

        a, b = rand_char(), rand_char()
        lhs = plethystic_exp(a + b, svars, 6)
        rhs = plethystic_exp(a, svars, 6) * plethystic_exp(b, svars, 6)
        assert lhs == rhs


def test_plethystic_exp_negative_multiplicity_is_polynomial():
    c = char((mono(Q=1), -1))
    s = plethystic_exp(c, ("Q",), 5)
    assert s == TruncSeries.zero(("Q",), 5).add_term({}, 1).add_term({"Q": 1}, -1)


def test_plethystic_exp_rejects_divergent_input():
    with pytest.raises(ValueError):
        plethystic_exp(Character.one(), ("Q",), 4)
    with pytest.raises(ValueError):
        plethystic_exp(char((mono(Q=-1, A1=1), 1)), ("Q", "A1"), 4)
    with pytest.raises(ValueError):
        plethystic_exp(char((mono(x=1), 1)), ("Q",), 4)


def test_plethystic_exp_laurent_weights():
    # weighted grading admits Laurent terms as long as each weighted degree >= 1
    c = char((mono(Q=-1, A1=1), 1))
    s = plethystic_exp(c, ("Q", "A1"), 4, weights={"Q": 1, "A1": 2})
    assert s.coeff({"Q": -2, "A1": 2}) == 1
    assert s.coeff({"Q": -4, "A1": 4}) == 1  # weighted degree 4, kept
    assert s.coeff({"Q": -5, "A1": 5}) == 0  # weighted degree 5, dropped


# ------------------------------------------------------------------- ohat


def test_ohat_contribution_frozen_quarter():
    c = char((mono(x=-1), 1), (mono(y=-1), 1))
    p = ohat_contribution(c)
    val = p.evaluate({"x": Fraction(4), "y": Fraction(9)})
    assert val == Fraction(1, 4)


def test_ohat_abs2_matches_square_of_value():
    c = char((mono(x=-1), 1), (mono(y=2), -1))
    p = ohat_contribution(c)
    pt = {"x": Fraction(9, 4), "y": Fraction(4)}
    assert p.abs2(pt) == p.evaluate(pt) ** 2


def test_ohat_abs2_negative_weight_value():
    # |i*s - (i*s)^{-1}|^2 = |w - 2 + 1/w| with w < 0
    c = char((mono(x=1), 1))
    p = ohat_contribution(c)
    w = Fraction(-4)
    assert p.abs2({"x": w}) == Fraction(1, abs(w - 2 + 1 / w))


def test_ohat_rejects_fixed_part():
    with pytest.raises(ValueError):
        ohat_contribution(char((Monomial.one(), 1), (mono(x=1), 1)))


def test_ohat_evaluate_requires_rational_sqrt():
    p = ohat_contribution(char((mono(x=1), 1)))
    with pytest.raises(ValueError):
        p.evaluate({"x": Fraction(2)})
