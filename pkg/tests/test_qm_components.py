"""Unit tests for fixed-component labelings on the quasimap side."""

import itertools

import pytest

from vertexlab.charlab import Character, Monomial
from vertexlab.partitions import multipartitions, partitions_of
from vertexlab.qm_components import (
    CellLabeling,
    HookLabeling,
    degrees,
    enumerate_components,
    enumerate_components_orbifold,
    fixed_term_dim,
    is_monotone,
    is_stable,
    iter_labelings,
    to_curve_class,
    tvir_quasimap,
)
from vertexlab.quiver_geom import quiver_data_orbifold, quiver_data_resolved, tangent_quiver


def mono(**exps):
    return Monomial.from_exps(exps)


def char(*pairs):
    return Character.from_terms(pairs)


def hl(m, legs, labels):
    return HookLabeling(m, tuple(tuple(p) for p in legs), labels)


FIG_A = hl(2, ((1,), (1,)), {(0, 0, 0): (0, 1), (1, 0, 0): (1, 1)})

FIG_B = hl(
    3,
    ((1,), (1,), (1,)),
    {
        (0, 0, 0): (0, 1, 0),  # corner 0, y^2 square color 1, y square color 2
        (1, 0, 0): (0, 0, 1),
        (2, 0, 0): (1, 1, 1),
    },
)


# -------------------------------------------------------------- monotonicity


def test_is_monotone_single_hooks():
    assert is_monotone(hl(2, ((1,), (1,)), {(0, 0, 0): (0, 0), (1, 0, 0): (1, 1)}))
    # within-hook chain violated: corner above its x-arm
    assert not is_monotone(hl(2, ((), (1,)), {(1, 0, 0): (1, 0)}))
    # y-arm chain on leg 0
    assert not is_monotone(hl(2, ((1,), ()), {(0, 0, 0): (1, 0)}))


def test_is_monotone_fig1_labeling():
    assert is_monotone(FIG_A)
    assert is_stable(FIG_A)
    assert degrees(FIG_A) == (1, 2)


def test_is_monotone_x_pair_rule():
    # leg 0 of m=2, shape (2): second hook's color-1 label bounds the first corner
    good = hl(2, ((2,), ()), {(0, 0, 0): (0, 0), (0, 1, 0): (-1, 0)})
    assert is_monotone(good)
    bad = hl(2, ((2,), ()), {(0, 0, 0): (1, 1), (0, 1, 0): (0, 0)})
    assert not is_monotone(bad)


def test_is_monotone_y_pair_rule():
    # y-neighbor: d'_a >= d_{a+1}
    good = hl(2, ((1, 1), ()), {(0, 0, 0): (0, 1), (0, 0, 1): (1, 1)})
    assert is_monotone(good)
    bad = hl(2, ((1, 1), ()), {(0, 0, 0): (0, 1), (0, 0, 1): (0, 0)})
    assert not is_monotone(bad)


def test_is_monotone_diagonal_corner_rule():
    # xy-neighbor at m=1: plain plane-partition monotonicity
    good = hl(1, (((2, 2)),), {(0, 0, 0): (0,), (0, 1, 0): (0,),
                               (0, 0, 1): (0,), (0, 1, 1): (1,)})
    assert is_monotone(good)
    bad = hl(1, (((2, 2)),), {(0, 0, 0): (1,), (0, 1, 0): (1,),
                              (0, 0, 1): (1,), (0, 1, 1): (0,)})
    assert not is_monotone(bad)


def test_is_monotone_diagonal_rule_m3():
    # m=3 leg 0: the xy-neighbor imposes d'_0 >= d_2 and d'_1 >= d_0 but
    # nothing on d'_2, so a tall color-1 label may repeat diagonally
    diag = {
        (0, 0, 0): (0, 5, 0),
        (0, 1, 0): (0, 0, 0),
        (0, 0, 1): (5, 5, 5),
        (0, 1, 1): (0, 5, 0),
    }
    assert is_monotone(hl(3, ((2, 2), (), ()), diag))
    # raising the corner hook's color-2 label breaks only d'_0 >= d_2
    bad = dict(diag)
    bad[(0, 0, 0)] = (0, 5, 1)
    assert not is_monotone(hl(3, ((2, 2), (), ()), bad))


def test_stability_checks_origin_corners_only():
    # negative corner away from the origin is fine (Laurent behaviour)
    lab = hl(2, ((2,), ()), {(0, 0, 0): (0, 0), (0, 1, 0): (-1, 0)})
    assert is_stable(lab)
    # negative corner at the origin anchor is not
    lab2 = hl(2, ((1,), ()), {(0, 0, 0): (-1, 0)})
    assert is_monotone(lab2) and not is_stable(lab2)


# ------------------------------------------------------- degrees and classes


def test_degrees_single_hook_frozen():
    lab = hl(2, ((1,), ()), {(0, 0, 0): (3, 5)})
    assert degrees(lab) == (3, 5)
    n, beta = to_curve_class(lab)
    assert n == 3 and beta == (2,)


def test_degrees_fig_b():
    assert degrees(FIG_B) == (1, 2, 2)
    n, beta = to_curve_class(FIG_B)
    assert n == 1 and beta == (1, 1)


# --------------------------------------------------------------- enumeration


def test_enumerate_frozen_counts():
    labs = enumerate_components(((1,), (1,)), 1)
    assert len(labs) == 9
    labs_m1 = enumerate_components(((1,),), 3)
    assert len(labs_m1) == 4
    assert len(enumerate_components(((), ()), 2)) == 1


def test_enumerate_agrees_with_bruteforce():
    for legs in [((1,), (1,)), ((2,), ()), ((1, 1), ()), ((1,), ())]:
        fast = enumerate_components(legs, 2)
        slow = [
            lab for lab in iter_labelings(legs, 2) if is_stable(lab)
        ]
        assert len(fast) == len(slow)
        assert set(fast) == set(slow)
        # ordering: by degree vector, then flattened labels
        keys = [(degrees(l), l.flat_labels()) for l in fast]
        assert keys == sorted(keys)


def test_enumerate_orbifold_rpp():
    labs = enumerate_components_orbifold((1, 1), 2, 2)
    pairs = sorted((l.label(0, 0), l.label(0, 1)) for l in labs)
    assert pairs == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def test_orbifold_stability_is_colored_rpp():
    lab = CellLabeling(2, (2, 1), {(0, 0): 0, (1, 0): 1, (0, 1): 2})
    assert is_stable(lab)
    bad = CellLabeling(2, (2, 1), {(0, 0): 1, (1, 0): 0, (0, 1): 2})
    assert not is_stable(bad)
    neg = CellLabeling(2, (1,), {(0, 0): -1})
    assert not is_stable(neg)


# ------------------------------------------------------------------ tangents


def test_tvir_frozen_m1():
    lab0 = hl(1, ((1,),), {(0, 0, 0): (0,)})
    assert tvir_quasimap(lab0) == char((mono(x=-1), 1), (mono(y=-1), 1))
    lab1 = hl(1, ((1,),), {(0, 0, 0): (1,)})
    assert tvir_quasimap(lab1) == char(
        (mono(z=-1), 1), (mono(x=-1), 1), (mono(y=-1), 1), (mono(x=-1, y=-1), -1)
    )


def test_tvir_degree_zero_is_moduli_tangent():
    for m in (1, 2, 3):
        for legs in multipartitions(m, 2):
            lab = HookLabeling.zero(m, legs)
            assert tvir_quasimap(lab) == tangent_quiver(quiver_data_resolved(legs, m))
    for lam in partitions_of(3):
        lab = CellLabeling.zero(2, lam)
        assert tvir_quasimap(lab) == tangent_quiver(quiver_data_orbifold(lam, 2))


# --------------------------------------------------------- fixed-locus dims


def test_fixed_term_dim_figures():
    assert fixed_term_dim(FIG_A) == 1
    assert fixed_term_dim(FIG_B) == 2


def test_fixed_term_dim_matches_tvir_resolved():
    for legs in [((1,), (1,)), ((2,), ()), ((1, 1), (1,))]:
        for lab in enumerate_components(legs, 2):
            assert fixed_term_dim(lab) == tvir_quasimap(lab).trivial_mult()


def test_fixed_term_dim_matches_tvir_orbifold():
    for lam in [(1,), (2,), (1, 1), (2, 1)]:
        for m in (2, 3):
            for lab in enumerate_components_orbifold(lam, m, 2):
                assert fixed_term_dim(lab) == tvir_quasimap(lab).trivial_mult()


def test_isolated_points_have_dimension_zero():
    lab = HookLabeling.zero(2, ((1,), ()))
    assert fixed_term_dim(lab) == 0


# ----------------------------------------------------------------- validation


def test_labeling_validation():
    with pytest.raises(ValueError):
        hl(2, ((1,), ()), {(0, 0, 0): (0,)})  # wrong label width
    with pytest.raises(ValueError):
        hl(2, ((1,), ()), {(0, 1, 0): (0, 0)})  # anchor outside the leg
    with pytest.raises(ValueError):
        hl(2, ((1,), ()), {})  # missing anchor


def test_labeling_json_roundtrip():
    data = FIG_A.to_json()
    assert data[0] == {"leg": 0, "anchor": [0, 0], "by_color": [0, 1]}
    assert HookLabeling.from_json(2, ((1,), (1,)), data) == FIG_A
