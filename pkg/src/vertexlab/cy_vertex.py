"""Vertex generating series in the Calabi-Yau specialization.

The vertex counts fixed quasimap components by curve class.  In the CY
specialization the full equivariant answer collapses to series with
integer coefficients that admit three independent descriptions: hook
products with topological-vertex-style bracket factors, symmetric-algebra
(plethystic) sums over the attracting half of an instanton tangent space,
and brute-force sums over labeled box configurations.  This module builds
all three plus the chamber-change comparison between the resolved and
orbifold expansions.

Variable conventions: the resolved expansion lives in Q (point count) and
A_1..A_{m-1} (multiplicities over the exceptional curves); the orbifold
expansion lives in z_0..z_{m-1} (boxes per color), related by Q = z_0...
z_{m-1}, A_i = z_i.  All series are normalized to constant term 1; the
overall monomial prefactor is tracked separately where it matters
(schur_principal, crc_check).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .charlab import (
    Character,
    Monomial,
    TruncSeries,
    attracting_split,
    plethystic_exp,
)
from .partitions import (
    Partition,
    arm_leg_hook,
    cells,
    check_partition,
    m_quotient,
    n_stat,
    transpose,
)
from .qm_components import _cells_ij, degrees, enumerate_components_orbifold
from .quiver_geom import t_pair, tangent_instanton

__all__ = [
    "Chamber",
    "schur_principal",
    "bracket_ratio",
    "cy_vertex_topological",
    "cy_vertex_mirror",
    "rpp_series",
    "grpp_series",
    "crc_check",
    "series_params",
]


_QSUB = {"x": Monomial.var("Q"), "y": Monomial.var("Q", -1)}


@dataclass(frozen=True)
class Chamber:
    """Attracting chamber for the framing torus and the fiber scaling.

    ``C_minus`` realizes u_1 >> u_2 >> ... >> u_m > t > 0 (resolved
    expansion), ``C_plus`` realizes t > u_1 >> ... >> u_m > 0 (orbifold
    expansion).
    """

    tag: str
    m: int

    C_MINUS = "C_minus"
    C_PLUS = "C_plus"

    def __post_init__(self):
        if self.tag not in (self.C_MINUS, self.C_PLUS):
            raise ValueError(f"unknown chamber tag {self.tag!r}")
        if self.m < 1:
            raise ValueError("need at least one framing variable")

    @classmethod
    def resolved(cls, m: int) -> "Chamber":
        return cls(cls.C_MINUS, m)

    @classmethod
    def orbifold(cls, m: int) -> "Chamber":
        return cls(cls.C_PLUS, m)

    def cocharacter(self, scale: int) -> dict[str, int]:
        """Integer pairing weights realizing the chamber ordering.

        ``scale`` must dominate twice the largest |x-exponent minus
        y-exponent| of the character being split, so that the geometric
        separation of the u-scales can never be cancelled by the fiber
        weights.
        """
        m = self.m
        if self.tag == self.C_MINUS:
            sig = {f"u{a}": scale ** (m - a + 1) for a in range(1, m + 1)}
            sig["x"], sig["y"] = 1, -1
        else:
            sig = {f"u{a}": scale ** (m - a) for a in range(1, m + 1)}
            sig["x"], sig["y"] = scale**m, -(scale**m)
        return sig

    @property
    def svars(self) -> tuple[str, ...]:
        if self.tag == self.C_MINUS:
            return ("Q",) + tuple(f"A{i}" for i in range(1, self.m))
        return tuple(f"z{k}" for k in range(self.m))

    def substitution(self) -> dict[str, Monomial]:
        """Curve-counting variables for the attracting weights.

        Kills the diagonal fiber scaling (x*y maps to 1) and sends the
        framing ratios to the curve-class variables: u_a/u_b = A_a...A_{b-1}
        on the resolved side, z_a...z_{b-1} on the orbifold side.
        """
        m = self.m
        if self.tag == self.C_MINUS:
            sub = dict(_QSUB)
            unit = "A"
        else:
            zd = Monomial.from_exps({f"z{k}": 1 for k in range(m)})
            sub = {"x": zd, "y": zd.inv()}
            unit = "z"
        for a in range(1, m + 1):
            img = Monomial.one()
            for i in range(1, a):
                img = img * Monomial.var(f"{unit}{i}", -1)
            sub[f"u{a}"] = img
        return sub


def _attracting_input(labels: Sequence[Partition], chamber: Chamber) -> Character:
    """Dualized attracting part of the instanton tangent space, substituted.

    The m-tuple is carried to the instanton side componentwise transposed;
    this is the labeling under which the plethystic sums reproduce the
    brute-force box counts in both chambers.
    """
    c = tangent_instanton(tuple(transpose(p) for p in labels))
    spread = 0
    for w, _ in c.terms():
        e = w.exps()
        spread = max(spread, abs(int(e.get("x", 0) - e.get("y", 0))))
    pos, zero, neg = attracting_split(c, chamber.cocharacter(max(3, 2 * spread + 2)))
    assert not zero.terms(), "tangent weights must be nontrivial in the chamber"
    return neg.dual().substitute(chamber.substitution())


def series_params(legs, order: int):
    """Truncation frame exact on {Q <= order, A_i <= order} for all routes.

    Returns (svars, weighted_order, weights, caps).  The A-weight W is
    chosen so every plethystic input term that may appear in the hook,
    bracket, or mirror routes for these legs has weighted degree >= 1;
    truncated products are then exact on the capped region.
    """
    legs = tuple(check_partition(p) for p in legs)
    m = len(legs)
    svars = ("Q",) + tuple(f"A{i}" for i in range(1, m))
    shifts: list[tuple[int, int]] = []
    for p in legs:
        for r, c in cells(p):
            shifts.append((arm_leg_hook(p, r, c)[2], 0))
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            for u in (legs[a], transpose(legs[a])):
                for v in (legs[b], transpose(legs[b])):
                    for w, _ in t_pair(u, v).dual().terms():
                        e = w.exps()
                        shifts.append((int(e.get("x", 0) - e.get("y", 0)), abs(b - a)))
    weight = 1
    for s, beta in shifts:
        if beta == 0:
            if s < 1:
                raise ValueError("degenerate series direction for these legs")
        else:
            weight = max(weight, -((s - 1) // beta))
    order_w = order * (1 + weight * (m - 1))
    weights = {"Q": 1}
    weights.update({v: weight for v in svars[1:]})
    caps = {v: order for v in svars[1:]}
    return svars, order_w, weights, caps


def schur_principal(lam, order: int):
    """Principal specialization of a Schur function as a hook product.

    Returns (prefactor, series): the leading power is the half-integer
    n(lam) = sum (k - 1/2) lam_k, tracked separately; the series is the
    expansion of prod over cells of 1/(1 - Q^hook).
    """
    lam = check_partition(lam)
    hooks = Character.from_terms(
        (Monomial.var("Q", arm_leg_hook(lam, r, c)[2]), 1) for r, c in cells(lam)
    )
    return n_stat(lam), plethystic_exp(hooks, ("Q",), order)


def _bracket_input(lam, mu, twist: Monomial) -> Character:
    base = t_pair(lam, mu).dual().substitute(_QSUB)
    return Character.from_terms((w * twist, mult) for w, mult in base.terms())


def bracket_ratio(lam, mu, twist: Monomial, order: int, frame=None) -> TruncSeries:
    """Normalized two-leg bracket factor [lam mu]_twist / [empty empty]_twist.

    Computed from the finite pair character, never from the doubly infinite
    product; the ratio of the two infinite products is the symmetric algebra
    of twist * dual(t_pair(lam, mu)) at x = Q, y = 1/Q.
    """
    lam, mu = check_partition(lam), check_partition(mu)
    inp = _bracket_input(lam, mu, twist)
    if frame is None:
        tvars = sorted(twist.exps(), key=lambda n: (len(n), n))
        svars = ("Q",) + tuple(tvars)
        weight = 1
        for w, _ in inp.terms():
            e = w.exps()
            s = int(e.get("Q", 0))
            beta = sum(int(e[n]) for n in e if n != "Q")
            if beta <= 0:
                if s < 1:
                    raise ValueError("twist monomial does not separate the tails")
            else:
                weight = max(weight, -((s - 1) // beta))
        order_w = order * (1 + weight * len(tvars))
        weights = {"Q": 1}
        weights.update({v: weight for v in tvars})
        caps = {v: order for v in tvars}
        frame = (svars, order_w, weights, caps)
    svars, order_w, weights, caps = frame
    return plethystic_exp(inp, svars, order_w, weights, caps)


def cy_vertex_topological(legs, order: int) -> TruncSeries:
    """Vertex series as a hook product times pairwise bracket factors.

    One hook-product factor per leg and one bracket factor per ordered pair
    a < b with twist A_{ab} = A_{a+1}..A_b (0-indexed slots).  Both bracket
    slots carry transposed legs: the legs argument is the box-count label,
    whose componentwise transpose indexes the instanton tangent space, and
    bracket_ratio consumes pair characters in the instanton convention.
    """
    legs = tuple(check_partition(p) for p in legs)
    m = len(legs)
    frame = series_params(legs, order)
    svars, order_w, weights, caps = frame
    out = TruncSeries.one(svars, order_w, weights, caps)
    for p in legs:
        hooks = Character.from_terms(
            (Monomial.var("Q", arm_leg_hook(p, r, c)[2]), 1) for r, c in cells(p)
        )
        out = out * plethystic_exp(hooks, svars, order_w, weights, caps)
    for a in range(m):
        for b in range(a + 1, m):
            twist = Monomial.from_exps({f"A{i}": 1 for i in range(a + 1, b + 1)})
            out = out * bracket_ratio(
                transpose(legs[a]), transpose(legs[b]), twist, order, frame
            )
    return out


def cy_vertex_mirror(legs, chamber: Chamber, order: int) -> TruncSeries:
    """Vertex series as the symmetric algebra of the attracting tangent half.

    The chamber decides both the attracting direction and the curve-class
    variables.  A substitution image outside the series cone (weighted
    degree < 1, or a negative orbifold exponent) signals a chamber/label
    mismatch and raises ValueError.
    """
    legs = tuple(check_partition(p) for p in legs)
    if chamber.m != len(legs):
        raise ValueError("chamber rank must match the number of legs")
    inp = _attracting_input(legs, chamber)
    if chamber.tag == Chamber.C_MINUS:
        svars, order_w, weights, caps = series_params(legs, order)
    else:
        svars = chamber.svars
        order_w, weights = order, None
        caps = {v: order for v in svars}
        for w, _ in inp.terms():
            if any(e < 0 for e in w.exps().values()):
                raise ValueError(f"term {w!r} is not an orbifold curve class")
    return plethystic_exp(inp, svars, order_w, weights, caps)


def rpp_series(lam, m: int, order: int, svars=None) -> TruncSeries:
    """Colored box-count series of a single orbifold fixed point, brute force.

    Sums the degree monomial over every stable cell labeling; the window
    order+1 suffices because labels are non-negative and monotone, and the
    order+2 window is asserted to agree.
    """
    lam = check_partition(lam)
    if svars is None:
        svars = ("Q",) if m == 1 else tuple(f"z{k}" for k in range(m))
    svars = tuple(svars)
    if len(svars) != m:
        raise ValueError("need one series variable per color")
    caps = {v: order for v in svars}

    def windowed(bound: int) -> TruncSeries:
        s = TruncSeries.zero(svars, order, None, caps)
        for lab in enumerate_components_orbifold(lam, m, bound):
            d = degrees(lab)
            s = s.add_term({svars[k]: d[k] for k in range(m)}, 1)
        return s

    out = windowed(order + 1)
    assert windowed(order + 2) == out, "enumeration window unstable"
    return out


def grpp_series(legs, order: int) -> TruncSeries:
    """Box-count series of a single-leg resolved fixed point, brute force.

    Labels of resolved hook configurations are unbounded below away from
    the corner, so the enumeration runs a pruned search over the label
    poset inside the curve-class region and grows the value window until
    three consecutive windows agree.
    """
    legs = tuple(check_partition(p) for p in legs)
    m = len(legs)
    nonempty = [a for a, p in enumerate(legs) if p]
    if len(nonempty) > 1:
        raise ValueError("box-count sums need a single-leg target")
    svars, order_w, weights, caps = series_params(legs, order)
    caps = dict(caps)
    caps["Q"] = order
    if not nonempty:
        return TruncSeries.one(svars, order_w, weights, caps)
    a0 = nonempty[0]
    wt = weights[svars[1]] if m > 1 else 1
    counts = _grpp_counts(legs[a0], a0, m, order, order, order_w, wt)
    out = TruncSeries.zero(svars, order_w, weights, caps)
    for d, count in sorted(counts.items()):
        exps = {"Q": d[0]}
        for i in range(1, m):
            exps[f"A{i}"] = d[i] - d[0]
        out = out.add_term(exps, count)
    return out


def _grpp_counts(p, a0, m, cap_n, cap_beta, order_w, wt):
    """Count stable single-leg labelings by degree vector inside the region.

    Nodes are (anchor cell, color); every stability constraint is a lower
    bound on a later node from an earlier one, so a depth-first scan with
    incremental bound propagation enumerates exactly the stable labelings.
    Region prunes use committed sums plus remaining lower/upper bounds; a
    prune may break out of the value loop only when raising the value can
    never loosen it.  beta_k >= 0 (effectiveness of the curve class) is
    assumed throughout.

    No search window is needed: within one anchor every label dominates the
    color-0 label (the monotone chains ascend from slot 0), and following a
    lattice path from the corner each step lower-bounds the next anchor's
    color-0 label by the previous anchor's minus one delta at the new anchor.
    Deltas are non-negative and sum to the beta_k, so any labeling whose
    degree stays inside the capped region has every label in
    [-(m-1)*cap_beta, cap_n + cap_beta + (cells-1)*(m-1)*cap_beta].
    """
    cs = _cells_ij(p)
    chain = [0] + list(range(1, a0 + 1)) + list(range(m - 1, a0, -1))
    node_of: dict[tuple[int, int], int] = {}
    colors: list[int] = []
    for t in range(len(cs)):
        for k in chain:
            node_of[(t, k)] = len(colors)
            colors.append(k)
    nn = len(colors)
    succs: list[list[int]] = [[] for _ in range(nn)]

    def edge(src: int, dst: int) -> None:
        assert src < dst
        succs[src].append(dst)

    cell_index = {c: t for t, c in enumerate(cs)}
    for t, (i, j) in enumerate(cs):
        for k in range(a0):
            edge(node_of[(t, k)], node_of[(t, k + 1)])
        if a0 < m - 1:
            edge(node_of[(t, 0)], node_of[(t, m - 1)])
            for k in range(m - 1, a0 + 1, -1):
                edge(node_of[(t, k)], node_of[(t, k - 1)])
        s = cell_index.get((i - 1, j))
        if s is not None:
            edge(node_of[(s, a0)], node_of[(t, (a0 + 1) % m)])
        s = cell_index.get((i, j - 1))
        if s is not None:
            edge(node_of[(s, (a0 + 1) % m)], node_of[(t, a0)])
        s = cell_index.get((i - 1, j - 1))
        if s is not None:
            if m == 1:
                edge(node_of[(s, 0)], node_of[(t, 0)])
            else:
                if a0 > 0:
                    edge(node_of[(s, 1)], node_of[(t, 0)])
                if a0 < m - 1:
                    edge(node_of[(s, m - 1)], node_of[(t, 0)])
                for b in range(a0 + 1, m - 1):
                    edge(node_of[(s, b - 1)], node_of[(t, b)])
                if a0 == m - 1:
                    for b in range(1, m - 1):
                        edge(node_of[(s, b + 1)], node_of[(t, b)])
                elif a0 >= 1:
                    for b in range(1, a0 + 1):
                        edge(node_of[(s, b + 1)], node_of[(t, b)])

    c0 = 1 - wt * (m - 1)
    dk_cap = cap_n + cap_beta
    vlo = -(m - 1) * cap_beta
    vhi = dk_cap + (len(cs) - 1) * (m - 1) * cap_beta
    # static floors: longest zero-weight path from the corner, else vlo
    lb = [vlo] * nn
    lb[0] = 0
    for idx in range(nn):
        for s in succs[idx]:
            if lb[idx] > lb[s]:
                lb[s] = lb[idx]
    anchor_of = [idx // m for idx in range(nn)]
    corner_val = [None] * len(cs)
    committed = [0] * m
    rem_cnt = [0] * m
    rem_lb = [0] * m
    for idx in range(nn):
        rem_cnt[colors[idx]] += 1
        rem_lb[colors[idx]] += lb[idx]
    # within an anchor every label dominates the color-0 label, so each
    # anchor adds a non-negative amount to every beta_k = d_k - d_0; delta
    # tracks a lower bound on that amount per node, and beta_min their sums
    delta = [0] * nn
    beta_min = [0] * m
    out: dict[tuple[int, ...], int] = {}
    BREAK, CONT, OK = 0, 1, 2

    def check(kn: int) -> int:
        d0min = committed[0] + rem_lb[0]
        if d0min > cap_n:
            return BREAK
        # completions surviving the region filter have d_0 <= cap_n and
        # d_k <= cap_n + cap_beta, so maxima may be capped by those constants
        d0max = committed[0] + rem_cnt[0] * vhi
        if d0max > cap_n:
            d0max = cap_n
        soft = False
        wsum = 0
        for k in range(1, m):
            if beta_min[k] > cap_beta:
                if kn:
                    return BREAK
                soft = True
            dkmin = committed[k] + rem_lb[k]
            if dkmin - d0max > cap_beta:
                if kn:
                    return BREAK
                soft = True
            dkmax = committed[k] + rem_cnt[k] * vhi
            if dkmax > dk_cap:
                dkmax = dk_cap
            if d0min > dkmax:
                if kn != k:
                    return BREAK
                soft = True
            wsum += beta_min[k]
        if m == 1:
            if d0min > order_w:
                return BREAK
        else:
            # wdeg = d_0 + W * sum(beta_k) >= d0min + W * sum(beta_min)
            if d0min + wt * wsum > order_w:
                if kn:
                    return BREAK
                soft = True
        return CONT if soft else OK

    def set_delta(node: int, value: int) -> int:
        old = delta[node]
        if value != old:
            delta[node] = value
            beta_min[colors[node]] += value - old
        return old

    def rec(idx: int) -> None:
        if idx == nn:
            key = tuple(committed)
            out[key] = out.get(key, 0) + 1
            return
        k = colors[idx]
        t = anchor_of[idx]
        base = lb[idx]
        rem_cnt[k] -= 1
        rem_lb[k] -= base
        for v in range(base, vhi + 1):
            committed[k] += v
            undo_delta = []
            if k == 0:
                corner_val[t] = v
                for kk in range(1, m):
                    node = node_of[(t, kk)]
                    undo_delta.append((node, set_delta(node, max(0, lb[node] - v))))
            else:
                undo_delta.append((idx, set_delta(idx, v - corner_val[t])))
            touched = []
            for s in succs[idx]:
                if v > lb[s]:
                    touched.append((s, lb[s]))
                    rem_lb[colors[s]] += v - lb[s]
                    lb[s] = v
                    cv = corner_val[anchor_of[s]]
                    if cv is not None and colors[s] and delta[s] < v - cv:
                        undo_delta.append((s, set_delta(s, v - cv)))
            st = check(k)
            if st == OK:
                rec(idx + 1)
            for s, old in reversed(touched):
                rem_lb[colors[s]] -= lb[s] - old
                lb[s] = old
            for node, old in reversed(undo_delta):
                set_delta(node, old)
            if k == 0:
                corner_val[t] = None
            committed[k] -= v
            if st == BREAK:
                break
        rem_cnt[k] += 1
        rem_lb[k] += base

    rec(0)
    return out


def _resolved_to_orbifold(m: int) -> dict[str, Monomial]:
    sub = {"Q": Monomial.from_exps({f"z{k}": 1 for k in range(m)})}
    for i in range(1, m):
        sub[f"A{i}"] = Monomial.var(f"z{i}")
    return sub


def crc_check(lam, m: int, order: int):
    """Compare the two chamber expansions of one fixed point.

    Requires lam to have trivial m-core; the instanton label is its
    m-quotient.  Returns (ratio, ok): ratio is the candidate signed
    monomial with V_plus = ratio * V_minus, and ok records whether the
    attracting characters differ by G - dual(G) (which makes the monomial
    identity exact as rational functions) and whether the orbifold series
    matches the brute-force box count to the given order.
    """
    lam = check_partition(lam)
    core, quo = m_quotient(lam, m)
    if core:
        raise ValueError("chamber comparison needs a trivial m-core")
    plus = Chamber.orbifold(m)
    s_plus = _attracting_input(quo, plus)
    s_minus = _attracting_input(quo, Chamber.resolved(m)).substitute(
        _resolved_to_orbifold(m)
    )
    diff = s_plus - s_minus
    gained = Character.from_terms((w, mult) for w, mult in diff.terms() if mult > 0)
    char_ok = diff == gained - gained.dual()
    sign = 1
    mono = Monomial.one()
    for w, mult in gained.terms():
        sign *= (-1) ** mult
        mono = mono * w.inv() ** mult
    ratio = Character.monomial(mono, sign)
    series_ok = cy_vertex_mirror(quo, plus, order) == rpp_series(
        lam, m, order, svars=plus.svars
    )
    return ratio, char_ok and series_ok
