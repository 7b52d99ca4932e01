"""Chart geometry of the cyclic resolution and quiver-style tangent weights.

The surface charts are indexed by a = 0..m-1 with coordinates
x_a = x^{a+1} y^{a+1-m} and y_a = x^{-a} y^{m-a}; the exceptional curve E_a
is the x-axis of chart a-1 and the y-axis of chart a.  All weights are kept
as global monomials in x and y, so the cyclic color of a square is read off
as (x-exponent - y-exponent) mod m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .charlab import Character, Monomial
from .partitions import cells, check_partition, transpose

_X = "x"
_Y = "y"


def hbar() -> Monomial:
    """Weight of the holomorphic symplectic form direction, (xy)^(-1)."""
    return Monomial.from_exps({_X: -1, _Y: -1})


def color_of(w: Monomial, m: int) -> int:
    diff = w.exp(_X) - w.exp(_Y)
    if diff.denominator != 1:
        raise ValueError(f"{w!r} has no integral cyclic color")
    return int(diff) % m


def chart_coords(a: int, m: int) -> tuple[Monomial, Monomial]:
    if not 0 <= a < m:
        raise ValueError(f"chart index {a} out of range for m={m}")
    xa = Monomial.from_exps({_X: a + 1, _Y: a + 1 - m})
    ya = Monomial.from_exps({_X: -a, _Y: m - a})
    return xa, ya


def m_hook(a: int, m: int) -> Character:
    """Character of the length-m hook of squares attached to chart a.

    One square of each color: the corner, a x-powers, and m-a-1 y-powers.
    """
    if not 0 <= a < m:
        raise ValueError(f"hook index {a} out of range for m={m}")
    terms = [(Monomial.from_exps({_X: k}), 1) for k in range(a + 1)]
    terms += [(Monomial.from_exps({_Y: k}), 1) for k in range(1, m - a)]
    return Character.from_terms(terms)


def universal_weight(k: int, a: int, m: int) -> Monomial:
    """Weight of the color-k square inside the hook attached to chart a."""
    if not (0 <= k < m and 0 <= a < m):
        raise ValueError(f"bad color/chart pair ({k}, {a}) for m={m}")
    if k == 0:
        return Monomial.one()
    if k <= a:
        return Monomial.from_exps({_X: k})
    return Monomial.from_exps({_Y: m - k})


@dataclass(frozen=True)
class QuiverData:
    """Square data of a torus-fixed configuration plus framing character."""

    m: int
    vchar: Character
    framing: Character = field(default_factory=Character.one)

    def v_by_color(self, k: int) -> Character:
        return Character.from_terms(
            (w, c) for w, c in self.vchar.terms() if color_of(w, self.m) == k % self.m
        )


def quiver_data_resolved(legs, m: int) -> QuiverData:
    """Squares of the fixed configuration on the resolved surface.

    Each cell (r, c) of the leg partition in chart a is the anchor of a full
    m-hook translated by x_a^c y_a^r.
    """
    if len(legs) != m:
        raise ValueError(f"need {m} legs, got {len(legs)}")
    total = Character.zero()
    for a, lam in enumerate(legs):
        lam = check_partition(lam)
        if not lam:
            continue
        xa, ya = chart_coords(a, m)
        hk = m_hook(a, m)
        anchors = Character.from_terms(
            ((xa ** c) * (ya ** r), 1) for r, c in cells(lam)
        )
        total = total + hk * anchors
    return QuiverData(m, total)


def quiver_data_orbifold(lam, m: int) -> QuiverData:
    """Squares of a monomial ideal on the orbifold chart, colored mod m."""
    lam = check_partition(lam)
    vchar = Character.from_terms(
        (Monomial.from_exps({_X: c, _Y: r}), 1) for r, c in cells(lam)
    )
    return QuiverData(m, vchar)


def tangent_quiver(qd: QuiverData) -> Character:
    """Tangent character of the cyclic-quiver moduli at a fixed point.

    T = (1 + hbar dual)(W0^dual V_0 + x^(-1) sum_k Hom(V_k, V_{k+1}))
        - (1 + hbar) sum_k Hom(V_k, V_k)
    """
    m = qd.m
    h = Character.monomial(hbar())
    vs = [qd.v_by_color(k) for k in range(m)]
    xinv = Monomial.from_exps({_X: -1})
    moment = qd.framing.dual() * vs[0]
    for k in range(m):
        moment = moment + (vs[k].dual() * vs[(k + 1) % m]) * xinv
    gauge = Character.zero()
    for k in range(m):
        gauge = gauge + vs[k].dual() * vs[k]
    return moment + h * moment.dual() - gauge - h * gauge


def _leg_in(lam, r: int, c: int) -> int:
    # leg length of the (possibly outside) cell (r, c) measured in lam
    lt = transpose(lam)
    col = lt[c] if c < len(lt) else 0
    return col - r - 1


def t_pair(lam, mu) -> Character:
    """Arm/leg pair character of two partitions.

    Sum over boxes of lam of x^(-arm_lam - 1) y^(leg_mu) plus sum over boxes
    of mu of x^(arm_mu) y^(-leg_lam - 1); cross legs may be negative.
    """
    lam, mu = check_partition(lam), check_partition(mu)
    terms = []
    for r, c in cells(lam):
        arm = lam[r] - c - 1
        terms.append((Monomial.from_exps({_X: -arm - 1, _Y: _leg_in(mu, r, c)}), 1))
    for r, c in cells(mu):
        arm = mu[r] - c - 1
        terms.append((Monomial.from_exps({_X: arm, _Y: -_leg_in(lam, r, c) - 1}), 1))
    return Character.from_terms(terms)


def tangent_hilbC2(lam) -> Character:
    return t_pair(lam, lam)


def tangent_instanton(legs) -> Character:
    """Tangent character of rank-r torsion-free sheaves at a fixed tuple.

    Framing weights are u1..ur; the (a, b) block contributes
    (u_b / u_a) * t_pair(legs[a], legs[b]).
    """
    r = len(legs)
    total = Character.zero()
    for a in range(1, r + 1):
        for b in range(1, r + 1):
            ratio = Monomial.one() if a == b else Monomial.from_exps(
                {f"u{b}": 1, f"u{a}": -1}
            )
            total = total + t_pair(legs[a - 1], legs[b - 1]) * ratio
    return total


def diagram_ascii(char: Character) -> str:
    """Render integer (x, y) exponents as a grid of multiplicity digits.

    Rows are y-exponents, decreasing downwards; columns are x-exponents,
    increasing rightwards.  Empty positions print as dots and the origin
    column/row are marked on the border.
    """
    cells_ = {}
    for w, c in char.terms():
        ex, ey = w.exp(_X), w.exp(_Y)
        if ex.denominator != 1 or ey.denominator != 1:
            raise ValueError("diagram requires integer exponents")
        cells_[(int(ex), int(ey))] = cells_.get((int(ex), int(ey)), 0) + c
    if not cells_:
        return "(empty)\n"
    xs = [p[0] for p in cells_]
    ys = [p[1] for p in cells_]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    lines = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            c = cells_.get((x, y), 0)
            if c == 0:
                row.append(".")
            elif 0 < c <= 9:
                row.append(str(c))
            else:
                row.append("*")
        marker = "<" if y == 0 else ""
        lines.append("".join(row) + marker)
    origin_line = "".join("^" if x == 0 else " " for x in range(x0, x1 + 1))
    lines.append(origin_line)
    return "\n".join(lines) + "\n"
