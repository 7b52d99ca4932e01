"""Stable-pair data on the resolved surface times a line.

The fixed components on the pair side are assembled from *rods* (line
bundles on chains of exceptional curves, one box row per z-level) and
*local models* (a column of boxes over one leg cell plus the rods it
emits).  This module builds those structures, transports skyscrapers
through the K-theoretic McKay map, and re-derives the curve class, the
virtual tangent character, and the stability verdict along this sheaf
path so they can be compared against the quasimap path.

Geometry conventions used throughout::

    p_0 --- E_1 --- p_1 --- E_2 --- ... --- E_{m-1} --- p_{m-1}

Leg ``a`` sits at the fixed point ``p_a``.  In chart ``U_a`` the
``x_a``-axis runs along ``E_{a+1}`` toward ``p_{a+1}`` and the
``y_a``-axis along ``E_a`` toward ``p_{a-1}``.

Square-to-component table for the hook of a cell at leg ``a`` (locked
by the golden tests):

    ==================  =================  ==========================
    hook square color   global weight      rods counted by e_c - e_0
    ==================  =================  ==========================
    c in [1, a]         x^c                leftward rods covering E_c
    c in [a+1, m-1]     y^{m-c}            rightward rods covering E_c
    ==================  =================  ==========================

``e_c - e_0`` counts the standard rods of the local model whose support
contains ``E_c``.  Leftward rods from leg ``a`` cover ``E_{a-l+1}..E_a``
and rightward rods cover ``E_{a+1}..E_{a+l}``, so the multiset of
lengths per direction is read off from the run of counts.  Both
direction stacks occupy the top z-levels ``[e_0 - count, e_0)`` with
lengths weakly increasing upward; a level carrying one rod of each
direction is a multiplicity-two box.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .charlab import Character, LineBundleSum, Monomial
from .qm_components import HookLabeling, _cells_ij, is_stable
from .quiver_geom import chart_coords, hbar, universal_weight


# ------------------------------------------------------------------- rods


@dataclass(frozen=True)
class Rod:
    """A line bundle O(d_lo, ..., d_hi) on the chain E_lo u ... u E_hi.

    ``lin`` is the fiber weight at the leftmost fixed point ``p_{lo-1}``;
    the weight at ``p_j`` follows by multiplying with ``x_{j-1}^{d_j}``
    for each component crossed.
    """

    m: int
    lo: int
    hi: int
    degrees: tuple[int, ...]
    lin: Monomial

    def __init__(self, m, lo, hi, degrees, lin):
        degrees = tuple(int(d) for d in degrees)
        if not 1 <= lo <= hi <= m - 1:
            raise ValueError(f"support [{lo},{hi}] not inside E_1..E_{m - 1}")
        if len(degrees) != hi - lo + 1:
            raise ValueError("need one degree per component")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "lin", lin)

    @classmethod
    def with_lin_at(cls, m, lo, hi, degrees, point, lin) -> "Rod":
        """Build the rod from its fiber weight at fixed point ``point``."""
        shift = cls(m, lo, hi, degrees, Monomial.one()).lin_at(point)
        return cls(m, lo, hi, degrees, lin * shift.inv())

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1

    def lin_at(self, j: int) -> Monomial:
        """Fiber weight at fixed point p_j for lo-1 <= j <= hi."""
        if not self.lo - 1 <= j <= self.hi:
            raise ValueError(f"p_{j} not on the rod [{self.lo},{self.hi}]")
        w = self.lin
        for c in range(self.lo, j + 1):
            xc, _ = chart_coords(c - 1, self.m)
            w = w * xc ** self.degrees[c - self.lo]
        return w

    def covers(self, c: int) -> bool:
        return self.lo <= c <= self.hi


def rod_in_T(degrees) -> bool:
    """Whether a rod with these degrees has no higher cohomology."""
    degrees = tuple(degrees)
    if any(d < -1 for d in degrees):
        return False
    return sum(1 for d in degrees if d == -1) <= 1


def exposed_rod_max(length: int) -> tuple[int, ...]:
    """Degrees of the largest exposed rod on a chain of this length."""
    if length < 1:
        raise ValueError("exposed rods have at least one component")
    if length == 1:
        return (-2,)
    return (-1,) + (0,) * (length - 2) + (-1,)


def exposed_admissible(degrees) -> bool:
    """Pointwise sub-sheaf bound against the maximal exposed rod."""
    degrees = tuple(degrees)
    if not degrees:
        return True
    cap = exposed_rod_max(len(degrees))
    return all(d <= c for d, c in zip(degrees, cap))


# ----------------------------------------------------------- local models


@dataclass(frozen=True)
class LocalModel:
    """Column of boxes over one leg cell together with its rod counts."""

    m: int
    leg: int
    anchor: tuple[int, int]
    evec: tuple[int, ...]

    def __init__(self, m, leg, anchor, evec):
        evec = tuple(int(e) for e in evec)
        if not 0 <= leg < m:
            raise ValueError("leg out of range")
        if len(evec) != m:
            raise ValueError("one entry per color")
        if any(e < evec[0] for e in evec):
            raise ValueError("rod counts e_c - e_0 must be non-negative")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "leg", leg)
        object.__setattr__(self, "anchor", tuple(anchor))
        object.__setattr__(self, "evec", evec)

    def rod_counts(self) -> tuple[int, ...]:
        return tuple(e - self.evec[0] for e in self.evec)


def local_model_rods(model: LocalModel) -> list[tuple[int, Rod]]:
    """Standard rods of the local model as (z-level, rod) pairs.

    Counts over components on the same side of the leg must shrink
    away from it, otherwise no stack of standard rods realizes them.
    Within each direction the lengths weakly increase with the level;
    the two stacks share the top levels below e_0.
    """
    m, a, e0 = model.m, model.leg, model.evec[0]
    n = model.rod_counts()
    left, right = n[1 : a + 1], n[a + 1 :]
    if any(left[i] > left[i + 1] for i in range(len(left) - 1)):
        raise ValueError("leftward rod counts must grow toward the leg")
    if any(right[i] < right[i + 1] for i in range(len(right) - 1)):
        raise ValueError("rightward rod counts must shrink away from the leg")
    xa, ya = chart_coords(a, m)
    i, j = model.anchor
    base = (xa**i) * (ya**j)
    out: list[tuple[int, Rod]] = []
    for idx in range(1, (n[a] if a >= 1 else 0) + 1):
        level = e0 - idx
        ln = sum(1 for c in range(1, a + 1) if n[c] >= idx)
        gen = base * Monomial.var("z", level)
        degs = (-1,) + (0,) * (ln - 1)
        out.append((level, Rod.with_lin_at(m, a - ln + 1, a, degs, a, gen)))
    for idx in range(1, (n[a + 1] if a + 1 < m else 0) + 1):
        level = e0 - idx
        ln = sum(1 for c in range(a + 1, m) if n[c] >= idx)
        gen = base * Monomial.var("z", level)
        degs = (0,) * (ln - 1) + (-1,)
        out.append((level, Rod(m, a + 1, a + ln, degs, gen)))
    out.sort(key=lambda kv: (kv[0], kv[1].lo))
    return out


def _exposed_subrod(rod: Rod, side: str) -> tuple[int, ...]:
    # dropping the generator box costs one vanishing order at the
    # generating end: left rods generate on the right, right rods on
    # the left
    d = list(rod.degrees)
    if side == "left":
        d[-1] -= 1
    else:
        d[0] -= 1
    return tuple(d)


# -------------------------------------------------------- McKay transform


def mckay_skyscraper(k: int, m: int) -> tuple[int, Rod | None]:
    """Image of the origin skyscraper with k-th character twist.

    Returns (K-theory sign, rod class).  The trivial twist maps to minus
    the degree -2 bundle on the whole chain (an odd shift, carried as the
    sign), the others to single-component degree -1 bundles linearized by
    the chart coordinate at their right end.  On the trivial resolution
    (m = 1) the transform is the identity, encoded as (1, None).
    """
    if not 0 <= k < m:
        raise ValueError("character index out of range")
    if m == 1:
        return (1, None)
    if k == 0:
        x0, _ = chart_coords(0, m)
        return (-1, Rod(m, 1, m - 1, exposed_rod_max(m - 1), x0))
    xk, _ = chart_coords(k, m)
    return (1, Rod.with_lin_at(m, k, k, (-1,), k, xk))


def rod_chart_numerator(rod: Rod, a: int) -> Character:
    """Class of the rod on chart U_a over the denominator (1-x_a)(1-y_a).

    The chart sees E_a along its y_a-axis and E_{a+1} along its x_a-axis;
    a rod covering both contributes the union of the two axes.
    """
    sees_y = rod.covers(a)
    sees_x = rod.covers(a + 1)
    if not (sees_x or sees_y):
        return Character.zero()
    xa, ya = chart_coords(a, rod.m)
    lin = rod.lin_at(a)
    if sees_x and sees_y:
        off = xa * ya
    elif sees_x:
        off = ya
    else:
        off = xa
    return Character.from_terms([(lin, 1), (lin * off, -1)])


# --------------------------------------------------- assembled descriptions


@dataclass(frozen=True)
class SheafDescription:
    """Per-hook local models of a fixed pair, with their emitted rods.

    ``models`` holds (leg, anchor, evec, ((level, rod), ...)) per hook.
    Chart characters are reported below a truncation height; everything
    else derived here is height-free.
    """

    m: int
    legs: tuple[tuple[int, ...], ...]
    models: tuple = field(repr=False)

    def all_rods(self) -> list[tuple[int, Rod]]:
        return [lr for _, _, _, rods in self.models for lr in rods]

    def curve_class(self) -> tuple[int, tuple[int, ...]]:
        n = sum(evec[0] for _, _, evec, _ in self.models)
        beta = [0] * self.m
        for _, rod in self.all_rods():
            for c in range(rod.lo, rod.hi + 1):
                beta[c] += 1
        return n, tuple(beta[1:])

    def chart_character(self, a: int, height: int) -> Character:
        """Boxes of the sheaf visible on chart U_a, truncated at height.

        Leg columns run over z-levels up to ``height``; rod tails run
        along the chart coordinate up to ``height``.  Raising the height
        by one adds exactly one z-slab per column and one box per
        visible rod tail, so every height-free quantity is unaffected.
        """
        xa, ya = chart_coords(a, self.m)
        terms: list[tuple[Monomial, int]] = []
        for leg, (i, j), evec, _ in self.models:
            if leg != a:
                continue
            base = (xa**i) * (ya**j)
            for k in range(evec[0], height + 1):
                terms.append((base * Monomial.var("z", k), 1))
        for _, rod in self.all_rods():
            sees_x = rod.covers(a + 1)
            sees_y = rod.covers(a)
            if not (sees_x or sees_y):
                continue
            lin = rod.lin_at(a)
            if sees_x:
                for t in range(height + 1):
                    terms.append((lin * xa**t, 1))
            if sees_y:
                for t in range(1 if sees_x else 0, height + 1):
                    terms.append((lin * ya**t, 1))
        return Character.from_terms(terms)

    def ascii_chart(self, a: int, height: int) -> str:
        lines = [f"chart U_{a}"]
        for leg, (i, j), evec, _ in self.models:
            if leg == a:
                lines.append(f"  hook ({i},{j}): column z>={evec[0]}")
        for level, rod in sorted(
            self.all_rods(), key=lambda kv: (kv[0], kv[1].lo)
        ):
            if not (rod.covers(a) or rod.covers(a + 1)):
                continue
            degs = ",".join(str(d) for d in rod.degrees)
            lines.append(
                f"  z={level}: rod E_{rod.lo}..E_{rod.hi} deg=({degs})"
                f" lin={rod.lin_at(a)!r}"
            )
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "legs": [list(p) for p in self.legs],
            "models": [
                {
                    "leg": leg,
                    "anchor": list(anchor),
                    "evec": list(evec),
                    "rods": [
                        {
                            "level": level,
                            "support": [rod.lo, rod.hi],
                            "degrees": list(rod.degrees),
                            "lin": repr(rod.lin),
                        }
                        for level, rod in rods
                    ],
                }
                for leg, anchor, evec, rods in self.models
            ],
        }


def mckay_labeling_to_sheaf(lab: HookLabeling) -> SheafDescription:
    """Box/rod description of the pair matching a stable labeling."""
    if not is_stable(lab):
        raise ValueError("labeling is not stable")
    models = []
    for a, i, j, vec in lab._items:
        rods = tuple(local_model_rods(LocalModel(lab.m, a, (i, j), vec)))
        for _, rod in rods:
            assert rod_in_T(rod.degrees)
        models.append((a, (i, j), vec, rods))
    return SheafDescription(lab.m, lab.legs, tuple(models))


def curve_class_from_sheaf(desc: SheafDescription) -> tuple[int, tuple[int, ...]]:
    """(renormalized box count, rod multiplicities over E_1..E_{m-1})."""
    return desc.curve_class()


# ------------------------------------------------------------ tangent data


def _gamma_ok(mono: Monomial, m: int) -> bool:
    d = mono.exp("x") - mono.exp("y")
    return d.denominator == 1 and d.numerator % m == 0


def tvir_bs(lab: HookLabeling) -> Character:
    """Virtual tangent character computed on the sheaf side.

    One equivariant bundle V on the line collects every hook square with
    its full weight; the tangent complex of the ambient Hilbert scheme is
    evaluated in the line-bundle ring, cut to invariants, and pushed
    forward.  No per-color splitting and no framing factor appear, which
    keeps the route independent from the quiver-side computation.
    """
    m = lab.m
    v = LineBundleSum.zero()
    for a, i, j, vec in lab._items:
        xa, ya = chart_coords(a, m)
        base = (xa**i) * (ya**j)
        for k in range(m):
            v = v + LineBundleSum.line(base * universal_weight(k, a, m), vec[k])
    h = LineBundleSum.line(hbar(), 0)
    xl = LineBundleSum.line(Monomial.var("x"), 0)
    yl = LineBundleSum.line(Monomial.var("y"), 0)
    xyl = LineBundleSum.line(Monomial.from_exps({"x": 1, "y": 1}), 0)
    gg = v * v.dual()
    t = v + h * v.dual() - h * gg + h * xl * gg + h * yl * gg - h * xyl * gg
    inv = LineBundleSum.from_terms(
        [(key, c) for key, c in t.terms() if _gamma_ok(key[0], m)]
    )
    return inv.chi()


# -------------------------------------------------------------- stability


def _evec_from_rods(m: int, e0: int, rods) -> tuple[int, ...]:
    e = [e0] * m
    for _, rod in rods:
        for c in range(rod.lo, rod.hi + 1):
            e[c] += 1
    return tuple(e)


def _module_pair_ok(m, a, prev, cur, step) -> bool:
    # closure of the assembled module under the chart coordinates: boxes
    # of a hook multiply into its x_a/y_a-neighbour, forcing the
    # neighbour's column and rod slots to be there to receive them
    if step == "x":
        return cur[(a + 1) % m] >= prev[a]
    if step == "y":
        return cur[a] >= prev[(a + 1) % m]
    if m == 1:
        return cur[0] >= prev[0]
    # the diagonal neighbour's column must clear the rods reaching the
    # far ends of the chain
    if a > 0 and cur[0] < prev[1]:
        return False
    if a < m - 1 and cur[0] < prev[m - 1]:
        return False
    # multiplying a rod generator by x_a y_a lands on the diagonal
    # neighbour's rods, which therefore must be strictly longer: their
    # coverage dominates component by component
    for b in range(a + 1, m - 1):
        if cur[b] < prev[b - 1]:
            return False
    top = m - 2 if a == m - 1 else a
    for b in range(1, top + 1):
        if cur[b] < prev[b + 1]:
            return False
    return True


def pi_stability_check(lab: HookLabeling) -> bool:
    """Stability verdict evaluated purely on the sheaf side.

    Per hook: the rod counts must assemble into a local model, every rod
    must have vanishing higher cohomology, its exposed sub-rod must stay
    under the maximal exposed rod, and the stack lengths must weakly
    increase with the z-level.  Across hooks of one leg the module
    closure conditions couple neighbouring local models, and the column
    over each origin cell must reach the z^0 box so the structure
    section has somewhere to land.  Agrees with is_stable by the
    correspondence; the sweep tests pin that down.
    """
    m = lab.m
    for a, p in enumerate(lab.legs):
        cells = {(i, j): lab.label_vec(a, i, j) for (i, j) in _cells_ij(p)}
        if p and cells[(0, 0)][0] < 0:
            return False
        evecs = {}
        for (i, j), vec in cells.items():
            try:
                rods = local_model_rods(LocalModel(m, a, (i, j), vec))
            except ValueError:
                return False
            for side in ("left", "right"):
                stack = sorted(
                    (level, rod.length)
                    for level, rod in rods
                    if (rod.hi == a) == (side == "left")
                )
                if any(
                    stack[t][1] > stack[t + 1][1]
                    for t in range(len(stack) - 1)
                ):
                    return False
            for _, rod in rods:
                side = "left" if rod.hi == a else "right"
                if not rod_in_T(rod.degrees):
                    return False
                if not exposed_admissible(_exposed_subrod(rod, side)):
                    return False
            evecs[(i, j)] = _evec_from_rods(m, vec[0], rods)
        for (i, j), e in evecs.items():
            for step, nb in (
                ("x", (i + 1, j)),
                ("y", (i, j + 1)),
                ("xy", (i + 1, j + 1)),
            ):
                if nb in evecs and not _module_pair_ok(m, a, e, evecs[nb], step):
                    return False
    return True
