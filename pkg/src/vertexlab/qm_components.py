"""Torus-fixed components of quasimap moduli for cyclic-quiver targets.

A fixed component is recorded by decorating the target's fixed-point data
with P^1-degrees.  For the resolved target each leg partition contributes
one m-hook of squares per cell, and every square of every hook carries an
integer label (the degree of the associated line bundle on the domain
curve).  For the orbifold target each cell of the single partition carries
one label.  Stability cuts the label sets down to the configurations that
actually occur; the same data then feeds the virtual tangent character and
the dimension count of the component.

Conventions: an anchor ``(i, j)`` is the cell in column ``i``, row ``j``
of the leg partition, i.e. the chart monomial ``x_a^i y_a^j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .charlab import Character, LineBundleSum, Monomial
from .partitions import Partition, check_partition, transpose
from .quiver_geom import chart_coords, hbar, universal_weight


def _cells_ij(lam: Partition) -> list[tuple[int, int]]:
    # column-major coordinates, ordered so neighbours below/left come first
    out = [(c, r) for r, row in enumerate(lam) for c in range(row)]
    out.sort(key=lambda t: (t[0] + t[1], t[0]))
    return out


@dataclass(frozen=True)
class HookLabeling:
    """Degree labels for a resolved-target fixed component.

    ``labels`` maps ``(leg, i, j)`` to an ``m``-vector whose ``k``-th entry
    is the label of the color-``k`` square of that hook.
    """

    m: int
    legs: tuple[Partition, ...]
    _items: tuple[tuple[int, int, int, tuple[int, ...]], ...] = field(repr=False)

    def __init__(self, m, legs, labels: Mapping[tuple[int, int, int], Iterable[int]]):
        legs = tuple(tuple(p) for p in legs)
        if len(legs) != m:
            raise ValueError("need one leg partition per vertex")
        for p in legs:
            check_partition(p)
        wanted = {(a, i, j) for a, p in enumerate(legs) for (i, j) in _cells_ij(p)}
        got = set(labels)
        if got != wanted:
            raise ValueError(f"anchor set mismatch: {sorted(got ^ wanted)}")
        items = []
        for (a, i, j), vec in labels.items():
            vec = tuple(int(d) for d in vec)
            if len(vec) != m:
                raise ValueError("label vector must have one entry per color")
            items.append((a, i, j, vec))
        items.sort()
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "_items", tuple(items))

    @classmethod
    def zero(cls, m, legs) -> "HookLabeling":
        legs = tuple(tuple(p) for p in legs)
        labels = {
            (a, i, j): (0,) * m for a, p in enumerate(legs) for (i, j) in _cells_ij(p)
        }
        return cls(m, legs, labels)

    def label_vec(self, a: int, i: int, j: int) -> tuple[int, ...]:
        for aa, ii, jj, vec in self._items:
            if (aa, ii, jj) == (a, i, j):
                return vec
        raise KeyError((a, i, j))

    def anchors(self) -> list[tuple[int, int, int]]:
        return [(a, i, j) for a, i, j, _ in self._items]

    def flat_labels(self) -> tuple[int, ...]:
        return tuple(d for _, _, _, vec in self._items for d in vec)

    def global_boxes(self) -> list[tuple[tuple[int, int], int]]:
        """All squares as ((x-exponent, y-exponent), label), legs pooled."""
        out = []
        for a, i, j, vec in self._items:
            xa, ya = chart_coords(a, self.m)
            base = (xa**i) * (ya**j)
            for k in range(self.m):
                w = base * universal_weight(k, a, self.m)
                e = w.exps()
                out.append(((int(e.get("x", 0)), int(e.get("y", 0))), vec[k]))
        return out

    def line_bundles(self) -> list[LineBundleSum]:
        vs = [LineBundleSum.zero() for _ in range(self.m)]
        for a, i, j, vec in self._items:
            xa, ya = chart_coords(a, self.m)
            base = (xa**i) * (ya**j)
            for k in range(self.m):
                w = base * universal_weight(k, a, self.m)
                vs[k] = vs[k] + LineBundleSum.line(w, vec[k])
        return vs

    def to_json(self) -> list[dict]:
        return [
            {"leg": a, "anchor": [i, j], "by_color": list(vec)}
            for a, i, j, vec in self._items
        ]

    @classmethod
    def from_json(cls, m, legs, data) -> "HookLabeling":
        labels = {
            (item["leg"], item["anchor"][0], item["anchor"][1]): tuple(item["by_color"])
            for item in data
        }
        return cls(m, legs, labels)


@dataclass(frozen=True)
class CellLabeling:
    """Degree labels for an orbifold-target fixed component (one per cell)."""

    m: int
    shape: Partition
    _items: tuple[tuple[int, int, int], ...] = field(repr=False)

    def __init__(self, m, shape, labels: Mapping[tuple[int, int], int]):
        shape = tuple(shape)
        check_partition(shape)
        wanted = set(_cells_ij(shape))
        if set(labels) != wanted:
            raise ValueError("labels must cover exactly the cells of the shape")
        items = tuple(sorted((i, j, int(d)) for (i, j), d in labels.items()))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "_items", items)

    @classmethod
    def zero(cls, m, shape) -> "CellLabeling":
        return cls(m, shape, {(i, j): 0 for (i, j) in _cells_ij(tuple(shape))})

    def label(self, i: int, j: int) -> int:
        for ii, jj, d in self._items:
            if (ii, jj) == (i, j):
                return d
        raise KeyError((i, j))

    def flat_labels(self) -> tuple[int, ...]:
        return tuple(d for _, _, d in self._items)

    def global_boxes(self) -> list[tuple[tuple[int, int], int]]:
        return [((i, j), d) for i, j, d in self._items]

    def line_bundles(self) -> list[LineBundleSum]:
        vs = [LineBundleSum.zero() for _ in range(self.m)]
        for i, j, d in self._items:
            k = (i - j) % self.m
            vs[k] = vs[k] + LineBundleSum.line(Monomial.from_exps({"x": i, "y": j}), d)
        return vs

    def to_json(self) -> list[dict]:
        return [{"cell": [i, j], "label": d} for i, j, d in self._items]


Labeling = HookLabeling | CellLabeling


# ----------------------------------------------------------------- stability


def _chain_ok(vec: tuple[int, ...], a: int, m: int) -> bool:
    # labels may only grow along either arm of the hook, away from the corner
    for k in range(a):
        if vec[k] > vec[k + 1]:
            return False
    if a < m - 1:
        if vec[0] > vec[m - 1]:
            return False
        for k in range(m - 1, a + 1, -1):
            if vec[k] > vec[k - 1]:
                return False
    return True


def _pair_ok(m: int, a: int, prev: tuple[int, ...], cur: tuple[int, ...], step: str) -> bool:
    """Monotonicity between the hooks at P and P + step, labels prev and cur."""
    if step == "x":
        return cur[(a + 1) % m] >= prev[a]
    if step == "y":
        return cur[a] >= prev[(a + 1) % m]
    # diagonal neighbour: corner sits over both arms of the previous hook
    if m == 1:
        return cur[0] >= prev[0]
    if a > 0 and cur[0] < prev[1]:
        return False
    if a < m - 1 and cur[0] < prev[m - 1]:
        return False
    for b in range(a + 1, m - 1):
        if cur[b] < prev[b - 1]:
            return False
    if a == m - 1:
        for b in range(1, m - 1):
            if cur[b] < prev[b + 1]:
                return False
    elif a >= 1:
        for b in range(1, a + 1):
            if cur[b] < prev[b + 1]:
                return False
    return True


def is_monotone(lab: Labeling) -> bool:
    """Whether labels satisfy the square-by-square monotonicity constraints."""
    if isinstance(lab, CellLabeling):
        cells = {(i, j): d for i, j, d in lab._items}
        for (i, j), d in cells.items():
            for nb in ((i + 1, j), (i, j + 1)):
                if nb in cells and cells[nb] < d:
                    return False
        return True
    m = lab.m
    for a, p in enumerate(lab.legs):
        cells = {(i, j): lab.label_vec(a, i, j) for (i, j) in _cells_ij(p)}
        for (i, j), vec in cells.items():
            if not _chain_ok(vec, a, m):
                return False
            for step, nb in (("x", (i + 1, j)), ("y", (i, j + 1)), ("xy", (i + 1, j + 1))):
                if nb in cells and not _pair_ok(m, a, vec, cells[nb], step):
                    return False
    return True


def is_stable(lab: Labeling) -> bool:
    """Monotone, and the corner label over the origin is non-negative."""
    if not is_monotone(lab):
        return False
    if isinstance(lab, CellLabeling):
        return not lab.shape or lab.label(0, 0) >= 0
    return all(
        lab.label_vec(a, 0, 0)[0] >= 0 for a, p in enumerate(lab.legs) if p
    )


# ----------------------------------------------------------- discrete data


def degrees(lab: Labeling) -> tuple[int, ...]:
    """Total label per color; the degree vector of the component."""
    d = [0] * lab.m
    if isinstance(lab, CellLabeling):
        for i, j, lbl in lab._items:
            d[(i - j) % lab.m] += lbl
    else:
        for _, _, _, vec in lab._items:
            for k in range(lab.m):
                d[k] += vec[k]
    return tuple(d)


def to_curve_class(lab: Labeling) -> tuple[int, tuple[int, ...]]:
    """(number of points, multiplicities over the exceptional curves)."""
    d = degrees(lab)
    return d[0], tuple(d[k] - d[0] for k in range(1, lab.m))


# ---------------------------------------------------------------- enumeration


def iter_labelings(legs, bound: int) -> Iterator[HookLabeling]:
    """Every labeling with entries in [-bound, bound], stable or not."""
    m = len(legs)
    legs = tuple(tuple(p) for p in legs)
    anchors = [(a, i, j) for a, p in enumerate(legs) for (i, j) in _cells_ij(p)]
    vals = list(itertools.product(range(-bound, bound + 1), repeat=m))
    for combo in itertools.product(vals, repeat=len(anchors)):
        yield HookLabeling(m, legs, dict(zip(anchors, combo)))


def _leg_assignments(p: Partition, a: int, m: int, bound: int) -> list[dict]:
    cells = _cells_ij(p)
    chain = [
        v
        for v in itertools.product(range(-bound, bound + 1), repeat=m)
        if _chain_ok(v, a, m)
    ]
    origin_ok = [v for v in chain if v[0] >= 0]
    out: list[dict] = []
    assigned: dict[tuple[int, int], tuple[int, ...]] = {}

    def rec(idx: int) -> None:
        if idx == len(cells):
            out.append(dict(assigned))
            return
        i, j = cells[idx]
        pool = origin_ok if (i, j) == (0, 0) else chain
        for v in pool:
            if (i - 1, j) in assigned and not _pair_ok(m, a, assigned[(i - 1, j)], v, "x"):
                continue
            if (i, j - 1) in assigned and not _pair_ok(m, a, assigned[(i, j - 1)], v, "y"):
                continue
            if (i - 1, j - 1) in assigned and not _pair_ok(
                m, a, assigned[(i - 1, j - 1)], v, "xy"
            ):
                continue
            assigned[(i, j)] = v
            rec(idx + 1)
            del assigned[(i, j)]

    rec(0)
    return out


def enumerate_components(legs, bound: int) -> list[HookLabeling]:
    """All stable labelings with entries in [-bound, bound], sorted.

    Constraints never couple different legs, so each leg is enumerated
    independently and the results are combined.
    """
    legs = tuple(tuple(p) for p in legs)
    m = len(legs)
    per_leg = [_leg_assignments(p, a, m, bound) for a, p in enumerate(legs)]
    out = []
    for combo in itertools.product(*per_leg):
        labels = {
            (a, i, j): vec
            for a, leg_map in enumerate(combo)
            for (i, j), vec in leg_map.items()
        }
        out.append(HookLabeling(m, legs, labels))
    out.sort(key=lambda l: (degrees(l), l.flat_labels()))
    return out


def enumerate_components_orbifold(shape, m: int, bound: int) -> list[CellLabeling]:
    """All stable cell labelings with entries in [0, bound], sorted."""
    shape = tuple(shape)
    cells = _cells_ij(shape)
    out: list[CellLabeling] = []
    assigned: dict[tuple[int, int], int] = {}

    def rec(idx: int) -> None:
        if idx == len(cells):
            out.append(CellLabeling(m, shape, dict(assigned)))
            return
        i, j = cells[idx]
        lo = 0
        if (i - 1, j) in assigned:
            lo = max(lo, assigned[(i - 1, j)])
        if (i, j - 1) in assigned:
            lo = max(lo, assigned[(i, j - 1)])
        for d in range(lo, bound + 1):
            assigned[(i, j)] = d
            rec(idx + 1)
            del assigned[(i, j)]

    rec(0)
    out.sort(key=lambda l: (degrees(l), l.flat_labels()))
    return out


# ------------------------------------------------------------ tangent spaces


def tvir_quasimap(lab: Labeling) -> Character:
    """Virtual tangent character of the fixed component.

    The quiver description of the target turns the labeling into a sum of
    equivariant line bundles on P^1 per vertex; the tangent complex is then
    pushed forward term by term.
    """
    m = lab.m
    vs = lab.line_bundles()
    w0 = LineBundleSum.line(Monomial.one(), 0)
    xinv = LineBundleSum.line(Monomial.var("x", -1), 0)
    moment = w0.dual() * vs[0]
    for k in range(m):
        moment = moment + xinv * (vs[k].dual() * vs[(k + 1) % m])
    h = LineBundleSum.line(hbar(), 0)
    gauge = LineBundleSum.zero()
    for k in range(m):
        gauge = gauge + vs[k].dual() * vs[k]
    t = moment + h * moment.dual() - gauge - h * gauge
    return t.chi()


def fixed_term_dim(lab: Labeling) -> int:
    """Dimension of the fixed component, from pooled label multisets.

    Counts ordered pairs of squares whose labels can strictly drop: pairs
    at the same position or a diagonal step apart contribute deformations,
    pairs one step apart in x or y contribute relations, and negative
    labels over the origin are cut by stability.
    """
    by_pos: dict[tuple[int, int], dict[int, int]] = {}
    for pos, d in lab.global_boxes():
        by_pos.setdefault(pos, {}).setdefault(d, 0)
        by_pos[pos][d] += 1

    def drops(src: Mapping[int, int], dst: Mapping[int, int]) -> int:
        return sum(
            cv * cw for v, cv in src.items() for w, cw in dst.items() if v > w
        )

    dim = 0
    for (p, q), counts in by_pos.items():
        dim += drops(counts, counts)
        diag = by_pos.get((p + 1, q + 1))
        if diag:
            dim += drops(counts, diag)
        for nb in ((p + 1, q), (p, q + 1)):
            other = by_pos.get(nb)
            if other:
                dim -= drops(counts, other)
    origin = by_pos.get((0, 0), {})
    dim -= sum(c for v, c in origin.items() if v < 0)
    return dim
