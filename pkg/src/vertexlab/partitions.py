"""Integer partitions, hook statistics, and the m-core / m-quotient bijection.

Partitions are plain tuples of weakly decreasing positive integers.  Cells
are (row, column) pairs, zero-indexed, rows listed top to bottom; the cell
(r, c) of a diagram corresponds to the monomial x^c y^r, so its cyclic color
is (c - r) mod m.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator


Partition = tuple[int, ...]


def check_partition(lam) -> Partition:
    lam = tuple(int(p) for p in lam)
    if any(p <= 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {lam}")
    return lam


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n, each a weakly decreasing tuple."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return

    def gen(rest: int, largest: int, prefix: tuple[int, ...]):
        if rest == 0:
            yield prefix
            return
        for part in range(min(rest, largest), 0, -1):
            yield from gen(rest - part, part, prefix + (part,))

    yield from gen(n, n, ())


def multipartitions(m: int, n: int) -> Iterator[tuple[Partition, ...]]:
    """All m-tuples of partitions with total size n."""
    if m == 0:
        if n == 0:
            yield ()
        return
    if m == 1:
        for lam in partitions_of(n):
            yield (lam,)
        return
    for first in range(n + 1):
        for lam in partitions_of(first):
            for rest in multipartitions(m - 1, n - first):
                yield (lam,) + rest


def transpose(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def cells(lam: Partition) -> Iterator[tuple[int, int]]:
    for r, row in enumerate(lam):
        for c in range(row):
            yield (r, c)


def contains_cell(lam: Partition, r: int, c: int) -> bool:
    return 0 <= r < len(lam) and 0 <= c < lam[r]


def arm_leg_hook(lam: Partition, r: int, c: int) -> tuple[int, int, int]:
    """Arm, leg and hook length of the cell (r, c)."""
    if not contains_cell(lam, r, c):
        raise ValueError(f"cell ({r}, {c}) is outside {lam}")
    arm = lam[r] - c - 1
    leg = transpose(lam)[c] - r - 1
    return arm, leg, arm + leg + 1


def n_stat(lam: Partition) -> Fraction:
    """The weighted size sum_k (k - 1/2) * lam_k over rows k = 1, 2, ..."""
    return sum(
        ((k - Fraction(1, 2)) * p for k, p in enumerate(lam, start=1)),
        start=Fraction(0),
    )


def color_counts(lam: Partition, m: int) -> tuple[int, ...]:
    """Number of cells of each cyclic color (c - r) mod m."""
    counts = [0] * m
    for r, c in cells(lam):
        counts[(c - r) % m] += 1
    return tuple(counts)


def is_uniformly_colored(lam: Partition, m: int) -> bool:
    counts = color_counts(lam, m)
    return len(set(counts)) <= 1


def _beta_numbers(lam: Partition, length: int) -> list[int]:
    # first-column hook lengths on `length` beads, strictly decreasing
    padded = list(lam) + [0] * (length - len(lam))
    return [padded[i] + (length - 1 - i) for i in range(length)]


def _partition_from_betas(betas: list[int]) -> Partition:
    betas = sorted(betas, reverse=True)
    length = len(betas)
    lam = tuple(b - (length - 1 - i) for i, b in enumerate(betas))
    if any(p < 0 for p in lam):
        raise ValueError("invalid beta-number set")
    return tuple(p for p in lam if p > 0)


def m_quotient(lam: Partition, m: int) -> tuple[Partition, tuple[Partition, ...]]:
    """m-core and m-quotient via the abacus with a multiple-of-m bead count.

    Runner r holds the beta numbers congruent to r mod m and yields the r-th
    quotient component directly.
    """
    lam = check_partition(lam)
    length = ((len(lam) + m - 1) // m) * m or m
    betas = _beta_numbers(lam, length)
    runners: list[list[int]] = [[] for _ in range(m)]
    for b in betas:
        runners[b % m].append(b // m)
    quotient = tuple(_partition_from_betas(sorted(r, reverse=True)) for r in runners)
    core_betas = []
    for r, ks in enumerate(runners):
        core_betas.extend(m * k + r for k in range(len(ks)))
    core = _partition_from_betas(core_betas)
    return core, quotient


def from_quotient(core: Partition, quotient: tuple[Partition, ...], m: int) -> Partition:
    """Inverse of m_quotient."""
    core = check_partition(core)
    if len(quotient) != m:
        raise ValueError(f"need exactly {m} quotient components")
    longest = max((len(q) for q in quotient), default=0)
    # enough beads that every runner can hold its quotient component
    length = m * (len(core) + longest + 2)
    core_betas = _beta_numbers(core, length)
    counts = [0] * m
    for b in core_betas:
        counts[b % m] += 1
    betas = []
    for r, q in enumerate(quotient):
        n_r = counts[r]
        padded = list(q) + [0] * (n_r - len(q))
        if len(padded) != n_r:
            raise ValueError(
                f"quotient component {r} too long for bead count {n_r}"
            )
        ks = [padded[i] + (n_r - 1 - i) for i in range(n_r)]
        betas.extend(m * k + r for k in ks)
    return _partition_from_betas(betas)
