"""Exact arithmetic for torus characters and truncated series.

Weights of torus representations are Laurent monomials in named variables;
exponents may be half-integral and are stored as doubled integers so that
everything stays exact.  Virtual representations (characters) are finite
integer combinations of monomials, sums of line bundles on the projective
line carry an extra integer degree, and generating functions live in a
truncated series ring over the rationals with a weighted total-degree cutoff.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from math import comb, isqrt
from typing import Iterable, Iterator, Mapping, Sequence

# Variable names are interned into a process-wide table; monomials store
# (index, doubled exponent) pairs so comparisons never touch strings.
_VAR_INDEX: dict[str, int] = {}
_VAR_NAMES: list[str] = []


def _var_index(name: str) -> int:
    idx = _VAR_INDEX.get(name)
    if idx is None:
        idx = len(_VAR_NAMES)
        _VAR_INDEX[name] = idx
        _VAR_NAMES.append(name)
    return idx


def _as_doubled(value) -> int:
    f = Fraction(value)
    d = f * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {value} is not a half-integer")
    return int(d)


class Monomial:
    """Laurent monomial with half-integer exponents in named variables."""

    __slots__ = ("_e",)

    def __init__(self, pairs: tuple[tuple[int, int], ...]):
        self._e = pairs

    @staticmethod
    def one() -> "Monomial":
        return _ONE

    @staticmethod
    def var(name: str, exp=1) -> "Monomial":
        return Monomial.from_exps({name: exp})

    @staticmethod
    def from_exps(exps: Mapping[str, object]) -> "Monomial":
        pairs = sorted(
            (_var_index(n), _as_doubled(e)) for n, e in exps.items() if Fraction(e)
        )
        return Monomial(tuple(pairs))

    @staticmethod
    def _from_doubled(items: Iterable[tuple[int, int]]) -> "Monomial":
        return Monomial(tuple(sorted((i, d) for i, d in items if d)))

    def exps(self) -> dict[str, Fraction]:
        return {_VAR_NAMES[i]: Fraction(d, 2) for i, d in self._e}

    def doubled_exps(self) -> dict[str, int]:
        return {_VAR_NAMES[i]: d for i, d in self._e}

    def exp(self, name: str) -> Fraction:
        idx = _VAR_INDEX.get(name)
        if idx is None:
            return Fraction(0)
        for i, d in self._e:
            if i == idx:
                return Fraction(d, 2)
        return Fraction(0)

    @property
    def is_one(self) -> bool:
        return not self._e

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        acc = dict(self._e)
        for i, d in other._e:
            acc[i] = acc.get(i, 0) + d
        return Monomial._from_doubled(acc.items())

    def inv(self) -> "Monomial":
        return Monomial(tuple((i, -d) for i, d in self._e))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(tuple((i, d * k) for i, d in self._e)) if k else _ONE

    def sqrt(self) -> "Monomial":
        for _, d in self._e:
            if d % 2:
                raise ValueError("square root would need quarter-integer exponents")
        return Monomial(tuple((i, d // 2) for i, d in self._e))

    def substitute(self, images: Mapping[str, "Monomial"]) -> "Monomial":
        acc: dict[int, int] = {}
        for i, d in self._e:
            img = images.get(_VAR_NAMES[i])
            if img is None:
                acc[i] = acc.get(i, 0) + d
                continue
            for j, dd in img._e:
                num = dd * d  # doubled*doubled = 4x the exponent product
                if num % 2:
                    raise ValueError("substitution needs quarter-integer exponents")
                acc[j] = acc.get(j, 0) + num // 2
        return Monomial._from_doubled(acc.items())

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        val = Fraction(1)
        for i, d in self._e:
            name = _VAR_NAMES[i]
            if name not in point:
                raise ValueError(f"no value provided for variable {name!r}")
            base = Fraction(point[name])
            if d % 2:
                raise ValueError("cannot evaluate half-integer exponent directly")
            val *= base ** (d // 2)
        return val

    def sort_key(self):
        return tuple(sorted((_VAR_NAMES[i], d) for i, d in self._e))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        if not self._e:
            return "1"
        parts = []
        for name, d in sorted((_VAR_NAMES[i], d) for i, d in self._e):
            e = Fraction(d, 2)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


_ONE = Monomial(())


class Character:
    """Finite integer combination of monomials (a virtual representation)."""

    __slots__ = ("_t",)

    def __init__(self, terms: dict[Monomial, int]):
        self._t = terms

    @staticmethod
    def zero() -> "Character":
        return Character({})

    @staticmethod
    def one() -> "Character":
        return Character({_ONE: 1})

    @staticmethod
    def monomial(m: Monomial, mult: int = 1) -> "Character":
        return Character({m: mult}) if mult else Character({})

    @staticmethod
    def from_terms(pairs: Iterable[tuple[Monomial, int]]) -> "Character":
        acc: dict[Monomial, int] = {}
        for m, c in pairs:
            c = acc.get(m, 0) + c
            if c:
                acc[m] = c
            else:
                acc.pop(m, None)
        return Character(acc)

    def terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._t.items(), key=lambda mc: mc[0].sort_key())

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms())

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __add__(self, other: "Character") -> "Character":
        acc = dict(self._t)
        for m, c in other._t.items():
            c = acc.get(m, 0) + c
            if c:
                acc[m] = c
            else:
                del acc[m]
        return Character(acc)

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __neg__(self) -> "Character":
        return Character({m: -c for m, c in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, Character):
            acc: dict[Monomial, int] = {}
            for m1, c1 in self._t.items():
                for m2, c2 in other._t.items():
                    m = m1 * m2
                    c = acc.get(m, 0) + c1 * c2
                    if c:
                        acc[m] = c
                    else:
                        del acc[m]
            return Character(acc)
        if isinstance(other, Monomial):
            return Character({m * other: c for m, c in self._t.items()})
        if isinstance(other, int):
            if other == 0:
                return Character({})
            return Character({m: c * other for m, c in self._t.items()})
        return NotImplemented

    __rmul__ = __mul__

    def dual(self) -> "Character":
        return Character({m.inv(): c for m, c in self._t.items()})

    def rank(self) -> int:
        return sum(self._t.values())

    def trivial_mult(self) -> int:
        return self._t.get(_ONE, 0)

    def mult(self, m: Monomial) -> int:
        return self._t.get(m, 0)

    def substitute(self, images: Mapping[str, Monomial]) -> "Character":
        return Character.from_terms(
            (m.substitute(images), c) for m, c in self._t.items()
        )

    def __eq__(self, other):
        return isinstance(other, Character) and self._t == other._t

    def __repr__(self):
        if not self._t:
            return "0"
        return " + ".join(
            (f"{c}*{m!r}" if c != 1 else repr(m)) for m, c in self.terms()
        )

    def to_json(self) -> dict:
        out = []
        for m, c in self.terms():
            dd = m.doubled_exps()
            if all(d % 2 == 0 for d in dd.values()):
                out.append({"exps": {n: d // 2 for n, d in sorted(dd.items())},
                            "mult": c})
            else:
                out.append({"exps2": dict(sorted(dd.items())), "mult": c})
        return {"terms": out}

    @staticmethod
    def from_json(data: Mapping) -> "Character":
        pairs = []
        for term in data["terms"]:
            if "exps2" in term:
                m = Monomial._from_doubled(
                    (_var_index(n), int(d)) for n, d in term["exps2"].items()
                )
            else:
                m = Monomial._from_doubled(
                    (_var_index(n), 2 * int(d)) for n, d in term["exps"].items()
                )
            pairs.append((m, int(term["mult"])))
        return Character.from_terms(pairs)


def dual(c: Character) -> Character:
    return c.dual()


def gamma_invariants(c: Character, m: int) -> Character:
    """Project onto the weights fixed by the cyclic group of order m.

    The generator scales x by a primitive m-th root of unity and y by its
    inverse, so a monomial is invariant iff its x- and y-exponents agree
    modulo m.  Exponents must be integral in x and y for the weight to have
    a well-defined orbifold character; half-integer differences never occur
    for honest sheaf classes.
    """
    kept = {}
    for mono, mult in c._t.items():
        diff = mono.exp("x") - mono.exp("y")
        if diff.denominator != 1:
            continue
        if int(diff) % m == 0:
            kept[mono] = mult
    return Character(kept)


def attracting_split(
    c: Character, sigma: Mapping[str, int]
) -> tuple[Character, Character, Character]:
    """Split a character into attracting / fixed / repelling parts.

    sigma assigns an integer pairing value to each variable; a monomial goes
    to the positive part when the pairing with its exponent vector is
    positive.  Returns (positive, zero, negative).
    """
    pos: dict[Monomial, int] = {}
    zero: dict[Monomial, int] = {}
    neg: dict[Monomial, int] = {}
    for m, mult in c._t.items():
        val = Fraction(0)
        for name, e in m.exps().items():
            val += sigma.get(name, 0) * e
        (pos if val > 0 else zero if val == 0 else neg)[m] = mult
    return Character(pos), Character(zero), Character(neg)


# ------------------------------------------------------------------ hcoh_p1


def _laurent_div_exact(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    """Exact division of Laurent polynomials in one variable.

    Raises if the remainder is nonzero; the callers rely on divisibility
    that holds identically.
    """
    if not num:
        return {}
    shift = min(num)
    dshift = min(den)
    # normalize to ordinary polynomials
    n = {k - shift: v for k, v in num.items()}
    d = {k - dshift: v for k, v in den.items()}
    ddeg = max(d)
    dlead = d[ddeg]
    q: dict[int, int] = {}
    while n:
        ndeg = max(n)
        if ndeg < ddeg:
            raise AssertionError("nonzero remainder in exact Laurent division")
        if n[ndeg] % dlead:
            raise AssertionError("non-integral quotient in exact Laurent division")
        coef = n[ndeg] // dlead
        q[ndeg - ddeg] = coef
        for k, v in d.items():
            kk = ndeg - ddeg + k
            nv = n.get(kk, 0) - coef * v
            if nv:
                n[kk] = nv
            else:
                n.pop(kk, None)
    return {k + shift - dshift: v for k, v in q.items()}


@functools.lru_cache(maxsize=None)
def _hcoh_z_part(degree: int) -> tuple[tuple[int, int], ...]:
    # z^{-d}/(1-z) - z/(1-z) = (z^{-d} - z) / (1 - z)
    num = {-degree: 1}
    num[1] = num.get(1, 0) - 1
    if not num.get(-degree):
        num.pop(-degree, None)
    if 1 in num and num[1] == 0:
        del num[1]
    quot = _laurent_div_exact(num, {0: 1, 1: -1})
    return tuple(sorted(quot.items()))


def hcoh_p1(weight: Monomial, degree: int) -> Character:
    """Equivariant Euler characteristic of w * O(degree) on the projective line.

    Computed from the two fixed-point chart contributions
    z^{-degree}/(1-z) + 1/(1-z^{-1}) combined over a common denominator and
    divided out exactly.
    """
    z = _var_index("z")
    return Character.from_terms(
        (weight * Monomial(((z, 2 * k),)), c) for k, c in _hcoh_z_part(degree)
    )


class LineBundleSum:
    """Integer combination of (weight, degree) line bundles on the projective
    line; multiplication tensors both the weight and the degree."""

    __slots__ = ("_t",)

    def __init__(self, terms: dict[tuple[Monomial, int], int]):
        self._t = terms

    @staticmethod
    def zero() -> "LineBundleSum":
        return LineBundleSum({})

    @staticmethod
    def line(weight: Monomial, degree: int, mult: int = 1) -> "LineBundleSum":
        return LineBundleSum({(weight, degree): mult}) if mult else LineBundleSum({})

    @staticmethod
    def from_character(c: Character) -> "LineBundleSum":
        return LineBundleSum({(m, 0): mult for m, mult in c._t.items()})

    @staticmethod
    def from_terms(pairs) -> "LineBundleSum":
        acc: dict[tuple[Monomial, int], int] = {}
        for key, c in pairs:
            c = acc.get(key, 0) + c
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
        return LineBundleSum(acc)

    def terms(self) -> list[tuple[tuple[Monomial, int], int]]:
        return sorted(
            self._t.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1])
        )

    def __add__(self, other: "LineBundleSum") -> "LineBundleSum":
        acc = dict(self._t)
        for key, c in other._t.items():
            c = acc.get(key, 0) + c
            if c:
                acc[key] = c
            else:
                del acc[key]
        return LineBundleSum(acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LineBundleSum({k: -c for k, c in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, LineBundleSum):
            acc: dict[tuple[Monomial, int], int] = {}
            for (m1, d1), c1 in self._t.items():
                for (m2, d2), c2 in other._t.items():
                    key = (m1 * m2, d1 + d2)
                    c = acc.get(key, 0) + c1 * c2
                    if c:
                        acc[key] = c
                    else:
                        del acc[key]
            return LineBundleSum(acc)
        if isinstance(other, Character):
            return self * LineBundleSum.from_character(other)
        if isinstance(other, int):
            return LineBundleSum({k: c * other for k, c in self._t.items()}) \
                if other else LineBundleSum({})
        return NotImplemented

    __rmul__ = __mul__

    def dual(self) -> "LineBundleSum":
        return LineBundleSum({(m.inv(), -d): c for (m, d), c in self._t.items()})

    def chi(self) -> Character:
        z = _var_index("z")
        return Character.from_terms(
            ((m if k == 0 else m * Monomial(((z, 2 * k),))), q * c)
            for (m, d), c in self._t.items()
            for k, q in _hcoh_z_part(d)
        )

    def __eq__(self, other):
        return isinstance(other, LineBundleSum) and self._t == other._t

    def __repr__(self):
        if not self._t:
            return "0"
        return " + ".join(
            f"{c}*{m!r}*O({d})" for (m, d), c in self.terms()
        )


# ------------------------------------------------------------ truncated series


class TruncSeries:
    """Sparse truncated series with rational coefficients.

    Monomials are integer exponent vectors over a fixed variable tuple;
    truncation keeps weighted total degree <= order, where each variable
    carries a positive integer weight (default 1).  Exponents may be
    negative.  Optional per-variable caps additionally drop any term whose
    exponent in that variable exceeds the cap; caps are only sound for
    variables whose exponents never go negative in the inputs at hand.
    """

    __slots__ = ("svars", "order", "weights", "caps", "coeffs")

    def __init__(self, svars, order, weights, caps, coeffs):
        self.svars = tuple(svars)
        self.order = order
        self.weights = weights
        self.caps = caps
        self.coeffs = coeffs

    @staticmethod
    def zero(svars: Sequence[str], order: int, weights=None, caps=None):
        svars = tuple(svars)
        w = tuple((weights or {}).get(v, 1) for v in svars)
        if any(x < 1 for x in w):
            raise ValueError("series weights must be positive integers")
        c = tuple((caps or {}).get(v) for v in svars)
        return TruncSeries(svars, order, w, c, {})

    @staticmethod
    def one(svars, order, weights=None, caps=None):
        return TruncSeries.zero(svars, order, weights, caps).add_term({}, 1)

    def _wdeg(self, vec) -> int:
        return sum(e * w for e, w in zip(vec, self.weights))

    def _admit(self, vec) -> bool:
        if self._wdeg(vec) > self.order:
            return False
        for e, cap in zip(vec, self.caps):
            if cap is not None and e > cap:
                return False
        return True

    def _like(self, coeffs) -> "TruncSeries":
        return TruncSeries(self.svars, self.order, self.weights, self.caps, coeffs)

    def add_term(self, exps: Mapping[str, int], coeff) -> "TruncSeries":
        vec = tuple(int(exps.get(v, 0)) for v in self.svars)
        extra = set(exps) - set(self.svars)
        if extra:
            raise ValueError(f"unknown series variables {sorted(extra)}")
        acc = dict(self.coeffs)
        if self._admit(vec):
            c = acc.get(vec, Fraction(0)) + Fraction(coeff)
            if c:
                acc[vec] = c
            else:
                acc.pop(vec, None)
        return self._like(acc)

    def coeff(self, exps: Mapping[str, int]) -> Fraction:
        vec = tuple(int(exps.get(v, 0)) for v in self.svars)
        return self.coeffs.get(vec, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_compatible(self, other: "TruncSeries"):
        if (self.svars, self.order, self.weights, self.caps) != (
            other.svars, other.order, other.weights, other.caps
        ):
            raise ValueError("incompatible series parameters")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compatible(other)
        acc = dict(self.coeffs)
        for vec, c in other.coeffs.items():
            c = acc.get(vec, Fraction(0)) + c
            if c:
                acc[vec] = c
            else:
                del acc[vec]
        return self._like(acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({v: -c for v, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            self._check_compatible(other)
            acc: dict[tuple[int, ...], Fraction] = {}
            for v1, c1 in self.coeffs.items():
                for v2, c2 in other.coeffs.items():
                    vec = tuple(a + b for a, b in zip(v1, v2))
                    if not self._admit(vec):
                        continue
                    c = acc.get(vec, Fraction(0)) + c1 * c2
                    if c:
                        acc[vec] = c
                    else:
                        del acc[vec]
            return self._like(acc)
        if isinstance(other, (int, Fraction)):
            if not other:
                return self._like({})
            return self._like({v: c * other for v, c in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, exps: Mapping[str, int], coeff=1) -> "TruncSeries":
        """Multiply by coeff * monomial(exps), truncating as usual."""
        vec = tuple(int(exps.get(v, 0)) for v in self.svars)
        acc = {}
        coeff = Fraction(coeff)
        for v, c in self.coeffs.items():
            nv = tuple(a + b for a, b in zip(v, vec))
            if self._admit(nv):
                acc[nv] = c * coeff
        return self._like(acc)

    def prune(self, var: str, cap: int) -> "TruncSeries":
        """Drop all terms with exponent of var above cap (terminal filter)."""
        i = self.svars.index(var)
        caps = tuple(
            (min(c, cap) if c is not None else cap) if j == i else c
            for j, c in enumerate(self.caps)
        )
        coeffs = {v: c for v, c in self.coeffs.items() if v[i] <= caps[i]}
        return TruncSeries(self.svars, self.order, self.weights, caps, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.svars == other.svars
            and self.order == other.order
            and self.weights == other.weights
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        n = len(self.coeffs)
        return f"TruncSeries({'+'.join(self.svars)}; order {self.order}; {n} terms)"

    def terms(self):
        return sorted(self.coeffs.items())

    def to_json(self) -> dict:
        out = []
        for vec, c in self.terms():
            exps = {v: e for v, e in zip(self.svars, vec) if e}
            out.append({"exps": exps, "num": c.numerator, "den": c.denominator})
        return {"order": self.order, "coeffs": out}

    @staticmethod
    def from_json(data: Mapping, svars, weights=None, caps=None) -> "TruncSeries":
        s = TruncSeries.zero(svars, int(data["order"]), weights, caps)
        for item in data["coeffs"]:
            s = s.add_term(item["exps"], Fraction(item["num"], item["den"]))
        return s


def plethystic_exp(
    c: Character, svars: Sequence[str], order: int, weights=None, caps=None
) -> TruncSeries:
    """Symmetric-algebra series S(c) = prod over terms (1-w)^(-mult).

    Every monomial of c must be supported on the series variables with
    integer exponents and have weighted degree >= 1; otherwise the infinite
    product has no well-defined expansion and a ValueError is raised.
    """
    out = TruncSeries.one(svars, order, weights, caps)
    svar_set = set(svars)
    for m, mult in c.terms():
        exps = m.exps()
        if any(n not in svar_set for n in exps):
            raise ValueError(f"term {m!r} involves non-series variables")
        if any(e.denominator != 1 for e in exps.values()):
            raise ValueError(f"term {m!r} has non-integer exponents")
        vec = {n: int(e) for n, e in exps.items()}
        wdeg = out._wdeg(tuple(vec.get(v, 0) for v in out.svars))
        if wdeg < 1:
            raise ValueError(
                f"term {m!r} has weighted degree {wdeg} < 1; series diverges"
            )
        kmax = order // wdeg
        factor = TruncSeries.zero(svars, order, weights, caps)
        if mult > 0:
            for k in range(kmax + 1):
                factor = factor.add_term(
                    {n: e * k for n, e in vec.items()}, comb(k + mult - 1, mult - 1)
                )
        else:
            for k in range(min(kmax, -mult) + 1):
                factor = factor.add_term(
                    {n: e * k for n, e in vec.items()},
                    (-1) ** k * comb(-mult, k),
                )
        out = out * factor
    return out


# ---------------------------------------------------------------------- ohat


def _fraction_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise ValueError("square root of a negative value is not rational")
    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn != x.numerator or pd * pd != x.denominator:
        raise ValueError(f"{x} has no rational square root")
    return Fraction(pn, pd)


class OhatProduct:
    """Symbolic product over weights w of (w^{1/2} - w^{-1/2})^(-mult)."""

    __slots__ = ("factors",)

    def __init__(self, factors: list[tuple[Monomial, int]]):
        self.factors = factors

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        val = Fraction(1)
        for m, mult in self.factors:
            w = m.evaluate(point)
            if w == 0:
                raise ValueError("weight evaluates to zero")
            s = _fraction_sqrt(w)
            base = s - 1 / s
            if base == 0:
                raise ValueError("weight evaluates to one; factor degenerates")
            val *= base ** (-mult)
        return val

    def abs2(self, point: Mapping[str, Fraction]) -> Fraction:
        """Squared absolute value; exact for any nonzero rational weight values.

        |w^{1/2} - w^{-1/2}|^2 = |w - 2 + 1/w| whether the square root is
        real (w > 0) or imaginary (w < 0).
        """
        val = Fraction(1)
        for m, mult in self.factors:
            w = m.evaluate(point)
            if w == 0:
                raise ValueError("weight evaluates to zero")
            base = abs(w - 2 + 1 / w)
            if base == 0:
                raise ValueError("weight evaluates to one; factor degenerates")
            val *= base ** (-mult)
        return val

    def __repr__(self):
        return " * ".join(
            f"(w^{{1/2}}-w^{{-1/2}})^{-c} with w={m!r}" for m, c in self.factors
        )


def ohat_contribution(c: Character) -> OhatProduct:
    """The symmetrized-determinant contribution of a virtual representation.

    Each weight w with multiplicity k contributes (w^{1/2}-w^{-1/2})^{-k};
    a trivial weight has no such factor and is rejected.
    """
    factors = []
    for m, mult in c.terms():
        if m.is_one:
            raise ValueError("character has a fixed part; contribution undefined")
        factors.append((m, mult))
    return OhatProduct(factors)
