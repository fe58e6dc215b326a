"""Divisor charts, formal products of ideals with rational exponents, and
monomial valuations.

A chart is a polynomial parametrization of a smooth piece of a resolution,
with one chart coordinate cutting out the divisor.  All orders of vanishing
along the divisor become finite symbolic computations on pullbacks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ValidationError
from .poly import Ideal, Poly, PolyRing, render_poly
from .series import InfiniteOrder, Order, is_infinite, min_order


def chart_ring(chart_dim: int) -> PolyRing:
    return PolyRing([f"y{j + 1}" for j in range(chart_dim)])


class DivisorChart:
    """A polynomial map from a smooth chart into ambient space, with a
    distinguished divisor coordinate (0-based index, default the first)."""

    __slots__ = ("label", "ambient_dim", "chart_dim", "map_polys", "divisor_index", "exceptional")

    def __init__(
        self,
        label: str,
        map_polys: Sequence[Poly],
        divisor_index: int = 0,
        exceptional: bool = False,
    ):
        map_polys = tuple(map_polys)
        if not map_polys:
            raise ValidationError("a chart needs at least one map component")
        ring = map_polys[0].ring
        for p in map_polys:
            if p.ring != ring:
                raise ValidationError("chart map components live in mixed rings")
        if not 0 <= divisor_index < ring.num_vars:
            raise ValidationError("divisor index out of range for the chart ring")
        self.label = label
        self.ambient_dim = len(map_polys)
        self.chart_dim = ring.num_vars
        self.map_polys = map_polys
        self.divisor_index = divisor_index
        self.exceptional = exceptional

    @property
    def ring(self) -> PolyRing:
        return self.map_polys[0].ring

    def pullback(self, f: Poly) -> Poly:
        """f composed with the chart map (f must live in the ambient ring)."""
        if f.ring.num_vars != self.ambient_dim:
            raise ValidationError("pullback of a polynomial with wrong arity")
        return f.substitute(list(self.map_polys), self.ring)

    def __repr__(self) -> str:
        maps = ", ".join(render_poly(p) for p in self.map_polys)
        return f"DivisorChart({self.label}: [{maps}], divisor=y{self.divisor_index + 1})"


def divisor_order(f: Poly, divisor_index: int) -> Order:
    """Largest power of the divisor coordinate dividing f; infinite for 0."""
    if f.is_zero():
        return InfiniteOrder(None)
    return min(e[divisor_index] for e in f.terms)


def ideal_order_along_chart(I: Ideal, chart: DivisorChart) -> Order:
    """Order of the ideal along the chart divisor: the minimum over
    generators of the divisor-adic order of the pullback."""
    if not I.generators:
        return InfiniteOrder(None)
    return min_order([divisor_order(chart.pullback(g), chart.divisor_index) for g in I.generators])


@dataclass(frozen=True)
class ChartValidation:
    on_variety: bool
    immersive: bool
    sampled_points: int
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.on_variety and self.immersive


def _chart_jacobian_rows(chart: DivisorChart) -> list[list[Poly]]:
    """Rows = ambient components, columns = chart variables."""
    return [
        [p.derivative(j) for j in range(chart.chart_dim)]
        for p in chart.map_polys
    ]


def _rank_at_point(rows: list[list[Poly]], point: Sequence[Fraction]) -> int:
    mat = [[p.evaluate(point) for p in row] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    row_count = len(mat)
    col = 0
    r = 0
    while r < row_count and col < cols:
        pivot = next((i for i in range(r, row_count) if mat[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(row_count):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        rank += 1
        r += 1
        col += 1
    return rank


def validate_chart(
    chart: DivisorChart,
    I_X: Ideal,
    seed: int = 0,
    samples: int = 3,
    bound: int = 10**6,
) -> ChartValidation:
    """Check that the chart lands on the variety and is generically
    immersive off the divisor.

    (i) every generator pulls back to exactly zero; (ii) the chart Jacobian
    reaches rank chart_dim at one of several sampled rational points with a
    nonzero divisor coordinate.  Charts may legitimately map the divisor
    into the singular locus, so nothing is required there.
    """
    if I_X.ring.num_vars != chart.ambient_dim:
        raise ValidationError("chart ambient arity does not match the ideal ring")
    on_variety = all(chart.pullback(g).is_zero() for g in I_X.generators)
    rows = _chart_jacobian_rows(chart)
    immersive = False
    rng = random.Random(f"chart:{chart.label}:{seed}")
    for _ in range(samples):
        point = [Fraction(rng.randint(-bound, bound)) for _ in range(chart.chart_dim)]
        if point[chart.divisor_index] == 0:
            point[chart.divisor_index] = Fraction(1)
        if _rank_at_point(rows, point) == chart.chart_dim:
            immersive = True
            break
    notes = []
    if not on_variety:
        notes.append("chart not on X")
    if not immersive:
        notes.append("chart not dominant/immersive")
    return ChartValidation(on_variety, immersive, samples, tuple(notes))


def ensure_valid_chart(chart: DivisorChart, I_X: Ideal, seed: int = 0) -> None:
    report = validate_chart(chart, I_X, seed=seed)
    if not report.on_variety:
        raise ValidationError(f"chart {chart.label}: chart not on X")
    if not report.immersive:
        raise ValidationError(f"chart {chart.label}: chart not dominant/immersive")


# ---------------------------------------------------------------------------
# Formal products of ideals with rational exponents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RIdealFactor:
    ideal: Ideal
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.ideal.is_zero():
            raise ValidationError("R-ideal factors must be nonzero ideals")


class RIdeal:
    """A finite formal product of ideals with rational exponents."""

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[RIdealFactor] = ()):
        self.factors = tuple(factors)

    @classmethod
    def trivial(cls) -> "RIdeal":
        return cls(())

    @classmethod
    def single(cls, ideal: Ideal, exponent) -> "RIdeal":
        return cls((RIdealFactor(ideal, Fraction(exponent)),))

    def is_trivial(self) -> bool:
        return not self.factors

    def is_effective(self) -> bool:
        return all(f.exponent >= 0 for f in self.factors)

    def scaled(self, factor) -> "RIdeal":
        c = Fraction(factor)
        return RIdeal(tuple(RIdealFactor(f.ideal, f.exponent * c) for f in self.factors))

    def __mul__(self, other: "RIdeal") -> "RIdeal":
        return RIdeal(self.factors + other.factors)

    def order_along_chart(self, chart: DivisorChart) -> Fraction:
        """sum of exponent * (order of the factor ideal along the divisor).

        Raises if a factor vanishes identically along the chart.
        """
        total = Fraction(0)
        for f in self.factors:
            o = ideal_order_along_chart(f.ideal, chart)
            if is_infinite(o):
                raise ValidationError("R-ideal vanishes along component")
            total += f.exponent * o
        return total

    def __repr__(self) -> str:
        if not self.factors:
            return "RIdeal(trivial)"
        parts = [
            "(" + ",".join(render_poly(g) for g in f.ideal.generators) + f")^({f.exponent})"
            for f in self.factors
        ]
        return "RIdeal(" + " * ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Monomial valuations on smooth ambient space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialValuation:
    """A toric divisorial valuation on A^N given by positive integer weights."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.weights or any(w < 1 for w in self.weights):
            raise ValidationError("monomial valuations need all weights >= 1")

    def order_of_poly(self, f: Poly) -> Order:
        if f.is_zero():
            return InfiniteOrder(None)
        return min(sum(w * k for w, k in zip(self.weights, e)) for e in f.terms)

    def order_of_ideal(self, I: Ideal) -> Order:
        if not I.generators:
            return InfiniteOrder(None)
        return min_order([self.order_of_poly(g) for g in I.generators])

    def monomial_chart(self, exceptional: bool = True) -> DivisorChart:
        """The chart (y1^w1, y1^w2*y2, ..., y1^wN*yN) realizing the valuation."""
        n = len(self.weights)
        ring = chart_ring(n)
        y1 = ring.var(0)
        comps = [y1 ** self.weights[0]]
        for i in range(1, n):
            comps.append(y1 ** self.weights[i] * ring.var(i))
        label = "w" + "_".join(str(w) for w in self.weights)
        return DivisorChart(label, comps, divisor_index=0, exceptional=exceptional)
