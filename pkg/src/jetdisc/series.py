"""Truncated power series over Q and arcs on affine space.

A ``TruncSeries`` is an element of Q[t]/(t^(m+1)); an ``Arc`` is a vector of
them, one per ambient coordinate.  Orders of vanishing that exceed the
truncation bound are represented by ``InfiniteOrder`` values carrying the
bound, so callers can tell "zero modulo t^(m+1)" apart from a finite order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import NotAUnitError, ValidationError


@dataclass(frozen=True)
class InfiniteOrder:
    """An order of vanishing known only to exceed ``bound`` (i.e. >= bound+1).

    ``bound=None`` marks an exact, symbolic infinity (identically zero data).
    """

    bound: int | None = None

    def __repr__(self) -> str:
        if self.bound is None:
            return "InfiniteOrder()"
        return f"InfiniteOrder(>{self.bound})"


Order = Union[int, InfiniteOrder]


def is_infinite(order: Order) -> bool:
    return isinstance(order, InfiniteOrder)


def min_order(orders: Sequence[Order]) -> Order:
    """Minimum of a nonempty list of orders; infinities lose to any integer."""
    finite = [o for o in orders if not is_infinite(o)]
    if finite:
        return min(finite)
    bounds = [o.bound for o in orders if is_infinite(o)]
    if any(b is None for b in bounds):
        return InfiniteOrder(None)
    return InfiniteOrder(min(bounds))


class TruncSeries:
    """An element of Q[t]/(t^(m+1)), stored as m+1 coefficients."""

    __slots__ = ("trunc_order", "coeffs")

    def __init__(self, trunc_order: int, coeffs: Sequence[Fraction]):
        if trunc_order < 0:
            raise ValidationError("truncation order must be >= 0")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != trunc_order + 1:
            raise ValidationError(
                f"need {trunc_order + 1} coefficients, got {len(coeffs)}"
            )
        self.trunc_order = trunc_order
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, m: int, c) -> "TruncSeries":
        return cls(m, [Fraction(c)] + [Fraction(0)] * m)

    @classmethod
    def t(cls, m: int) -> "TruncSeries":
        if m == 0:
            return cls.zero(0)
        return cls(m, [Fraction(0), Fraction(1)] + [Fraction(0)] * (m - 1))

    @classmethod
    def zero(cls, m: int) -> "TruncSeries":
        return cls(m, [Fraction(0)] * (m + 1))

    @classmethod
    def from_poly_coeffs(cls, m: int, coeffs: Sequence[Fraction]) -> "TruncSeries":
        """Truncate a polynomial in t, given as a coefficient list."""
        padded = list(coeffs[: m + 1])
        padded += [Fraction(0)] * (m + 1 - len(padded))
        return cls(m, padded)

    # -- queries --------------------------------------------------------------

    def t_order(self) -> Order:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return InfiniteOrder(self.trunc_order)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "TruncSeries") -> None:
        if self.trunc_order != other.trunc_order:
            raise ValidationError(
                f"truncation orders differ: {self.trunc_order} vs {other.trunc_order}"
            )

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(
            self.trunc_order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.trunc_order, [-a for a in self.coeffs])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(
            self.trunc_order, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        m = self.trunc_order
        out = [Fraction(0)] * (m + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(m + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(m, out)

    def scale(self, c) -> "TruncSeries":
        c = Fraction(c)
        return TruncSeries(self.trunc_order, [c * a for a in self.coeffs])

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            raise ValidationError("negative series powers are not supported")
        result = TruncSeries.constant(self.trunc_order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse modulo t^(m+1); requires a unit."""
        if not self.is_unit():
            raise NotAUnitError("not a unit: constant coefficient is zero")
        m = self.trunc_order
        a0 = self.coeffs[0]
        out = [Fraction(0)] * (m + 1)
        out[0] = 1 / a0
        for k in range(1, m + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                s += self.coeffs[i] * out[k - i]
            out[k] = -s / a0
        return TruncSeries(m, out)

    # -- structural helpers ----------------------------------------------------

    def truncate(self, m: int) -> "TruncSeries":
        if m > self.trunc_order:
            raise ValidationError("cannot extend a truncated series")
        return TruncSeries(m, self.coeffs[: m + 1])

    def shift_down(self, a: int) -> "TruncSeries":
        """Divide by t^a, assuming the first a coefficients vanish."""
        if any(c != 0 for c in self.coeffs[:a]):
            raise ValidationError("shift_down would drop nonzero coefficients")
        rest = list(self.coeffs[a:]) + [Fraction(0)] * a
        return TruncSeries(self.trunc_order, rest)

    def shift_up(self, a: int) -> "TruncSeries":
        """Multiply by t^a."""
        m = self.trunc_order
        out = [Fraction(0)] * a + list(self.coeffs[: m + 1 - a])
        return TruncSeries(m, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.trunc_order == other.trunc_order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.trunc_order, self.coeffs))

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"TruncSeries({body} mod t^{self.trunc_order + 1})"


class Arc:
    """A vector of truncated series: an m-jet (or truncated arc) on A^N."""

    __slots__ = ("trunc_order", "components")

    def __init__(self, components: Sequence[TruncSeries]):
        components = tuple(components)
        if not components:
            raise ValidationError("an arc needs at least one component")
        m = components[0].trunc_order
        for c in components:
            if c.trunc_order != m:
                raise ValidationError("arc components have mixed truncation orders")
        self.trunc_order = m
        self.components = components

    @classmethod
    def from_coeff_lists(cls, m: int, comps: Sequence[Sequence[Fraction]]) -> "Arc":
        return cls([TruncSeries.from_poly_coeffs(m, c) for c in comps])

    @property
    def num_components(self) -> int:
        return len(self.components)

    def truncate(self, m: int) -> "Arc":
        return Arc([c.truncate(m) for c in self.components])

    def coefficient_vector(self) -> tuple[Fraction, ...]:
        """All coefficients, component-major: (c_1,0..c_1,m, c_2,0, ...)."""
        out: list[Fraction] = []
        for comp in self.components:
            out.extend(comp.coeffs)
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Arc) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"Arc({', '.join(repr(c) for c in self.components)})"
