"""Evaluation of polynomials along arcs, orders of vanishing, jet-scheme
equations, and contact arcs sampled from divisor charts."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .errors import GenericityError, ValidationError
from .poly import Ideal, Poly, PolyRing
from .series import Arc, InfiniteOrder, Order, TruncSeries, min_order

GENERICITY_BOUND = 10**6
GENERICITY_DRAWS = 3


def evaluate_arc(f: Poly, arc: Arc) -> TruncSeries:
    """f(arc(t)) modulo t^(m+1)."""
    if f.ring.num_vars != arc.num_components:
        raise ValidationError(
            f"polynomial in {f.ring.num_vars} variables evaluated on an arc "
            f"with {arc.num_components} components"
        )
    m = arc.trunc_order
    total = TruncSeries.zero(m)
    powers: list[dict[int, TruncSeries]] = [dict() for _ in arc.components]
    for e, c in f.terms.items():
        term = TruncSeries.constant(m, c)
        for i, k in enumerate(e):
            if k == 0:
                continue
            cache = powers[i]
            if k not in cache:
                cache[k] = arc.components[i] ** k
            term = term * cache[k]
        total = total + term
    return total


def arc_order_of_ideal(I: Ideal, arc: Arc) -> Order:
    """min over generators of the t-order of the evaluation along the arc.

    The unit ideal has order 0; if every generator vanishes modulo
    t^(m+1) the result is InfiniteOrder(m).
    """
    if not I.generators:
        return InfiniteOrder(arc.trunc_order)
    return min_order([evaluate_arc(g, arc).t_order() for g in I.generators])


def verify_arc_on_variety(I_X: Ideal, arc: Arc) -> bool:
    """True iff every generator evaluates to zero modulo t^(m+1)."""
    return all(evaluate_arc(g, arc).is_zero() for g in I_X.generators)


# ---------------------------------------------------------------------------
# Jet-scheme equations
# ---------------------------------------------------------------------------


def jet_ring(base: PolyRing, m: int) -> PolyRing:
    """The coordinate ring of the m-jet space over the base ring.

    Variable ``x`` lifts to ``x0 .. xm``; names are grouped by base variable.
    """
    if m < 0:
        raise ValidationError("jet order must be >= 0")
    names = [f"{name}{j}" for name in base.names for j in range(m + 1)]
    if len(set(names)) != len(names) or set(names) & set(base.names):
        raise ValidationError("jet variable names collide; rename base variables")
    return PolyRing(names)


def jet_variable_index(base: PolyRing, m: int, var: int, level: int) -> int:
    return var * (m + 1) + level


def _polyseries_mul(a: list[Poly], b: list[Poly], ring: PolyRing) -> list[Poly]:
    m = len(a) - 1
    out = [ring.zero() for _ in range(m + 1)]
    for i, p in enumerate(a):
        if p.is_zero():
            continue
        for j in range(m + 1 - i):
            q = b[j]
            if not q.is_zero():
                out[i + j] = out[i + j] + p * q
    return out


def polyseries_expand(F: Poly, comps: list[list[Poly]], ring: PolyRing) -> list[Poly]:
    """Expand F(c_1(t), ..., c_N(t)) where each component is a truncated
    series with polynomial coefficients; returns the coefficient list."""
    m = len(comps[0]) - 1
    total = [ring.zero() for _ in range(m + 1)]
    powers: list[dict[int, list[Poly]]] = [dict() for _ in comps]
    for e, c in F.terms.items():
        term = [ring.const(c)] + [ring.zero()] * m
        for i, k in enumerate(e):
            if k == 0:
                continue
            cache = powers[i]
            if k not in cache:
                acc = comps[i]
                for _ in range(k - 1):
                    acc = _polyseries_mul(acc, comps[i], ring)
                cache[k] = acc
            term = _polyseries_mul(term, cache[k], ring)
        total = [t + u for t, u in zip(total, term)]
    return total


def jet_equations(I_X: Ideal, m: int) -> Ideal:
    """Defining equations of the m-jet scheme.

    Each generator F is expanded at x_i = sum_j x_i^(j) t^j and the m+1
    t-coefficients are emitted as polynomials in the jet ring.
    """
    base = I_X.ring
    ring = jet_ring(base, m)
    # Component i as a series whose t^j coefficient is the jet variable x_i^(j).
    comps: list[list[Poly]] = []
    for i in range(base.num_vars):
        comps.append(
            [ring.var(jet_variable_index(base, m, i, j)) for j in range(m + 1)]
        )
    gens: list[Poly] = []
    for F in I_X.generators:
        gens.extend(polyseries_expand(F, comps, ring))
    return Ideal(ring, gens)


def evaluate_jet_poly(f: Poly, arc: Arc) -> Fraction:
    """Evaluate a jet-ring polynomial at the coefficient vector of an arc."""
    return f.evaluate(arc.coefficient_vector())


# ---------------------------------------------------------------------------
# Contact arcs through divisor charts
# ---------------------------------------------------------------------------


def contact_arc_from_chart(chart, params: Sequence[Fraction], m: int) -> Arc:
    """The arc through the chart with the divisor coordinate set to t and the
    remaining chart coordinates frozen at the given constants."""
    n = chart.chart_dim
    if len(params) != n - 1:
        raise ValidationError(f"expected {n - 1} parameters, got {len(params)}")
    comps: list[TruncSeries] = []
    it = iter(Fraction(p) for p in params)
    for j in range(n):
        if j == chart.divisor_index:
            comps.append(TruncSeries.t(m))
        else:
            comps.append(TruncSeries.constant(m, next(it)))
    domain_arc = Arc(comps)
    return Arc([evaluate_arc(g, domain_arc) for g in chart.map_polys])


def draw_param_sets(
    count: int,
    seed: int,
    draws: int = GENERICITY_DRAWS,
    bound: int = GENERICITY_BOUND,
) -> list[tuple[Fraction, ...]]:
    """Independent integer parameter draws for the genericity protocol."""
    out = []
    for k in range(draws):
        rng = random.Random(f"{seed}:{k}")
        out.append(tuple(Fraction(rng.randint(-bound, bound)) for _ in range(count)))
    return out


def generic_value(samples: Sequence, what: str):
    """Accept a sampled quantity only if all draws agree."""
    first = samples[0]
    if any(s != first for s in samples[1:]):
        raise GenericityError(
            f"genericity sampling unstable for {what} - increase bound"
        )
    return first
