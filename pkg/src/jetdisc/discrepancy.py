"""Mather and Jacobian discrepancies from resolution charts, minimal log
discrepancies and canonical thresholds over chart families, the jet
tangent-dimension identity check, monomial-valuation cross-checks, the
ambient inversion-of-adjunction harness, and the singularity classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .charts import (
    DivisorChart,
    MonomialValuation,
    RIdeal,
    chart_ring,
    divisor_order,
    ensure_valid_chart,
    ideal_order_along_chart,
)
from .errors import ValidationError
from .groebner import buchberger, eliminate, ideal_dimension, ideal_member, normal_form
from .jets import (
    contact_arc_from_chart,
    draw_param_sets,
    generic_value,
    jet_ring,
    jet_variable_index,
    polyseries_expand,
)
from .poly import Ideal, Poly, PolyMatrix, PolyRing, fitting_jacobian_ideal, minors
from .series import is_infinite
from .snf import tangent_space_dim

NEG_INFINITY = float("-inf")
POS_INFINITY = float("inf")


@dataclass(frozen=True)
class DiscrepancyReport:
    """Per-divisor record of the chart-computed invariants."""

    label: str
    km: int
    ord_jx: int
    kj: int
    factor_orders: tuple[int, ...] = ()
    aj: Fraction | None = None
    am: Fraction | None = None


def chart_jacobian(chart: DivisorChart) -> PolyMatrix:
    """ambient_dim x chart_dim matrix of partials of the chart map."""
    n = chart.chart_dim
    entries = [p.derivative(j) for p in chart.map_polys for j in range(n)]
    return PolyMatrix(chart.ambient_dim, n, entries, chart.ring)


def mather_discrepancy(chart: DivisorChart, I_X: Ideal, n: int, seed: int = 0) -> int:
    """Order along the divisor of the ideal of n x n minors of the chart
    Jacobian (the Jacobian ideal of the parametrized resolution germ)."""
    ensure_valid_chart(chart, I_X, seed=seed)
    if n != chart.chart_dim:
        raise ValidationError("chart dimension disagrees with the attested dimension")
    minor_ideal = minors(chart_jacobian(chart), n)
    # The minors already live in the chart ring; no pullback is involved.
    orders = [divisor_order(g, chart.divisor_index) for g in minor_ideal.generators]
    finite = [o for o in orders if not is_infinite(o)]
    if not finite:
        raise ValidationError(f"chart {chart.label}: degenerate chart")
    return min(finite)


def jacobian_discrepancy(
    chart: DivisorChart, I_X: Ideal, n: int, seed: int = 0
) -> DiscrepancyReport:
    km = mather_discrepancy(chart, I_X, n, seed=seed)
    jX = fitting_jacobian_ideal(I_X, n)
    ord_jx = ideal_order_along_chart(jX, chart)
    if is_infinite(ord_jx):
        raise ValidationError(f"chart {chart.label}: chart maps into singular locus")
    return DiscrepancyReport(chart.label, km, ord_jx, km - ord_jx)


def log_j_discrepancy(
    chart: DivisorChart, I_X: Ideal, n: int, A: RIdeal, seed: int = 0
) -> DiscrepancyReport:
    base = jacobian_discrepancy(chart, I_X, n, seed=seed)
    orders: list[int] = []
    weighted = Fraction(0)
    for f in A.factors:
        o = ideal_order_along_chart(f.ideal, chart)
        if is_infinite(o):
            raise ValidationError(
                f"chart {chart.label}: R-ideal vanishes along component"
            )
        orders.append(o)
        weighted += f.exponent * o
    return DiscrepancyReport(
        chart.label,
        base.km,
        base.ord_jx,
        base.kj,
        tuple(orders),
        aj=Fraction(base.kj + 1) - weighted,
        am=Fraction(base.km + 1) - weighted,
    )


def center_ideal(chart: DivisorChart, I_X: Ideal, seed: int = 0, **limits) -> Ideal:
    """Ideal of the closure of the image of the divisor in ambient space:
    eliminate the chart variables from the graph ideal plus the divisor."""
    ensure_valid_chart(chart, I_X, seed=seed)
    n, N = chart.chart_dim, chart.ambient_dim
    ambient = I_X.ring
    names = tuple(chart.ring.names) + tuple(ambient.names)
    if len(set(names)) != len(names):
        raise ValidationError("chart and ambient variable names collide")
    big = PolyRing(names)
    pad_chart = lambda f: Poly(big, {e + (0,) * N: c for e, c in f.terms.items()})
    pad_amb = lambda f: Poly(big, {(0,) * n + e: c for e, c in f.terms.items()})
    gens = [pad_amb(ambient.var(i)) - pad_chart(chart.map_polys[i]) for i in range(N)]
    gens.append(pad_chart(chart.ring.var(chart.divisor_index)))
    eliminated = eliminate(Ideal(big, gens), n, **limits)
    # The eliminated ring shares the ambient names; re-root in the ambient ring.
    return Ideal(ambient, [Poly(ambient, g.terms) for g in eliminated.generators])


def center_inside(chart: DivisorChart, I_X: Ideal, T: Ideal, seed: int = 0, **limits) -> bool:
    """True iff the chart's center lies in the closed set cut out by T."""
    c = center_ideal(chart, I_X, seed=seed, **limits)
    G = buchberger(c, **limits)
    return all(normal_form(g, G).is_zero() for g in T.generators)


@dataclass(frozen=True)
class AggregateResult:
    value: object  # Fraction, or +/-infinity sentinels
    exact: bool
    sufficiency: str
    witnesses: tuple[str, ...]
    reports: tuple[DiscrepancyReport, ...] = ()
    notes: tuple[str, ...] = ()


def jmld_over_charts(
    charts: Sequence[DivisorChart],
    I_X: Ideal,
    n: int,
    A: RIdeal,
    T: Ideal,
    attested: bool = False,
    seed: int = 0,
) -> AggregateResult:
    """Minimal log discrepancy over the charts whose center lies inside T.

    Exact when the chart list is attested to carry all divisors of a log
    resolution of the pair against T; otherwise an upper bound.  A negative
    minimum in dimension >= 2 is clamped to -infinity (and is exact: the
    negative witness already decides the value).
    """
    reports = []
    witnesses = []
    for chart in charts:
        if not center_inside(chart, I_X, T, seed=seed):
            continue
        rep = log_j_discrepancy(chart, I_X, n, A, seed=seed)
        reports.append(rep)
        witnesses.append(chart.label)
    if not reports:
        raise ValidationError("no witnesses: no chart has center inside the target set")
    value = min(rep.aj for rep in reports)
    notes = []
    if value < 0 and n >= 2:
        return AggregateResult(
            NEG_INFINITY,
            True,
            "exact (negative witness in dimension >= 2)",
            tuple(witnesses),
            tuple(reports),
        )
    if value < 0 and n < 2:
        notes.append("dimension one: raw minimum reported, no clamping")
    if attested:
        return AggregateResult(
            value, True, "exact (attested log resolution)", tuple(witnesses), tuple(reports), tuple(notes)
        )
    return AggregateResult(
        value, False, "upper bound only", tuple(witnesses), tuple(reports), tuple(notes)
    )


def jlct_from_charts(
    charts: Sequence[DivisorChart],
    I_X: Ideal,
    n: int,
    A: RIdeal,
    attested: bool = False,
    seed: int = 0,
) -> AggregateResult:
    """Largest scaling of the formal product keeping every chart's log
    discrepancy non-negative: min over charts meeting A of (kj+1)/ord(A)."""
    if not A.is_effective():
        raise ValidationError("threshold computation needs an effective product")
    candidates = []
    witnesses = []
    reports = []
    notes = []
    for chart in charts:
        rep = jacobian_discrepancy(chart, I_X, n, seed=seed)
        ord_a = A.order_along_chart(chart)
        reports.append(rep)
        if ord_a > 0:
            candidates.append((Fraction(rep.kj + 1) / ord_a, chart.label))
        elif rep.kj + 1 < 0:
            return AggregateResult(
                Fraction(0),
                attested,
                "ambient pair not log J-canonical",
                (chart.label,),
                tuple(reports),
            )
    if not candidates:
        return AggregateResult(
            POS_INFINITY, attested, "no chart meets the product", (), tuple(reports)
        )
    value = min(c for c, _ in candidates)
    witnesses = tuple(label for c, label in candidates if c == value)
    if value < 0:
        value = Fraction(0)
        notes.append("negative candidate clamped to zero: pair is nowhere log J-canonical")
    sufficiency = "exact (attested log resolution)" if attested else "upper bound only"
    return AggregateResult(value, attested, sufficiency, witnesses, tuple(reports), tuple(notes))


# ---------------------------------------------------------------------------
# Jet tangent-dimension identity (per-divisor assembly check)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JetIdentityReport:
    label: str
    m: int
    kj_plus_1: int
    fiber_dim: int
    closure_dim: int
    rhs: int
    passed: bool
    note: str
    closure_crosscheck: int | None = None


def jet_dimension_identity_check(
    chart: DivisorChart,
    I_X: Ideal,
    n: int,
    m: int,
    seed: int = 0,
    closure_crosscheck: bool = False,
    **limits,
) -> JetIdentityReport:
    """Assemble kj+1 = 2n(m+1) - [fiber + closure] at the sampled generic
    contact jet of the divisor.

    The fiber dimension comes from the Smith-form tangent computation at
    sampled contact arcs; the closure dimension n(m+1)-(km+1) reuses the
    chart-computed Mather discrepancy, so the check certifies consistency
    of the two routes rather than an independent closure measurement
    (enable closure_crosscheck for a direct, expensive elimination).
    """
    rep = jacobian_discrepancy(chart, I_X, n, seed=seed)
    if m < 2 * rep.ord_jx:
        raise ValidationError(
            f"m={m} below the threshold 2*ord(jX)={2 * rep.ord_jx} for chart {chart.label}"
        )
    param_count = chart.chart_dim - 1
    if param_count == 0:
        fibers = [tangent_space_dim(I_X, contact_arc_from_chart(chart, (), m))]
    else:
        fibers = [
            tangent_space_dim(I_X, contact_arc_from_chart(chart, params, m))
            for params in draw_param_sets(param_count, seed)
        ]
    fiber = generic_value(fibers, f"tangent dimension at contact arcs of {chart.label}")
    closure = n * (m + 1) - (rep.km + 1)
    rhs = 2 * n * (m + 1) - (fiber + closure)
    note = (
        "closure dimension derived from the chart Mather discrepancy; the check "
        "certifies consistency of the fiber formula with the chart-computed km and kj"
    )
    crosscheck = None
    if closure_crosscheck:
        crosscheck = contact_locus_dimension(chart, m, **limits)
    return JetIdentityReport(
        chart.label, m, rep.kj + 1, fiber, closure, rhs, rhs == rep.kj + 1, note, crosscheck
    )


def contact_locus_dimension(chart: DivisorChart, m: int, **limits) -> int:
    """Dimension of the truncated contact-one locus of the chart divisor,
    computed directly by elimination on jet coordinates.

    Arcs on the chart domain with contact order exactly one are
    parametrized, pushed through the chart map, and the parameters are
    eliminated (with a localization variable enforcing a unit first
    coefficient).  Only practical for very small m.
    """
    n, N = chart.chart_dim, chart.ambient_dim
    base = chart.ring
    # Parameter names: divisor coefficients a1..am, others c_{j,l}, inverse w.
    param_names: list[str] = [f"_a{l}" for l in range(1, m + 1)]
    for j in range(n):
        if j == chart.divisor_index:
            continue
        param_names += [f"_c{j}_{l}" for l in range(m + 1)]
    param_names.append("_w")
    amb = jet_ring(PolyRing([f"_x{i}" for i in range(N)]), m)
    names = tuple(param_names) + amb.names
    big = PolyRing(names)
    P = len(param_names)

    def param_var(name: str) -> Poly:
        return big.var(param_names.index(name))

    # Chart-domain components as polynomial series in the parameters.
    comps: list[list[Poly]] = []
    for j in range(n):
        if j == chart.divisor_index:
            coeffs = [big.zero()]
            coeffs += [param_var(f"_a{l}") for l in range(1, m + 1)]
        else:
            coeffs = [param_var(f"_c{j}_{l}") for l in range(m + 1)]
        comps.append(coeffs)
    gens: list[Poly] = []
    for i, g in enumerate(chart.map_polys):
        expansion = polyseries_expand(g, comps, big)
        for l in range(m + 1):
            jet_var = big.var(P + i * (m + 1) + l)
            gens.append(jet_var - expansion[l])
    if m >= 1:
        gens.append(param_var("_w") * param_var("_a1") - big.one())
    image = eliminate(Ideal(big, gens), P, **limits)
    return ideal_dimension(image, **limits)


# ---------------------------------------------------------------------------
# Monomial valuations and the inversion-of-adjunction harness
# ---------------------------------------------------------------------------


def monomial_log_discrepancy(w: MonomialValuation, A: RIdeal) -> Fraction:
    """Log discrepancy of the monomial valuation against the product:
    sum of weights minus the weighted orders of the factors."""
    total = Fraction(sum(w.weights))
    for f in A.factors:
        o = w.order_of_ideal(f.ideal)
        if is_infinite(o):
            raise ValidationError("monomial valuation applied to the zero ideal")
        total -= f.exponent * o
    return total


@dataclass(frozen=True)
class InvAdjReport:
    jmld_value: object
    mld_value: object
    consistent: bool
    jmld_sufficiency: str
    mld_witnesses: tuple[str, ...]
    note: str


def inv_adjunction_check(
    I_X: Ideal,
    n: int,
    e: int,
    charts: Sequence[DivisorChart],
    weights: Sequence[MonomialValuation],
    A_ambient: RIdeal,
    T: Ideal,
    attested: bool = False,
    seed: int = 0,
) -> InvAdjReport:
    """Compare the chart-side minimal log discrepancy of (X, A|X) at T with
    the ambient monomial-valuation side for (ambient, A * I_X^e).

    Both sides run over finite witness lists, so this is a necessary-
    condition cross-check: each side individually is an upper bound.
    """
    if n < 2:
        raise ValidationError("n < 2: dimension-one inputs are outside this check")
    if not A_ambient.is_effective():
        raise ValidationError("the ambient product must be effective")
    jmld_res = jmld_over_charts(charts, I_X, n, A_ambient, T, attested=attested, seed=seed)
    ambient_product = A_ambient * RIdeal.single(I_X, e) if e > 0 else A_ambient
    mld_candidates = []
    for w in weights:
        if not all(g.constant_coeff() == 0 for g in T.generators):
            continue  # the valuation is centered at the origin only
        mld_candidates.append((monomial_log_discrepancy(w, ambient_product), w))
    if not mld_candidates:
        raise ValidationError("no monomial valuation is centered inside the target set")
    mld_value = min(v for v, _ in mld_candidates)
    witnesses = tuple(
        "w(" + ",".join(str(x) for x in w.weights) + ")"
        for v, w in mld_candidates
        if v == mld_value
    )
    consistent = jmld_res.value == mld_value
    return InvAdjReport(
        jmld_res.value,
        mld_value,
        consistent,
        jmld_res.sufficiency,
        witnesses,
        "necessary-condition cross-check: finite witness lists bound both sides from above",
    )


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationVerdict:
    j_canonical: bool | None
    log_j_canonical: bool | None
    pair_j_canonical: bool | None
    pair_log_j_canonical: bool | None
    implications: tuple[str, ...]
    sufficiency: str
    reports: tuple[DiscrepancyReport, ...]
    defect_orders: tuple[int, ...] | None
    notes: tuple[str, ...]


def classify_singularity(
    I_X: Ideal,
    n: int,
    charts: Sequence[DivisorChart],
    defect_ideals: Sequence[Ideal] = (),
    attested: bool = False,
    seed: int = 0,
) -> ClassificationVerdict:
    """Emit canonicity verdicts from per-chart discrepancies.

    The defect ideals are the caller's list of residual-intersection ideals;
    the order of their sum along each divisor is the minimum of the
    per-ideal orders.
    """
    reports = [jacobian_discrepancy(c, I_X, n, seed=seed) for c in charts]
    exceptional = [r for r, c in zip(reports, charts) if c.exceptional]
    notes: list[str] = []

    defect_orders: tuple[int, ...] | None = None
    if defect_ideals:
        per_chart = []
        for chart in charts:
            orders = [ideal_order_along_chart(d, chart) for d in defect_ideals]
            if any(is_infinite(o) for o in orders):
                raise ValidationError("a defect ideal vanishes along a chart divisor")
            per_chart.append(min(orders))
        defect_orders = tuple(per_chart)
        notes.append(
            "defect orders from the supplied list are upper bounds for the full sum"
        )

    j_canonical = all(r.kj + 1 >= 1 for r in exceptional)
    if not exceptional:
        notes.append("no exceptional charts declared; the exceptional-side verdicts are vacuous")
    log_j_canonical = all(r.kj + 1 >= 0 for r in reports) if reports else None

    pair_j = None
    pair_log_j = None
    if defect_orders is not None:
        paired = [
            (r, o, c.exceptional)
            for r, o, c in zip(reports, defect_orders, charts)
        ]
        pair_j = all(r.kj + 1 + o >= 1 for r, o, exc in paired if exc)
        pair_log_j = all(r.kj + 1 + o >= 0 for r, o, _ in paired)

    implications: list[str] = []
    if j_canonical and exceptional:
        implications.append("J-canonical => rational singularities")
    if log_j_canonical:
        implications.append("log J-canonical => Du Bois singularities")
    if pair_j is not None:
        implications.append(
            "pair with inverted defect J-canonical <=> pushforward of the resolution "
            "dualizing sheaf equals the dualizing sheaf"
        )
        implications.append(
            "pair log J-canonical <=> the same with the reduced exceptional divisor added"
        )
        implications.append(
            "converse directions (from rational / Du Bois back to the pair verdicts) "
            "require Cohen-Macaulay"
        )

    sufficiency = (
        "exact (attested log resolution)" if attested else "necessary conditions only"
    )
    return ClassificationVerdict(
        j_canonical if exceptional or attested else None,
        log_j_canonical,
        pair_j,
        pair_log_j,
        tuple(implications),
        sufficiency,
        tuple(reports),
        defect_orders,
        tuple(notes),
    )
