"""Membership oracles for Mather and Jacobian multiplier ideals over
attested resolution data.

Membership is decided per divisor: an element belongs iff on every supplied
chart its order plus the Mather discrepancy clears the rounded-down order
of the formal product.  The tool never claims the chart list complete;
attestation strings are echoed into every certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .charts import DivisorChart, RIdeal, ideal_order_along_chart
from .discrepancy import mather_discrepancy
from .errors import ValidationError
from .groebner import DEGREVLEX, buchberger, ideal_member, normal_form
from .poly import Ideal, Poly, render_poly
from .series import is_infinite


def ideal_fingerprint(I: Ideal, **limits) -> str:
    """Canonical, presentation-independent name for an ideal: its reduced
    degrevlex basis, rendered without spaces."""
    G = buchberger(I, DEGREVLEX, **limits)
    gens = [render_poly(g).replace(" ", "") for g in G.basis]
    return "(" + ",".join(gens) + ")" if gens else "(0)"


def rideal_fingerprint(A: RIdeal, **limits) -> str:
    """Exponent-free fingerprint: the sorted factor-ideal fingerprints.

    Exponents and scalings are irrelevant to what a chart set must
    principalize, so they are omitted; unit factors are dropped.
    """
    prints = set()
    for f in A.factors:
        fp = ideal_fingerprint(f.ideal, **limits)
        if fp != "(1)":
            prints.add(fp)
    return "*".join(sorted(prints)) if prints else "(1)"


@dataclass(frozen=True)
class ResolutionData:
    """A variety with its attested dimension and divisor charts, plus the
    fingerprints of the products the user certifies the charts resolve."""

    ideal: Ideal
    dim: int
    charts: tuple[DivisorChart, ...]
    attested_complete_for: tuple[str, ...] = ()
    attestation_note: str = ""

    def is_attested_for(self, A: RIdeal) -> bool:
        return rideal_fingerprint(A) in self.attested_complete_for


@dataclass(frozen=True)
class ChartInequality:
    label: str
    ord_g: object  # int, or None when the numerator class vanishes on pullback
    km: int
    rounded_product_order: int
    satisfied: bool


@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    rows: tuple[ChartInequality, ...]
    first_violation: str | None
    attested: bool
    attestation_note: str
    notes: tuple[str, ...] = ()

    @property
    def sufficiency(self) -> str:
        return "exact (attested)" if self.attested else "necessary conditions only"


def _poly_order_along(g: Poly, chart: DivisorChart):
    return ideal_order_along_chart(Ideal(g.ring, [g]), chart)


def _product_floor(A: RIdeal, chart: DivisorChart) -> int:
    total = A.order_along_chart(chart)
    return math.floor(total)


def mather_multiplier_member(
    g: Poly, A: RIdeal, R: ResolutionData, seed: int = 0
) -> MembershipCertificate:
    """Per-divisor inequalities ord(g) + km - floor(ord(A)) >= 0.

    The floor is applied to the aggregated per-divisor order of the product,
    not factor by factor.
    """
    return fractional_membership(g, g.ring.one(), A, R, seed=seed)


def jacobian_multiplier_member(
    g: Poly, A: RIdeal, R: ResolutionData, seed: int = 0
) -> MembershipCertificate:
    """Jacobian-flavored membership: the Mather test against A twisted by
    the Jacobian ideal of the variety."""
    jX = fitting_jacobian_ideal_cached(R)
    cert = mather_multiplier_member(g, A * RIdeal.single(jX, 1), R, seed=seed)
    return cert


_fitting_cache: dict[tuple, Ideal] = {}


def fitting_jacobian_ideal_cached(R: ResolutionData) -> Ideal:
    from .poly import fitting_jacobian_ideal

    key = (R.ideal, R.dim)
    if key not in _fitting_cache:
        _fitting_cache[key] = fitting_jacobian_ideal(R.ideal, R.dim)
    return _fitting_cache[key]


def fractional_membership(
    g_num: Poly,
    g_den: Poly,
    A: RIdeal,
    R: ResolutionData,
    seed: int = 0,
) -> MembershipCertificate:
    """Membership of the fraction g_num/g_den: the numerator order is
    replaced by ord(g_num) - ord(g_den) in every chart inequality."""
    if g_den.is_zero():
        raise ValidationError("zero denominator")
    if not g_den.is_constant() and ideal_member(g_den, R.ideal):
        raise ValidationError("denominator vanishes on the variety")
    notes: list[str] = []
    num_in_ideal = (not g_num.is_zero()) and ideal_member(g_num, R.ideal)
    if g_num.is_zero() or num_in_ideal:
        notes.append("numerator represents the zero class; trivially a member")
        return MembershipCertificate(
            True, (), None, R.is_attested_for(A), R.attestation_note, tuple(notes)
        )
    rows: list[ChartInequality] = []
    first_violation = None
    member = True
    for chart in R.charts:
        km = mather_discrepancy(chart, R.ideal, R.dim, seed=seed)
        floor_term = _product_floor(A, chart)
        o_num = _poly_order_along(g_num, chart)
        o_den = _poly_order_along(g_den, chart)
        if is_infinite(o_num) or is_infinite(o_den):
            raise ValidationError(
                f"chart {chart.label}: the class pulls back to zero; "
                "orders along the divisor are undefined"
            )
        ord_g = o_num - o_den
        ok = ord_g + km - floor_term >= 0
        rows.append(ChartInequality(chart.label, ord_g, km, floor_term, ok))
        if not ok and first_violation is None:
            first_violation = chart.label
            member = False
    return MembershipCertificate(
        member,
        tuple(rows),
        first_violation,
        R.is_attested_for(A),
        R.attestation_note,
        tuple(notes),
    )


@dataclass(frozen=True)
class ColonCheckRow:
    sample: str
    lhs: bool
    rhs: bool


@dataclass(frozen=True)
class ColonCheckReport:
    rows: tuple[ColonCheckRow, ...]
    agreement: bool


def colon_lemma_check(
    a: Ideal,
    b: Ideal,
    R: ResolutionData,
    samples: Sequence[Poly],
    seed: int = 0,
) -> ColonCheckReport:
    """For each sample g: membership in the membership ideal of a * b^(-1)
    must coincide with (g*h member for every generator h of b)."""
    if b.is_zero():
        raise ValidationError("colon check against the zero ideal")
    A_right = RIdeal.single(a, 1) * RIdeal.single(b, -1)
    A_plain = RIdeal.single(a, 1)
    rows = []
    for g in samples:
        rhs = mather_multiplier_member(g, A_right, R, seed=seed).member
        lhs = all(
            mather_multiplier_member(g * h, A_plain, R, seed=seed).member
            for h in b.generators
        )
        rows.append(ColonCheckRow(render_poly(g), lhs, rhs))
    return ColonCheckReport(tuple(rows), all(r.lhs == r.rhs for r in rows))


@dataclass(frozen=True)
class MonotonicityReport:
    rows: tuple[tuple[str, bool, bool], ...]
    holds: bool


def monotonicity_check(
    A: RIdeal,
    B: RIdeal,
    R: ResolutionData,
    samples: Sequence[Poly],
    seed: int = 0,
) -> MonotonicityReport:
    """With B factorwise contained in A and exponents at least as large,
    membership for B must imply membership for A on every sample."""
    if len(A.factors) != len(B.factors):
        raise ValidationError("factor lists must correspond one to one")
    for fa, fb in zip(A.factors, B.factors):
        if fb.exponent < fa.exponent or fa.exponent < 0:
            raise ValidationError("exponents must satisfy d_k >= c_k >= 0")
        for gen in fb.ideal.generators:
            if not ideal_member(gen, fa.ideal):
                raise ValidationError("containment of factor ideals fails")
    rows = []
    ok = True
    for g in samples:
        in_b = mather_multiplier_member(g, B, R, seed=seed).member
        in_a = mather_multiplier_member(g, A, R, seed=seed).member
        rows.append((render_poly(g), in_b, in_a))
        if in_b and not in_a:
            ok = False
    return MonotonicityReport(tuple(rows), ok)
