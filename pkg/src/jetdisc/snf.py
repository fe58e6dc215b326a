"""Smith normal form over Q[t]/(t^(m+1)) and the jet tangent-space
dimension computed from it.

The ring is not a domain, but every entry with finite t-order factors as
unit * t^a, which is all the elimination needs: pivots of minimal order are
normalized by inverting their unit part, and rows/columns are cleared by
exact subtraction.  Entries that vanish modulo t^(m+1) are treated as zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .jets import arc_order_of_ideal, evaluate_arc, verify_arc_on_variety
from .poly import Ideal, jacobian_matrix
from .series import Arc, TruncSeries, is_infinite


class SeriesMatrix:
    """A rows x cols matrix of truncated series sharing one truncation order."""

    __slots__ = ("rows", "cols", "entries", "trunc_order")

    def __init__(self, rows: int, cols: int, entries: Sequence[TruncSeries], trunc_order: int | None = None):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValidationError("entry count does not match matrix shape")
        if entries:
            trunc_order = entries[0].trunc_order
            for s in entries:
                if s.trunc_order != trunc_order:
                    raise ValidationError("matrix entries have mixed truncation orders")
        elif trunc_order is None:
            raise ValidationError("an empty matrix needs an explicit truncation order")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.trunc_order = trunc_order

    def entry(self, i: int, j: int) -> TruncSeries:
        return self.entries[i * self.cols + j]

    def __repr__(self) -> str:
        return f"SeriesMatrix({self.rows}x{self.cols} mod t^{self.trunc_order + 1})"


@dataclass(frozen=True)
class SnfProfile:
    """Diagonal data of a Smith form: finite t-orders plus the count of
    diagonal entries that vanish modulo t^(m+1)."""

    trunc_order: int
    diagonal_orders: tuple[int, ...]
    zero_count: int

    def __post_init__(self):
        if list(self.diagonal_orders) != sorted(self.diagonal_orders):
            raise ValidationError("diagonal orders must be non-decreasing")


def smith_normal_form(M: SeriesMatrix) -> SnfProfile:
    """Profile of the diagonalization by iterated minimal-order pivoting.

    Pivot ties break at the lexicographically least (row, col), which makes
    the run deterministic; the profile itself is basis-independent.
    """
    m = M.trunc_order
    a = [[M.entry(i, j) for j in range(M.cols)] for i in range(M.rows)]
    rows, cols = M.rows, M.cols
    orders: list[int] = []
    k = 0
    while k < min(rows, cols):
        pivot = None
        pivot_order = None
        for i in range(k, rows):
            for j in range(k, cols):
                o = a[i][j].t_order()
                if is_infinite(o):
                    continue
                if pivot_order is None or o < pivot_order:
                    pivot, pivot_order = (i, j), o
        if pivot is None:
            break
        pi, pj = pivot
        a[k], a[pi] = a[pi], a[k]
        for row in a:
            row[k], row[pj] = row[pj], row[k]
        # Normalize the pivot to exactly t^order by its unit part.
        unit_inv = a[k][k].shift_down(pivot_order).invert()
        a[k] = [unit_inv * entry for entry in a[k]]
        t_power = TruncSeries.t(m) ** pivot_order if pivot_order else TruncSeries.constant(m, 1)
        a[k][k] = t_power
        for i in range(k + 1, rows):
            v = a[i][k]
            if v.is_zero():
                continue
            q = v.shift_down(pivot_order)
            a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        for j in range(k + 1, cols):
            v = a[k][j]
            if v.is_zero():
                continue
            q = v.shift_down(pivot_order)
            for i in range(rows):
                a[i][j] = a[i][j] - q * a[i][k]
        orders.append(pivot_order)
        k += 1
    zero_count = min(rows, cols) - len(orders)
    return SnfProfile(m, tuple(sorted(orders)), zero_count)


def kernel_dimension(M: SeriesMatrix) -> int:
    """Q-dimension of the solution space of M w = 0 modulo t^(m+1)."""
    profile = smith_normal_form(M)
    l = len(profile.diagonal_orders)
    return sum(profile.diagonal_orders) + (M.cols - l) * (M.trunc_order + 1)


def evaluate_matrix_at_arc(I: Ideal, arc: Arc) -> SeriesMatrix:
    """The Jacobian of the generators, evaluated entrywise along the arc."""
    J = jacobian_matrix(I)
    entries = [evaluate_arc(p, arc) for p in J.entries]
    return SeriesMatrix(J.rows, J.cols, entries, arc.trunc_order)


def tangent_space_dim(I_X: Ideal, beta: Arc) -> int:
    """Dimension of the tangent space to the jet scheme at the jet beta,
    computed as the kernel dimension of the evaluated Jacobian."""
    if I_X.ring.num_vars != beta.num_components:
        raise ValidationError("arc arity does not match the ambient ring")
    if not verify_arc_on_variety(I_X, beta):
        raise ValidationError("arc not on variety")
    if not I_X.generators:
        return beta.num_components * (beta.trunc_order + 1)
    return kernel_dimension(evaluate_matrix_at_arc(I_X, beta))


def fitting_orders_from_profile(profile: SnfProfile, k: int, N: int):
    """Order of vanishing of the k-th Fitting ideal along the underlying jet.

    With diagonal orders a_1 <= ... <= a_l, the order is
    min(a_1 + ... + a_(N-k), m+1) when N-k <= l, and m+1 otherwise; the
    empty sum (k = N) gives 0.
    """
    size = N - k
    if size < 0:
        raise ValidationError("Fitting index exceeds the column count")
    if size == 0:
        return 0
    l = len(profile.diagonal_orders)
    cap = profile.trunc_order + 1
    if size > l:
        return cap
    return min(sum(profile.diagonal_orders[:size]), cap)


def tangent_dim_crosscheck(I_X: Ideal, dim_X: int, beta: Arc, jX: Ideal) -> dict:
    """Dual-oracle identity: tangent dimension via Smith form versus
    n(m+1) + (order of the Jacobian ideal along the jet) via minors.

    Valid once m is at least the order of the Jacobian ideal along the jet.
    """
    m = beta.trunc_order
    ord_jx = arc_order_of_ideal(jX, beta)
    if is_infinite(ord_jx):
        raise ValidationError("Jacobian ideal vanishes along the arc at this truncation")
    if m < ord_jx:
        raise ValidationError(f"truncation m={m} below the order threshold {ord_jx}")
    snf_side = tangent_space_dim(I_X, beta)
    minors_side = dim_X * (m + 1) + ord_jx
    return {
        "m": m,
        "ord_jx": ord_jx,
        "snf_side": snf_side,
        "minors_side": minors_side,
        "match": snf_side == minors_side,
    }
