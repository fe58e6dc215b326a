"""Buchberger engine: reduced bases, membership, intersections, colon ideals,
elimination, and Krull dimension.

The engine uses the two standard pair-discarding criteria (coprime leading
monomials and the chain criterion) and normal selection.  Configurable
safeguards bound the total degree of any reduced S-polynomial (default 40)
and the size of the pair queue (default 100000); exceeding either raises a
clean ResourceLimitError, never a silent truncation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

from .errors import ResourceLimitError, RingMismatchError, ValidationError
from .poly import (
    Exponent,
    Ideal,
    Poly,
    PolyRing,
    degrevlex_key,
    poly_divexact,
)

DEFAULT_MAX_DEGREE = 40
DEFAULT_MAX_PAIRS = 100_000


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex, lex, or an elimination block order.

    An elimination order with ``split_index = k`` eliminates the first k
    variables: monomials are compared degrevlex on the first block, ties
    broken degrevlex on the second.
    """

    kind: str  # "degrevlex" | "lex" | "elimination"
    split_index: int = 0

    def key(self, e: Exponent):
        if self.kind == "degrevlex":
            return degrevlex_key(e)
        if self.kind == "lex":
            return e
        k = self.split_index
        return (degrevlex_key(e[:k]), degrevlex_key(e[k:]))

    def validate_for(self, ring: PolyRing) -> None:
        if self.kind == "elimination" and not 0 < self.split_index < ring.num_vars:
            raise ValidationError(
                f"elimination split {self.split_index} invalid for {ring}"
            )


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination_order(split_index: int) -> MonomialOrder:
    return MonomialOrder("elimination", split_index)


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: tuple[Poly, ...]

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(f: Poly, basis: list[Poly], lms: list[Exponent], key) -> Poly:
    """Full normal form of f modulo the listed polynomials."""
    ring = f.ring
    remainder: dict[Exponent, object] = {}
    p = f
    while not p.is_zero():
        lm = p.leading_monomial(key)
        lc = p.terms[lm]
        for g, g_lm in zip(basis, lms):
            if _divides(g_lm, lm):
                shift = tuple(a - b for a, b in zip(lm, g_lm))
                factor = ring.monomial(shift, lc / g.terms[g_lm])
                p = p - factor * g
                break
        else:
            remainder[lm] = lc
            p = p - ring.monomial(lm, lc)
    return Poly(ring, remainder)


def _spoly(f: Poly, g: Poly, key) -> Poly:
    lf, lg = f.leading_monomial(key), g.leading_monomial(key)
    l = _lcm(lf, lg)
    mf = f.ring.monomial(tuple(a - b for a, b in zip(l, lf)), 1 / f.terms[lf])
    mg = f.ring.monomial(tuple(a - b for a, b in zip(l, lg)), 1 / g.terms[lg])
    return mf * f - mg * g


def buchberger(
    I: Ideal,
    order: MonomialOrder = DEGREVLEX,
    max_degree: int = DEFAULT_MAX_DEGREE,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> GroebnerBasis:
    """Reduced Groebner basis of I; deterministic for a given input."""
    order.validate_for(I.ring)
    key = order.key
    basis: list[Poly] = []
    lms: list[Exponent] = []

    def append(f: Poly) -> None:
        if f.total_degree() > max_degree:
            raise ResourceLimitError(
                "max_degree",
                f"basis element degree {f.total_degree()} exceeds max_degree={max_degree}",
            )
        basis.append(f.monic(key))
        lms.append(f.leading_monomial(key))

    for g in I.generators:
        r = _reduce(g, basis, lms, key)
        if not r.is_zero():
            append(r)

    # Pair queue keyed by (lcm order key, i, j): normal selection strategy.
    queue: list[tuple] = []
    pending: set[tuple[int, int]] = set()

    def push_pairs(j: int) -> None:
        for i in range(j):
            pair = (i, j)
            heapq.heappush(queue, (key(_lcm(lms[i], lms[j])), i, j))
            pending.add(pair)
        if len(queue) > max_pairs:
            raise ResourceLimitError(
                "max_pairs", f"S-pair queue exceeds max_pairs={max_pairs}"
            )

    for j in range(len(basis)):
        push_pairs(j)

    while queue:
        _, i, j = heapq.heappop(queue)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        li, lj = lms[i], lms[j]
        l = _lcm(li, lj)
        # Coprime leading monomials: S-polynomial reduces to zero.
        if all(a + b == c for a, b, c in zip(li, lj, l)):
            continue
        # Chain criterion: an already-handled k with lm(k) | lcm(i,j).
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lms[k], l):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        r = _reduce(_spoly(basis[i], basis[j], key), basis, lms, key)
        if not r.is_zero():
            append(r)
            push_pairs(len(basis) - 1)

    reduced = _interreduce(basis, key)
    return GroebnerBasis(I, order, tuple(reduced))


def _interreduce(basis: list[Poly], key) -> list[Poly]:
    # Minimalize: visit by ascending leading monomial, drop anything whose
    # leading monomial is divisible by one already kept.
    lms = [g.leading_monomial(key) for g in basis]
    kept: list[Poly] = []
    kept_lms: list[Exponent] = []
    for idx in sorted(range(len(basis)), key=lambda i: key(lms[i])):
        if not any(_divides(l, lms[idx]) for l in kept_lms):
            kept.append(basis[idx])
            kept_lms.append(lms[idx])
    # Tail-reduce every survivor against the others until stable.
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            rest = kept[:idx] + kept[idx + 1 :]
            rest_lms = [g.leading_monomial(key) for g in rest]
            r = _reduce(kept[idx], rest, rest_lms, key).monic(key)
            if r != kept[idx]:
                if r.is_zero():
                    kept.pop(idx)
                else:
                    kept[idx] = r
                changed = True
                break
    kept.sort(key=lambda g: key(g.leading_monomial(key)), reverse=True)
    return kept


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    if f.ring != G.ring:
        raise RingMismatchError("normal form across rings")
    basis = list(G.basis)
    lms = [g.leading_monomial(G.order.key) for g in basis]
    return _reduce(f, basis, lms, G.order.key)


def ideal_member(f: Poly, I: Ideal, **limits) -> bool:
    """True iff f lies in I."""
    if f.is_zero():
        return True
    G = buchberger(I, DEGREVLEX, **limits)
    return normal_form(f, G).is_zero()


def _fresh_name(ring: PolyRing, stem: str = "_t") -> str:
    name = stem
    while name in ring.names:
        name = "_" + name
    return name


def _lift(f: Poly, ring: PolyRing, offset: int) -> Poly:
    """Embed f into a ring with `offset` extra leading variables."""
    pad = (0,) * offset
    return Poly(ring, {pad + e: c for e, c in f.terms.items()})


def _project(f: Poly, ring: PolyRing, offset: int) -> Poly:
    return Poly(ring, {e[offset:]: c for e, c in f.terms.items()})


def ideal_intersection(I: Ideal, J: Ideal, **limits) -> Ideal:
    """Generators of the intersection via the tag-variable elimination
    t*I + (1-t)*J."""
    if I.ring != J.ring:
        raise RingMismatchError("intersection across rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    ext = PolyRing((_fresh_name(ring),) + ring.names)
    t = ext.var(0)
    gens = [t * _lift(f, ext, 1) for f in I.generators]
    gens += [(ext.one() - t) * _lift(g, ext, 1) for g in J.generators]
    G = buchberger(Ideal(ext, gens), elimination_order(1), **limits)
    kept = [g for g in G.basis if all(e[0] == 0 for e in g.terms)]
    return Ideal(ring, [_project(g, ring, 1) for g in kept])


def colon_ideal(I: Ideal, J: Ideal, **limits) -> Ideal:
    """(I : J), computed generator-wise: (I : g) = (I meet (g)) / g."""
    if I.ring != J.ring:
        raise RingMismatchError("colon across rings")
    if J.is_zero():
        raise ValidationError("colon by zero ideal")
    result: Ideal | None = None
    for g in J.generators:
        meet = ideal_intersection(I, Ideal(I.ring, [g]), **limits)
        colon_g = Ideal(I.ring, [poly_divexact(h, g) for h in meet.generators])
        result = colon_g if result is None else ideal_intersection(result, colon_g, **limits)
    assert result is not None
    return result


def lci_defect(I_X: Ideal, I_V: Ideal, **limits) -> Ideal:
    """Residual-intersection ideal (I_V : I_X) + I_X for V a complete
    intersection containing X (containment is checked; the rest is
    attested by the caller)."""
    if I_X.ring != I_V.ring:
        raise RingMismatchError("defect ideal across rings")
    G_X = buchberger(I_X, DEGREVLEX, **limits)
    for g in I_V.generators:
        if not normal_form(g, G_X).is_zero():
            raise ValidationError("V does not contain X")
    residual = colon_ideal(I_V, I_X, **limits)
    return residual + I_X


def leading_term_ideal(G: GroebnerBasis) -> list[Exponent]:
    return [g.leading_monomial(G.order.key) for g in G.basis]


def ideal_dimension(I: Ideal, **limits) -> int:
    """Krull dimension of V(I); the empty variety has dimension -1.

    Computed as the largest set of variables independent modulo the
    leading-term ideal of a degrevlex basis.
    """
    G = buchberger(I, DEGREVLEX, **limits)
    if any(g.is_constant() and not g.is_zero() for g in G.basis):
        return -1
    n = I.ring.num_vars
    supports = [
        frozenset(i for i, k in enumerate(lm) if k > 0)
        for lm in leading_term_ideal(G)
    ]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = frozenset(subset)
            if not any(supp <= s for supp in supports):
                return size
    return -1


def eliminate(I: Ideal, count: int, **limits) -> Ideal:
    """Intersect I with the subring omitting the first `count` variables."""
    ring = I.ring
    if not 0 < count < ring.num_vars:
        raise ValidationError("elimination count out of range")
    G = buchberger(I, elimination_order(count), **limits)
    small = PolyRing(ring.names[count:])
    kept = [g for g in G.basis if all(all(x == 0 for x in e[:count]) for e in g.terms)]
    return Ideal(small, [_project(g, small, count) for g in kept])
