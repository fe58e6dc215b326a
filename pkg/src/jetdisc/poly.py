"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are stored as maps from exponent vectors to nonzero ``Fraction``
coefficients.  Everything here is immutable after construction and every
operation is a pure function, so values can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from .errors import ExactDivisionError, RingMismatchError, ValidationError

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def degrevlex_key(e: Exponent) -> tuple:
    """Sort key realizing graded reverse lexicographic comparison.

    ``degrevlex_key(a) > degrevlex_key(b)`` iff the monomial ``a`` is larger.
    """
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Exponent) -> tuple:
    return e


class PolyRing:
    """A polynomial ring over Q, identified by its ordered variable names."""

    __slots__ = ("names",)

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValidationError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate variable names in {names}")
        self.names = names

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c: Scalar) -> Poly:
        c = Fraction(c)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * self.num_vars: c})

    def var(self, i: int) -> Poly:
        if not 0 <= i < self.num_vars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.num_vars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.var(i) for i in range(self.num_vars))

    def monomial(self, exponents: Sequence[int], coeff: Scalar = 1) -> Poly:
        return Poly(self, {tuple(exponents): Fraction(coeff)})

    def poly(self, terms: Mapping[Exponent, Scalar]) -> Poly:
        return Poly(self, {e: Fraction(c) for e, c in terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"


class Poly:
    """A sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Fraction]):
        clean: dict[Exponent, Fraction] = {}
        n = ring.num_vars
        for e, c in terms.items():
            if c == 0:
                continue
            if len(e) != n:
                raise ValidationError(f"exponent vector {e} has wrong arity for {ring}")
            clean[e] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    # -- basic predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_coeff(self) -> Fraction:
        return self.terms.get((0,) * self.ring.num_vars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero()
        prod: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = prod.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    prod.pop(e, None)
                else:
                    prod[e] = s
        return Poly(self.ring, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValidationError("polynomial powers must be non-negative integers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> Poly:
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()})

    # -- calculus and substitution ------------------------------------------

    def derivative(self, var_index: int) -> Poly:
        """Formal partial derivative with respect to the given variable."""
        if not 0 <= var_index < self.ring.num_vars:
            raise IndexError(f"variable index {var_index} out of range")
        terms: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[var_index]
            if k == 0:
                continue
            d = list(e)
            d[var_index] = k - 1
            terms[tuple(d)] = c * k
        return Poly(self.ring, terms)

    def substitute(self, images: Sequence[Poly], ring: PolyRing | None = None) -> Poly:
        """Evaluate at ``x_i = images[i]``; the images fix the target ring."""
        if len(images) != self.ring.num_vars:
            raise ValidationError(
                f"expected {self.ring.num_vars} images, got {len(images)}"
            )
        if ring is None:
            ring = images[0].ring if images else self.ring
        for g in images:
            if g.ring != ring:
                raise RingMismatchError("substitution images live in different rings")
        powers: list[dict[int, Poly]] = [dict() for _ in images]
        result = ring.zero()
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                cache = powers[i]
                if k not in cache:
                    cache[k] = images[i] ** k
                term = term * cache[k]
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Evaluate at a rational point."""
        if len(point) != self.ring.num_vars:
            raise ValidationError("point has wrong arity")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(vals, e):
                if k:
                    v *= x ** k
            total += v
        return total

    # -- leading data ------------------------------------------------------

    def leading_monomial(self, key=degrevlex_key) -> Exponent:
        if not self.terms:
            raise ValidationError("zero polynomial has no leading monomial")
        return max(self.terms, key=key)

    def leading_coeff(self, key=degrevlex_key) -> Fraction:
        return self.terms[self.leading_monomial(key)]

    def monic(self, key=degrevlex_key) -> Poly:
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coeff(key))

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Poly({render_poly(self)})"


def render_poly(f: Poly) -> str:
    """Canonical text rendering: terms in descending lex order, `c*x^a*y^b`."""
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for e in sorted(f.terms, key=lex_key, reverse=True):
        c = f.terms[e]
        factors = [
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(f.ring.names, e)
            if k > 0
        ]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def poly_divexact(f: Poly, g: Poly) -> Poly:
    """Exact division f / g; raises ExactDivisionError on a remainder."""
    if g.is_zero():
        raise ExactDivisionError("division by the zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("exact division across rings")
    ring = f.ring
    q = ring.zero()
    r = f
    g_lm = g.leading_monomial()
    g_lc = g.terms[g_lm]
    while not r.is_zero():
        lm = r.leading_monomial()
        diff = tuple(a - b for a, b in zip(lm, g_lm))
        if any(d < 0 for d in diff):
            raise ExactDivisionError(f"({f}) is not divisible by ({g})")
        t = ring.monomial(diff, r.terms[lm] / g_lc)
        q = q + t
        r = r - t * g
    return q


class Ideal:
    """A finite list of polynomial generators (zero generators removed)."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring: PolyRing, generators: Iterable[Poly]):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("ideal generators in mixed rings")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def is_zero(self) -> bool:
        return not self.generators

    def contains_unit_generator(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError("ideal sum across rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.generators))

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(render_poly(g) for g in self.generators) + ")"


def ideal(*gens: Poly) -> Ideal:
    if not gens:
        raise ValidationError("ideal() needs at least one generator to infer the ring")
    return Ideal(gens[0].ring, gens)


class PolyMatrix:
    """A rows x cols matrix of polynomials in one ring (row-major entries)."""

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows: int, cols: int, entries: Sequence[Poly], ring: PolyRing | None = None):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValidationError("entry count does not match matrix shape")
        if entries:
            ring = entries[0].ring
            for p in entries:
                if p.ring != ring:
                    raise RingMismatchError("matrix entries in mixed rings")
        elif ring is None:
            raise ValidationError("an empty matrix needs an explicit ring")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.ring = ring

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        ents = [self.entry(i, j) for i in row_idx for j in col_idx]
        return PolyMatrix(len(row_idx), len(col_idx), ents, self.ring)

    def det(self) -> Poly:
        if self.rows != self.cols:
            raise ValidationError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.ring.one()
        if n < 4:
            return _det_cofactor(self)
        return _det_bareiss(self)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


def _det_cofactor(m: PolyMatrix) -> Poly:
    n = m.rows
    if n == 1:
        return m.entry(0, 0)
    if n == 2:
        return m.entry(0, 0) * m.entry(1, 1) - m.entry(0, 1) * m.entry(1, 0)
    total = m.ring.zero()
    cols = list(range(n))
    for j in range(n):
        minor = m.submatrix(range(1, n), [c for c in cols if c != j])
        term = m.entry(0, j) * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(m: PolyMatrix) -> Poly:
    """Fraction-free Bareiss elimination; divisions are exact in the ring."""
    n = m.rows
    a = [[m.entry(i, j) for j in range(n)] for i in range(n)]
    ring = m.ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot_row is None:
                return ring.zero()
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = poly_divexact(num, prev)
            a[i][k] = ring.zero()
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def jacobian_matrix(I: Ideal) -> PolyMatrix:
    """The r x N matrix of partial derivatives of the generators."""
    ring = I.ring
    n = ring.num_vars
    entries = [g.derivative(j) for g in I.generators for j in range(n)]
    return PolyMatrix(len(I.generators), n, entries, ring)


def minors(M: PolyMatrix, k: int) -> Ideal:
    """The ideal of all k x k minors of M.

    k = 0 yields the unit ideal and k > min(rows, cols) yields the zero
    ideal; both are legitimate values, reported as such by callers.
    """
    if k < 0:
        raise ValidationError("minor size must be non-negative")
    if k == 0:
        return Ideal(M.ring, [M.ring.one()])
    if k > min(M.rows, M.cols):
        return Ideal(M.ring, [])
    gens = []
    for rows in combinations(range(M.rows), k):
        for cols in combinations(range(M.cols), k):
            gens.append(M.submatrix(rows, cols).det())
    return Ideal(M.ring, gens)


def fitting_jacobian_ideal(I_X: Ideal, dim_X: int) -> Ideal:
    """Ideal of e x e minors of the Jacobian of the generators, e = N - dim.

    The attested dimension is trusted.  A vanishing result is an error: the
    presentation then fails to exhibit the expected nonzero minor ideal.
    """
    n_ambient = I_X.ring.num_vars
    e = n_ambient - dim_X
    if e < 0:
        raise ValidationError(
            f"attested dimension {dim_X} exceeds the ambient dimension {n_ambient}"
        )
    result = minors(jacobian_matrix(I_X), e)
    if e > 0 and result.is_zero():
        raise ValidationError("presentation gives vanishing Fitting ideal")
    return result
