"""Exact rational scalar, polynomial, power-series and matrix arithmetic.

Everything in the package computes over the rationals with arbitrary
precision; there is no floating point anywhere.  Scalars are
fractions.Fraction (re-exported as Rational).  Univariate polynomials and
truncated power series use dense representations; ternary forms use a sparse
exponent map.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import kernels

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rational_from_string(s: str) -> Fraction:
    """Parse "num/den" (den omitted when 1) into a Fraction."""
    return Fraction(s.strip())


def rational_to_string(q: Fraction) -> str:
    """Format a Fraction as "num/den", dropping the unit denominator."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Univariate polynomials


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial over the rationals; index = exponent."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs) -> "UniPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs))

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly.make([c])

    @staticmethod
    def x_power(n: int, c=1) -> "UniPoly":
        return UniPoly.make([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly.make(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return UniPoly.make(out)

    def scale(self, c) -> "UniPoly":
        c = Fraction(c)
        if c == 0:
            return UniPoly.zero()
        return UniPoly(tuple(a * c for a in self.coeffs))

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly.make([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.leading
        return UniPoly(tuple(c / lc for c in self.coeffs))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(), self
        quo = [ZERO] * (dq + 1)
        lc = other.leading
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if top == 0:
                continue
            q = top / lc
            quo[k] = q
            for j, c in enumerate(other.coeffs):
                rem[k + j] -= q * c
        return UniPoly.make(quo), UniPoly.make(rem)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient; None for zero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def primitive_int_coeffs(self) -> list[int]:
        """Integer coefficient list of the primitive associate (positive lead)."""
        if self.is_zero:
            return []
        ints = kernels.clear_row_denominators(list(self.coeffs))
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]


# ---------------------------------------------------------------------------
# Integer polynomial helpers (fraction-controlled gcd machinery)


def _int_content(c: list[int]) -> int:
    g = 0
    for v in c:
        g = gcd(g, v)
    return g


def _int_primitive(c: list[int]) -> list[int]:
    g = _int_content(c)
    if g == 0:
        return []
    if c[-1] < 0:
        g = -g
    return [v // g for v in c]


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (dense, trimmed)."""
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(rem) - 1 >= db and rem:
        top = rem[-1]
        k = len(rem) - 1 - db
        rem = [lb * c for c in rem]
        for j in range(db + 1):
            rem[k + j] -= top * b[j]
        del rem[-1]
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def univariate_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd via a primitive pseudo-remainder sequence over the integers.

    Coefficient growth is controlled by reducing every remainder to its
    primitive part, so no rational arithmetic happens inside the loop.
    """
    if f.is_zero and g.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    a = _int_primitive(f.primitive_int_coeffs())
    b = _int_primitive(g.primitive_int_coeffs())
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_primitive(_int_pseudo_rem(a, b))
        a, b = b, r
    return UniPoly.make(a).monic()


def squarefree_part(f: UniPoly) -> UniPoly:
    """f / gcd(f, f'), normalized monic."""
    if f.is_zero:
        raise ValueError("squarefree part of the zero polynomial is undefined")
    if f.degree == 0:
        return UniPoly.constant(1)
    g = univariate_gcd(f, f.derivative())
    quo, rem = f.divmod(g)
    if not rem.is_zero:
        raise ArithmeticError("gcd does not divide its argument")
    return quo.monic()


# ---------------------------------------------------------------------------
# Resultants


def _det_fractions(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant of a Fraction matrix via row scaling + Bareiss."""
    scale = ONE
    int_rows = []
    for row in rows:
        mult = 1
        for q in row:
            d = q.denominator
            mult = mult // gcd(mult, d) * d
        scale *= mult
        int_rows.append([int(q * mult) for q in row])
    return Fraction(kernels.det_int(int_rows)) / scale


def _sylvester_rows(f: list, g: list) -> list[list]:
    """Sylvester matrix rows for dense coefficient lists (ascending order)."""
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    rows = []
    fd = list(reversed(f))
    gd = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - i - n - 1))
    return rows


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Sylvester resultant of two rational univariate polynomials."""
    if f.is_zero and g.is_zero:
        raise ValueError("resultant(0, 0) is undefined")
    if f.is_zero or g.is_zero:
        return ZERO
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    rows = _sylvester_rows(list(f.coeffs), list(g.coeffs))
    return _det_fractions(rows)


def resultant_int(f: list[int], g: list[int]) -> int:
    """Resultant of integer coefficient lists (ascending, trimmed, nonzero)."""
    if len(f) == 1:
        return f[0] ** (len(g) - 1)
    if len(g) == 1:
        return g[0] ** (len(f) - 1)
    return kernels.det_int(_sylvester_rows(f, g))


def interpolate(points: list[tuple[Fraction, Fraction]]) -> UniPoly:
    """Newton interpolation through distinct rational points."""
    n = len(points)
    xs = [Fraction(x) for x, _ in points]
    coefs = [Fraction(y) for _, y in points]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly.zero()
    for j in range(n - 1, -1, -1):
        poly = poly * UniPoly.make([-xs[j], 1]) + UniPoly.constant(coefs[j])
    return poly


def resultant_in_parameter(
    f: list[UniPoly], g: list[UniPoly], degree_bound: int
) -> UniPoly:
    """Resultant of two polynomials whose coefficients carry one parameter.

    f and g are coefficient lists in the main variable (ascending); each entry
    is a UniPoly in the parameter.  Computed by specializing the parameter at
    integer points and interpolating.  Sample points where either leading
    coefficient vanishes are skipped, which keeps specialization sound.
    """
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    lead_f, lead_g = f[-1], g[-1]
    if lead_f.is_zero or lead_g.is_zero:
        raise ValueError("leading coefficients must be nonzero")
    samples = []
    t = 0
    while len(samples) < degree_bound + 1:
        tq = Fraction(t)
        if lead_f.evaluate(tq) != 0 and lead_g.evaluate(tq) != 0:
            fv = [c.evaluate(tq) for c in f]
            gv = [c.evaluate(tq) for c in g]
            val = resultant(UniPoly.make(fv), UniPoly.make(gv))
            samples.append((tq, val))
        t += 1
        if t > degree_bound + 2 * (len(f) + len(g)) + 4:
            raise ArithmeticError("could not find enough good sample points")
    return interpolate(samples)


# ---------------------------------------------------------------------------
# Ternary forms


class TernaryForm:
    """Homogeneous polynomial in (x, y, z) with sparse rational coefficients.

    coeffs maps exponent triples (i, j, k) with i + j + k == degree to nonzero
    Fractions; the zero form has an empty map.  Instances are treated as
    immutable values and never mutated after construction.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict):
        self.degree = degree
        self.coeffs = coeffs

    def __repr__(self) -> str:
        parts = [
            f"{rational_to_string(c)}*x^{i}y^{j}z^{k}"
            for (i, j, k), c in self.terms_sorted()
        ]
        return f"TernaryForm({self.degree}: {' + '.join(parts) or '0'})"

    @staticmethod
    def make(degree: int, terms: dict) -> "TernaryForm":
        clean = {}
        for (i, j, k), c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            if i < 0 or j < 0 or k < 0 or i + j + k != degree:
                raise ValueError(f"exponent triple {(i, j, k)} has degree != {degree}")
            clean[(i, j, k)] = c
        return TernaryForm(degree, clean)

    @staticmethod
    def zero(degree: int) -> "TernaryForm":
        return TernaryForm(degree, {})

    @staticmethod
    def line(a, b, c) -> "TernaryForm":
        return TernaryForm.make(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def terms_sorted(self):
        return sorted(self.coeffs.items(), key=lambda t: t[0], reverse=True)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TernaryForm)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return TernaryForm.make(self.degree, out)

    def __neg__(self) -> "TernaryForm":
        return TernaryForm(self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def __mul__(self, other: "TernaryForm") -> "TernaryForm":
        out: dict = {}
        for (i1, j1, k1), c1 in self.coeffs.items():
            for (i2, j2, k2), c2 in other.coeffs.items():
                e = (i1 + i2, j1 + j2, k1 + k2)
                out[e] = out.get(e, ZERO) + c1 * c2
        return TernaryForm.make(self.degree + other.degree, out)

    def scale(self, c) -> "TernaryForm":
        c = Fraction(c)
        if c == 0:
            return TernaryForm.zero(self.degree)
        return TernaryForm(self.degree, {e: a * c for e, a in self.coeffs.items()})

    def power(self, n: int) -> "TernaryForm":
        if n < 0:
            raise ValueError("negative power")
        result = TernaryForm.make(0, {(0, 0, 0): 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def evaluate(self, x, y, z) -> Fraction:
        x, y, z = Fraction(x), Fraction(y), Fraction(z)
        acc = ZERO
        for (i, j, k), c in self.coeffs.items():
            acc += c * x**i * y**j * z**k
        return acc

    def partial(self, var: int) -> "TernaryForm":
        """Partial derivative; var indexes (x, y, z) as 0, 1, 2."""
        out = {}
        for e, c in self.coeffs.items():
            n = e[var]
            if n == 0:
                continue
            ne = list(e)
            ne[var] = n - 1
            out[tuple(ne)] = c * n
        return TernaryForm.make(max(self.degree - 1, 0), out)

    def primitive(self) -> "TernaryForm":
        """Scale to integer coefficients with content 1 and positive lead."""
        if self.is_zero:
            return self
        items = self.terms_sorted()
        ints = kernels.clear_row_denominators([c for _, c in items])
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[0] < 0:
            g = -g
        return TernaryForm(
            self.degree, {e: Fraction(v // g) for (e, _), v in zip(items, ints)}
        )

    def proportional_to(self, other: "TernaryForm") -> bool:
        if self.degree != other.degree:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.primitive() == other.primitive()

    def divide_by_linear(self, line: "TernaryForm") -> "TernaryForm | None":
        """Exact division by a degree-1 form; None when not divisible.

        Synthetic division in the variable where the line has a nonzero
        coefficient; the remainder is the substitution of the line's zero
        locus, so divisibility is decided exactly.
        """
        if line.degree != 1 or line.is_zero:
            raise ValueError("divisor must be a nonzero linear form")
        if self.is_zero:
            return TernaryForm.zero(self.degree - 1)
        var = max(range(3), key=lambda v: 1 if line.coeffs.get(_unit(v, 1)) else 0)
        lead = line.coeffs.get(_unit(var, 1))
        if not lead:
            return None
        rest = {e: c for e, c in line.coeffs.items() if e != _unit(var, 1)}
        # Treat self as a polynomial in the chosen variable.
        layers: dict[int, dict] = {}
        for e, c in self.coeffs.items():
            n = e[var]
            le = list(e)
            le[var] = 0
            layers.setdefault(n, {})[tuple(le)] = c
        quot_layers: dict[int, dict] = {}
        for n in range(self.degree, 0, -1):
            top = layers.pop(n, None)
            if not top:
                continue
            q = {e: c / lead for e, c in top.items()}
            quot_layers[n - 1] = q
            dest = layers.setdefault(n - 1, {})
            for e, c in q.items():
                for re, rc in rest.items():
                    ne = tuple(a + b for a, b in zip(e, re))
                    dest[ne] = dest.get(ne, ZERO) - c * rc
            layers[n - 1] = {e: c for e, c in dest.items() if c != 0}
        remainder = layers.get(0, {})
        if any(c != 0 for c in remainder.values()):
            return None
        out = {}
        for n, layer in quot_layers.items():
            for e, c in layer.items():
                le = list(e)
                le[var] = n
                out[tuple(le)] = c
        return TernaryForm.make(self.degree - 1, out)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"i": i, "j": j, "k": k, "c": rational_to_string(c)}
                for (i, j, k), c in self.terms_sorted()
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "TernaryForm":
        terms = {
            (t["i"], t["j"], t["k"]): rational_from_string(t["c"])
            for t in obj["terms"]
        }
        return TernaryForm.make(obj["degree"], terms)


def _unit(var: int, n: int) -> tuple[int, int, int]:
    e = [0, 0, 0]
    e[var] = n
    return tuple(e)


def monomial_exponents(degree: int) -> list[tuple[int, int, int]]:
    """All exponent triples of a given total degree, in a fixed order."""
    return [
        (i, j, degree - i - j)
        for i in range(degree, -1, -1)
        for j in range(degree - i, -1, -1)
    ]


# ---------------------------------------------------------------------------
# Truncated power series


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known modulo t**order; coeffs has exactly `order` entries."""

    order: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(order: int, coeffs) -> "TruncatedSeries":
        cs = [Fraction(c) for c in coeffs[:order]]
        cs += [ZERO] * (order - len(cs))
        return TruncatedSeries(order, tuple(cs))

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, (ZERO,) * order)

    @staticmethod
    def identity(order: int) -> "TruncatedSeries":
        """The series t."""
        return TruncatedSeries.make(order, [0, 1])

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError("series truncation orders differ")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = self.order
        out = [ZERO] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(n, tuple(out))

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(self.order, tuple(a * c for a in self.coeffs))

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient; None when zero mod t**order."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a unit (nonzero constant term)."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = self.order
        out = [ZERO] * n
        out[0] = 1 / a0
        for k in range(1, n):
            s = ZERO
            for i in range(1, k + 1):
                ai = self.coeffs[i]
                if ai:
                    s += ai * out[k - i]
            out[k] = -s / a0
        return TruncatedSeries(n, tuple(out))


# ---------------------------------------------------------------------------
# Exact matrices


@dataclass(frozen=True)
class ExactMatrix:
    """Dense rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    @staticmethod
    def from_rows(rows) -> "ExactMatrix":
        data = [list(map(Fraction, r)) for r in rows]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return ExactMatrix(nrows, ncols, tuple(c for r in data for c in r))

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[self.entries[i * self.cols + j] for i in range(self.rows)]
             for j in range(self.cols)]
        )


def exact_rank(m: ExactMatrix) -> int:
    """Rank over the rationals, computed exactly."""
    int_rows = [kernels.clear_row_denominators(m.row(i)) for i in range(m.rows)]
    return kernels.rank_int(int_rows)


def rank_of_rows(rows: list[list[Fraction]]) -> int:
    """Rank of a list of Fraction rows (convenience wrapper)."""
    return kernels.rank_int([kernels.clear_row_denominators(r) for r in rows])
