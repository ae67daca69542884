"""Local geometry of plane curves over the rationals.

Node certification, tangent lines, branch parametrizations at smooth points,
intersection multiplicities via series valuations, inflection orders, and a
resultant-based audit of the whole singular locus.  All computations are
exact; probabilistic steps (random coordinate changes) are seeded and
recorded for replay.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import kernels
from .exactmath import (
    ONE,
    ZERO,
    TernaryForm,
    TruncatedSeries,
    UniPoly,
    interpolate,
    rational_from_string,
    rational_to_string,
    resultant_int,
    squarefree_part,
    univariate_gcd,
)

MAX_SERIES_ORDER = 512
AUDIT_ATTEMPTS = 8


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of the projective plane, normalized so the last nonzero
    coordinate equals 1."""

    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        coords = (self.x, self.y, self.z)
        if all(c == 0 for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        last = next(c for c in reversed(coords) if c != 0)
        if last != 1:
            raise ValueError("point is not normalized; use ProjectivePoint.of")

    @staticmethod
    def of(x, y, z) -> "ProjectivePoint":
        coords = [Fraction(x), Fraction(y), Fraction(z)]
        nz = [i for i, c in enumerate(coords) if c != 0]
        if not nz:
            raise ValueError("projective point needs a nonzero coordinate")
        last = coords[nz[-1]]
        return ProjectivePoint(*(c / last for c in coords))

    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def chart(self) -> int:
        """Index (0=x, 1=y, 2=z) of the normalized unit coordinate."""
        coords = self.coords()
        for i in (2, 1, 0):
            if coords[i] != 0:
                return i
        raise AssertionError("unreachable for a valid point")

    def affine(self) -> tuple[Fraction, Fraction]:
        """The two non-chart coordinates, in (x, y, z) order."""
        i = self.chart()
        coords = self.coords()
        rest = [coords[j] for j in range(3) if j != i]
        return rest[0], rest[1]

    def to_json(self) -> list[str]:
        return [rational_to_string(c) for c in self.coords()]

    @staticmethod
    def from_json(obj) -> "ProjectivePoint":
        return ProjectivePoint.of(*(rational_from_string(s) for s in obj))


def join_line(p: ProjectivePoint, q: ProjectivePoint) -> TernaryForm:
    """The line through two distinct points (cross product of coordinates)."""
    if p == q:
        raise ValueError("points coincide")
    (x1, y1, z1), (x2, y2, z2) = p.coords(), q.coords()
    return TernaryForm.make(
        1,
        {
            (1, 0, 0): y1 * z2 - z1 * y2,
            (0, 1, 0): z1 * x2 - x1 * z2,
            (0, 0, 1): x1 * y2 - y1 * x2,
        },
    ).primitive()


def collinear(points) -> bool:
    """Exact test: do all the points lie on one line?"""
    pts = list(points)
    if len(pts) <= 2:
        return True
    rows = [list(p.coords()) for p in pts]
    return kernels.rank_int([kernels.clear_row_denominators(r) for r in rows]) <= 2


@dataclass(frozen=True)
class PlaneCurve:
    """Plane curve cut out by a nonzero ternary form."""

    form: TernaryForm

    def __post_init__(self):
        if self.form.is_zero:
            raise ValueError("curve form must be nonzero")
        if self.form.degree < 1:
            raise ValueError("curve degree must be positive")

    @property
    def degree(self) -> int:
        return self.form.degree

    def to_json(self) -> dict:
        return self.form.to_json()

    @staticmethod
    def from_json(obj) -> "PlaneCurve":
        return PlaneCurve(TernaryForm.from_json(obj))


@dataclass(frozen=True)
class AtLeast:
    """Lower bound returned when a valuation exceeds the truncation order."""

    bound: int


# ---------------------------------------------------------------------------
# Bivariate polynomial helpers (dict {(i, j): Fraction} in chart coordinates)


def _dehomogenize(form: TernaryForm, chart: int) -> dict:
    out: dict = {}
    for (i, j, k), c in form.coeffs.items():
        exps = (i, j, k)
        key = tuple(exps[v] for v in range(3) if v != chart)
        out[key] = out.get(key, ZERO) + c
    return {e: c for e, c in out.items() if c != 0}


def _bp_shift(bp: dict, x0: Fraction, y0: Fraction) -> dict:
    """f(x0 + X, y0 + Y) by binomial expansion."""
    out: dict = {}
    for (i, j), c in bp.items():
        for a in range(i + 1):
            xa = comb(i, a) * x0 ** (i - a)
            if xa == 0:
                continue
            for b in range(j + 1):
                coeff = c * xa * comb(j, b) * y0 ** (j - b)
                if coeff:
                    key = (a, b)
                    out[key] = out.get(key, ZERO) + coeff
    return {e: c for e, c in out.items() if c != 0}


def _bp_linear_sub(bp: dict, a00, a01, a10, a11) -> dict:
    """f(a00*u + a01*v, a10*u + a11*v)."""
    max_i = max((e[0] for e in bp), default=0)
    max_j = max((e[1] for e in bp), default=0)
    lin1 = {(1, 0): Fraction(a00), (0, 1): Fraction(a01)}
    lin2 = {(1, 0): Fraction(a10), (0, 1): Fraction(a11)}
    pows1 = _power_table(lin1, max_i)
    pows2 = _power_table(lin2, max_j)
    out: dict = {}
    for (i, j), c in bp.items():
        for e1, c1 in pows1[i].items():
            for e2, c2 in pows2[j].items():
                key = (e1[0] + e2[0], e1[1] + e2[1])
                val = c * c1 * c2
                if val:
                    out[key] = out.get(key, ZERO) + val
    return {e: c for e, c in out.items() if c != 0}


def _power_table(lin: dict, n: int) -> list[dict]:
    table = [{(0, 0): ONE}]
    for _ in range(n):
        prev = table[-1]
        cur: dict = {}
        for e1, c1 in prev.items():
            for e2, c2 in lin.items():
                key = (e1[0] + e2[0], e1[1] + e2[1])
                cur[key] = cur.get(key, ZERO) + c1 * c2
        table.append({e: c for e, c in cur.items() if c != 0})
    return table


def _bp_partial(bp: dict, var: int) -> dict:
    out = {}
    for e, c in bp.items():
        n = e[var]
        if n == 0:
            continue
        ne = (e[0] - 1, e[1]) if var == 0 else (e[0], e[1] - 1)
        out[ne] = out.get(ne, ZERO) + c * n
    return out


def _bp_eval(bp: dict, x: Fraction, y: Fraction) -> Fraction:
    acc = ZERO
    for (i, j), c in bp.items():
        acc += c * x**i * y**j
    return acc


def _v_layers(bp: dict, order: int) -> list[list[Fraction]]:
    max_v = max((e[1] for e in bp), default=0)
    rows = [[ZERO] * order for _ in range(max_v + 1)]
    for (i, j), c in bp.items():
        if i < order:
            rows[j][i] += c
    return rows


def _eval_layers(layers: list[TruncatedSeries], s: TruncatedSeries) -> TruncatedSeries:
    acc = layers[-1]
    for j in range(len(layers) - 2, -1, -1):
        acc = acc * s + layers[j]
    return acc


# ---------------------------------------------------------------------------
# Smoothness, nodes, tangents


def gradient_at(c: PlaneCurve, p: ProjectivePoint):
    x, y, z = p.coords()
    return tuple(c.form.partial(v).evaluate(x, y, z) for v in range(3))


def on_curve(c: PlaneCurve, p: ProjectivePoint) -> bool:
    return c.form.evaluate(*p.coords()) == 0


def is_smooth_point(c: PlaneCurve, p: ProjectivePoint) -> bool:
    if not on_curve(c, p):
        raise ValueError("point does not lie on the curve")
    return any(g != 0 for g in gradient_at(c, p))


def is_ordinary_node(c: PlaneCurve, p: ProjectivePoint) -> bool:
    """True iff p is a double point of c with distinct tangent directions.

    Requires p on the curve.  The test is: all first partials vanish and the
    affine Hessian determinant at p is nonzero (a nondegenerate quadratic
    leading part).
    """
    if not on_curve(c, p):
        raise ValueError("point does not lie on the curve")
    if any(g != 0 for g in gradient_at(c, p)):
        return False
    chart = p.chart()
    bp = _dehomogenize(c.form, chart)
    x0, y0 = p.affine()
    fxx = _bp_eval(_bp_partial(_bp_partial(bp, 0), 0), x0, y0)
    fxy = _bp_eval(_bp_partial(_bp_partial(bp, 0), 1), x0, y0)
    fyy = _bp_eval(_bp_partial(_bp_partial(bp, 1), 1), x0, y0)
    return fxx * fyy - fxy * fxy != 0


def tangent_line(c: PlaneCurve, p: ProjectivePoint) -> TernaryForm:
    """Tangent line at a smooth point, as a primitive integer form."""
    if not on_curve(c, p):
        raise ValueError("point does not lie on the curve")
    gx, gy, gz = gradient_at(c, p)
    if gx == 0 and gy == 0 and gz == 0:
        raise ValueError("curve is singular at the point")
    return TernaryForm.make(
        1, {(1, 0, 0): gx, (0, 1, 0): gy, (0, 0, 1): gz}
    ).primitive()


# ---------------------------------------------------------------------------
# Branch parametrization and intersection multiplicities


@dataclass(frozen=True)
class BranchParametrization:
    """Local branch of a curve at a smooth point, as v = s(u).

    Coordinates: in the affine chart of the center, recentred at it, u runs
    along the tangent direction and v along the gradient.  Substituting the
    parametrization back into the local equation vanishes to the truncation
    order.  frame holds the gradient components (a, b) in chart coordinates;
    the chart point (X, Y) of a parameter u is
    origin + (b*u + a*s(u), -a*u + b*s(u)).
    """

    center: ProjectivePoint
    chart: int
    tangent_form: TernaryForm
    series: TruncatedSeries
    origin: tuple[Fraction, Fraction] = field(repr=False)
    frame: tuple[Fraction, Fraction] = field(repr=False)

    @property
    def order(self) -> int:
        return self.series.order

    def local_dict(self, form: TernaryForm) -> dict:
        """The form in the recentred, tangent-adapted (u, v) coordinates."""
        a, b = self.frame
        bp = _dehomogenize(form, self.chart)
        bp = _bp_shift(bp, *self.origin)
        return _bp_linear_sub(bp, b, a, -a, b)

    def pullback(self, form: TernaryForm) -> TruncatedSeries:
        """Restrict a form to the branch: a series in the parameter u."""
        if form.is_zero:
            raise ValueError("cannot pull back the zero form")
        n = self.order
        layers = [
            TruncatedSeries.make(n, row)
            for row in _v_layers(self.local_dict(form), n)
        ]
        return _eval_layers(layers, self.series)

    def pullback_many(self, forms) -> list[TruncatedSeries]:
        return [self.pullback(f) for f in forms]


def branch_parametrization(
    c: PlaneCurve, p: ProjectivePoint, order: int
) -> BranchParametrization:
    """Solve the curve locally at a smooth point as a graph over its tangent.

    Newton iteration on truncated series; each step doubles the valuation of
    the residual, which is checked to vanish through the requested order.
    """
    if order < 2:
        raise ValueError("series order must be at least 2")
    if order > MAX_SERIES_ORDER:
        raise ValueError(f"series order {order} exceeds ceiling {MAX_SERIES_ORDER}")
    if not on_curve(c, p):
        raise ValueError("point does not lie on the curve")
    chart = p.chart()
    origin = p.affine()
    bp = _bp_shift(_dehomogenize(c.form, chart), *origin)
    a = bp.get((1, 0), ZERO)
    b = bp.get((0, 1), ZERO)
    if a == 0 and b == 0:
        raise ValueError("curve is singular at the point")
    local = _bp_linear_sub(bp, b, a, -a, b)
    layers = [TruncatedSeries.make(order, row) for row in _v_layers(local, order)]
    dlayers = [layers[j + 1].scale(j + 1) for j in range(len(layers) - 1)]
    s = TruncatedSeries.zero(order)
    steps = 0
    while True:
        residual = _eval_layers(layers, s)
        if residual.valuation() is None:
            break
        steps += 1
        if steps > order.bit_length() + 3:
            raise ArithmeticError("branch lifting failed to converge")
        denom = _eval_layers(dlayers, s)
        s = s - residual * denom.inverse()
    return BranchParametrization(
        center=p,
        chart=chart,
        tangent_form=tangent_line(c, p),
        series=s,
        origin=origin,
        frame=(a, b),
    )


def default_truncation(d: int) -> int:
    """One past the largest adjoint contact order possible for degree d."""
    return max((d - 3) * d + 2, d + 2)


def intersection_multiplicity(
    c: PlaneCurve,
    gamma: TernaryForm,
    p: ProjectivePoint,
    order: int | None = None,
    branch: BranchParametrization | None = None,
):
    """Contact order of gamma with the branch of c at the smooth point p.

    Returns the exact valuation when below the truncation order, else
    AtLeast(order).  gamma sharing a component with c through p shows up as
    AtLeast; callers resolve that via divisibility.
    """
    if gamma.is_zero:
        raise ValueError("gamma must be nonzero")
    if order is None:
        order = default_truncation(c.degree)
    if branch is None or branch.order < order:
        branch = branch_parametrization(c, p, order)
    val = branch.pullback(gamma).valuation()
    if val is None:
        return AtLeast(branch.order)
    return val


def inflection_order(c: PlaneCurve, p: ProjectivePoint) -> int:
    """Contact order of the tangent line at a smooth point; equals the curve
    degree exactly at a total inflection point."""
    t = tangent_line(c, p)
    m = intersection_multiplicity(c, t, p, order=c.degree + 2)
    if isinstance(m, AtLeast):
        raise ValueError("tangent line is a component of the curve")
    return m


def line_restriction(form: TernaryForm, base: ProjectivePoint, other: ProjectivePoint) -> UniPoly:
    """The form restricted to the line through base and other, as a
    polynomial in the parameter s of base + s*other."""
    bx, by, bz = base.coords()
    ox, oy, oz = other.coords()
    lin = [
        UniPoly.make([bx, ox]),
        UniPoly.make([by, oy]),
        UniPoly.make([bz, oz]),
    ]
    max_exp = form.degree
    pows = []
    for v in range(3):
        table = [UniPoly.constant(1)]
        for _ in range(max_exp):
            table.append(table[-1] * lin[v])
        pows.append(table)
    acc = UniPoly.zero()
    for (i, j, k), c in form.coeffs.items():
        acc = acc + (pows[0][i] * pows[1][j] * pows[2][k]).scale(c)
    return acc


# ---------------------------------------------------------------------------
# Singular locus audit


@dataclass(frozen=True)
class SingularAuditReport:
    """Outcome of the resultant-based audit of a curve's singular locus."""

    certified: bool
    distinct_singular_points_found: int
    matched_nodes: tuple[ProjectivePoint, ...]
    seed: int
    attempts: int = 1
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "distinct_singular_points_found": self.distinct_singular_points_found,
            "matched_nodes": [p.to_json() for p in self.matched_nodes],
            "seed": self.seed,
            "attempts": self.attempts,
            "detail": self.detail,
        }


def _transform_form(form: TernaryForm, m: list[list[int]]) -> TernaryForm:
    """Substitute coordinates through the matrix: F(m . x')."""
    lines = [TernaryForm.line(*m[v]) for v in range(3)]
    tables = []
    for v in range(3):
        table = [TernaryForm.make(0, {(0, 0, 0): 1})]
        for _ in range(form.degree):
            table.append(table[-1] * lines[v])
        tables.append(table)
    acc = TernaryForm.zero(form.degree)
    for (i, j, k), c in form.coeffs.items():
        acc = acc + (tables[0][i] * tables[1][j] * tables[2][k]).scale(c)
    return acc


def _adjugate3(m: list[list[int]]) -> list[list[int]]:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]


def _int_form(form: TernaryForm) -> TernaryForm:
    return form.primitive()


def _y_coefficient_polys(form: TernaryForm) -> list[UniPoly]:
    """Coefficients of the z=1 dehomogenization as polynomials in x, indexed
    by the power of y."""
    out: list[list[Fraction]] = [[] for _ in range(form.degree + 1)]
    for (i, j, _k), c in form.coeffs.items():
        row = out[j]
        while len(row) <= i:
            row.append(ZERO)
        row[i] += c
    return [UniPoly.make(row) for row in out]


def _interp_resultant(
    fy: list[UniPoly], gy: list[UniPoly], degree_bound: int
) -> UniPoly:
    """Resultant in y of two curves with constant leading y-coefficients,
    interpolated from integer specializations of x."""
    samples = []
    for t in range(degree_bound + 1):
        tq = Fraction(t)
        fv = [int(c.evaluate(tq)) for c in fy]
        gv = [int(c.evaluate(tq)) for c in gy]
        samples.append((tq, Fraction(resultant_int(fv, gv))))
    return interpolate(samples)


def singular_locus_audit(
    c: PlaneCurve,
    nodes,
    seed: int = 0,
    attempts: int = AUDIT_ATTEMPTS,
) -> SingularAuditReport:
    """Certify that the curve's singular locus is exactly the prescribed
    ordinary nodes.

    A seeded random projective coordinate change separates the x-coordinates
    of the finitely many special points; the common roots of the three
    pairwise resultants of (F, F_x, F_y) in y are then exactly the
    x-coordinates of singular points.  Certification compares the squarefree
    gcd with the product of (x - x_i) over the prescribed nodes and checks
    each node is an ordinary node.
    """
    nodes = tuple(nodes)
    if len(set(nodes)) != len(nodes):
        raise ValueError("prescribed nodes must be distinct")
    d = c.degree
    if d < 2:
        raise ValueError("audit needs a curve of degree at least 2")
    for p in nodes:
        if not on_curve(c, p):
            return SingularAuditReport(
                False, 0, (), seed, 1, f"prescribed node {p.to_json()} is not on the curve"
            )
    if not all(is_ordinary_node(c, p) for p in nodes):
        return SingularAuditReport(
            False, 0, (), seed, 1, "a prescribed node is not an ordinary node"
        )

    form = _int_form(c.form)
    rng = random.Random(seed)
    detail = "retry budget exhausted"
    last: SingularAuditReport | None = None
    d1 = d * (d - 1)
    d3 = (d - 1) * (d - 1)
    for attempt in range(1, attempts + 1):
        m = [[rng.randint(-10000, 10000) for _ in range(3)] for _ in range(3)]
        if kernels.det_int(m) == 0:
            detail = "singular coordinate change"
            continue
        ft = _transform_form(form, m)
        lead = ft.coeffs.get((0, d, 0), ZERO)
        xlead = ft.coeffs.get((1, d - 1, 0), ZERO)
        if lead == 0 or xlead == 0:
            detail = "degenerate leading coefficient"
            continue
        adj = _adjugate3(m)
        xs = []
        ok = True
        for p in nodes:
            px, py, pz = p.coords()
            tx = adj[0][0] * px + adj[0][1] * py + adj[0][2] * pz
            ty = adj[1][0] * px + adj[1][1] * py + adj[1][2] * pz
            tz = adj[2][0] * px + adj[2][1] * py + adj[2][2] * pz
            if tz == 0:
                ok = False
                break
            xs.append(tx / tz)
        if not ok or len(set(xs)) != len(xs):
            detail = "nodes not separated by the coordinate change"
            continue
        fx = ft.partial(0)
        fy = ft.partial(1)
        f_layers = _y_coefficient_polys(ft)
        fx_layers = _y_coefficient_polys(fx)
        fy_layers = _y_coefficient_polys(fy)
        r1 = _interp_resultant(f_layers, fx_layers, d1)
        r2 = _interp_resultant(f_layers, fy_layers, d1)
        r3 = _interp_resultant(fx_layers, fy_layers, d3)
        if r1.is_zero or r2.is_zero or r3.is_zero:
            return SingularAuditReport(
                False, 0, (), seed, attempt,
                "a resultant vanished identically: repeated or singular component",
            )
        if r1.degree < d1 and r2.degree < d1 and r3.degree < d3:
            detail = "possible singular point on the moved line at infinity"
            continue
        common = univariate_gcd(univariate_gcd(r1, r2), r3)
        sf = squarefree_part(common)
        found = sf.degree
        expected = UniPoly.constant(1)
        for xv in xs:
            expected = expected * UniPoly.make([-xv, 1])
        if sf == expected:
            return SingularAuditReport(True, found, nodes, seed, attempt, "")
        matched = tuple(p for p, xv in zip(nodes, xs) if sf.evaluate(xv) == 0)
        detail = (
            f"singular-locus polynomial has degree {found}, "
            f"expected {len(nodes)} prescribed nodes"
        )
        last = SingularAuditReport(False, found, matched, seed, attempt, detail)
    if last is not None:
        return last
    return SingularAuditReport(False, 0, (), seed, attempts, detail)
