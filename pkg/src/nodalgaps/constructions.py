"""Explicit witness constructions.

Builds the degenerate union-of-lines configurations, the two maximal-weight
pencils, and seeded samplers for general, collinear and conic-contact nodal
configurations.  "General position" is operationalized as seeded rational
sampling followed by exhaustive exact verification; every returned
configuration is re-certified from scratch, never trusted.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import kernels
from .curvegeom import (
    PlaneCurve,
    ProjectivePoint,
    intersection_multiplicity,
    join_line,
    line_restriction,
)
from .exactmath import TernaryForm, monomial_exponents
from .linsys import (
    LinearSystem,
    NodalConfiguration,
    _conic_matrix_det,
    certify_configuration,
    through_points,
)
from .semigroups import (
    MAX2_ROW_IDS,
    MAX3_ROW_IDS,
    MAX4_ROW_IDS,
    MAX_ROW_IDS,
    TableRowId,
    genus_of,
    is_semigroup,
    min_system_degree,
    row_condition,
    table_row,
)

DEFAULT_RETRY_BUDGET = 32


class ConstructionError(RuntimeError):
    """Sampling exhausted its retry budget without a certified witness."""


def retry_budget() -> int:
    value = os.environ.get("NODALGAPS_RETRY_BUDGET")
    if value is None:
        return DEFAULT_RETRY_BUDGET
    return max(1, int(value))


# ---------------------------------------------------------------------------
# Random rational sampling helpers


def _random_point(rng: random.Random, span: int = 30) -> ProjectivePoint:
    return ProjectivePoint.of(rng.randint(-span, span), rng.randint(-span, span), 1)


def _random_line(rng: random.Random, span: int = 100) -> TernaryForm:
    while True:
        a, b, c = (rng.randint(-span, span) for _ in range(3))
        if a or b or c:
            return TernaryForm.line(a, b, c).primitive()


def _random_line_through(
    rng: random.Random, p: ProjectivePoint, span: int = 30
) -> TernaryForm:
    while True:
        q = _random_point(rng, span)
        if q != p:
            return join_line(p, q)


def points_on_line(line: TernaryForm) -> tuple[ProjectivePoint, ProjectivePoint]:
    """Two distinct rational points spanning a line."""
    a = line.coeffs.get((1, 0, 0), Fraction(0))
    b = line.coeffs.get((0, 1, 0), Fraction(0))
    c = line.coeffs.get((0, 0, 1), Fraction(0))
    candidates = []
    for coords in ((b, -a, 0), (c, 0, -a), (0, c, -b)):
        if any(v != 0 for v in coords):
            p = ProjectivePoint.of(*coords)
            if p not in candidates:
                candidates.append(p)
    if len(candidates) < 2:
        raise ValueError("degenerate line")
    return candidates[0], candidates[1]


def _point_on_line(
    rng: random.Random, line: TernaryForm, avoid=(), span: int = 60
) -> ProjectivePoint:
    base, other = points_on_line(line)
    for _ in range(4 * span):
        t = rng.randint(-span, span)
        p = ProjectivePoint.of(
            base.x + t * other.x, base.y + t * other.y, base.z + t * other.z
        )
        if p not in avoid:
            return p
    raise ConstructionError("could not sample a point on the line")


def line_intersection(l1: TernaryForm, l2: TernaryForm) -> ProjectivePoint:
    a1 = l1.coeffs.get((1, 0, 0), Fraction(0))
    b1 = l1.coeffs.get((0, 1, 0), Fraction(0))
    c1 = l1.coeffs.get((0, 0, 1), Fraction(0))
    a2 = l2.coeffs.get((1, 0, 0), Fraction(0))
    b2 = l2.coeffs.get((0, 1, 0), Fraction(0))
    c2 = l2.coeffs.get((0, 0, 1), Fraction(0))
    x = b1 * c2 - c1 * b2
    y = c1 * a2 - a1 * c2
    z = a1 * b2 - b1 * a2
    return ProjectivePoint.of(x, y, z)


def _on(form: TernaryForm, p: ProjectivePoint) -> bool:
    return form.evaluate(*p.coords()) == 0


def _concurrent(l1: TernaryForm, l2: TernaryForm, l3: TernaryForm) -> bool:
    rows = []
    for line in (l1, l2, l3):
        rows.append(
            kernels.clear_row_denominators(
                [
                    line.coeffs.get((1, 0, 0), Fraction(0)),
                    line.coeffs.get((0, 1, 0), Fraction(0)),
                    line.coeffs.get((0, 0, 1), Fraction(0)),
                ]
            )
        )
    return kernels.det_int(rows) == 0


def _product(forms) -> TernaryForm:
    acc = TernaryForm.make(0, {(0, 0, 0): 1})
    for f in forms:
        acc = acc * f
    return acc


# ---------------------------------------------------------------------------
# Union-of-lines degenerations


@dataclass
class LineArrangement:
    """d lines in general position, the triangular list of their pairwise
    intersections among the first d-1 lines, and a marked point on the last
    line where the position certificate holds."""

    d: int
    delta: int
    lines: tuple[TernaryForm, ...]
    ordered_nodes: tuple[ProjectivePoint, ...]
    p0: ProjectivePoint
    seed: int
    retries: int = 0

    def curve(self) -> PlaneCurve:
        return PlaneCurve(_product(self.lines))

    def nodes(self) -> tuple[ProjectivePoint, ...]:
        return self.ordered_nodes[: self.delta]

    def to_configuration(self) -> NodalConfiguration:
        return NodalConfiguration(
            d=self.d,
            nodes=self.nodes(),
            p=self.p0,
            curve=self.curve(),
            tangent=self.lines[-1],
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "delta": self.delta,
            "lines": [l.to_json() for l in self.lines],
            "ordered_nodes": [p.to_json() for p in self.ordered_nodes],
            "P0": self.p0.to_json(),
            "seed": self.seed,
            "retries": self.retries,
        }


def line_arrangement(d: int, delta: int, seed: int = 0) -> LineArrangement:
    """Sample d rational lines with no three concurrent, order the pairwise
    intersections of the first d-1 lines triangularly, and pick a point on
    the last line where the contact of the critical-degree system through
    the first delta nodes stays within the expected bound."""
    if d < 3:
        raise ValueError("need at least 3 lines")
    if not 0 <= delta <= genus_of(d):
        raise ValueError(f"delta={delta} out of range for degree {d}")
    rng = random.Random(seed)
    budget = retry_budget()
    retries = 0
    for _attempt in range(budget):
        lines: list[TernaryForm] = []
        ok = True
        guard = 0
        while len(lines) < d:
            guard += 1
            if guard > 50 * d:
                ok = False
                break
            cand = _random_line(rng)
            if any(cand == l for l in lines):
                continue
            if any(
                _concurrent(lines[i], lines[j], cand)
                for i in range(len(lines))
                for j in range(i + 1, len(lines))
            ):
                continue
            lines.append(cand)
        if not ok:
            retries += 1
            continue
        nodes = []
        for m in range(1, d - 1):
            for i in range(m):
                nodes.append(line_intersection(lines[i], lines[m]))
        if len(set(nodes)) != len(nodes):
            retries += 1
            continue
        if any(_on(lines[-1], q) for q in nodes[:delta]):
            retries += 1
            continue
        p0 = _sample_marked_point(rng, lines, nodes[:delta], d, delta)
        if p0 is None:
            retries += 1
            continue
        return LineArrangement(
            d, delta, tuple(lines), tuple(nodes), p0, seed, retries
        )
    raise ConstructionError(
        f"line arrangement sampling exhausted {budget} retries at d={d}, delta={delta}"
    )


def _sample_marked_point(rng, lines, nodes, d, delta):
    """Point on the last line, off all others, where the degree-k system
    through the nodes has contact at most k(k+3)/2 - delta with the line."""
    k = min_system_degree(delta)
    bound = k * (k + 3) // 2 - delta
    system = through_points(k, nodes)
    base, other = points_on_line(lines[-1])
    for _ in range(retry_budget()):
        t = rng.randint(-200, 200)
        p0 = ProjectivePoint.of(
            base.x + t * other.x, base.y + t * other.y, base.z + t * other.z
        )
        if any(_on(l, p0) for l in lines[:-1]):
            continue
        direction = other if other != p0 else base
        rows = []
        deficient = False
        for form in system.basis:
            r = line_restriction(form, p0, direction)
            if r.is_zero:
                deficient = True
                break
            rows.append(
                kernels.clear_row_denominators(
                    list(r.coeffs) + [Fraction(0)] * (k + 1 - len(r.coeffs))
                )
            )
        if deficient:
            return None
        pivots, _ = kernels.row_echelon_int(rows)
        if len(pivots) < len(system.basis):
            return None
        if not system.basis or pivots[-1] <= bound:
            return p0
    return None


# ---------------------------------------------------------------------------
# The two maximal-weight pencils


@dataclass
class PencilSpec:
    """Two degree-d forms spanning a pencil whose general member carries the
    prescribed nodes and total inflection point."""

    variant: str
    d: int
    delta: int
    c1: TernaryForm
    c2: TernaryForm
    base_line: TernaryForm
    tangent: TernaryForm
    tangent2: TernaryForm | None
    p: ProjectivePoint
    nodes: tuple[ProjectivePoint, ...]
    lines1: tuple[TernaryForm, ...]
    lines2: tuple[TernaryForm, ...]
    extra: TernaryForm
    seed: int

    def component_lines(self) -> list[TernaryForm]:
        out = [self.base_line, self.tangent]
        if self.tangent2 is not None:
            out.append(self.tangent2)
        out.extend(self.lines1)
        out.extend(self.lines2)
        if self.extra.degree == 1:
            out.append(self.extra)
        return out

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "d": self.d,
            "delta": self.delta,
            "C1": self.c1.to_json(),
            "C2": self.c2.to_json(),
            "L": self.base_line.to_json(),
            "T": self.tangent.to_json(),
            "T2": self.tangent2.to_json() if self.tangent2 else None,
            "P": self.p.to_json(),
            "nodes": [q.to_json() for q in self.nodes],
            "lines1": [l.to_json() for l in self.lines1],
            "lines2": [l.to_json() for l in self.lines2],
            "C": self.extra.to_json(),
            "seed": self.seed,
        }


def _random_form(rng: random.Random, degree: int, span: int = 20) -> TernaryForm:
    while True:
        terms = {
            e: rng.randint(-span, span) for e in monomial_exponents(degree)
        }
        form = TernaryForm.make(degree, terms)
        if not form.is_zero:
            return form


def _avoiding_form(rng, degree, avoid_points) -> TernaryForm:
    if degree == 0:
        return TernaryForm.make(0, {(0, 0, 0): 1})
    for _ in range(retry_budget() * 8):
        form = _random_form(rng, degree)
        if all(not _on(form, q) for q in avoid_points):
            return form
    raise ConstructionError("could not sample an avoiding form")


def _pairwise_intersections(lines) -> list[ProjectivePoint]:
    out = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if not lines[i].proportional_to(lines[j]):
                out.append(line_intersection(lines[i], lines[j]))
    return out


def pencil(variant: str, d: int, delta: int, seed: int = 0) -> PencilSpec:
    """Construct the maximal-weight pencil data for the requested variant.

    "max" puts the inflection point and all nodes on one line and spans the
    pencil by the d-fold line and a product of the tangent, an avoiding
    curve, and two general lines through each node.  "max2" keeps the nodes
    on the line, moves the inflection point off it, and doubles the joins
    from the point to the nodes instead.
    """
    if variant not in ("max", "max2"):
        raise ValueError("variant must be 'max' or 'max2'")
    if delta < 1:
        raise ValueError("pencils need at least one node")
    need = 2 * delta + 1 if variant == "max" else 2 * delta
    if d < need:
        raise ValueError(
            f"variant {variant} needs degree >= {need} at delta={delta}"
        )
    rng = random.Random(seed)
    budget = retry_budget()
    for _attempt in range(budget):
        try:
            if variant == "max":
                spec = _pencil_max(rng, d, delta, seed)
            else:
                spec = _pencil_max2(rng, d, delta, seed)
        except ConstructionError:
            continue
        if spec is not None:
            return spec
    raise ConstructionError(
        f"pencil sampling exhausted {budget} retries ({variant}, d={d}, delta={delta})"
    )


def _pencil_max(rng, d, delta, seed):
    base = _random_line(rng, span=20)
    marked = []
    for _ in range(delta + 1):
        marked.append(_point_on_line(rng, base, avoid=marked))
    p, nodes = marked[0], tuple(marked[1:])
    tangent = _random_line_through(rng, p)
    if tangent == base:
        return None
    lines1, lines2 = [], []
    used = [base, tangent]
    for q in nodes:
        l1 = _random_line_through(rng, q)
        l2 = _random_line_through(rng, q)
        if l1 == l2 or any(l1 == u or l2 == u for u in used):
            return None
        lines1.append(l1)
        lines2.append(l2)
        used.extend([l1, l2])
    avoid = list(marked) + _pairwise_intersections(used)
    extra = _avoiding_form(rng, d - 2 * delta - 1, avoid)
    c1 = base.power(d)
    c2 = _product([tangent, extra] + lines1 + lines2)
    return PencilSpec(
        "max", d, delta, c1, c2, base, tangent, None, p, nodes,
        tuple(lines1), tuple(lines2), extra, seed,
    )


def _pencil_max2(rng, d, delta, seed):
    base = _random_line(rng, span=20)
    p = _random_point(rng)
    if _on(base, p):
        return None
    nodes: list[ProjectivePoint] = []
    for _ in range(delta):
        nodes.append(_point_on_line(rng, base, avoid=nodes))
    lines1 = [join_line(p, q) for q in nodes]
    if len({tuple(sorted(l.coeffs.items())) for l in lines1}) != delta:
        return None
    lines2 = []
    used = [base] + lines1
    for i, q in enumerate(nodes):
        l2 = _random_line_through(rng, q)
        if (
            any(l2 == u for u in used + lines2)
            or _on(l2, p)
            or any(_on(l2, nodes[j]) for j in range(len(nodes)) if j != i)
        ):
            return None
        lines2.append(l2)
    tangent = _random_line_through(rng, p)
    tangent2 = _random_line_through(rng, p)
    if tangent == tangent2:
        return None
    if any(tangent == l or tangent2 == l for l in lines1 + lines2 + [base]):
        return None
    all_lines = [base, tangent, tangent2] + lines1 + lines2
    avoid = [p] + nodes + _pairwise_intersections(all_lines)
    extra = _avoiding_form(rng, d - delta - 2, avoid)
    c1 = _product(lines1).power(2) * tangent2.power(d - 2 * delta)
    c2 = _product([base, tangent, extra] + lines2)
    return PencilSpec(
        "max2", d, delta, c1, c2, base, tangent, tangent2, p, tuple(nodes),
        tuple(lines1), tuple(lines2), extra, seed,
    )


def general_member(spec: PencilSpec, seed: int = 0) -> NodalConfiguration:
    """Certified general member of the pencil.

    Samples members C1 + t*C2, rejects any divisible by a component line
    (fixed-component check), and re-runs the full certification until one
    passes or the budget runs out.
    """
    rng = random.Random(seed)
    budget = retry_budget()
    last_detail = "no members tried"
    for _attempt in range(budget):
        t = 0
        while t == 0:
            t = rng.randint(-50, 50)
        form = spec.c1 + spec.c2.scale(t)
        if form.is_zero:
            continue
        if any(
            form.divide_by_linear(line) is not None
            for line in spec.component_lines()
        ):
            last_detail = "member has a line component"
            continue
        cfg = NodalConfiguration(
            d=spec.d,
            nodes=spec.nodes,
            p=spec.p,
            curve=PlaneCurve(form),
            tangent=spec.tangent,
        )
        report = certify_configuration(cfg, seed=rng.randrange(2**31))
        if report.certified:
            return cfg
        last_detail = report.detail or "certification failed"
    raise ConstructionError(
        f"pencil member sampling exhausted {budget} retries: {last_detail}"
    )


# ---------------------------------------------------------------------------
# Linear-system sampler: forms singular at given nodes with a full-contact
# tangent at the marked point


def nodal_inflection_system(
    d: int, nodes, p: ProjectivePoint, tangent: TernaryForm
) -> LinearSystem:
    """Degree-d forms singular at every node whose restriction to the tangent
    vanishes only at the marked point, to full order d.

    Conditions are linear: three vanishing partials per node, plus the first
    d coefficients of the restriction to the tangent line.
    """
    if not _on(tangent, p):
        raise ValueError("tangent line must pass through the marked point")
    exps = monomial_exponents(d)
    rows: list[list[int]] = []
    for q in nodes:
        x, y, z = q.coords()
        for var in range(3):
            row = []
            for (i, j, k) in exps:
                e = [i, j, k]
                n = e[var]
                if n == 0:
                    row.append(Fraction(0))
                    continue
                e[var] = n - 1
                row.append(n * x ** e[0] * y ** e[1] * z ** e[2])
            rows.append(kernels.clear_row_denominators(row))
    a, b = points_on_line(tangent)
    direction = b if a == p else (a if b == p else b)
    if direction == p:
        raise ValueError("could not find a second point on the tangent")
    restrictions = []
    for (i, j, k) in exps:
        mono = TernaryForm.make(d, {(i, j, k): 1})
        r = line_restriction(mono, p, direction)
        coeffs = list(r.coeffs) + [Fraction(0)] * (d + 1 - len(r.coeffs))
        restrictions.append(coeffs)
    for power in range(d):
        rows.append(
            kernels.clear_row_denominators([rc[power] for rc in restrictions])
        )
    vectors = kernels.nullspace_int(rows, len(exps))
    basis = tuple(
        TernaryForm.make(d, {e: v for e, v in zip(exps, vec) if v})
        for vec in vectors
    )
    conditions = tuple(("node", q) for q in nodes) + (("inflection", p, d),)
    return LinearSystem(d, basis, conditions)


def certified_member(
    d: int,
    nodes,
    p: ProjectivePoint,
    tangent: TernaryForm,
    rng: random.Random,
    attempts: int = 6,
) -> NodalConfiguration:
    """Sample members of the nodal-inflection system until one certifies."""
    system = nodal_inflection_system(d, nodes, p, tangent)
    if system.is_empty:
        raise ConstructionError("nodal inflection system is empty")
    last_detail = "no members tried"
    for _ in range(attempts):
        coeffs = [rng.randint(-9, 9) for _ in system.basis]
        if all(c == 0 for c in coeffs):
            continue
        form = TernaryForm.zero(d)
        for c, base_form in zip(coeffs, system.basis):
            if c:
                form = form + base_form.scale(c)
        if form.is_zero:
            continue
        cfg = NodalConfiguration(
            d=d, nodes=tuple(nodes), p=p, curve=PlaneCurve(form), tangent=tangent
        )
        report = certify_configuration(cfg, seed=rng.randrange(2**31))
        if report.certified:
            return cfg
        last_detail = report.detail or "certification failed"
    raise ConstructionError(f"no certified member found: {last_detail}")


def _no_unexpected_collinearity(points, allowed_line=None) -> bool:
    """No 3 of the points collinear, except triples on the allowed line."""
    for trip in combinations(points, 3):
        rows = [
            kernels.clear_row_denominators(list(q.coords())) for q in trip
        ]
        if kernels.rank_int(rows) <= 2:
            if allowed_line is None or not all(_on(allowed_line, q) for q in trip):
                return False
    return True


def general_config(d: int, delta: int, seed: int = 0) -> NodalConfiguration:
    """Certified configuration with delta nodes in general position."""
    if not 0 <= delta <= genus_of(d):
        raise ValueError(f"delta={delta} out of range for degree {d}")
    rng = random.Random(seed)
    budget = retry_budget()
    last = "no attempts"
    for _attempt in range(budget):
        p = _random_point(rng)
        tangent = _random_line_through(rng, p)
        nodes: list[ProjectivePoint] = []
        guard = 0
        while len(nodes) < delta and guard < 200:
            guard += 1
            q = _random_point(rng)
            if q == p or q in nodes or _on(tangent, q):
                continue
            nodes.append(q)
        if len(nodes) < delta:
            continue
        if not _no_unexpected_collinearity(nodes + [p]):
            continue
        if delta == 4 and not _general_conic_ok(d, nodes, p, tangent):
            continue
        if delta == 5 and not _off_node_conic(nodes, p):
            continue
        try:
            return certified_member(d, nodes, p, tangent, rng)
        except ConstructionError as exc:
            last = str(exc)
            continue
    raise ConstructionError(
        f"general configuration sampling exhausted {budget} retries: {last}"
    )


def _general_conic_ok(d, nodes, p, tangent) -> bool:
    """The conic through 4 nodes and the point must meet the tangent simply."""
    system = through_points(2, list(nodes) + [p])
    if len(system.basis) != 1:
        return False
    conic = system.basis[0]
    a, b = points_on_line(tangent)
    direction = b if a == p else (a if b == p else b)
    r = line_restriction(conic, p, direction)
    v = r.valuation()
    return v == 1


def _off_node_conic(nodes, p) -> bool:
    """The unique conic through 5 nodes must not pass through the point."""
    system = through_points(2, list(nodes))
    if len(system.basis) != 1:
        return False
    return not _on(system.basis[0], p)


def collinear_config(
    d: int,
    delta: int,
    include_p: bool,
    seed: int = 0,
    on_line: int | None = None,
) -> NodalConfiguration:
    """Certified configuration with on_line of the delta nodes on one line
    and the inflection point on or off it.

    on_line defaults to all nodes; on_line = delta-1 builds the witnesses
    with exactly delta-1 nodes on the line.  The target table row must be an
    actual semigroup at this degree, otherwise no witness exists and the
    construction refuses up front.
    """
    if delta < 2:
        raise ValueError("collinear configurations need at least 2 nodes")
    if not 2 <= delta <= 5:
        raise ValueError("collinear configurations cover 2 <= delta <= 5")
    if delta > genus_of(d):
        raise ValueError(f"delta={delta} out of range for degree {d}")
    count = delta if on_line is None else on_line
    if count == delta:
        target = (MAX_ROW_IDS if include_p else MAX2_ROW_IDS)[delta]
    elif count == delta - 1 and delta >= 3:
        target = (MAX3_ROW_IDS if include_p else MAX4_ROW_IDS)[delta]
    else:
        raise ValueError("on_line must be delta or delta-1 (with delta >= 3)")
    row = TableRowId(*target)
    try:
        semigroup = table_row(d, row)
    except ValueError as exc:
        raise ConstructionError(
            f"target row N({row.delta},{row.index}) is not defined at degree {d}: {exc}"
        ) from exc
    if not is_semigroup(semigroup):
        raise ConstructionError(
            f"target row N({row.delta},{row.index}) is not additively closed at "
            f"degree {d}; no smooth-point witness exists"
        )
    rng = random.Random(seed)
    budget = retry_budget()
    last = "no attempts"
    for _attempt in range(budget):
        line = _random_line(rng, span=20)
        on_nodes: list[ProjectivePoint] = []
        for _ in range(count):
            on_nodes.append(_point_on_line(rng, line, avoid=on_nodes))
        off_nodes: list[ProjectivePoint] = []
        guard = 0
        while len(off_nodes) < delta - count and guard < 200:
            guard += 1
            q = _random_point(rng)
            if _on(line, q) or q in off_nodes:
                continue
            off_nodes.append(q)
        if len(off_nodes) < delta - count:
            continue
        nodes = on_nodes + off_nodes
        if include_p:
            p = _point_on_line(rng, line, avoid=nodes)
        else:
            p = _random_point(rng)
            if _on(line, p) or p in nodes:
                continue
        tangent = _random_line_through(rng, p)
        if tangent == line or any(_on(tangent, q) for q in nodes):
            continue
        marked = nodes + [p]
        if not _no_unexpected_collinearity(marked, allowed_line=line):
            continue
        try:
            return certified_member(d, nodes, p, tangent, rng)
        except ConstructionError as exc:
            last = str(exc)
            continue
    raise ConstructionError(
        f"collinear configuration sampling exhausted {budget} retries: {last}"
    )


def conic_contact_config(
    d: int, delta: int, contact: int, seed: int = 0
) -> NodalConfiguration:
    """Certified configuration whose nodes lie on a conic through the marked
    point with the prescribed contact order (1 or 2) there.  Best-effort:
    raises ConstructionError when sampling fails."""
    if delta not in (4, 5):
        raise ValueError("conic-contact rows exist for delta in {4, 5}")
    if contact not in (1, 2):
        raise ValueError("contact must be 1 or 2")
    if delta > genus_of(d):
        raise ValueError(f"delta={delta} out of range for degree {d}")
    rng = random.Random(seed)
    budget = retry_budget()
    last = "no attempts"
    for _attempt in range(budget):
        p = _random_point(rng)
        tangent = _random_line_through(rng, p)
        conic = _sample_conic(rng, p, tangent, tangency=(contact == 2))
        if conic is None:
            continue
        nodes = _points_on_conic(rng, conic, p, tangent, delta)
        if nodes is None:
            continue
        try:
            cfg = certified_member(d, nodes, p, tangent, rng)
        except ConstructionError as exc:
            last = str(exc)
            continue
        measured = intersection_multiplicity(cfg.curve, conic, p, order=2 * d + 2)
        if measured == contact:
            return cfg
        last = f"conic contact came out {measured}, wanted {contact}"
    raise ConstructionError(
        f"conic-contact sampling exhausted {budget} retries: {last}"
    )


def _sample_conic(rng, p, tangent, tangency: bool) -> TernaryForm | None:
    """Random irreducible conic through p, tangent to the given line there or
    meeting it simply, per the flag."""
    exps = monomial_exponents(2)
    x, y, z = p.coords()
    rows = [
        kernels.clear_row_denominators(
            [x**i * y**j * z**k for (i, j, k) in exps]
        )
    ]
    a, b = points_on_line(tangent)
    direction = b if a == p else (a if b == p else b)
    if tangency:
        restr = []
        for (i, j, k) in exps:
            mono = TernaryForm.make(2, {(i, j, k): 1})
            r = line_restriction(mono, p, direction)
            coeffs = list(r.coeffs) + [Fraction(0)] * (3 - len(r.coeffs))
            restr.append(coeffs[1])
        rows.append(kernels.clear_row_denominators(restr))
    vectors = kernels.nullspace_int(rows, len(exps))
    if not vectors:
        return None
    for _ in range(20):
        coeffs = [rng.randint(-9, 9) for _ in vectors]
        form = TernaryForm.zero(2)
        for c, vec in zip(coeffs, vectors):
            if c:
                form = form + TernaryForm.make(
                    2, {e: v for e, v in zip(exps, vec) if v}
                ).scale(c)
        if form.is_zero or _conic_matrix_det(form) == 0:
            continue
        r = line_restriction(form, p, direction)
        v = r.valuation()
        if tangency and v == 2:
            return form
        if not tangency and v == 1:
            return form
    return None


def _points_on_conic(rng, conic, p, tangent, count) -> list[ProjectivePoint] | None:
    """Rational points on the conic via secants through the known point p."""
    nodes: list[ProjectivePoint] = []
    for _ in range(200):
        if len(nodes) == count:
            break
        q = _random_point(rng)
        if q == p:
            continue
        r = line_restriction(conic, p, q)
        coeffs = list(r.coeffs) + [Fraction(0)] * (3 - len(r.coeffs))
        if coeffs[2] == 0 or coeffs[1] == 0:
            continue
        s = -coeffs[1] / coeffs[2]
        cand = ProjectivePoint.of(
            p.x + s * q.x, p.y + s * q.y, p.z + s * q.z
        )
        if cand == p or cand in nodes or _on(tangent, cand):
            continue
        nodes.append(cand)
    if len(nodes) < count:
        return None
    return nodes


def row_witness(d: int, row: TableRowId, seed: int = 0) -> NodalConfiguration:
    """Dispatch to the sampler matching a table row's geometric condition."""
    cond = row_condition(row)
    if cond.kind == "general":
        return general_config(d, row.delta, seed)
    if cond.kind == "collinear":
        on_line = None if cond.on_line == row.delta else cond.on_line
        return collinear_config(d, row.delta, cond.with_p, seed, on_line=on_line)
    return conic_contact_config(d, row.delta, cond.contact, seed)
