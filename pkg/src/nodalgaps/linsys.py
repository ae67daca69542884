"""Linear systems of plane curves with point and contact conditions.

Provides evaluation-kernel bases for systems through points, contact
filtrations along a branch, the general-position certificate behind the
minimal gap sequence, gap-sequence extraction via adjoint pullbacks, and
classification of configurations against the table of non-gap sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import kernels
from .curvegeom import (
    AtLeast,
    BranchParametrization,
    PlaneCurve,
    ProjectivePoint,
    SingularAuditReport,
    branch_parametrization,
    collinear,
    inflection_order,
    intersection_multiplicity,
    is_ordinary_node,
    join_line,
    on_curve,
    singular_locus_audit,
    tangent_line,
)
from .exactmath import TernaryForm, monomial_exponents, rank_of_rows
from .semigroups import (
    GapSequence,
    TableRowId,
    gaps,
    genus_of,
    min_system_degree,
    table_row,
)


class ConfigurationError(ValueError):
    """A configuration violates an invariant needed for the computation."""


class ClassificationError(RuntimeError):
    """A certified configuration contradicts the classification table."""


class UnclassifiedConfiguration(RuntimeError):
    """The configuration matches no table row (degenerate conic cases)."""


# ---------------------------------------------------------------------------
# Linear systems


@dataclass(frozen=True)
class LinearSystem:
    """Basis of the degree-`degree` forms satisfying the recorded conditions.

    dim_projective == -1 encodes the empty system.
    """

    degree: int
    basis: tuple[TernaryForm, ...]
    conditions: tuple = ()

    @property
    def dim_projective(self) -> int:
        return len(self.basis) - 1

    @property
    def is_empty(self) -> bool:
        return not self.basis


def monomial_count(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2


def through_points(degree: int, points) -> LinearSystem:
    """All degree-`degree` forms vanishing at the given points."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    pts = tuple(points)
    exps = monomial_exponents(degree)
    rows = []
    for p in pts:
        x, y, z = p.coords()
        rows.append(
            kernels.clear_row_denominators(
                [x**i * y**j * z**k for (i, j, k) in exps]
            )
        )
    vectors = kernels.nullspace_int(rows, len(exps))
    basis = tuple(
        TernaryForm.make(degree, {e: v for e, v in zip(exps, vec) if v})
        for vec in vectors
    )
    return LinearSystem(degree, basis, tuple(("through", p) for p in pts))


def _combine(system: LinearSystem, vectors) -> tuple[TernaryForm, ...]:
    out = []
    for vec in vectors:
        acc = TernaryForm.zero(system.degree)
        for lam, form in zip(vec, system.basis):
            if lam:
                acc = acc + form.scale(lam)
        out.append(acc.primitive())
    return tuple(out)


def with_min_multiplicity(
    system: LinearSystem,
    curve: PlaneCurve,
    p: ProjectivePoint,
    m: int,
    branch: BranchParametrization | None = None,
) -> LinearSystem:
    """Sub-system of members meeting the branch of the curve at p with
    contact order at least m."""
    if m < 0:
        raise ValueError("contact order must be non-negative")
    if m == 0 or system.is_empty:
        return system
    if branch is None or branch.order < m:
        branch = branch_parametrization(curve, p, max(m, 2))
    pulls = branch.pullback_many(system.basis)
    rows = []
    for t in range(m):
        rows.append(
            kernels.clear_row_denominators([s.coeffs[t] for s in pulls])
        )
    vectors = kernels.nullspace_int(rows, len(system.basis))
    return LinearSystem(
        system.degree,
        _combine(system, vectors),
        system.conditions + (("contact", p, m),),
    )


# ---------------------------------------------------------------------------
# Nodal configurations and certification


@dataclass
class NodalConfiguration:
    """Degree-d curve (optional) with marked nodes, inflection point and
    tangent line, plus the verification certificate once computed."""

    d: int
    nodes: tuple[ProjectivePoint, ...]
    p: ProjectivePoint
    curve: PlaneCurve | None = None
    tangent: TernaryForm | None = None
    certification: "CertificationReport | None" = None

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "curve": self.curve.to_json() if self.curve else None,
            "nodes": [q.to_json() for q in self.nodes],
            "P": self.p.to_json(),
            "T": self.tangent.to_json() if self.tangent else None,
        }
        if self.certification is not None:
            out["certification"] = self.certification.to_json()
        return out

    @staticmethod
    def from_json(obj: dict) -> "NodalConfiguration":
        return NodalConfiguration(
            d=obj["d"],
            nodes=tuple(ProjectivePoint.from_json(q) for q in obj["nodes"]),
            p=ProjectivePoint.from_json(obj["P"]),
            curve=PlaneCurve.from_json(obj["curve"]) if obj.get("curve") else None,
            tangent=TernaryForm.from_json(obj["T"]) if obj.get("T") else None,
        )


@dataclass(frozen=True)
class CertificationReport:
    """Result of running the full verification chain on a configuration."""

    on_curve: bool
    smooth_at_p: bool
    tangent_matches: bool
    inflection: int | None
    total_inflection: bool
    nodes_ordinary: tuple[bool, ...]
    audit: SingularAuditReport | None
    certified: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "on_curve": self.on_curve,
            "smooth_at_p": self.smooth_at_p,
            "tangent_matches": self.tangent_matches,
            "inflection": self.inflection,
            "total_inflection": self.total_inflection,
            "nodes_ordinary": list(self.nodes_ordinary),
            "audit": self.audit.to_json() if self.audit else None,
            "certified": self.certified,
            "detail": self.detail,
        }


def certify_configuration(cfg: NodalConfiguration, seed: int = 0) -> CertificationReport:
    """Run every certificate: nodes are ordinary, the marked point is a total
    inflection with the marked tangent, and the audit finds no other
    singularities.  Stores and returns the report."""
    if cfg.curve is None:
        raise ConfigurationError("configuration has no curve to certify")
    failed = CertificationReport(
        False, False, False, None, False, (), None, False, "degree mismatch"
    )
    if cfg.curve.degree != cfg.d:
        cfg.certification = failed
        return failed
    if len(set(cfg.nodes)) != len(cfg.nodes) or cfg.p in cfg.nodes:
        rep = CertificationReport(
            False, False, False, None, False, (), None, False,
            "marked points are not distinct",
        )
        cfg.certification = rep
        return rep
    p_on = on_curve(cfg.curve, cfg.p)
    smooth = False
    tmatch = False
    infl: int | None = None
    total = False
    if p_on:
        gx = [g for g in _gradient(cfg)]
        smooth = any(g != 0 for g in gx)
    if smooth:
        t = tangent_line(cfg.curve, cfg.p)
        tmatch = cfg.tangent is None or t.proportional_to(cfg.tangent)
        if cfg.tangent is None:
            cfg.tangent = t
        try:
            infl = inflection_order(cfg.curve, cfg.p)
            total = infl == cfg.d
        except ValueError:
            infl = None
            total = False
    nodes_ok = []
    for q in cfg.nodes:
        try:
            nodes_ok.append(is_ordinary_node(cfg.curve, q))
        except ValueError:
            nodes_ok.append(False)
    audit = None
    certified = p_on and smooth and tmatch and total and all(nodes_ok)
    detail = ""
    if certified:
        audit = singular_locus_audit(cfg.curve, cfg.nodes, seed)
        certified = audit.certified
        detail = audit.detail
    else:
        detail = "pointwise certificates failed"
    rep = CertificationReport(
        p_on, smooth, tmatch, infl, total, tuple(nodes_ok), audit, certified, detail
    )
    cfg.certification = rep
    return rep


def _gradient(cfg: NodalConfiguration):
    x, y, z = cfg.p.coords()
    return [cfg.curve.form.partial(v).evaluate(x, y, z) for v in range(3)]


# ---------------------------------------------------------------------------
# General-position certificate (emptiness + contact bound)


@dataclass(frozen=True)
class GeneralPositionReport:
    """Certificate that the nodes impose independent conditions in low degree
    and the critical-degree system has bounded contact at the marked point.

    max_multiplicity_found is None when some member of the critical system
    vanishes along the branch beyond the truncation (it contains the local
    component), and -1 when the critical system is empty.
    """

    k: int
    empties_verified: tuple[tuple[int, bool], ...]
    multiplicity_bound_verified: bool
    max_multiplicity_found: int | None
    bound: int
    holds: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "empties_verified": [list(t) for t in self.empties_verified],
            "multiplicity_bound_verified": self.multiplicity_bound_verified,
            "max_multiplicity_found": self.max_multiplicity_found,
            "bound": self.bound,
            "holds": self.holds,
        }


def check_general_position(cfg: NodalConfiguration) -> GeneralPositionReport:
    """Verify the two-part position condition at the configuration's marked
    point: systems of degree below the critical degree k through the nodes
    are empty, and the degree-k system has contact at most k(k+3)/2 - delta
    with the branch at the point."""
    if cfg.curve is None:
        raise ConfigurationError("general-position check needs a curve")
    delta = len(cfg.nodes)
    k = min_system_degree(delta)
    empties = []
    for ell in range(k):
        sys_ell = through_points(ell, cfg.nodes)
        empties.append((ell, sys_ell.is_empty))
    bound = k * (k + 3) // 2 - delta
    sys_k = through_points(k, cfg.nodes)
    if sys_k.is_empty:
        max_mult: int | None = -1
        verified = True
    else:
        order = k * cfg.d + 2
        branch = branch_parametrization(cfg.curve, cfg.p, order)
        pulls = branch.pullback_many(sys_k.basis)
        rows = [
            kernels.clear_row_denominators(list(s.coeffs)) for s in pulls
        ]
        pivots, _ = kernels.row_echelon_int(rows)
        if len(pivots) < len(sys_k.basis):
            max_mult = None
            verified = False
        else:
            max_mult = pivots[-1]
            verified = max_mult <= bound
    holds = verified and all(v for _, v in empties)
    return GeneralPositionReport(
        k, tuple(empties), verified, max_mult, bound, holds
    )


# ---------------------------------------------------------------------------
# Canonical adjoints and gap sequences


def canonical_adjoints(curve: PlaneCurve, nodes) -> LinearSystem:
    """Forms of degree d-3 through every node; the basis size must equal the
    genus of the normalized curve."""
    nodes = tuple(nodes)
    d = curve.degree
    if d < 3:
        raise ConfigurationError("canonical adjoints need degree at least 3")
    g = genus_of(d, len(nodes))
    system = through_points(d - 3, nodes)
    if len(system.basis) != g:
        raise ConfigurationError(
            f"adjoint system has dimension {len(system.basis)}, expected genus {g}: "
            "nodes do not impose independent conditions"
        )
    return system


def gap_sequence_at(
    curve: PlaneCurve, nodes, p: ProjectivePoint
) -> GapSequence:
    """Gap sequence at a smooth point, from pivot valuations of the adjoint
    system pulled back along the branch.

    The adjoint basis restricted to the branch is row-reduced; the pivot
    columns are the attained vanishing orders v_1 < ... < v_g, and the gaps
    are v_i + 1.  Retries once at doubled truncation if fewer than g pivots
    emerge.
    """
    nodes = tuple(nodes)
    d = curve.degree
    system = canonical_adjoints(curve, nodes)
    g = len(system.basis)
    if g == 0:
        return GapSequence(())
    trunc = max((d - 3) * d + 2, d + 2)
    for attempt in range(2):
        branch = branch_parametrization(curve, p, trunc)
        pulls = branch.pullback_many(system.basis)
        rows = [kernels.clear_row_denominators(list(s.coeffs)) for s in pulls]
        pivots, _ = kernels.row_echelon_int(rows)
        if len(pivots) == g:
            return GapSequence(tuple(v + 1 for v in pivots))
        trunc *= 2
    raise ConfigurationError(
        "adjoint pullbacks are rank-deficient: inconsistent configuration "
        "or insufficient truncation"
    )


def adjoint_contact_basis(
    curve: PlaneCurve, nodes, p: ProjectivePoint
) -> list[tuple[TernaryForm, int]]:
    """Echelonized adjoint forms with their contact orders at p, one per gap.

    Gauss-Jordan over the rationals with combination tracking, so each
    returned form is an actual member of the adjoint system attaining the
    pivot valuation.
    """
    system = canonical_adjoints(curve, nodes)
    g = len(system.basis)
    if g == 0:
        return []
    d = curve.degree
    trunc = max((d - 3) * d + 2, d + 2)
    branch = branch_parametrization(curve, p, trunc)
    pulls = branch.pullback_many(system.basis)
    rows = [[Fraction(c) for c in s.coeffs] for s in pulls]
    combo = [
        [Fraction(1 if i == j else 0) for j in range(g)] for i in range(g)
    ]
    out = []
    r = 0
    for col in range(trunc):
        pivot = None
        for i in range(r, g):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        combo[r], combo[pivot] = combo[pivot], combo[r]
        pv = rows[r][col]
        for i in range(g):
            if i == r or rows[i][col] == 0:
                continue
            factor = rows[i][col] / pv
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
            combo[i] = [a - factor * b for a, b in zip(combo[i], combo[r])]
        form = TernaryForm.zero(system.degree)
        for lam, basis_form in zip(combo[r], system.basis):
            if lam:
                form = form + basis_form.scale(lam)
        out.append((form.primitive(), col))
        r += 1
        if r == g:
            break
    if len(out) != g:
        raise ConfigurationError("adjoint pullbacks are rank-deficient")
    return out


# ---------------------------------------------------------------------------
# Table-row classification


def _conic_matrix_det(conic: TernaryForm) -> Fraction:
    c = conic.coeffs
    a = c.get((2, 0, 0), Fraction(0))
    b = c.get((0, 2, 0), Fraction(0))
    cc = c.get((0, 0, 2), Fraction(0))
    d = c.get((1, 1, 0), Fraction(0)) / 2
    e = c.get((1, 0, 1), Fraction(0)) / 2
    f = c.get((0, 1, 1), Fraction(0)) / 2
    return (
        a * (b * cc - f * f)
        - d * (d * cc - f * e)
        + e * (d * f - b * e)
    )


def _max_collinear_group(nodes):
    """Largest subset of nodes on one line; returns (size, line or None)."""
    best = (2, None)
    if len(nodes) < 2:
        return (len(nodes), None)
    seen = set()
    for i, j in combinations(range(len(nodes)), 2):
        line = join_line(nodes[i], nodes[j])
        key = tuple(sorted(line.coeffs.items()))
        if key in seen:
            continue
        seen.add(key)
        count = sum(
            1 for q in nodes if line.evaluate(*q.coords()) == 0
        )
        if count > best[0] or best[1] is None:
            best = (count, line)
    return best


def _point_on(form: TernaryForm, p: ProjectivePoint) -> bool:
    return form.evaluate(*p.coords()) == 0


def classify_table_row(cfg: NodalConfiguration) -> TableRowId:
    """Match a certified configuration to its table row.

    Exact collinearity and conic predicates are evaluated from most special
    to most general; the computed gap sequence is then cross-checked against
    the matched row, and any contradiction is raised loudly.
    """
    if cfg.curve is None:
        raise ConfigurationError("classification needs a curve")
    delta = len(cfg.nodes)
    if not 1 <= delta <= 5:
        raise ConfigurationError("classification covers 1 <= delta <= 5")
    row = _classify_geometry(cfg)
    computed = gap_sequence_at(cfg.curve, cfg.nodes, cfg.p)
    expected = gaps(table_row(cfg.d, row))
    if tuple(computed) != tuple(expected.values):
        raise ClassificationError(
            f"configuration classifies as row {row} but its gap sequence "
            f"{list(computed)} differs from the row's {list(expected.values)}"
        )
    return row


def _classify_geometry(cfg: NodalConfiguration) -> TableRowId:
    delta = len(cfg.nodes)
    nodes = cfg.nodes
    p = cfg.p
    if delta == 1:
        return TableRowId(1, 1)
    if delta == 2:
        line = join_line(nodes[0], nodes[1])
        return TableRowId(2, 2) if _point_on(line, p) else TableRowId(2, 1)
    if delta == 3:
        if collinear(nodes):
            line = join_line(nodes[0], nodes[1])
            return TableRowId(3, 3) if _point_on(line, p) else TableRowId(3, 2)
        return TableRowId(3, 1)
    size, line = _max_collinear_group(nodes)
    if delta == 4:
        if size == 4:
            return TableRowId(4, 5) if _point_on(line, p) else TableRowId(4, 4)
        if size == 3 and _point_on(line, p):
            return TableRowId(4, 3)
        return _classify_by_conic(cfg, through_p=True)
    # delta == 5
    if size == 5:
        return TableRowId(5, 7) if _point_on(line, p) else TableRowId(5, 6)
    if size == 4:
        return TableRowId(5, 5) if _point_on(line, p) else TableRowId(5, 4)
    return _classify_by_conic(cfg, through_p=False)


def _classify_by_conic(cfg: NodalConfiguration, through_p: bool) -> TableRowId:
    delta = len(cfg.nodes)
    pts = list(cfg.nodes) + ([cfg.p] if through_p else [])
    system = through_points(2, pts)
    if len(system.basis) != 1:
        raise UnclassifiedConfiguration(
            f"conic through the marked points has projective dimension "
            f"{system.dim_projective}, expected 0"
        )
    conic = system.basis[0]
    if not through_p and not _point_on(conic, cfg.p):
        return TableRowId(5, 1)
    if not through_p and _conic_matrix_det(conic) == 0:
        raise UnclassifiedConfiguration(
            "conic through the nodes and the marked point is reducible"
        )
    contact = intersection_multiplicity(cfg.curve, conic, cfg.p, order=2 * cfg.d + 2)
    if isinstance(contact, AtLeast):
        raise UnclassifiedConfiguration("conic contains the branch locally")
    if delta == 4:
        if contact == 2:
            return TableRowId(4, 2)
        if contact == 1:
            return TableRowId(4, 1)
        raise UnclassifiedConfiguration(
            f"conic contact {contact} at the marked point matches no row"
        )
    if contact == 1:
        return TableRowId(5, 2)
    if contact == 2:
        return TableRowId(5, 3)
    raise UnclassifiedConfiguration(
        f"conic contact {contact} at the marked point matches no row"
    )
