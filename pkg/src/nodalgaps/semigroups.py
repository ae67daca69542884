"""Numerical semigroups of non-gaps at a total inflection point.

Implements the two-generator base semigroup of a degree-d curve, the minimal
(closed-form) family, the recursively defined maximal-weight families, and
the classification table of possible non-gap sets for up to five nodes,
together with gap sequences, weights and pointwise dominance.
"""
from __future__ import annotations

from dataclasses import dataclass


def genus_of(d: int, delta: int = 0) -> int:
    return (d - 1) * (d - 2) // 2 - delta


def standard_bound(d: int) -> int:
    """Bitset bound used for all degree-d semigroups: past every conductor here."""
    return (d - 2) * (d - 1) + d


@dataclass(frozen=True)
class NumericalSemigroup:
    """Cofinite subset of the naturals, materialized as a bitset below `bound`.

    Bit n of `mask` is set iff n is a member.  Everything from `bound` on is
    implicitly a member; construction requires 0 to be a member and the top
    of the window to be filled, so the window always covers the conductor.
    Additive closure is NOT guaranteed; see is_semigroup.
    """

    bound: int
    mask: int

    def __post_init__(self):
        if not self.mask & 1:
            raise ValueError("0 must be a member")
        if self.bound < 2 or not (self.mask >> (self.bound - 1)) & 1:
            raise ValueError("bitset window must reach past the conductor")

    @staticmethod
    def from_members(bound: int, members) -> "NumericalSemigroup":
        mask = 0
        for n in members:
            if 0 <= n < bound:
                mask |= 1 << n
        return NumericalSemigroup(bound, mask)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= self.bound:
            return True
        return bool((self.mask >> n) & 1)

    def with_member(self, n: int) -> "NumericalSemigroup":
        if n <= 0:
            raise ValueError(f"cannot adjoin the non-positive value {n}")
        if n in self:
            raise ValueError(f"value {n} is already a member")
        return NumericalSemigroup(self.bound, self.mask | (1 << n))

    def with_all_from(self, threshold: int) -> "NumericalSemigroup":
        t = max(threshold, 0)
        if t >= self.bound:
            return self
        full = (1 << self.bound) - 1
        tail = full & ~((1 << t) - 1)
        return NumericalSemigroup(self.bound, self.mask | tail)

    def conductor(self) -> int:
        """Least c with every n >= c a member."""
        c = self.bound
        while c > 0 and (c - 1) in self:
            c -= 1
        return c

    def members_below(self, limit: int) -> list[int]:
        return [n for n in range(min(limit, self.bound)) if (self.mask >> n) & 1]

    def gap_values(self) -> list[int]:
        return [n for n in range(1, self.bound) if not (self.mask >> n) & 1]


@dataclass(frozen=True)
class GapSequence:
    """Strictly increasing positive integers: the complement of a non-gap set."""

    values: tuple[int, ...]

    def __post_init__(self):
        if any(a <= 0 for a in self.values):
            raise ValueError("gaps must be positive")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("gaps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def weight(self) -> int:
        return sum(a - i for i, a in enumerate(self.values, start=1))


def gaps(s: NumericalSemigroup) -> GapSequence:
    """The gap sequence: increasing complement below the conductor."""
    return GapSequence(tuple(s.gap_values()))


def weight(seq: GapSequence) -> int:
    return seq.weight()


def dominates(a: GapSequence, b: GapSequence) -> bool:
    """True iff a_i >= b_i pointwise (sequences of equal length)."""
    if len(a) != len(b):
        raise ValueError("gap sequences have different lengths")
    return all(x >= y for x, y in zip(a, b))


def is_semigroup(s: NumericalSemigroup) -> bool:
    """Exhaustive additive-closure check below the bitset bound.

    Sums reaching past the bound land above the conductor, so checking all
    pairs of members below the bound decides closure for the cofinite set.
    """
    full = (1 << s.bound) - 1
    for a in range(1, s.bound):
        if not (s.mask >> a) & 1:
            continue
        shifted = (s.mask << a) & full
        if shifted & ~s.mask:
            return False
    return True


def min_system_degree(delta: int) -> int:
    """Least ell >= 0 with delta <= ell(ell+3)/2: the degree at which plane
    curves through delta points always exist."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    ell = 0
    while ell * (ell + 3) // 2 < delta:
        ell += 1
    return ell


def base_semigroup(d: int) -> NumericalSemigroup:
    """The semigroup generated by d-1 and d."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    bound = standard_bound(d)
    members = set()
    for a in range(0, bound // (d - 1) + 1):
        for b in range(0, (bound - a * (d - 1)) // d + 1):
            members.add(a * (d - 1) + b * d)
    return NumericalSemigroup.from_members(bound, members)


def minimal_family(d: int, delta: int) -> NumericalSemigroup:
    """Closed-form non-gap set of minimal weight for (d, delta).

    The base semigroup plus every integer from the threshold
    (d-k-3)d + k(k+3)/2 - delta + 2 on, where k = min_system_degree(delta).
    """
    if d < 3:
        raise ValueError("degree must be at least 3")
    if not 0 <= delta <= genus_of(d):
        raise ValueError(f"delta={delta} out of range for degree {d}")
    k = min_system_degree(delta)
    threshold = (d - k - 3) * d + k * (k + 3) // 2 - delta + 2
    result = base_semigroup(d).with_all_from(threshold)
    expected = genus_of(d, delta)
    actual = len(result.gap_values())
    if actual != expected:
        raise AssertionError(
            f"minimal family gap count {actual} != genus {expected} at d={d}, delta={delta}"
        )
    return result


MAX_VARIANTS = ("max", "max2", "max3", "max4")


def maximal_family(d: int, delta: int, variant: str = "max") -> NumericalSemigroup:
    """Recursively built maximal-weight non-gap sets.

    max/max2 start from the delta=1 row and adjoin (d-j-2)d+1 resp.
    (d-j-2)d+j at step j; max3/max4 start from the minimal delta=3 set and
    adjoin (d-j-1)d+1 resp. (d-j-1)d+j-1.  The result need not be additively
    closed; construction fails when an adjoined value is non-positive or
    already present (small d).
    """
    if variant not in MAX_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant in ("max", "max2"):
        if delta < 1:
            raise ValueError("max/max2 families require delta >= 1")
        current = table_row(d, TableRowId(1, 1))
        for j in range(2, delta + 1):
            value = (d - j - 2) * d + (1 if variant == "max" else j)
            current = current.with_member(value)
        return current
    if delta < 3:
        raise ValueError("max3/max4 families require delta >= 3")
    current = minimal_family(d, 3)
    for j in range(4, delta + 1):
        value = (d - j - 1) * d + (1 if variant == "max3" else j - 1)
        current = current.with_member(value)
    return current


# ---------------------------------------------------------------------------
# The classification table for 1 <= delta <= 5


@dataclass(frozen=True)
class RowCondition:
    """Geometric condition attached to a table row.

    kind is one of "general", "collinear", "conic".  For collinear rows,
    on_line nodes lie on one line and with_p says whether the inflection
    point is on it; for conic rows, contact is the required intersection
    multiplicity of the conic through the nodes and the point.
    """

    kind: str
    on_line: int = 0
    with_p: bool = False
    contact: int = 0
    text: str = ""


@dataclass(frozen=True)
class TableRowId:
    delta: int
    index: int

    def __post_init__(self):
        if self.delta not in ROW_COUNTS or not 1 <= self.index <= ROW_COUNTS[self.delta]:
            raise ValueError(f"no table row ({self.delta}, {self.index})")

    def as_list(self) -> list[int]:
        return [self.delta, self.index]


ROW_COUNTS = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7}

# (delta, index) -> (parent (delta, index) or None for the base semigroup,
#                    adjoined value (d - a)*d + b given as (a, b))
ROW_DEFS: dict[tuple[int, int], tuple[tuple[int, int] | None, tuple[int, int]]] = {
    (1, 1): (None, (3, 1)),
    (2, 1): ((1, 1), (4, 2)),
    (2, 2): ((1, 1), (4, 1)),
    (3, 1): ((2, 1), (4, 1)),
    (3, 2): ((2, 1), (5, 3)),
    (3, 3): ((2, 2), (5, 1)),
    (4, 1): ((3, 1), (5, 3)),
    (4, 2): ((3, 1), (5, 2)),
    (4, 3): ((3, 1), (5, 1)),
    (4, 4): ((3, 2), (6, 4)),
    (4, 5): ((3, 3), (6, 1)),
    (5, 1): ((4, 1), (5, 2)),
    (5, 2): ((4, 1), (5, 1)),
    (5, 3): ((4, 2), (5, 1)),
    (5, 4): ((4, 1), (6, 4)),
    (5, 5): ((4, 3), (6, 1)),
    (5, 6): ((4, 4), (7, 5)),
    (5, 7): ((4, 5), (7, 1)),
}

ROW_CONDITIONS: dict[tuple[int, int], RowCondition] = {
    (1, 1): RowCondition("general", text="general"),
    (2, 1): RowCondition("general", text="general"),
    (2, 2): RowCondition("collinear", 2, True, text="both nodes and P collinear"),
    (3, 1): RowCondition("general", text="general"),
    (3, 2): RowCondition("collinear", 3, False, text="all 3 nodes collinear, P off the line"),
    (3, 3): RowCondition("collinear", 3, True, text="all 3 nodes and P collinear"),
    (4, 1): RowCondition("general", text="general"),
    (4, 2): RowCondition("conic", contact=2,
                         text="conic through the 4 nodes and P meets the curve twice at P"),
    (4, 3): RowCondition("collinear", 3, True,
                         text="3 nodes and P collinear, the 4th node off the line"),
    (4, 4): RowCondition("collinear", 4, False, text="all 4 nodes collinear, P off the line"),
    (4, 5): RowCondition("collinear", 4, True, text="all 4 nodes and P collinear"),
    (5, 1): RowCondition("general", text="general"),
    (5, 2): RowCondition("conic", contact=1,
                         text="conic through the 5 nodes passes through P transversally"),
    (5, 3): RowCondition("conic", contact=2,
                         text="conic through the 5 nodes meets the curve twice at P"),
    (5, 4): RowCondition("collinear", 4, False,
                         text="4 nodes collinear, the 5th node and P off the line"),
    (5, 5): RowCondition("collinear", 4, True,
                         text="4 nodes and P collinear, the 5th node off the line"),
    (5, 6): RowCondition("collinear", 5, False, text="all 5 nodes collinear, P off the line"),
    (5, 7): RowCondition("collinear", 5, True, text="all 5 nodes and P collinear"),
}

# Row ids realizing the recursive maximal families at each delta.
MAX_ROW_IDS = {2: (2, 2), 3: (3, 3), 4: (4, 5), 5: (5, 7)}
MAX2_ROW_IDS = {2: (2, 1), 3: (3, 2), 4: (4, 4), 5: (5, 6)}
MAX3_ROW_IDS = {3: (3, 1), 4: (4, 3), 5: (5, 5)}
MAX4_ROW_IDS = {3: (3, 1), 4: (4, 1), 5: (5, 4)}


def row_condition(row: TableRowId) -> RowCondition:
    return ROW_CONDITIONS[(row.delta, row.index)]


def table_row(d: int, row: TableRowId) -> NumericalSemigroup:
    """Non-gap set of a table row, built by the row's recursive definition.

    Rejects degrees too small for the row: every adjoined value must be a
    positive integer not already present, which also pins the gap count at
    the genus.
    """
    if d < 3:
        raise ValueError("degree must be at least 3")
    if row.delta > genus_of(d):
        raise ValueError(f"delta={row.delta} exceeds the genus for degree {d}")
    key = (row.delta, row.index)
    chain = []
    k: tuple[int, int] | None = key
    while k is not None:
        parent, adjoin = ROW_DEFS[k]
        chain.append(adjoin)
        k = parent
    current = base_semigroup(d)
    for a, b in reversed(chain):
        value = (d - a) * d + b
        try:
            current = current.with_member(value)
        except ValueError as exc:
            raise ValueError(
                f"row N({row.delta},{row.index}) is not defined at degree {d}: {exc}"
            ) from exc
    return current


def table_row_valid(d: int, row: TableRowId) -> bool:
    try:
        table_row(d, row)
        return True
    except ValueError:
        return False


def all_rows(delta: int) -> list[TableRowId]:
    return [TableRowId(delta, j) for j in range(1, ROW_COUNTS[delta] + 1)]


def family_by_name(name: str, d: int, delta: int, row_index: int | None = None):
    """Resolve a CLI family name to a semigroup (and row id when relevant)."""
    if name == "nd":
        return base_semigroup(d), None
    if name == "n1":
        return minimal_family(d, delta), None
    if name in MAX_VARIANTS:
        return maximal_family(d, delta, name), None
    if name == "row":
        if row_index is None:
            raise ValueError("family 'row' requires a row index")
        row = TableRowId(delta, row_index)
        return table_row(d, row), row
    raise ValueError(f"unknown family {name!r}")
