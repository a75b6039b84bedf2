"""Topological ternary semigroups and groups on finite carriers.

``mode`` decides whether the Hausdorff clause is enforced (``"strict"``) or
waived (``"relaxed"``).  Finite Hausdorff spaces are discrete, so relaxed
mode is the only way to see non-trivial topology; every verdict produced
here carries the mode it was computed under.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .congruence import Partition, is_congruence, quotient_semigroup
from .core import (
    SubSet,
    TernaryTable,
    as_subset,
    inverse_of,
    is_ternary_group,
    is_ternary_subgroup,
    normality_report,
    set_product,
)
from .errors import ArgumentError, StateError, StructuralError
from .finitetop import (
    ElementMap,
    FiniteTopology,
    is_continuous,
    is_hausdorff,
    is_homeomorphism,
    is_open_map,
    is_quotient_map,
    product_map,
    product_topology,
    quotient_topology,
)

MODES = ("strict", "relaxed")


@dataclass(frozen=True, eq=False)
class TopTernaryStructure:
    table: TernaryTable
    topology: FiniteTopology
    mode: str = "strict"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ArgumentError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.table.order != self.topology.order:
            raise ArgumentError("table and topology carriers differ")

    @property
    def order(self) -> int:
        return self.table.order

    @cached_property
    def multiplication_map(self) -> ElementMap:
        # row-major triple index coincides with the cube layout
        return ElementMap(self.order ** 3, self.order, self.table.cube)

    @cached_property
    def triple_product(self) -> FiniteTopology:
        return product_topology(self.topology, self.topology, self.topology)

    @cached_property
    def hausdorff(self) -> bool:
        return is_hausdorff(self.topology)

    @cached_property
    def multiplication_continuous(self) -> bool:
        return is_continuous(self.multiplication_map, self.triple_product, self.topology)

    @cached_property
    def inverses(self) -> tuple[int | None, ...]:
        return tuple(inverse_of(self.table, a) for a in range(self.order))

    @cached_property
    def inversion_map(self) -> ElementMap:
        missing = [a for a, b in enumerate(self.inverses) if b is None]
        if missing:
            raise StateError(f"element {missing[0]} has no inverse")
        return ElementMap(self.order, self.order, self.inverses)

    @cached_property
    def inversion_continuous(self) -> bool:
        return is_continuous(self.inversion_map, self.topology, self.topology)

    def with_mode(self, mode: str) -> TopTernaryStructure:
        return TopTernaryStructure(self.table, self.topology, mode)


def is_top_ternary_semigroup(X: TopTernaryStructure) -> bool:
    X.table.require_associative()
    if not X.multiplication_continuous:
        return False
    return X.mode == "relaxed" or X.hausdorff


def _require_group(X: TopTernaryStructure) -> None:
    if not is_ternary_group(X.table):
        raise StateError(f"{X.table.name or 'table'} is not a ternary group")
    X.inversion_map  # raises StateError naming the element without inverse


def is_top_ternary_group(X: TopTernaryStructure) -> bool:
    _require_group(X)
    return is_top_ternary_semigroup(X) and X.inversion_continuous


def _passes_top_group(X: TopTernaryStructure) -> bool:
    """``is_top_ternary_group`` that answers False instead of raising on non-groups."""
    if not is_ternary_group(X.table) or None in X.inverses:
        return False
    return is_top_ternary_group(X)


class Translations(NamedTuple):
    left: ElementMap
    right: ElementMap
    lateral: ElementMap
    inversion: ElementMap


def translation_maps(X: TopTernaryStructure, a: int, b: int) -> Translations:
    """``x -> abx``, ``x -> xab``, ``x -> axb`` and ``x -> x^-1``.

    On a topological ternary group all four must be homeomorphisms; a
    failure raises StructuralError.
    """
    _require_group(X)
    T, n = X.table, X.order
    maps = Translations(
        ElementMap(n, n, [T(a, b, x) for x in range(n)]),
        ElementMap(n, n, [T(x, a, b) for x in range(n)]),
        ElementMap(n, n, [T(a, x, b) for x in range(n)]),
        X.inversion_map,
    )
    if is_top_ternary_group(X):
        for name, m in zip(Translations._fields, maps):
            if not is_homeomorphism(m, X.topology, X.topology):
                raise StructuralError(f"{name} translation for ({a}, {b}) is not a homeomorphism")
    return maps


PATTERNS = ("AAU", "AUA", "UAA")


def translated_open(X: TopTernaryStructure, A, U, pattern: str) -> tuple[SubSet, bool]:
    """The set product ``AAU``, ``AUA`` or ``UAA`` and whether it is open."""
    n = X.order
    A, U = as_subset(n, A), as_subset(n, U)
    if pattern not in PATTERNS:
        raise ArgumentError(f"pattern must be one of {PATTERNS}")
    if not X.topology.is_open(U):
        raise ArgumentError(f"{U} is not open")
    factors = [A if ch == "A" else U for ch in pattern]
    product = set_product(X.table, *factors)
    is_open = X.topology.is_open(product)
    if not is_open and _passes_top_group(X):
        raise StructuralError(f"{pattern} with A={A}, U={U} is not open in a topological ternary group")
    return product, is_open


def coset_partition(T: TernaryTable, H: SubSet) -> tuple[Partition, list[SubSet]]:
    """Classes of ``a ~ b iff aHH = bHH``; verifies each class equals ``aHH``."""
    n = T.order
    cosets = [set_product(T, [a], H, H) for a in range(n)]
    P = Partition(tuple(c.bits for c in cosets))
    for a in range(n):
        if a not in cosets[a]:
            raise StructuralError(f"{a} is not in its own coset {cosets[a]}")
    for cl in P.classes():
        for a in cl:
            if cosets[a] != cl:
                raise StructuralError(f"coset {cosets[a]} differs from the class {cl} of {a}")
    return P, [cosets[r] for r in P.representatives()]


@dataclass(frozen=True)
class OpenSubgroupVerdict:
    closed: bool
    cosets: tuple[SubSet, ...]
    cosets_open: bool
    asserted: bool


def open_subgroup_is_closed(X: TopTernaryStructure, H) -> OpenSubgroupVerdict:
    """For an open ternary subgroup, check that it is closed via its coset partition."""
    n = X.order
    H = as_subset(n, H)
    if not H or not is_ternary_group(X.table) or not is_ternary_subgroup(X.table, H):
        raise ArgumentError(f"{H} is not a ternary subgroup of a ternary group")
    if not X.topology.is_open(H):
        raise ArgumentError(f"{H} is not open")
    _, cosets = coset_partition(X.table, H)
    cosets_open = all(X.topology.is_open(c) for c in cosets)
    closed = X.topology.is_closed(H)
    asserted = X.mode == "strict" and _passes_top_group(X)
    if asserted and not (closed and cosets_open):
        raise StructuralError(f"open subgroup {H} of a topological ternary group is not closed")
    return OpenSubgroupVerdict(closed, tuple(cosets), cosets_open, asserted)


def is_closed_congruence(X: TopTernaryStructure, P: Partition) -> bool:
    """The pair set of ``P`` is closed in ``S x S``."""
    n = X.order
    lab = P.labels
    bits = 0
    for a, b in itertools.product(range(n), repeat=2):
        if lab[a] == lab[b]:
            bits |= 1 << (a * n + b)
    return product_topology(X.topology, X.topology).closed_mask(bits)


@dataclass(frozen=True)
class CosetSteps:
    projection_open: bool
    triple_quotient: bool
    multiplication_continuous: bool
    inversion_continuous: bool
    relation_closed: bool
    hausdorff: bool
    asserted: bool

    @property
    def passed(self) -> bool:
        return all(
            (self.projection_open, self.triple_quotient, self.multiplication_continuous,
             self.inversion_continuous, self.relation_closed, self.hausdorff)
        )


@dataclass(frozen=True)
class CosetQuotient:
    structure: TopTernaryStructure
    projection: ElementMap
    cosets: tuple[SubSet, ...]
    steps: CosetSteps


def coset_quotient_group(X: TopTernaryStructure, H) -> CosetQuotient:
    """``S/H`` with ``(xHH, yHH, zHH) -> (xyz)HH`` and the quotient topology."""
    T, n = X.table, X.order
    H = as_subset(n, H)
    _require_group(X)
    if not H or not normality_report(T, H).normal:
        raise ArgumentError(f"{H} is not a normal ternary subgroup")
    P, cosets = coset_partition(T, H)
    if not is_congruence(T, P):
        raise StructuralError("coset product depends on representatives")
    Q = quotient_semigroup(T, P)
    pi = Q.natural_map
    inv = X.inverses
    quotient_inverse = [pi(inv[r]) for r in Q.representatives]
    for x in range(n):
        if pi(inv[x]) != quotient_inverse[pi(x)]:
            raise StructuralError("coset inversion depends on representatives")
    for c in range(Q.table.order):
        if inverse_of(Q.table, c) != quotient_inverse[c]:
            raise StructuralError(f"a^-1 HH is not the inverse of coset {c}")
    top = quotient_topology(X.topology, pi)
    Y = TopTernaryStructure(Q.table, top, X.mode)

    pi3 = product_map(pi, pi, pi)
    steps = CosetSteps(
        projection_open=is_open_map(pi, X.topology, top),
        triple_quotient=is_quotient_map(pi3, X.triple_product, Y.triple_product),
        multiplication_continuous=Y.multiplication_continuous,
        inversion_continuous=Y.inversion_continuous,
        relation_closed=is_closed_congruence(X, P),
        hausdorff=Y.hausdorff,
        asserted=X.mode == "strict" and is_top_ternary_group(X),
    )
    if steps.asserted and not steps.passed:
        raise StructuralError(f"coset quotient by {H} fails a step: {steps}")
    return CosetQuotient(Y, pi, tuple(cosets), steps)


@dataclass(frozen=True)
class QuotientReport:
    """Hypotheses and conclusions of the quotient theorem for one congruence.

    Hypotheses: the source is a topological ternary semigroup (in its mode),
    the congruence is closed, and ``π x π x π`` is a quotient map.
    Conclusions: the induced multiplication is continuous and the quotient
    is Hausdorff.  Local compactness is automatic on finite spaces.
    """

    source_top_semigroup: bool
    congruence_closed: bool
    triple_quotient: bool
    pair_quotient: bool
    multiplication_continuous: bool
    diagonal_closed: bool
    quotient_hausdorff: bool
    violations: tuple[str, ...]

    @property
    def hypotheses(self) -> tuple[bool, bool, bool]:
        return (self.source_top_semigroup, self.congruence_closed, self.triple_quotient)

    @property
    def conclusions(self) -> tuple[bool, bool]:
        return (self.multiplication_continuous, self.quotient_hausdorff)


@dataclass(frozen=True)
class TopQuotient:
    structure: TopTernaryStructure
    projection: ElementMap
    report: QuotientReport


def quotient_top_semigroup(X: TopTernaryStructure, P: Partition) -> TopQuotient:
    Q = quotient_semigroup(X.table, P)
    pi = Q.natural_map
    top = quotient_topology(X.topology, pi)
    Y = TopTernaryStructure(Q.table, top, X.mode)
    pair_top = product_topology(top, top)
    m = Q.table.order
    diag = sum(1 << (i * m + i) for i in range(m))

    source_ok = is_top_ternary_semigroup(X)
    closed = is_closed_congruence(X, P)
    triple = is_quotient_map(product_map(pi, pi, pi), X.triple_product, Y.triple_product)
    cont = Y.multiplication_continuous
    haus = Y.hausdorff
    violations = []
    if source_ok and triple and not cont:
        violations.append("induced multiplication not continuous")
    if source_ok and triple and closed and not haus:
        violations.append("quotient by a closed congruence not Hausdorff")
    report = QuotientReport(
        source_top_semigroup=source_ok,
        congruence_closed=closed,
        triple_quotient=triple,
        pair_quotient=is_quotient_map(product_map(pi, pi), product_topology(X.topology, X.topology), pair_top),
        multiplication_continuous=cont,
        diagonal_closed=pair_top.closed_mask(diag),
        quotient_hausdorff=haus,
        violations=tuple(violations),
    )
    if violations and X.mode == "strict":
        raise StructuralError("; ".join(violations))
    return TopQuotient(Y, pi, report)
