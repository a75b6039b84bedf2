"""Congruences on finite ternary semigroups and their quotients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import SubSet, TernaryTable, as_subset, is_ideal
from .errors import ArgumentError, StructuralError
from .finitetop import ElementMap

Sextuple = tuple[int, int, int, int, int, int]
WELL_DEFINED_RECHECK_MAX = 8
ENUMERATION_MAX = 10


def _normalize(labels: Sequence[int]) -> tuple[int, ...]:
    remap: dict[int, int] = {}
    return tuple(remap.setdefault(v, len(remap)) for v in labels)


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on ``{0..order-1}`` as a class-id vector.

    Class ids are numbered in order of first occurrence, so the
    representative (minimum) of class ``k`` increases with ``k``.
    """

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", _normalize(self.labels))

    @classmethod
    def from_classes(cls, order: int, classes: Iterable[Iterable[int]]) -> Partition:
        labels = [-1] * order
        for k, cl in enumerate(classes):
            for x in cl:
                if not 0 <= x < order:
                    raise ArgumentError(f"element {x} outside carrier of order {order}")
                if labels[x] != -1:
                    raise ArgumentError(f"element {x} appears in two classes")
                labels[x] = k
        missing = [x for x, v in enumerate(labels) if v == -1]
        if missing:
            raise ArgumentError(f"elements {missing} are in no class")
        return cls(tuple(labels))

    @classmethod
    def identity(cls, order: int) -> Partition:
        return cls(tuple(range(order)))

    @classmethod
    def full(cls, order: int) -> Partition:
        return cls((0,) * order)

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def num_classes(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def class_of(self, x: int) -> int:
        return self.labels[x]

    def classes(self) -> list[SubSet]:
        bits = [0] * self.num_classes
        for x, k in enumerate(self.labels):
            bits[k] |= 1 << x
        return [SubSet(self.order, b) for b in bits]

    def representatives(self) -> tuple[int, ...]:
        reps: dict[int, int] = {}
        for x, k in enumerate(self.labels):
            reps.setdefault(k, x)
        return tuple(reps[k] for k in range(self.num_classes))

    def pairs(self) -> set[tuple[int, int]]:
        return {(a, b) for a in range(self.order) for b in range(self.order) if self.labels[a] == self.labels[b]}

    def refines(self, other: Partition) -> bool:
        """True iff every class of ``self`` lies inside a class of ``other``."""
        return all(
            other.labels[a] == other.labels[b]
            for a, b in itertools.combinations(range(self.order), 2)
            if self.labels[a] == self.labels[b]
        )

    def natural_map(self) -> ElementMap:
        return ElementMap(self.order, self.num_classes, self.labels)

    def __str__(self) -> str:
        return format_partition(self)


def format_partition(P: Partition) -> str:
    """Slash-separated classes, e.g. ``"0 2 4/1 3 5"``."""
    return "/".join(" ".join(map(str, cl)) for cl in P.classes())


def parse_partition(order: int, text: str) -> Partition:
    classes = []
    for chunk in text.split("/"):
        items = chunk.split()
        if not items:
            raise ArgumentError(f"empty class in partition {text!r}")
        try:
            classes.append([int(t) for t in items])
        except ValueError as exc:
            raise ArgumentError(f"non-integer element in partition {text!r}") from exc
    return Partition.from_classes(order, classes)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def is_congruence(T: TernaryTable, P: Partition) -> bool:
    """``(a,b), (c,d), (e,f) ∈ ρ  ⇒  (ace, bdf) ∈ ρ``, scanned class triple by class triple."""
    n = T.order
    if P.order != n:
        raise ArgumentError("partition and table carriers differ")
    cube, lab = T.cube, P.labels
    classes = [cl.elements() for cl in P.classes()]
    for A, B, C in itertools.product(classes, repeat=3):
        target = lab[cube[(A[0] * n + B[0]) * n + C[0]]]
        for a in A:
            for b in B:
                base = (a * n + b) * n
                for c in C:
                    if lab[cube[base + c]] != target:
                        return False
    return True


def find_congruence_violation(T: TernaryTable, P: Partition) -> Sextuple | None:
    """Lexicographically first ``(a,b,c,d,e,f)`` with related pairs but unrelated ``ace``, ``bdf``."""
    if is_congruence(T, P):
        return None
    n, lab = T.order, P.labels
    for a in range(n):
        for b in range(n):
            if lab[a] != lab[b]:
                continue
            for c in range(n):
                for d in range(n):
                    if lab[c] != lab[d]:
                        continue
                    for e in range(n):
                        for f in range(n):
                            if lab[e] == lab[f] and lab[T(a, c, e)] != lab[T(b, d, f)]:
                                return (a, b, c, d, e, f)
    raise StructuralError("class scan and sextuple scan disagree")


def congruence_closure(T: TernaryTable, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Smallest congruence containing ``pairs``.

    Sweeps left (``sta ~ stb``), right (``ast ~ bst``) and lateral
    (``sat ~ sbt``) compatibility over each element and its current root
    until a full sweep merges nothing.
    """
    n = T.order
    uf = _UnionFind(n)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ArgumentError(f"pair {(a, b)} out of range for order {n}")
        uf.union(a, b)
    cube = T.cube
    changed = True
    while changed:
        changed = False
        for a in range(n):
            b = uf.find(a)
            if a == b:
                continue
            for s in range(n):
                for t in range(n):
                    st = (s * n + t) * n
                    changed |= uf.union(cube[st + a], cube[st + b])
                    changed |= uf.union(cube[(a * n + s) * n + t], cube[(b * n + s) * n + t])
                    changed |= uf.union(cube[(s * n + a) * n + t], cube[(s * n + b) * n + t])
    return Partition(tuple(uf.find(x) for x in range(n)))


def rees_congruence(T: TernaryTable, I) -> Partition:
    """``(I x I) ∪ Δ(S)``."""
    n = T.order
    I = as_subset(n, I)
    if not I or not is_ideal(T, I):
        raise ArgumentError(f"{I} is not an ideal")
    lo = min(I)
    P = Partition(tuple(lo if x in I else x for x in range(n)))
    if not is_congruence(T, P):
        raise StructuralError(f"Rees relation of ideal {I} is not a congruence")
    return P


@dataclass(frozen=True)
class QuotientResult:
    table: TernaryTable
    natural_map: ElementMap
    representatives: tuple[int, ...]
    partition: Partition = field(repr=False)


def quotient_semigroup(T: TernaryTable, P: Partition) -> QuotientResult:
    """``(aρ)(bρ)(cρ) = (abc)ρ`` computed on class minima."""
    if P.order != T.order:
        raise ArgumentError("partition and table carriers differ")
    if not is_congruence(T, P):
        raise ArgumentError("partition is not a congruence; the induced product is ill-defined")
    lab = P.labels
    reps = P.representatives()
    m = len(reps)
    cube = tuple(lab[T(reps[i], reps[j], reps[k])] for i, j, k in itertools.product(range(m), repeat=3))
    if T.order <= WELL_DEFINED_RECHECK_MAX:
        for a, b, c in itertools.product(range(T.order), repeat=3):
            if cube[(lab[a] * m + lab[b]) * m + lab[c]] != lab[T(a, b, c)]:
                raise StructuralError(f"induced product depends on representatives at {(a, b, c)}")
    Q = TernaryTable(m, cube, f"{T.name}/{format_partition(P)}")
    if not Q.is_associative and T.is_associative:
        raise StructuralError("quotient of a ternary semigroup is not associative")
    return QuotientResult(Q, P.natural_map(), reps, P)


def verify_diagram(T: TernaryTable, P: Partition) -> bool:
    """``π(f(a,b,c)) = g(π a, π b, π c)`` for every triple."""
    Q = quotient_semigroup(T, P)
    pi = Q.natural_map
    return all(
        pi(T(a, b, c)) == Q.table(pi(a), pi(b), pi(c)) for a, b, c in itertools.product(range(T.order), repeat=3)
    )


def enumerate_congruences(T: TernaryTable) -> list[Partition]:
    """Every congruence, sorted by class-id vector.

    Walks the join-closure of principal congruences from the diagonal, so
    the cost scales with the size of the congruence lattice rather than
    with the number of partitions of the carrier.
    """
    n = T.order
    if n > ENUMERATION_MAX:
        raise ArgumentError(f"congruence enumeration limited to order {ENUMERATION_MAX}, got {n}")
    start = Partition.identity(n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for P in frontier:
            reps = P.representatives()
            base = [(x, reps[P.labels[x]]) for x in range(n)]
            for i, j in itertools.combinations(reps, 2):
                Q = congruence_closure(T, base + [(i, j)])
                if Q not in seen:
                    seen.add(Q)
                    nxt.append(Q)
        frontier = nxt
    return sorted(seen, key=lambda P: P.labels)
