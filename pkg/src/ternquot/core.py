"""Finite ternary semigroups stored as multiplication cubes.

A ternary table of order ``n`` stores the product ``abc`` at flat position
``a*n*n + b*n + c``.  Subsets of the carrier are bit vectors (``SubSet``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, StateError, StructuralError

Quintuple = tuple[int, int, int, int, int]


@dataclass(frozen=True)
class SubSet:
    """A subset of ``{0, .., order-1}`` encoded as an integer bit vector."""

    order: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ArgumentError(f"negative carrier order {self.order}")
        if self.bits < 0 or self.bits >> self.order:
            raise ArgumentError(f"bits {self.bits:#x} exceed carrier of order {self.order}")

    @classmethod
    def of(cls, order: int, elements: Iterable[int]) -> SubSet:
        bits = 0
        for x in elements:
            if not 0 <= x < order:
                raise ArgumentError(f"element {x} outside carrier of order {order}")
            bits |= 1 << x
        return cls(order, bits)

    @classmethod
    def full(cls, order: int) -> SubSet:
        return cls(order, (1 << order) - 1)

    @classmethod
    def empty(cls, order: int) -> SubSet:
        return cls(order, 0)

    def __iter__(self) -> Iterator[int]:
        return iter(mask_elements(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.order and bool(self.bits >> x & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: SubSet) -> None:
        if other.order != self.order:
            raise ArgumentError(f"carrier mismatch: {self.order} vs {other.order}")

    def __or__(self, other: SubSet) -> SubSet:
        self._check(other)
        return SubSet(self.order, self.bits | other.bits)

    def __and__(self, other: SubSet) -> SubSet:
        self._check(other)
        return SubSet(self.order, self.bits & other.bits)

    def __sub__(self, other: SubSet) -> SubSet:
        self._check(other)
        return SubSet(self.order, self.bits & ~other.bits)

    def __le__(self, other: SubSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: SubSet) -> bool:
        return other <= self

    def complement(self) -> SubSet:
        return SubSet(self.order, ((1 << self.order) - 1) & ~self.bits)

    def elements(self) -> tuple[int, ...]:
        return mask_elements(self.bits)

    def __repr__(self) -> str:
        return f"SubSet({self.order}, {{{', '.join(map(str, self))}}})"


def mask_elements(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def as_subset(order: int, s: SubSet | Iterable[int]) -> SubSet:
    """Coerce an iterable of elements (or a SubSet) to a SubSet of the given carrier."""
    if isinstance(s, SubSet):
        if s.order != order:
            raise ArgumentError(f"subset over carrier {s.order}, expected {order}")
        return s
    return SubSet.of(order, s)


@dataclass(frozen=True)
class TernaryTable:
    """A ternary operation on ``{0, .., order-1}``.

    ``cube`` is a flat tuple of ``order**3`` entries, with ``abc`` at
    ``a*order**2 + b*order + c``.  Associativity is computed on demand and
    cached, never assumed.
    """

    order: int
    cube: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise ArgumentError(f"order must be positive, got {n}")
        cube = tuple(int(v) for v in self.cube)
        object.__setattr__(self, "cube", cube)
        if len(cube) != n ** 3:
            raise ArgumentError(f"cube has {len(cube)} entries, expected {n ** 3}")
        for i, v in enumerate(cube):
            if not 0 <= v < n:
                raise ArgumentError(f"cube entry {i} = {v} outside [0, {n})")

    @classmethod
    def from_function(cls, order: int, fn, name: str = "") -> TernaryTable:
        cube = [fn(a, b, c) for a, b, c in itertools.product(range(order), repeat=3)]
        return cls(order, tuple(cube), name)

    def __call__(self, a: int, b: int, c: int) -> int:
        return mul3(self, a, b, c)

    @cached_property
    def associativity_violation(self) -> Quintuple | None:
        return _first_associativity_violation(self.order, self.cube)

    @property
    def is_associative(self) -> bool:
        return self.associativity_violation is None

    def require_associative(self) -> None:
        if not self.is_associative:
            raise StateError(
                f"table {self.name or '<anonymous>'} is not associative: "
                f"violation at {self.associativity_violation}"
            )

    def relabel(self, perm: Sequence[int]) -> TernaryTable:
        """Return the isomorphic copy with element ``x`` renamed ``perm[x]``."""
        n = self.order
        cube = [0] * (n ** 3)
        for a, b, c in itertools.product(range(n), repeat=3):
            cube[(perm[a] * n + perm[b]) * n + perm[c]] = perm[self.cube[(a * n + b) * n + c]]
        return TernaryTable(n, tuple(cube), self.name)

    @property
    def carrier(self) -> SubSet:
        return SubSet.full(self.order)


def mul3(T: TernaryTable, a: int, b: int, c: int) -> int:
    n = T.order
    if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
        raise ArgumentError(f"({a}, {b}, {c}) out of range for order {n}")
    return T.cube[(a * n + b) * n + c]


def _first_associativity_violation(n: int, cube: Sequence[int]) -> Quintuple | None:
    n2 = n * n
    for a, b, c in itertools.product(range(n), repeat=3):
        x = cube[a * n2 + b * n + c]
        for d in range(n):
            y = cube[b * n2 + c * n + d]
            for e in range(n):
                z = cube[c * n2 + d * n + e]
                left = cube[x * n2 + d * n + e]
                if left != cube[a * n2 + y * n + e] or left != cube[a * n2 + b * n + z]:
                    return (a, b, c, d, e)
    return None


def find_associativity_violation(T: TernaryTable) -> Quintuple | None:
    """Lexicographically first ``(a,b,c,d,e)`` with ``(abc)de``, ``a(bcd)e``, ``ab(cde)`` not all equal."""
    return T.associativity_violation


def is_ternary_semigroup(T: TernaryTable) -> bool:
    return T.is_associative


def set_product(T: TernaryTable, A, B, C) -> SubSet:
    n = T.order
    A, B, C = (as_subset(n, X) for X in (A, B, C))
    cube = T.cube
    bits = 0
    for a in A:
        for b in B:
            base = (a * n + b) * n
            for c in C:
                bits |= 1 << cube[base + c]
    return SubSet(n, bits)


def is_ideal(T: TernaryTable, I) -> bool:
    n = T.order
    I = as_subset(n, I)
    if not I:
        raise ArgumentError("an ideal must be non-empty")
    S = T.carrier
    return (
        set_product(T, S, S, I) <= I
        and set_product(T, S, I, S) <= I
        and set_product(T, I, S, S) <= I
    )


def all_ideals(T: TernaryTable) -> list[SubSet]:
    """All ideals in increasing bit-vector order (exhaustive over non-empty subsets)."""
    n = T.order
    if n > 16:
        raise ArgumentError(f"ideal enumeration limited to order 16, got {n}")
    return [SubSet(n, bits) for bits in range(1, 1 << n) if is_ideal(T, SubSet(n, bits))]


def _inverse_candidates(T: TernaryTable, a: int) -> list[int]:
    n = T.order
    out = []
    for b in range(n):
        if all(
            mul3(T, a, b, x) == x and mul3(T, b, a, x) == x and mul3(T, x, a, b) == x and mul3(T, x, b, a) == x
            for x in range(n)
        ):
            out.append(b)
    return out


def inverse_of(T: TernaryTable, a: int) -> int | None:
    """The ``b`` with ``abx = bax = xab = xba = x`` for every ``x``, or None."""
    T.require_associative()
    if not 0 <= a < T.order:
        raise ArgumentError(f"element {a} out of range for order {T.order}")
    found = _inverse_candidates(T, a)
    if len(found) > 1:
        raise StructuralError(f"element {a} has several inverses {found}")
    return found[0] if found else None


def inverse_vector(T: TernaryTable) -> tuple[int | None, ...]:
    return tuple(inverse_of(T, a) for a in range(T.order))


def _is_group_cube(n: int, cube: Sequence[int]) -> bool:
    full = (1 << n) - 1
    for a, b in itertools.product(range(n), repeat=2):
        left = lateral = right = 0
        for x in range(n):
            left |= 1 << cube[(a * n + b) * n + x]
            lateral |= 1 << cube[(a * n + x) * n + b]
            right |= 1 << cube[(x * n + a) * n + b]
        if left != full or lateral != full or right != full:
            return False
    return True


def is_ternary_group(T: TernaryTable) -> bool:
    """True iff ``abx=c``, ``axb=c`` and ``xab=c`` are solvable for all ``a, b, c``."""
    T.require_associative()
    return _is_group_cube(T.order, T.cube)


def restrict(T: TernaryTable, H) -> TernaryTable:
    """The table of ``H`` (relabelled ``0..|H|-1`` in increasing order); requires ``HHH ⊆ H``."""
    H = as_subset(T.order, H)
    elems = H.elements()
    if not elems:
        raise ArgumentError("cannot restrict to the empty set")
    index = {x: i for i, x in enumerate(elems)}
    cube = []
    for a, b, c in itertools.product(elems, repeat=3):
        v = mul3(T, a, b, c)
        if v not in index:
            raise ArgumentError(f"subset is not closed: {a}{b}{c} = {v}")
        cube.append(index[v])
    return TernaryTable(len(elems), tuple(cube), f"{T.name}|{list(elems)}")


def is_ternary_subgroup(T: TernaryTable, H) -> bool:
    H = as_subset(T.order, H)
    if not H:
        raise ArgumentError("a ternary subgroup must be non-empty")
    T.require_associative()
    if not set_product(T, H, H, H) <= H:
        return False
    return is_ternary_group(restrict(T, H))


def all_ternary_subgroups(T: TernaryTable) -> list[SubSet]:
    n = T.order
    if n > 16:
        raise ArgumentError(f"subgroup enumeration limited to order 16, got {n}")
    return [SubSet(n, bits) for bits in range(1, 1 << n) if is_ternary_subgroup(T, SubSet(n, bits))]


def _require_subgroup(T: TernaryTable, N: SubSet) -> None:
    if not is_ternary_group(T):
        raise ArgumentError("cosets are defined inside a ternary group")
    if not is_ternary_subgroup(T, N):
        raise ArgumentError(f"{N} is not a ternary subgroup")


def left_coset(T: TernaryTable, N, a: int) -> SubSet:
    """``aNN``."""
    N = as_subset(T.order, N)
    _require_subgroup(T, N)
    return set_product(T, [a], N, N)


def right_coset(T: TernaryTable, N, a: int) -> SubSet:
    """``NNa``."""
    N = as_subset(T.order, N)
    _require_subgroup(T, N)
    return set_product(T, N, N, [a])


@dataclass(frozen=True)
class NormalityReport:
    """Outcome of the three equivalent normality conditions.

    ``conjugation`` is None when no element has an inverse; ``unevaluated``
    lists the elements skipped by the conjugation test.
    """

    normal: bool
    conjugation: bool | None
    translation: bool
    coset_equality: bool
    unevaluated: tuple[int, ...] = ()


def normality_report(T: TernaryTable, H) -> NormalityReport:
    n = T.order
    H = as_subset(n, H)
    _require_subgroup(T, H)

    # ghH = Hgh for all g, h
    translation = all(
        set_product(T, [g], [h], H) == set_product(T, H, [g], [h])
        for g, h in itertools.product(range(n), repeat=2)
    )
    coset_equality = True
    for g in range(n):
        hhg = set_product(T, H, H, [g])
        if hhg != set_product(T, [g], H, H) or hhg != set_product(T, H, [g], H):
            coset_equality = False
            break

    conjugation: bool | None = None
    skipped = []
    for g in range(n):
        gi = inverse_of(T, g)
        if gi is None:
            skipped.append(g)
            continue
        ok = set_product(T, [g], H, [gi]) <= H
        conjugation = ok if conjugation is None else conjugation and ok

    if coset_equality != translation:
        raise StructuralError(f"normality conditions disagree on {H}: ghH=Hgh {translation}, HHg=gHH=HgH {coset_equality}")
    if conjugation is not None and conjugation != translation and (not conjugation or not skipped):
        raise StructuralError(f"normality conditions disagree on {H}: gHg^-1 {conjugation}, ghH=Hgh {translation}")
    return NormalityReport(translation, conjugation, translation, coset_equality, tuple(skipped))


def is_normal_subgroup(T: TernaryTable, H) -> bool:
    return normality_report(T, H).normal


# ---------------------------------------------------------------------------
# binary groups (heap substrate)


@dataclass(frozen=True)
class GroupTable:
    """A finite binary group given by its Cayley table."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    labels: tuple = field(default=(), compare=False)
    name: str = field(default="", compare=False)

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]], labels: Sequence = (), name: str = "") -> GroupTable:
        n = len(rows)
        table = tuple(tuple(int(v) for v in row) for row in rows)
        ids = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
        if len(table) == 0 or any(len(r) != n for r in table) or not ids:
            raise ArgumentError("table is not square or has no identity")
        e = ids[0]
        inv = []
        for x in range(n):
            cands = [y for y in range(n) if table[x][y] == e and table[y][x] == e]
            if not cands:
                raise ArgumentError(f"element {x} has no inverse")
            inv.append(cands[0])
        return cls(n, table, e, tuple(inv), tuple(labels), name)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, label) -> int:
        return self.labels.index(label)

    def validate(self) -> None:
        n, t = self.order, self.table
        if len(t) != n or any(len(r) != n for r in t):
            raise ArgumentError("group table is not square")
        if any(not 0 <= v < n for r in t for v in r):
            raise ArgumentError("group table entry out of range")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ArgumentError(f"group operation not associative at {(a, b, c)}")
        e = self.identity
        for x in range(n):
            if t[e][x] != x or t[x][e] != x:
                raise ArgumentError(f"{e} is not an identity")
            if t[x][self.inverses[x]] != e or t[self.inverses[x]][x] != e:
                raise ArgumentError(f"inverse of {x} is wrong")


def cyclic_group(n: int) -> GroupTable:
    return GroupTable.from_table([[(a + b) % n for b in range(n)] for a in range(n)], tuple(range(n)), f"Z{n}")


def symmetric_group(k: int) -> GroupTable:
    """Permutations of ``range(k)`` in lexicographic order; ``p*q`` means ``p∘q``."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return GroupTable.from_table(rows, tuple(perms), f"S{k}")


def dihedral_group(m: int) -> GroupTable:
    """Order ``2m``; element ``i + m*j`` is ``r^i s^j``."""
    def mul(x: int, y: int) -> int:
        i, a = x % m, x // m
        k, b = y % m, y // m
        return (i + (k if a == 0 else -k)) % m + m * ((a + b) % 2)

    n = 2 * m
    labels = tuple(f"r{i}" if j == 0 else f"r{i}s" for j in range(2) for i in range(m))
    return GroupTable.from_table([[mul(x, y) for y in range(n)] for x in range(n)], labels, f"D{m}")


# ---------------------------------------------------------------------------
# generators


def cyclic_ternary(n: int) -> TernaryTable:
    """``abc = (a + b + c) mod n``."""
    if n < 1:
        raise ArgumentError(f"order must be positive, got {n}")
    return TernaryTable.from_function(n, lambda a, b, c: (a + b + c) % n, f"cyc{n}")


def heap_from_group(G: GroupTable) -> TernaryTable:
    """The heap ``[abc] = a b^-1 c`` of a group.

    Heaps are para-associative: ``[[abc]de] = [a[dcb]e] = [ab[cde]]``.  The
    table is a ternary semigroup (outer-middle-inner associative) exactly
    when ``G`` is abelian; use ``derived_ternary`` for non-abelian groups.
    """
    G.validate()
    t, inv = G.table, G.inverses
    return TernaryTable.from_function(G.order, lambda a, b, c: t[t[a][inv[b]]][c], f"heap({G.name})")


def derived_ternary(G: GroupTable) -> TernaryTable:
    """``abc = a*b*c`` in ``G``: a ternary group, non-commutative when ``G`` is, with ``a^-1`` as inverse."""
    G.validate()
    t = G.table
    return TernaryTable.from_function(G.order, lambda a, b, c: t[t[a][b]][c], f"der({G.name})")


def min_table(n: int) -> TernaryTable:
    return TernaryTable.from_function(n, lambda a, b, c: min(a, b, c), f"min{n}")


def max_table(n: int) -> TernaryTable:
    return TernaryTable.from_function(n, lambda a, b, c: max(a, b, c), f"max{n}")


def product_table(n: int = 2) -> TernaryTable:
    """``abc = a*b*c mod n``; for ``n = 2`` this is multiplication on {0, 1}."""
    return TernaryTable.from_function(n, lambda a, b, c: (a * b * c) % n, f"prod{n}")


def constant_table(n: int, value: int = 0) -> TernaryTable:
    return TernaryTable.from_function(n, lambda a, b, c: value, f"const{n}_{value}")


def left_zero_table(n: int) -> TernaryTable:
    return TernaryTable.from_function(n, lambda a, b, c: a, f"lzero{n}")


def right_zero_table(n: int) -> TernaryTable:
    return TernaryTable.from_function(n, lambda a, b, c: c, f"rzero{n}")
