"""Finite topological spaces and maps between finite carriers.

Every topology on a finite set is determined by the minimal open
neighbourhood ``U_x`` of each point (the intersection of all opens that
contain ``x``).  ``FiniteTopology`` keeps that vector for every space and
the explicit open family whenever it was given or has been materialised.
Predicates are evaluated on neighbourhoods, which keeps products such as
``S x S x S`` cheap even when their open families are astronomically large.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .core import SubSet, TernaryTable, as_subset, is_ideal, mask_elements
from .errors import ArgumentError, StructuralError

MAX_FAMILY = 1 << 16
MAX_PRODUCT_POINTS = 512


def _full(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True, eq=False)
class FiniteTopology:
    order: int
    nbhd: tuple[int, ...]
    _family: tuple[int, ...] | None = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self) -> None:
        n = self.order
        if len(self.nbhd) != n:
            raise ArgumentError(f"expected {n} neighbourhoods, got {len(self.nbhd)}")
        for x, u in enumerate(self.nbhd):
            if not u >> x & 1 or u >> n:
                raise ArgumentError(f"neighbourhood of {x} is invalid")
            for y in mask_elements(u):
                if self.nbhd[y] & ~u:
                    raise ArgumentError(f"neighbourhoods of {x} and {y} are not nested")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteTopology) and (self.order, self.nbhd) == (other.order, other.nbhd)

    def __hash__(self) -> int:
        return hash((self.order, self.nbhd))

    @classmethod
    def from_opens(cls, n: int, opens: Iterable, name: str = "") -> FiniteTopology:
        """Build from an explicit open family; raises ArgumentError naming the failed axiom."""
        family = set()
        full = _full(n)
        for o in opens:
            if isinstance(o, SubSet):
                o = as_subset(n, o).bits
            elif isinstance(o, int):
                if o < 0 or o & ~full:
                    raise ArgumentError(f"mask {o:#x} exceeds carrier of order {n}")
            else:
                o = SubSet.of(n, o).bits
            family.add(o)
        if 0 not in family:
            raise ArgumentError("open family lacks the empty set")
        if full not in family:
            raise ArgumentError("open family lacks the full set")
        for u, v in itertools.combinations(sorted(family), 2):
            if u | v not in family:
                raise ArgumentError(f"open family not closed under union: {SubSet(n, u)} | {SubSet(n, v)}")
            if u & v not in family:
                raise ArgumentError(f"open family not closed under intersection: {SubSet(n, u)} & {SubSet(n, v)}")
        nbhd = tuple(reduce(lambda a, b: a & b, (o for o in family if o >> x & 1), full) for x in range(n))
        return cls(n, nbhd, tuple(sorted(family)), name)

    @classmethod
    def from_neighborhoods(cls, n: int, nbhd: Sequence[int], name: str = "") -> FiniteTopology:
        return cls(n, tuple(nbhd), None, name)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """The open family as sorted bit vectors."""
        if self._family is not None:
            return self._family
        family = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for o in frontier:
                for x in range(self.order):
                    if not o >> x & 1:
                        u = o | self.nbhd[x]
                        if u not in family:
                            family.add(u)
                            nxt.append(u)
                            if len(family) > MAX_FAMILY:
                                raise ArgumentError(f"open family exceeds {MAX_FAMILY} members")
            frontier = nxt
        return tuple(sorted(family))

    def opens(self) -> list[SubSet]:
        return [SubSet(self.order, m) for m in self.masks]

    def open_mask(self, mask: int) -> bool:
        nb = self.nbhd
        return all(nb[x] & ~mask == 0 for x in mask_elements(mask))

    def closed_mask(self, mask: int) -> bool:
        return self.open_mask(_full(self.order) & ~mask)

    def is_open(self, A) -> bool:
        return self.open_mask(as_subset(self.order, A).bits)

    def is_closed(self, A) -> bool:
        return self.closed_mask(as_subset(self.order, A).bits)

    def interior_mask(self, mask: int) -> int:
        bits = 0
        for x in range(self.order):
            if self.nbhd[x] & ~mask == 0:
                bits |= 1 << x
        return bits

    def closure_mask(self, mask: int) -> int:
        bits = 0
        for x in range(self.order):
            if self.nbhd[x] & mask:
                bits |= 1 << x
        return bits

    def hull_mask(self, mask: int) -> int:
        """Smallest open set containing ``mask``."""
        bits = 0
        for x in mask_elements(mask):
            bits |= self.nbhd[x]
        return bits

    @property
    def is_discrete(self) -> bool:
        return all(u == 1 << x for x, u in enumerate(self.nbhd))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"FiniteTopology({self.order}{label}, nbhd={[list(mask_elements(u)) for u in self.nbhd]})"


def discrete(n: int) -> FiniteTopology:
    return FiniteTopology.from_neighborhoods(n, [1 << x for x in range(n)], f"disc{n}")


def indiscrete(n: int) -> FiniteTopology:
    return FiniteTopology.from_neighborhoods(n, [_full(n)] * n, f"indisc{n}")


def sierpinski() -> FiniteTopology:
    """Two points with opens ∅, {1}, {0, 1}."""
    return FiniteTopology.from_opens(2, [[], [1], [0, 1]], "sierpinski")


def topology_from_subbasis(n: int, sets: Iterable) -> FiniteTopology:
    sets = [as_subset(n, s).bits for s in sets]
    nbhd = [reduce(lambda a, b: a & b, (s for s in sets if s >> x & 1), _full(n)) for x in range(n)]
    return FiniteTopology.from_neighborhoods(n, nbhd)


def all_topologies(n: int) -> list[FiniteTopology]:
    """Every topology on ``n <= 4`` points, ordered by neighbourhood vector.

    Enumerated as preorders (``x <= y`` iff ``y`` lies in every open containing ``x``).
    """
    if not 0 <= n <= 4:
        raise ArgumentError(f"topology enumeration limited to 4 points, got {n}")
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    seen = []
    for choice in itertools.product((0, 1), repeat=len(off)):
        nbhd = [1 << x for x in range(n)]
        for bit, (x, y) in zip(choice, off):
            if bit:
                nbhd[x] |= 1 << y
        # transitivity
        if all(nbhd[y] & ~nbhd[x] == 0 for x in range(n) for y in mask_elements(nbhd[x])):
            seen.append(tuple(nbhd))
    seen.sort()
    return [FiniteTopology.from_neighborhoods(n, nb, f"top{n}_{i:02d}") for i, nb in enumerate(seen)]


def subspace_topology(T: FiniteTopology, Y) -> FiniteTopology:
    """Subspace topology on ``Y``, relabelled ``0..|Y|-1`` in increasing order."""
    Y = as_subset(T.order, Y)
    pts = Y.elements()
    index = {x: i for i, x in enumerate(pts)}
    nbhd = []
    for x in pts:
        bits = 0
        for y in mask_elements(T.nbhd[x] & Y.bits):
            bits |= 1 << index[y]
        nbhd.append(bits)
    return FiniteTopology.from_neighborhoods(len(pts), nbhd)


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class ElementMap:
    """A total function ``{0..source-1} -> {0..target-1}``."""

    source: int
    target: int
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        if len(self.image) != self.source:
            raise ArgumentError(f"image vector of length {len(self.image)}, expected {self.source}")
        if any(not 0 <= v < self.target for v in self.image):
            raise ArgumentError("image index outside target carrier")

    def __call__(self, x: int) -> int:
        return self.image[x]

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source

    def image_mask(self, mask: int) -> int:
        bits = 0
        for x in mask_elements(mask):
            bits |= 1 << self.image[x]
        return bits

    def preimage_mask(self, mask: int) -> int:
        bits = 0
        for x, v in enumerate(self.image):
            if mask >> v & 1:
                bits |= 1 << x
        return bits

    def image_of(self, A) -> SubSet:
        return SubSet(self.target, self.image_mask(as_subset(self.source, A).bits))

    def preimage(self, B) -> SubSet:
        return SubSet(self.source, self.preimage_mask(as_subset(self.target, B).bits))

    def then(self, g: ElementMap) -> ElementMap:
        """The composite ``g ∘ self``."""
        if g.source != self.target:
            raise ArgumentError("maps are not composable")
        return ElementMap(self.source, g.target, tuple(g.image[v] for v in self.image))

    @classmethod
    def identity(cls, n: int) -> ElementMap:
        return cls(n, n, tuple(range(n)))


def product_index(orders: Sequence[int], coords: Sequence[int]) -> int:
    idx = 0
    for n, c in zip(orders, coords):
        idx = idx * n + c
    return idx


def product_map(*maps: ElementMap) -> ElementMap:
    """``f1 x f2 x ...`` on product carriers, row-major like ``product_topology``."""
    src = [m.source for m in maps]
    tgt = [m.target for m in maps]
    image = [
        product_index(tgt, [m.image[c] for m, c in zip(maps, coords)])
        for coords in itertools.product(*(range(n) for n in src))
    ]
    total = 1
    for t in tgt:
        total *= t
    return ElementMap(len(image), total, tuple(image))


def product_topology(*tops: FiniteTopology, max_points: int = MAX_PRODUCT_POINTS) -> FiniteTopology:
    """Product topology on the row-major product carrier (``(a, b) -> a*n2 + b``)."""
    if not tops:
        raise ArgumentError("need at least one factor")
    orders = [t.order for t in tops]
    total = 1
    for n in orders:
        total *= n
    if total > max_points:
        raise ArgumentError(f"product carrier of {total} points exceeds bound {max_points}")
    nbhd = []
    for coords in itertools.product(*(range(n) for n in orders)):
        factors = [mask_elements(t.nbhd[c]) for t, c in zip(tops, coords)]
        bits = 0
        for box in itertools.product(*factors):
            bits |= 1 << product_index(orders, box)
        nbhd.append(bits)
    return FiniteTopology.from_neighborhoods(total, nbhd, "x".join(t.name for t in tops))


def quotient_topology(TX: FiniteTopology, q: ElementMap) -> FiniteTopology:
    """Final topology for a surjection: ``U`` open iff ``q^-1(U)`` open."""
    if q.source != TX.order:
        raise ArgumentError("map source does not match the space")
    if not q.is_surjective:
        raise ArgumentError("quotient map must be surjective")
    nbhd = []
    for y in range(q.target):
        u = 1 << y
        while True:
            grown = u | q.image_mask(TX.hull_mask(q.preimage_mask(u)))
            if grown == u:
                break
            u = grown
        nbhd.append(u)
    return FiniteTopology.from_neighborhoods(q.target, nbhd)


def _check_map(f: ElementMap, TX: FiniteTopology, TY: FiniteTopology) -> None:
    if f.source != TX.order or f.target != TY.order:
        raise ArgumentError("map does not match the given spaces")


def is_continuous(f: ElementMap, TX: FiniteTopology, TY: FiniteTopology) -> bool:
    _check_map(f, TX, TY)
    return all(TX.open_mask(f.preimage_mask(u)) for u in TY.nbhd)


def is_open_map(f: ElementMap, TX: FiniteTopology, TY: FiniteTopology) -> bool:
    _check_map(f, TX, TY)
    # every open is a union of minimal neighbourhoods
    return all(TY.open_mask(f.image_mask(u)) for u in TX.nbhd)


def is_closed_map(f: ElementMap, TX: FiniteTopology, TY: FiniteTopology) -> bool:
    _check_map(f, TX, TY)
    # every closed set is a union of point closures
    return all(TY.closed_mask(f.image_mask(TX.closure_mask(1 << x))) for x in range(TX.order))


def is_homeomorphism(f: ElementMap, TX: FiniteTopology, TY: FiniteTopology) -> bool:
    return f.is_injective and f.is_surjective and is_continuous(f, TX, TY) and is_open_map(f, TX, TY)


def is_quotient_map(f: ElementMap, TX: FiniteTopology, TY: FiniteTopology) -> bool:
    _check_map(f, TX, TY)
    return f.is_surjective and is_continuous(f, TX, TY) and quotient_topology(TX, f) == TY


def closure(T: FiniteTopology, A) -> SubSet:
    return SubSet(T.order, T.closure_mask(as_subset(T.order, A).bits))


def interior(T: FiniteTopology, A) -> SubSet:
    return SubSet(T.order, T.interior_mask(as_subset(T.order, A).bits))


def is_hausdorff(T: FiniteTopology) -> bool:
    """Distinct points have disjoint open neighbourhoods (pairwise scan)."""
    verdict = all(
        T.nbhd[x] & T.nbhd[y] == 0 for x, y in itertools.combinations(range(T.order), 2)
    )
    if verdict != T.is_discrete:
        raise StructuralError("finite Hausdorff space that is not discrete (or vice versa)")
    return verdict


def saturate(q: ElementMap, A) -> SubSet:
    """``q^-1 q(A)``: the union of fibres meeting ``A``."""
    return SubSet(q.source, q.preimage_mask(q.image_mask(as_subset(q.source, A).bits)))


def saturated_interior(q: ElementMap, V) -> SubSet:
    """Points whose whole fibre lies in ``V``."""
    V = as_subset(q.source, V)
    bits = 0
    for x in range(q.source):
        if q.preimage_mask(1 << q.image[x]) & ~V.bits == 0:
            bits |= 1 << x
    return SubSet(q.source, bits)


def find_separating_box(
    f: ElementMap,
    TX: FiniteTopology,
    TY: FiniteTopology,
    TZ: FiniteTopology,
    TW: FiniteTopology,
    A,
    B,
    C,
    D,
) -> tuple[SubSet, SubSet, SubSet]:
    """Open ``P ⊇ A``, ``Q ⊇ B``, ``R ⊇ C`` with ``f(P x Q x R) ⊆ D``.

    Each point of ``A x B x C`` gets the box of its minimal neighbourhoods,
    which lies inside the open set ``f^-1(D)``.  Boxes are then merged in
    three passes: unite middle factors over ``B``, unite first factors over
    ``A``, unite last factors over ``C``, intersecting the other two factors
    at each pass.
    """
    nx, ny, nz = TX.order, TY.order, TZ.order
    orders = (nx, ny, nz)
    if f.source != nx * ny * nz or f.target != TW.order:
        raise ArgumentError("map is not defined on the triple product")
    A, B, C = as_subset(nx, A), as_subset(ny, B), as_subset(nz, C)
    D = as_subset(TW.order, D)
    prod = product_topology(TX, TY, TZ)
    if not is_continuous(f, prod, TW):
        raise ArgumentError("map is not continuous on the product")
    if not TW.is_open(D):
        raise ArgumentError("target set D is not open")
    G = f.preimage_mask(D.bits)
    box_mask = 0
    for a, b, c in itertools.product(A, B, C):
        box_mask |= 1 << product_index(orders, (a, b, c))
    if box_mask & ~G:
        raise ArgumentError("f(A x B x C) is not contained in D")

    if not (A and B and C):
        P, Q, R = TX.hull_mask(A.bits), TY.hull_mask(B.bits), TZ.hull_mask(C.bits)
    else:
        def basic(a: int, b: int, c: int) -> tuple[int, int, int]:
            box = (TX.nbhd[a], TY.nbhd[b], TZ.nbhd[c])
            if not is_box_inside(orders, box, G):
                raise StructuralError(f"minimal box at {(a, b, c)} leaves f^-1(D)")
            return box

        # pass 1: fixed (a, c), cover B
        stage1 = {}
        for a, c in itertools.product(A, C):
            boxes = [basic(a, b, c) for b in B]
            E = reduce(lambda u, v: u & v, (bx[0] for bx in boxes))
            F = reduce(lambda u, v: u | v, (bx[1] for bx in boxes))
            H = reduce(lambda u, v: u & v, (bx[2] for bx in boxes))
            stage1[a, c] = (E, F, H)
        # pass 2: fixed c, cover A
        stage2 = {}
        for c in C:
            boxes = [stage1[a, c] for a in A]
            stage2[c] = (
                reduce(lambda u, v: u | v, (bx[0] for bx in boxes)),
                reduce(lambda u, v: u & v, (bx[1] for bx in boxes)),
                reduce(lambda u, v: u & v, (bx[2] for bx in boxes)),
            )
        # pass 3: cover C
        boxes = list(stage2.values())
        P = reduce(lambda u, v: u & v, (bx[0] for bx in boxes))
        Q = reduce(lambda u, v: u & v, (bx[1] for bx in boxes))
        R = reduce(lambda u, v: u | v, (bx[2] for bx in boxes))

    out = (SubSet(nx, P), SubSet(ny, Q), SubSet(nz, R))
    if not (TX.open_mask(P) and TY.open_mask(Q) and TZ.open_mask(R)):
        raise StructuralError("separating box factors are not open")
    if not (A <= out[0] and B <= out[1] and C <= out[2]) or not is_box_inside(orders, (P, Q, R), G):
        raise StructuralError("separating box does not satisfy the lemma")
    return out


def is_box_inside(orders: Sequence[int], box: Sequence[int], mask: int) -> bool:
    for coords in itertools.product(*(mask_elements(m) for m in box)):
        if not mask >> product_index(orders, coords) & 1:
            return False
    return True


def is_weak_topology_sum(T: FiniteTopology, parts: Sequence) -> bool:
    """True iff a set is closed exactly when its trace on every part is closed in that part."""
    n = T.order
    if n > 16:
        raise ArgumentError(f"weak-topology check limited to 16 points, got {n}")
    parts = [as_subset(n, p).bits for p in parts]
    if reduce(lambda u, v: u | v, parts, 0) != _full(n):
        raise ArgumentError("parts do not cover the carrier")

    def closed_in_part(trace: int, part: int) -> bool:
        # part \ trace must be relatively open
        rest = part & ~trace
        return all(T.nbhd[y] & trace == 0 for y in mask_elements(rest))

    for A in range(1 << n):
        locally = all(closed_in_part(A & p, p) for p in parts)
        if locally != T.closed_mask(A):
            return False
    return True


def is_regular_ideal(T: TernaryTable, TS: FiniteTopology, I) -> bool:
    """Closed ideal ``I`` whose outside points are separated from it by disjoint opens."""
    n = T.order
    I = as_subset(n, I)
    if TS.order != n:
        raise ArgumentError("topology and table carriers differ")
    if not I or not is_ideal(T, I):
        raise ArgumentError(f"{I} is not an ideal")
    if not TS.is_closed(I):
        raise ArgumentError(f"ideal {I} is not closed")
    # the smallest opens around s and around I decide separability
    around_I = TS.hull_mask(I.bits)
    return all(TS.nbhd[s] & around_I == 0 for s in I.complement())


def rees_space(TS: FiniteTopology, I) -> tuple[FiniteTopology, tuple[int, ...]]:
    """The space ``S \\ int(I)`` whose opens are traces of opens missing ``I`` or containing it.

    Returns the topology (relabelled ``0..m-1``) and the original points in order.
    """
    n = TS.order
    I = as_subset(n, I)
    if not I:
        raise ArgumentError("ideal must be non-empty")
    points_mask = _full(n) & ~TS.interior_mask(I.bits)
    points = mask_elements(points_mask)
    index = {x: i for i, x in enumerate(points)}
    traces = set()
    for o in TS.masks:
        if o & I.bits == 0 or I.bits & ~o == 0:
            bits = 0
            for x in mask_elements(o & points_mask):
                bits |= 1 << index[x]
            traces.add(bits)
    return FiniteTopology.from_opens(len(points), traces), points
