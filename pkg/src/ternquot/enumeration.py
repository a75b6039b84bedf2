"""Exhaustive enumeration of ternary semigroups of small order.

Cube entries are assigned in flat index order, values ascending, so the
serial stream is sorted lexicographically by cube.  After each assignment
only the quintuples that read the new entry (as an inner or an outer
product) are rechecked.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from .core import TernaryTable
from .errors import ArgumentError

DEFAULT_MAX_ORDER = 3
OVERRIDE_MAX_ORDER = 4


class _Search:
    def __init__(self, n: int):
        self.n = n
        self.n2 = n * n
        self.size = n ** 3
        self.cube = [-1] * self.size
        # cube indices currently holding each value
        self.by_value: list[list[int]] = [[] for _ in range(n)]

    def _consistent(self, a: int, b: int, c: int, d: int, e: int) -> bool:
        cube, n, n2 = self.cube, self.n, self.n2
        x = cube[a * n2 + b * n + c]
        y = cube[b * n2 + c * n + d]
        z = cube[c * n2 + d * n + e]
        seen = -1
        if x >= 0:
            seen = cube[x * n2 + d * n + e]
        if y >= 0:
            v = cube[a * n2 + y * n + e]
            if v >= 0:
                if seen >= 0 and v != seen:
                    return False
                seen = v
        if z >= 0:
            v = cube[a * n2 + b * n + z]
            if v >= 0 and seen >= 0 and v != seen:
                return False
        return True

    def _check_entry(self, idx: int) -> bool:
        n, n2 = self.n, self.n2
        p, q, r = idx // n2, idx // n % n, idx % n
        ok = self._consistent
        for s, t in itertools.product(range(n), repeat=2):
            if not (ok(p, q, r, s, t) and ok(s, p, q, r, t) and ok(s, t, p, q, r)):
                return False
        # quintuples whose outer product lands on idx
        for j in self.by_value[p]:
            if not ok(j // n2, j // n % n, j % n, q, r):
                return False
        for j in self.by_value[q]:
            if not ok(p, j // n2, j // n % n, j % n, r):
                return False
        for j in self.by_value[r]:
            if not ok(p, q, j // n2, j // n % n, j % n):
                return False
        return True

    def assign(self, idx: int, v: int) -> bool:
        self.cube[idx] = v
        self.by_value[v].append(idx)
        if self._check_entry(idx):
            return True
        self.unassign(idx)
        return False

    def unassign(self, idx: int) -> None:
        self.by_value[self.cube[idx]].pop()
        self.cube[idx] = -1

    def run(self, start: int, stop: int) -> Iterator[tuple[int, ...]]:
        """Yield all consistent completions of entries ``start..stop-1``."""
        if start == stop:
            yield tuple(self.cube)
            return
        for v in range(self.n):
            if self.assign(start, v):
                yield from self.run(start + 1, stop)
                self.unassign(start)


def _prefixes(n: int, depth: int) -> list[tuple[int, ...]]:
    s = _Search(n)
    return [c[:depth] for c in s.run(0, depth)]


def _complete(args: tuple[int, tuple[int, ...], bool]) -> list[tuple[int, ...]]:
    n, prefix, up_to_iso = args
    s = _Search(n)
    for i, v in enumerate(prefix):
        if not s.assign(i, v):
            return []
    out = []
    perms = list(itertools.permutations(range(n))) if up_to_iso else []
    for cube in s.run(len(prefix), s.size):
        if not up_to_iso or is_canonical(n, cube, perms):
            out.append(cube)
    return out


def relabel_cube(n: int, cube: tuple[int, ...], perm) -> tuple[int, ...]:
    out = [0] * len(cube)
    n2 = n * n
    for i, v in enumerate(cube):
        a, b, c = i // n2, i // n % n, i % n
        out[perm[a] * n2 + perm[b] * n + perm[c]] = perm[v]
    return tuple(out)


def canonical_cube(n: int, cube: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically minimal relabelling over all ``n!`` permutations."""
    return min(relabel_cube(n, cube, p) for p in itertools.permutations(range(n)))


def is_canonical(n: int, cube: tuple[int, ...], perms=None) -> bool:
    perms = perms if perms is not None else itertools.permutations(range(n))
    return all(relabel_cube(n, cube, p) >= cube for p in perms)


def enumerate_ternary_semigroups(
    n: int,
    up_to_iso: bool = False,
    *,
    allow_large: bool = False,
    jobs: int = 1,
) -> Iterator[TernaryTable]:
    """Yield every associative cube of order ``n`` in lexicographic order.

    With ``up_to_iso`` only the lexicographically minimal member of each
    isomorphism class is produced.  ``jobs > 1`` splits the search tree by
    cube prefix across processes; the stream is identical for any ``jobs``.
    """
    limit = OVERRIDE_MAX_ORDER if allow_large else DEFAULT_MAX_ORDER
    if not 1 <= n <= limit:
        raise ArgumentError(f"enumeration order must be in [1, {limit}], got {n}" + ("" if allow_large else " (use allow_large for 4)"))
    depth = min(n ** 3, 2 if n <= 2 else 3)
    tasks = [(n, p, up_to_iso) for p in _prefixes(n, depth)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_complete, tasks))
    else:
        chunks = map(_complete, tasks)
    count = itertools.count()
    for chunk in chunks:
        for cube in chunk:
            yield TernaryTable(n, cube, f"t{n}_{next(count):05d}")
