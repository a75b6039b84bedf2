"""Plain-text instance files (``.tsg``).

Example, the cyclic ternary group of order 2 with the Sierpinski topology::

    tsg 1
    order 2
    cube
    0 1
    1 0
    1 0
    0 1
    topology 3
    {}
    1
    0 1
    set H 0
    partition rho 0/1

Cube row ``a*n + b`` lists ``abc`` for ``c = 0..n-1``.  ``#`` starts a
comment; blank lines are ignored.  ``serialize_instance`` writes the unique
canonical form: opens sorted by bit mask, named objects sorted by name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .congruence import Partition, format_partition
from .core import SubSet, TernaryTable, mask_elements
from .errors import AxiomViolation, ParseRangeError, ParseSyntaxError
from .finitetop import FiniteTopology

VERSION = 1
MAX_ORDER = 64
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")
_TOKEN = re.compile(r"\S+")


@dataclass
class Instance:
    table: TernaryTable
    topology: FiniteTopology | None = None
    sets: dict[str, SubSet] = field(default_factory=dict)
    partitions: dict[str, Partition] = field(default_factory=dict)

    def __iter__(self) -> Iterator:
        yield self.table
        yield self.topology
        yield {**self.sets, **self.partitions}

    @property
    def order(self) -> int:
        return self.table.order


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


class _Lines:
    """Significant lines as token lists, with comments stripped."""

    def __init__(self, text: str):
        self.rows: list[list[_Tok]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks = [_Tok(m.group(), lineno, m.start() + 1) for m in _TOKEN.finditer(body)]
            if toks:
                self.rows.append(toks)
        self.pos = 0
        self.last_line = max(1, len(text.splitlines()))

    def next(self, what: str) -> list[_Tok]:
        if self.pos >= len(self.rows):
            raise ParseSyntaxError(f"unexpected end of input, expected {what}", self.last_line + 1)
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def done(self) -> bool:
        return self.pos >= len(self.rows)


def _int(tok: _Tok) -> int:
    if not tok.text.isdigit():
        raise ParseSyntaxError(f"expected a non-negative integer, got {tok.text!r}", tok.line, tok.col)
    return int(tok.text)


def _element(tok: _Tok, n: int) -> int:
    v = _int(tok)
    if v >= n:
        raise ParseRangeError(f"element {v} outside carrier 0..{n - 1}", tok.line, tok.col)
    return v


def _mask(toks: list[_Tok], n: int) -> int:
    if len(toks) == 1 and toks[0].text == "{}":
        return 0
    bits = 0
    for tok in toks:
        v = _element(tok, n)
        if bits >> v & 1:
            raise ParseSyntaxError(f"element {v} repeated", tok.line, tok.col)
        bits |= 1 << v
    return bits


def _expect(row: list[_Tok], keyword: str, nargs: int) -> list[_Tok]:
    if row[0].text != keyword:
        raise ParseSyntaxError(f"expected {keyword!r}, got {row[0].text!r}", row[0].line, row[0].col)
    if len(row) != nargs + 1:
        bad = row[min(len(row) - 1, nargs + 1)]
        raise ParseSyntaxError(f"{keyword!r} takes {nargs} argument(s), got {len(row) - 1}", bad.line, bad.col)
    return row[1:]


def _parse_cube(lines: _Lines, n: int, header: _Tok) -> tuple[list[int], list[int]]:
    """Read ``n*n`` rows; returns the flat cube and the source line of each row."""
    cube: list[int] = []
    row_lines: list[int] = []
    for r in range(n * n):
        row = lines.next(f"cube row {r} (of {n * n})")
        if len(row) != n:
            bad = row[min(len(row) - 1, n)]
            raise ParseSyntaxError(f"cube row {r} has {len(row)} entries, expected {n}", bad.line, bad.col)
        cube.extend(_element(tok, n) for tok in row)
        row_lines.append(row[0].line)
    return cube, row_lines


def _parse_topology(lines: _Lines, n: int, count: int, header: _Tok) -> FiniteTopology:
    masks: dict[int, int] = {}
    for i in range(count):
        row = lines.next(f"open set {i} (of {count})")
        m = _mask(row, n)
        if m in masks:
            raise ParseSyntaxError(f"open set repeated (first given on line {masks[m]})", row[0].line, row[0].col)
        masks[m] = row[0].line
    full = (1 << n) - 1
    for required, label in ((0, "empty set"), (full, "full carrier")):
        if required not in masks:
            raise AxiomViolation(f"topology omits the {label}", header.line, header.col)
    ordered = sorted(masks)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            for combo, op in ((a | b, "union"), (a & b, "intersection")):
                if combo not in masks:
                    where = max(masks[a], masks[b])
                    raise AxiomViolation(
                        f"{op} of open sets {set(mask_elements(a)) or '{}'} and "
                        f"{set(mask_elements(b)) or '{}'} is not open",
                        where,
                    )
    return FiniteTopology.from_opens(n, ordered, name="file")


def _parse_partition(row: list[_Tok], raw_line: str, n: int) -> Partition:
    tok = row[2] if len(row) > 2 else None
    if tok is None:
        raise ParseSyntaxError("partition needs at least one class", row[1].line, row[1].col + len(row[1].text))
    body = raw_line.split("#", 1)[0]
    start = tok.col - 1
    labels = [-1] * n
    col = start
    for k, chunk in enumerate(body[start:].split("/")):
        items = [_Tok(m.group(), tok.line, col + m.start() + 1) for m in _TOKEN.finditer(chunk)]
        if not items:
            raise ParseSyntaxError(f"class {k} is empty", tok.line, col + 1)
        for it in items:
            v = _element(it, n)
            if labels[v] != -1:
                raise AxiomViolation(f"element {v} appears in two classes", it.line, it.col)
            labels[v] = k
        col += len(chunk) + 1
    missing = [x for x, v in enumerate(labels) if v == -1]
    if missing:
        raise AxiomViolation(f"elements {missing} are in no class", tok.line, tok.col)
    return Partition(tuple(labels))


def parse_instance(text: str, name: str = "", *, check_axioms: bool = True) -> Instance:
    """Parse instance text.

    Malformed text raises ``ParseSyntaxError``, out-of-range indices raise
    ``ParseRangeError`` and a non-associative cube or an invalid open-set
    family raises ``AxiomViolation``.  With ``check_axioms=False`` the
    associativity check is skipped so that non-associative tables can still
    be loaded and inspected.
    """
    lines = _Lines(text)
    raw = text.splitlines()

    head = lines.next("'tsg 1' header")
    (ver,) = _expect(head, "tsg", 1)
    if _int(ver) != VERSION:
        raise ParseSyntaxError(f"unsupported format version {ver.text}", ver.line, ver.col)

    (ntok,) = _expect(lines.next("'order <n>'"), "order", 1)
    n = _int(ntok)
    if not 1 <= n <= MAX_ORDER:
        raise ParseRangeError(f"order must be in 1..{MAX_ORDER}, got {n}", ntok.line, ntok.col)

    cube_head = lines.next("'cube'")
    _expect(cube_head, "cube", 0)
    cube, row_lines = _parse_cube(lines, n, cube_head[0])
    table = TernaryTable(n, tuple(cube), name)
    if check_axioms and not table.is_associative:
        a, b, c, d, e = table.associativity_violation
        raise AxiomViolation(
            f"not associative at (a,b,c,d,e) = {(a, b, c, d, e)}: (abc)de, a(bcd)e, ab(cde) differ",
            row_lines[a * n + b],
        )

    inst = Instance(table)
    while not lines.done():
        row = lines.next("a section")
        key = row[0]
        if key.text == "topology":
            if inst.topology is not None:
                raise ParseSyntaxError("second topology block", key.line, key.col)
            (count,) = _expect(row, "topology", 1)
            inst.topology = _parse_topology(lines, n, _int(count), key)
        elif key.text in ("set", "partition"):
            if len(row) < 2:
                raise ParseSyntaxError(f"{key.text!r} needs a name", key.line, key.col + len(key.text))
            label = row[1]
            if not _NAME.match(label.text):
                raise ParseSyntaxError(f"invalid name {label.text!r}", label.line, label.col)
            if label.text in inst.sets or label.text in inst.partitions:
                raise ParseSyntaxError(f"name {label.text!r} already defined", label.line, label.col)
            if key.text == "set":
                if len(row) < 3:
                    raise ParseSyntaxError("set needs elements or '{}'", label.line, label.col + len(label.text))
                inst.sets[label.text] = SubSet(n, _mask(row[2:], n))
            else:
                inst.partitions[label.text] = _parse_partition(row, raw[key.line - 1], n)
        else:
            raise ParseSyntaxError(f"unknown section {key.text!r}", key.line, key.col)
    return inst


def read_instance(path: str | Path, *, check_axioms: bool = True) -> Instance:
    path = Path(path)
    return parse_instance(path.read_text(), path.stem, check_axioms=check_axioms)


def _elements_text(bits: int) -> str:
    return " ".join(map(str, mask_elements(bits))) or "{}"


def serialize_instance(inst: Instance) -> str:
    T = inst.table
    n = T.order
    out = [f"tsg {VERSION}", f"order {n}", "cube"]
    for r in range(n * n):
        out.append(" ".join(map(str, T.cube[r * n:(r + 1) * n])))
    if inst.topology is not None:
        masks = sorted(inst.topology.masks)
        out.append(f"topology {len(masks)}")
        out.extend(_elements_text(m) for m in masks)
    for key in sorted(inst.sets):
        out.append(f"set {key} {_elements_text(inst.sets[key].bits)}")
    for key in sorted(inst.partitions):
        out.append(f"partition {key} {format_partition(inst.partitions[key])}")
    return "\n".join(out) + "\n"
