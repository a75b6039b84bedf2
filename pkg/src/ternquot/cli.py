"""Command-line entry point: ``ternquot <command> ...``.

Exit status is 0 on success, 1 when a check fails or a replayed theorem is
violated, and 2 on usage or parse errors.  Output is collected and written
in one piece, so reports are identical for any ``--jobs`` value.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .congruence import (
    Partition,
    congruence_closure,
    enumerate_congruences,
    find_congruence_violation,
    format_partition,
    is_congruence,
    parse_partition,
    quotient_semigroup,
    rees_congruence,
)
from .core import (
    SubSet,
    all_ideals,
    all_ternary_subgroups,
    inverse_vector,
    is_ideal,
    is_ternary_group,
    is_ternary_subgroup,
    left_coset,
    normality_report,
)
from .enumeration import enumerate_ternary_semigroups
from .errors import ArgumentError, AxiomViolation, ParseError, StructuralError, TernaryError
from .fileformat import Instance, read_instance, serialize_instance
from .finitetop import discrete, quotient_topology
from .replay import SUITES, replay_suite
from .topstruct import (
    MODES,
    TopTernaryStructure,
    _passes_top_group,
    coset_quotient_group,
    is_closed_congruence,
    is_top_ternary_semigroup,
    open_subgroup_is_closed,
    quotient_top_semigroup,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
INFO_ENUMERATION_MAX = 10


class _Fail(Exception):
    """A check failed; the message is reported and the exit status is 1."""


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _elements(S: SubSet) -> str:
    return " ".join(map(str, S)) or "{}"


def _structure(inst: Instance, mode: str) -> TopTernaryStructure:
    top = inst.topology if inst.topology is not None else discrete(inst.order)
    return TopTernaryStructure(inst.table, top, mode)


def _named_set(inst: Instance, name: str, flag: str) -> SubSet:
    if name not in inst.sets:
        known = ", ".join(sorted(inst.sets)) or "none"
        raise ArgumentError(f"{flag}: no set named {name!r} (defined: {known})")
    return inst.sets[name]


def _congruence_arg(inst: Instance, text: str) -> tuple[Partition, str]:
    """A partition name, a literal ``"0 2/1 3"`` or pairs ``"0~2,1~3"`` (closed up)."""
    if text in inst.partitions:
        return inst.partitions[text], f"partition {text}"
    if "/" in text:
        return parse_partition(inst.order, text), "literal partition"
    pairs = []
    for item in text.split(","):
        a, sep, b = item.partition("~")
        if not sep or not a.strip().isdigit() or not b.strip().isdigit():
            raise ArgumentError(f"--congruence: expected a name, 'a~b,...' pairs or a partition, got {text!r}")
        pairs.append((int(a), int(b)))
    return congruence_closure(inst.table, pairs), f"closure of {text}"


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, out: list[str]) -> int:
    inst = read_instance(args.file)
    out.append(f"valid: {args.file}")
    out.append(f"order: {inst.order}")
    if inst.topology is not None:
        out.append(f"topology: {len(inst.topology.masks)} open sets")
    for key in sorted(inst.sets):
        out.append(f"set {key}: {_elements(inst.sets[key])}")
    for key in sorted(inst.partitions):
        out.append(f"partition {key}: {format_partition(inst.partitions[key])}")
    return EXIT_OK


def cmd_info(args, out: list[str]) -> int:
    inst = read_instance(args.file)
    T = inst.table
    n = T.order
    X = _structure(inst, args.mode)
    group = is_ternary_group(T)
    out.append(f"order: {n}")
    out.append("ternary semigroup: yes")
    out.append(f"ternary group: {_yn(group)}")
    inv = inverse_vector(T)
    out.append("inverses: " + " ".join(f"{a}->{'-' if b is None else b}" for a, b in enumerate(inv)))
    if n <= INFO_ENUMERATION_MAX:
        ideals = all_ideals(T)
        out.append(f"ideals: {len(ideals)}")
        out.extend(f"  {_elements(I)}" for I in ideals)
        subgroups = all_ternary_subgroups(T) if group else []
        out.append(f"ternary subgroups: {len(subgroups)}")
        for H in subgroups:
            out.append(f"  {_elements(H)}{'  normal' if normality_report(T, H).normal else ''}")
        out.append(f"congruences: {len(enumerate_congruences(T))}")
    out.append(f"mode: {args.mode}")
    out.append(f"topology: {'given' if inst.topology is not None else 'discrete (default)'}, "
               f"{len(X.topology.masks)} open sets, hausdorff {_yn(X.hausdorff)}")
    out.append(f"multiplication continuous: {_yn(X.multiplication_continuous)}")
    out.append(f"topological ternary semigroup: {_yn(is_top_ternary_semigroup(X))}")
    if group and None not in inv:
        out.append(f"topological ternary group: {_yn(_passes_top_group(X))}")
    for key in sorted(inst.sets):
        S = inst.sets[key]
        flags = [f"open {_yn(X.topology.is_open(S))}", f"closed {_yn(X.topology.is_closed(S))}"]
        if S:
            flags.insert(0, f"ideal {_yn(is_ideal(T, S))}")
            if group:
                flags.insert(1, f"subgroup {_yn(is_ternary_subgroup(T, S))}")
        out.append(f"set {key}: " + ", ".join(flags))
    for key in sorted(inst.partitions):
        P = inst.partitions[key]
        cong = is_congruence(T, P)
        line = f"partition {key}: congruence {_yn(cong)}"
        if cong:
            line += f", closed {_yn(is_closed_congruence(X, P))}"
        out.append(line)
    return EXIT_OK


def cmd_congruences(args, out: list[str]) -> int:
    inst = read_instance(args.file)
    congs = enumerate_congruences(inst.table)
    X = _structure(inst, args.mode) if inst.topology is not None else None
    out.append(f"# congruences: {len(congs)}")
    for P in congs:
        line = format_partition(P)
        if X is not None:
            line += "  closed" if is_closed_congruence(X, P) else "  not-closed"
        out.append(line)
    return EXIT_OK


def cmd_quotient(args, out: list[str]) -> int:
    inst = read_instance(args.file)
    T = inst.table
    if (args.congruence is None) == (args.ideal is None):
        raise ArgumentError("quotient needs exactly one of --congruence or --ideal")
    if args.ideal is not None:
        I = _named_set(inst, args.ideal, "--ideal")
        if not I or not is_ideal(T, I):
            raise _Fail(f"set {args.ideal} = {{{_elements(I)}}} is not an ideal")
        P, origin = rees_congruence(T, I), f"Rees congruence of {args.ideal}"
    else:
        P, origin = _congruence_arg(inst, args.congruence)
    if not is_congruence(T, P):
        raise _Fail(f"{format_partition(P)} is not a congruence: related sextuple {find_congruence_violation(T, P)}")
    Q = quotient_semigroup(T, P)
    out.append(f"# quotient by {origin}: {format_partition(P)}")
    out.append("# natural map: " + " ".join(f"{x}->{Q.natural_map(x)}" for x in range(T.order)))
    result = Instance(Q.table)
    status = EXIT_OK
    if inst.topology is not None:
        X = TopTernaryStructure(T, inst.topology, args.mode)
        try:
            tq = quotient_top_semigroup(X, P)
        except StructuralError as exc:
            raise _Fail(f"theorem violation: {exc}") from exc
        rep = tq.report
        out.append(f"# mode: {args.mode}")
        for label in ("source_top_semigroup", "congruence_closed", "triple_quotient", "pair_quotient",
                      "multiplication_continuous", "diagonal_closed", "quotient_hausdorff"):
            out.append(f"# {label.replace('_', ' ')}: {_yn(getattr(rep, label))}")
        out.append(f"# quotient is a topological ternary semigroup: {_yn(is_top_ternary_semigroup(tq.structure))}")
        if rep.violations:
            out.extend(f"# violation: {v}" for v in rep.violations)
            status = EXIT_CHECK
        result.topology = quotient_topology(inst.topology, Q.natural_map)
    out.append(serialize_instance(result).rstrip("\n"))
    return status


def cmd_cosets(args, out: list[str]) -> int:
    inst = read_instance(args.file)
    T = inst.table
    H = _named_set(inst, args.subgroup, "--subgroup")
    if not is_ternary_group(T):
        raise _Fail("the table is not a ternary group")
    if not H or not is_ternary_subgroup(T, H):
        raise _Fail(f"set {args.subgroup} = {{{_elements(H)}}} is not a ternary subgroup")
    cosets = sorted({left_coset(T, H, a).bits for a in range(T.order)})
    out.append(f"# left cosets aHH of {args.subgroup}: {len(cosets)}")
    out.extend(f"# coset {k}: {_elements(SubSet(T.order, c))}" for k, c in enumerate(cosets))
    rep = normality_report(T, H)
    out.append(f"# normal: {_yn(rep.normal)} (conjugation {_yn(rep.conjugation)}, "
               f"translation {_yn(rep.translation)}, coset equality {_yn(rep.coset_equality)})")
    X = _structure(inst, args.mode)
    status = EXIT_OK
    if X.topology.is_open(H):
        v = open_subgroup_is_closed(X, H)
        out.append(f"# open subgroup: closed {_yn(v.closed)}, cosets open {_yn(v.cosets_open)}")
    if not rep.normal:
        out.append("# not normal: no coset quotient")
        return EXIT_CHECK
    cq = coset_quotient_group(X, H)
    s = cq.steps
    out.append(f"# mode: {args.mode}")
    for label in ("projection_open", "triple_quotient", "multiplication_continuous", "inversion_continuous",
                  "relation_closed", "hausdorff"):
        out.append(f"# {label.replace('_', ' ')}: {_yn(getattr(s, label))}")
    top_group = _passes_top_group(cq.structure)
    out.append(f"# quotient is a topological ternary group: {_yn(top_group)}")
    if s.asserted and not (s.passed and top_group):
        status = EXIT_CHECK
    result = Instance(cq.structure.table, cq.structure.topology if inst.topology is not None else None)
    out.append(serialize_instance(result).rstrip("\n"))
    return status


def cmd_enumerate(args, out: list[str]) -> int:
    if args.order is None or len(args.order) != 1:
        raise ArgumentError("enumerate needs exactly one --order")
    (n,) = args.order
    tables = list(enumerate_ternary_semigroups(n, args.up_to_iso, allow_large=args.allow_large, jobs=args.jobs))
    listing = [f"# ternary semigroups of order {n}{' up to isomorphism' if args.up_to_iso else ''}: {len(tables)}"]
    listing += [f"{t.name} {' '.join(map(str, t.cube))}" for t in tables]
    if args.out:
        Path(args.out).write_text("\n".join(listing) + "\n")
        out.append(listing[0])
    else:
        out.extend(listing)
    return EXIT_OK


def cmd_replay(args, out: list[str]) -> int:
    if args.suite is None:
        raise ArgumentError(f"replay needs --suite (one of {', '.join(SUITES)})")
    report = replay_suite(
        args.suite,
        mode=args.mode,
        orders=args.order or (),
        curated=not args.no_curated,
        topologies=args.topologies,
        jobs=args.jobs,
    )
    if args.out:
        Path(args.out).write_text(report.findings_text())
    out.append(report.text().rstrip("\n"))
    return EXIT_CHECK if report.violations else EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "congruences": cmd_congruences,
    "quotient": cmd_quotient,
    "cosets": cmd_cosets,
    "enumerate": cmd_enumerate,
    "replay": cmd_replay,
}


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ternquot", description="Finite ternary semigroups, quotients and topologies.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str, *, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if file:
            p.add_argument("file", help="instance file (.tsg)")
        p.add_argument("--mode", choices=MODES, default="strict", help="strict enforces Hausdorff (default)")
        return p

    add("validate", "parse a file and check the axioms")
    add("info", "summarise algebraic and topological properties")
    add("congruences", "list every congruence")
    p = add("quotient", "build S/rho or the Rees quotient S/I")
    p.add_argument("--congruence", metavar="NAME|PAIRS", help="partition name, pairs 'a~b,...' or '0 2/1 3'")
    p.add_argument("--ideal", metavar="NAME", help="named set used as an ideal")
    p = add("cosets", "cosets, normality and the coset quotient S/H")
    p.add_argument("--subgroup", metavar="NAME", required=True, help="named set used as a ternary subgroup")
    p = add("enumerate", "enumerate ternary semigroups of one order", file=False)
    p.add_argument("--order", type=_positive, action="append", required=True)
    p.add_argument("--up-to-iso", action="store_true", help="one table per isomorphism class")
    p.add_argument("--allow-large", action="store_true", help="permit order 4 (slow)")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--out", metavar="FILE", help="write the listing to FILE")
    p = add("replay", "replay a quotient theorem over a corpus", file=False)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--order", type=_positive, action="append", help="add all tables of this order (repeatable)")
    p.add_argument("--topologies", choices=("discrete", "all"), default="discrete")
    p.add_argument("--no-curated", action="store_true", help="drop the built-in curated tables")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--out", metavar="FILE", help="write the findings table to FILE")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out: list[str] = []
    try:
        status = COMMANDS[args.command](args, out)
    except AxiomViolation as exc:
        out.append(f"invalid: {exc}")
        status = EXIT_CHECK
    except (ParseError, ArgumentError, OSError) as exc:
        sys.stdout.write("\n".join(out) + ("\n" if out else ""))
        print(f"ternquot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (_Fail, TernaryError) as exc:
        out.append(f"check failed: {exc}")
        status = EXIT_CHECK
    sys.stdout.write("\n".join(out) + ("\n" if out else ""))
    return status


def main() -> None:
    sys.exit(run())
