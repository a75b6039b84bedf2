"""Replay of the quotient theorems over finite corpora.

Each record is one instance: ``<suite> <instance-id> <hypotheses> <conclusion>``
where ``hypotheses`` is a bit string and ``conclusion`` is ``pass`` (all
hypotheses and conclusions hold), ``fail`` (hypotheses hold, a conclusion
does not) or ``skip`` (a hypothesis fails).  Records are sorted by
instance id, so reports are byte-identical for any worker count.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .congruence import enumerate_congruences, quotient_semigroup, rees_congruence, verify_diagram
from .core import (
    SubSet,
    TernaryTable,
    all_ideals,
    all_ternary_subgroups,
    constant_table,
    cyclic_group,
    cyclic_ternary,
    derived_ternary,
    dihedral_group,
    heap_from_group,
    inverse_vector,
    is_ideal,
    is_ternary_group,
    left_zero_table,
    max_table,
    min_table,
    normality_report,
    product_table,
    right_zero_table,
    symmetric_group,
)
from .enumeration import enumerate_ternary_semigroups
from .errors import ArgumentError
from .finitetop import (
    FiniteTopology,
    all_topologies,
    discrete,
    is_regular_ideal,
    is_continuous,
    is_weak_topology_sum,
    product_map,
    saturate,
    quotient_topology,
    rees_space,
    topology_from_subbasis,
)
from .topstruct import (
    TopTernaryStructure,
    _passes_top_group,
    coset_quotient_group,
    is_closed_congruence,
    is_top_ternary_group,
    is_top_ternary_semigroup,
    open_subgroup_is_closed,
    quotient_top_semigroup,
)

SUITES = ("wallace", "rees", "coset", "th2-forward", "clopen", "lemmas")
ALL_TOPOLOGIES_MAX_ORDER = 3


@dataclass(frozen=True, order=True)
class ReplayRecord:
    instance_id: str
    suite: str
    hypotheses: str
    conclusion: str
    observed: str = ""

    def line(self) -> str:
        return f"{self.suite} {self.instance_id} {self.hypotheses} {self.conclusion}"


@dataclass
class ReplayReport:
    suite: str
    mode: str
    records: list[ReplayRecord] = field(default_factory=list)

    @property
    def violations(self) -> list[ReplayRecord]:
        return [r for r in self.records if r.conclusion == "fail"]

    def count(self, conclusion: str) -> int:
        return sum(r.conclusion == conclusion for r in self.records)

    def findings(self) -> list[tuple[str, str, str, int]]:
        """Tally of (hypotheses, observed conclusions, verdict) combinations."""
        tally = Counter((r.hypotheses, r.observed, r.conclusion) for r in self.records)
        return sorted((h, o, c, k) for (h, o, c), k in tally.items())

    def findings_text(self) -> str:
        lines = [f"# findings suite={self.suite} mode={self.mode} (hypotheses observed verdict count)"]
        lines += [f"# {h} {o or '-'} {c} {k}" for h, o, c, k in self.findings()]
        return "\n".join(lines) + "\n"

    def text(self) -> str:
        body = "".join(r.line() + "\n" for r in self.records)
        summary = (
            f"# summary suite={self.suite} mode={self.mode} instances={len(self.records)} "
            f"pass={self.count('pass')} fail={self.count('fail')} skip={self.count('skip')}\n"
        )
        return body + summary + self.findings_text()


def _bits(*flags: bool) -> str:
    return "".join("1" if f else "0" for f in flags)


def _verdict(hypotheses: Sequence[bool], conclusions: Sequence[bool]) -> str:
    if not all(hypotheses):
        return "skip"
    return "pass" if all(conclusions) else "fail"


# ---------------------------------------------------------------------------
# per-instance evaluation (run in workers; must stay picklable and pure)


def _wallace(table: TernaryTable, top: FiniteTopology, mode: str, _extra) -> list[ReplayRecord]:
    X = TopTernaryStructure(table, top, mode)
    out = []
    for k, P in enumerate(enumerate_congruences(table)):
        rep = quotient_top_semigroup(X, P).report
        hyp = rep.hypotheses
        concl = rep.conclusions
        out.append(ReplayRecord(
            f"{table.name}:{top.name}:c{k:03d}", "wallace", _bits(*hyp), _verdict(hyp, concl),
            _bits(*concl, rep.diagonal_closed),
        ))
    return out


def _rees(table: TernaryTable, top: FiniteTopology, mode: str, _extra) -> list[ReplayRecord]:
    X = TopTernaryStructure(table, top, mode)
    out = []
    src = is_top_ternary_semigroup(X)
    for I in all_ideals(table):
        P = rees_congruence(table, I)
        Q = quotient_top_semigroup(X, P)
        Y = Q.structure
        z = Q.projection(min(I))
        absorbing = all(
            Y.table(z, x, y) == z and Y.table(x, z, y) == z and Y.table(x, y, z) == z
            for x in range(Y.order) for y in range(Y.order)
        )
        collapsed = len(Q.projection.image_of(I)) == 1
        hyp = (src, top.is_closed(I))
        concl = (is_top_ternary_semigroup(Y), collapsed and absorbing)
        out.append(ReplayRecord(
            f"{table.name}:{top.name}:I{I.bits:04x}", "rees", _bits(*hyp), _verdict(hyp, concl),
            _bits(*concl, Y.hausdorff),
        ))
    return out


def _group_skip(suite: str, table: TernaryTable, top: FiniteTopology, width: int) -> list[ReplayRecord] | None:
    """A single skip record when the table is not a ternary group with inverses."""
    if table.is_associative and is_ternary_group(table) and None not in inverse_vector(table):
        return None
    return [ReplayRecord(f"{table.name}:{top.name}:nongroup", suite, "0" * width, "skip", "0" * 2)]


def _coset(table: TernaryTable, top: FiniteTopology, mode: str, _extra) -> list[ReplayRecord]:
    skip = _group_skip("coset", table, top, 3)
    if skip:
        return skip
    X = TopTernaryStructure(table, top, mode)
    out = []
    top_group = is_top_ternary_group(X)
    for H in all_ternary_subgroups(table):
        normal = normality_report(table, H).normal
        closed = top.is_closed(H)
        hyp = (top_group, closed, normal)
        if normal:
            cq = coset_quotient_group(X, H)
            concl = (cq.steps.passed, is_top_ternary_group(cq.structure))
        else:
            concl = (False, False)
        out.append(ReplayRecord(
            f"{table.name}:{top.name}:H{H.bits:04x}", "coset", _bits(*hyp), _verdict(hyp, concl), _bits(*concl),
        ))
    return out


def _clopen(table: TernaryTable, top: FiniteTopology, mode: str, _extra) -> list[ReplayRecord]:
    skip = _group_skip("clopen", table, top, 2)
    if skip:
        return skip
    X = TopTernaryStructure(table, top, mode)
    out = []
    top_group = _passes_top_group(X)
    for H in all_ternary_subgroups(table):
        is_open = top.is_open(H)
        hyp = (top_group, is_open)
        if is_open:
            v = open_subgroup_is_closed(X, H)
            concl = (v.closed, v.cosets_open)
        else:
            concl = (top.is_closed(H), False)
        out.append(ReplayRecord(
            f"{table.name}:{top.name}:H{H.bits:04x}", "clopen", _bits(*hyp), _verdict(hyp, concl), _bits(*concl),
        ))
    return out


def _lemmas(table: TernaryTable, top: FiniteTopology, mode: str, _extra) -> list[ReplayRecord]:
    """Diagram commutation, the pair identity and continuity of the natural map.

    ``observed`` adds two bits: whether the congruence is closed and, if so,
    whether every saturation ``pi^-1 pi(K)`` is closed.  Those are findings,
    not part of the verdict.
    """
    n = table.order
    X = TopTernaryStructure(table, top, mode)
    out = []
    for k, P in enumerate(enumerate_congruences(table)):
        pi = P.natural_map()
        m = P.num_classes
        diag = SubSet.of(m * m, (i * m + i for i in range(m)))
        pair_bits = sum(1 << (a * n + b) for a, b in P.pairs())
        identity = product_map(pi, pi).preimage(diag).bits == pair_bits
        continuous = is_continuous(pi, top, quotient_topology(top, pi))
        closed = is_closed_congruence(X, P)
        saturations = closed and all(top.closed_mask(saturate(pi, SubSet(n, K)).bits) for K in range(1 << n))
        concl = (verify_diagram(table, P), identity, continuous)
        out.append(ReplayRecord(
            f"{table.name}:{top.name}:c{k:03d}", "lemmas", "1", _verdict((True,), concl),
            _bits(*concl) + _bits(closed, saturations),
        ))
    return out


def witness_valid(TS: FiniteTopology, I: SubSet, parts: Sequence[SubSet]) -> bool:
    """``S = I ⊕ Σ K'`` with each ``K'`` disjoint from ``I`` or of the form ``I ∪ K``, ``K`` in ``S_I``.

    Compactness of the pieces is automatic on finite carriers.
    """
    _, points = rees_space(TS, I)
    allowed = SubSet.of(TS.order, points) | I
    for K in parts:
        if (K & I) and not (I <= K and K <= allowed):
            return False
    return is_weak_topology_sum(TS, [I, *parts])


def _th2(table: TernaryTable, top: FiniteTopology, mode: str, extra) -> list[ReplayRecord]:
    tag, ideal, parts = extra
    n = table.order
    I = SubSet.of(n, ideal)
    parts = [SubSet.of(n, p) for p in parts]
    X = TopTernaryStructure(table, top, mode)
    closed_ideal = is_ideal(table, I) and top.is_closed(I)
    regular = closed_ideal and is_regular_ideal(table, top, I)
    witness = witness_valid(top, I, parts)
    hyp = (is_top_ternary_semigroup(X), closed_ideal, regular, witness)
    Q = quotient_semigroup(table, rees_congruence(table, I))
    haus = TopTernaryStructure(Q.table, quotient_topology(top, Q.natural_map), mode).hausdorff
    return [ReplayRecord(f"{table.name}:{top.name}:{tag}", "th2-forward", _bits(*hyp), _verdict(hyp, [haus]), _bits(haus))]


_EVALUATORS = {"wallace": _wallace, "rees": _rees, "coset": _coset, "clopen": _clopen, "th2-forward": _th2, "lemmas": _lemmas}


def _run_job(job) -> list[ReplayRecord]:
    suite, table, top, mode, extra = job
    return _EVALUATORS[suite](table, top, mode, extra)


# ---------------------------------------------------------------------------
# corpora


def curated_tables(suite: str) -> list[TernaryTable]:
    if suite == "wallace":
        return [
            cyclic_ternary(3), cyclic_ternary(4), cyclic_ternary(5),
            min_table(3), min_table(4), min_table(5), max_table(3),
            product_table(3), heap_from_group(cyclic_group(4)),
            left_zero_table(3), right_zero_table(3), constant_table(3),
        ]
    if suite == "rees":
        return [
            min_table(2), min_table(3), min_table(4), min_table(5),
            max_table(3), product_table(2), product_table(3), constant_table(3),
        ]
    if suite in ("coset", "clopen"):
        groups = (cyclic_group(4), cyclic_group(6), symmetric_group(3), dihedral_group(4))
        return [heap_from_group(G) for G in groups] + [derived_ternary(G) for G in groups[2:]]
    if suite == "lemmas":
        return [
            cyclic_ternary(3), min_table(3), max_table(3), product_table(3),
            left_zero_table(3), right_zero_table(3), constant_table(3),
        ]
    raise ArgumentError(f"no curated tables for suite {suite!r}")


def th2_instances() -> list[tuple[TernaryTable, FiniteTopology, tuple]]:
    """Regular closed ideals with decomposition witnesses ``(tag, ideal, parts)``."""
    sep = topology_from_subbasis(3, [[2], [0, 1]])
    sep = FiniteTopology.from_neighborhoods(3, sep.nbhd, "split3")
    return [
        (min_table(3), discrete(3), ("w0", (0,), ((1,), (2,)))),
        (min_table(4), discrete(4), ("w0", (0, 1), ((0, 1, 2), (3,)))),
        (product_table(2), discrete(2), ("w0", (0,), ((0, 1),))),
        (cyclic_ternary(3), discrete(3), ("w0", (0, 1, 2), ((0, 1, 2),))),
        (min_table(3), sep, ("w0", (0, 1), ((2,),))),
    ]


def _topologies(n: int, which: str) -> list[FiniteTopology]:
    if which == "discrete" or (which == "all" and n > ALL_TOPOLOGIES_MAX_ORDER):
        return [discrete(n)]
    if which == "all":
        return all_topologies(n)
    raise ArgumentError(f"topologies must be 'discrete' or 'all', got {which!r}")


def build_jobs(
    suite: str,
    mode: str,
    orders: Iterable[int] = (),
    curated: bool = True,
    topologies: str = "discrete",
    tables: Sequence[TernaryTable] | None = None,
) -> list[tuple]:
    if suite not in SUITES:
        raise ArgumentError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if suite == "th2-forward":
        return [(suite, t, top, mode, extra) for t, top, extra in th2_instances()]
    corpus: list[TernaryTable] = list(tables or [])
    for n in orders:
        corpus.extend(enumerate_ternary_semigroups(n))
    if curated:
        corpus.extend(curated_tables(suite))
    return [(suite, t, top, mode, None) for t in corpus for top in _topologies(t.order, topologies)]


def replay_suite(
    name: str,
    *,
    mode: str = "strict",
    orders: Iterable[int] = (),
    curated: bool = True,
    topologies: str = "discrete",
    tables: Sequence[TernaryTable] | None = None,
    jobs: int = 1,
) -> ReplayReport:
    """Run suite ``name`` over the corpus and return the sorted report."""
    work = build_jobs(name, mode, orders, curated, topologies, tables)
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_job, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        chunks = [_run_job(j) for j in work]
    records = sorted(r for chunk in chunks for r in chunk)
    return ReplayReport(name, mode, records)


def counterexamples(report: ReplayReport) -> list[ReplayRecord]:
    """Wallace records where a non-closed congruence gives a non-Hausdorff quotient."""
    return [r for r in report.records if r.suite == "wallace" and r.hypotheses[1] == "0" and r.observed[1] == "0"]
