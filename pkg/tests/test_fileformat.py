import pytest

from ternquot import (
    AxiomViolation,
    Instance,
    ParseRangeError,
    ParseSyntaxError,
    Partition,
    SubSet,
    cyclic_ternary,
    discrete,
    is_ternary_semigroup,
    min_table,
    parse_instance,
    serialize_instance,
    sierpinski,
    topology_from_subbasis,
)

CYC2 = """tsg 1
order 2
cube
0 1
1 0
1 0
0 1
"""


def test_minimal_file():
    inst = parse_instance(CYC2)
    assert inst.order == 2 and is_ternary_semigroup(inst.table)
    assert inst.table.cube == cyclic_ternary(2).cube
    assert inst.topology is None and not inst.sets and not inst.partitions


def test_tuple_unpacking():
    table, topology, named = parse_instance(CYC2 + "set H 0\n")
    assert table.order == 2 and topology is None and named["H"].elements() == (0,)


def test_comments_and_blank_lines():
    text = "# header\n\n" + CYC2.replace("cube\n", "cube  # rows a*n+b\n") + "\n# end\n"
    assert parse_instance(text).table.cube == cyclic_ternary(2).cube


def test_full_round_trip():
    inst = Instance(
        min_table(3),
        topology_from_subbasis(3, [[2], [1, 2]]),
        {"I": SubSet.of(3, [0, 1]), "E": SubSet(3, 0)},
        {"rees": Partition((0, 0, 1)), "delta": Partition.identity(3)},
    )
    text = serialize_instance(inst)
    back = parse_instance(text)
    assert back.table == inst.table and back.topology == inst.topology
    assert back.sets == inst.sets and back.partitions == inst.partitions
    assert serialize_instance(back) == text


def test_canonical_layout():
    inst = Instance(cyclic_ternary(2), sierpinski(), {"H": SubSet.of(2, [1])}, {"p": Partition((0, 1))})
    assert serialize_instance(inst) == CYC2 + "topology 3\n{}\n1\n0 1\nset H 1\npartition p 0/1\n"


def test_topology_is_rebuilt_from_opens():
    text = CYC2 + "topology 4\n0 1\n{}\n1\n0\n"
    assert parse_instance(text).topology == discrete(2)


def error(text):
    with pytest.raises(Exception) as info:
        parse_instance(text)
    return info.value


def test_range_error_names_line():
    e = error(CYC2.replace("1 0\n0 1\n", "1 0\n0 2\n", 1))
    assert isinstance(e, ParseRangeError) and (e.line, e.column) == (7, 3)


def test_topology_without_full_set():
    e = error(CYC2 + "topology 2\n{}\n1\n")
    assert isinstance(e, AxiomViolation) and "full carrier" in str(e) and e.line == 8


def test_topology_not_union_closed():
    e = error("tsg 1\norder 3\ncube\n" + "0 0 0\n" * 9 + "topology 4\n{}\n0\n1\n0 1 2\n")
    assert isinstance(e, AxiomViolation) and "union" in str(e) and e.line == 16


def test_non_associative():
    e = error("tsg 1\norder 2\ncube\n0 0\n0 0\n0 0\n1 0\n")
    assert isinstance(e, AxiomViolation) and e.line == 7  # row (1, 1) of the first violation
    skipped = parse_instance("tsg 1\norder 2\ncube\n0 0\n0 0\n0 0\n1 0\n", check_axioms=False)
    assert not skipped.table.is_associative


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("tsg 2\n", 1, 5),
        ("tsx 1\n", 1, 1),
        ("tsg 1\norder two\n", 2, 7),
        ("tsg 1\norder 2\ncube\n0 1\n1 0 1\n", 5, 5),
        ("tsg 1\norder 2\ncube\n0 1\n", 5, 1),
        (CYC2 + "bogus 1\n", 8, 1),
        (CYC2 + "set 9x 0\n", 8, 5),
        (CYC2 + "set H 0\nset H 1\n", 9, 5),
        (CYC2 + "topology 2\n{}\n{}\n", 10, 1),
        (CYC2 + "partition p 0//1\n", 8, 15),
    ],
)
def test_syntax_errors(text, line, column):
    e = error(text)
    assert isinstance(e, ParseSyntaxError)
    assert (e.line, e.column) == (line, column)


def test_partition_axioms():
    e = error(CYC2 + "partition p 0 1/1\n")
    assert isinstance(e, AxiomViolation) and e.column == 17
    e = error(CYC2 + "partition p 0\n")
    assert isinstance(e, AxiomViolation) and "no class" in str(e)


def test_error_kinds_are_distinct():
    kinds = {type(error(t)) for t in ("tsg 2\n", CYC2 + "set H 7\n", CYC2 + "topology 1\n{}\n")}
    assert kinds == {ParseSyntaxError, ParseRangeError, AxiomViolation}
