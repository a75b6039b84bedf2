import itertools

import pytest

from oracles import brute_congruences, sextuple_congruence
from ternquot import (
    ArgumentError,
    Partition,
    TernaryTable,
    congruence_closure,
    cyclic_group,
    cyclic_ternary,
    enumerate_congruences,
    find_congruence_violation,
    format_partition,
    heap_from_group,
    is_congruence,
    max_table,
    min_table,
    parse_partition,
    product_table,
    quotient_semigroup,
    rees_congruence,
    verify_diagram,
)

MOD2 = Partition((0, 1, 0, 1, 0, 1))


class TestPartition:
    def test_normalisation(self):
        assert Partition((5, 3, 5, 9)).labels == (0, 1, 0, 2)
        assert Partition(Partition((2, 2, 0)).labels) == Partition((0, 0, 1))

    def test_classes_and_representatives(self):
        P = parse_partition(5, "1 3/0/2 4")
        assert P.labels == (0, 1, 2, 1, 2)
        assert [c.elements() for c in P.classes()] == [(0,), (1, 3), (2, 4)]
        assert P.representatives() == (0, 1, 2)

    def test_text_round_trip(self):
        assert format_partition(MOD2) == "0 2 4/1 3 5"
        assert parse_partition(6, "0 2 4/1 3 5") == MOD2

    @pytest.mark.parametrize("text", ["0 1/1 2", "0/1", "0 x/1 2", "0//1 2", "0 1 2/3"])
    def test_bad_text(self, text):
        with pytest.raises(ArgumentError):
            parse_partition(3, text)

    def test_refines(self):
        assert Partition.identity(4).refines(Partition((0, 0, 1, 1)))
        assert not Partition.full(3).refines(Partition.identity(3))


class TestIsCongruence:
    def test_mod2(self):
        T = cyclic_ternary(6)
        assert is_congruence(T, MOD2)
        assert sextuple_congruence(6, T.cube, MOD2.labels)

    def test_identity(self):
        for T in (min_table(3), heap_from_group(cyclic_group(4)), product_table(2)):
            assert is_congruence(T, Partition.identity(T.order))

    def test_min3_witness(self):
        T, P = min_table(3), Partition((0, 1, 0))
        assert not is_congruence(T, P)
        # brute-force first violating sextuple
        assert find_congruence_violation(T, P) == (0, 2, 0, 2, 1, 1)

    def test_no_witness_on_congruence(self):
        assert find_congruence_violation(cyclic_ternary(6), MOD2) is None


class TestClosure:
    def test_examples(self):
        T = cyclic_ternary(6)
        assert congruence_closure(T, [(0, 2)]) == MOD2
        assert congruence_closure(T, [(0, 1)]) == Partition.full(6)
        assert congruence_closure(T, []) == Partition.identity(6)

    def test_out_of_range(self):
        with pytest.raises(ArgumentError):
            congruence_closure(cyclic_ternary(3), [(0, 3)])

    def test_closure_is_least(self):
        T = min_table(4)
        congs = [P for P in enumerate_congruences(T)]
        for a, b in itertools.combinations(range(4), 2):
            C = congruence_closure(T, [(a, b)])
            assert C.labels[a] == C.labels[b] and is_congruence(T, C)
            holders = [P for P in congs if P.labels[a] == P.labels[b]]
            assert all(C.refines(P) for P in holders)


class TestRees:
    def test_examples(self):
        assert rees_congruence(min_table(3), [0, 1]) == Partition((0, 0, 1))
        assert rees_congruence(product_table(2), [0]) == Partition.identity(2)
        assert rees_congruence(min_table(3), [0]) == Partition.identity(3)

    def test_not_ideal(self):
        with pytest.raises(ArgumentError):
            rees_congruence(min_table(3), [1])


class TestQuotient:
    def test_mod2_is_cyclic2(self):
        Q = quotient_semigroup(cyclic_ternary(6), MOD2)
        assert Q.table.cube == cyclic_ternary(2).cube
        assert Q.representatives == (0, 1)
        assert Q.natural_map.image == (0, 1, 0, 1, 0, 1)

    def test_identity_quotient(self):
        T = max_table(3)
        assert quotient_semigroup(T, Partition.identity(3)).table.cube == T.cube

    def test_full_quotient(self):
        assert quotient_semigroup(min_table(4), Partition.full(4)).table.order == 1

    def test_rees_quotient_of_min3(self):
        Q = quotient_semigroup(min_table(3), Partition((0, 0, 1)))
        assert Q.table.cube == min_table(2).cube

    def test_rejects_non_congruence(self):
        with pytest.raises(ArgumentError):
            quotient_semigroup(min_table(3), Partition((0, 1, 0)))

    def test_diagram(self):
        assert verify_diagram(cyclic_ternary(6), MOD2)
        for T in (min_table(3), product_table(2), heap_from_group(cyclic_group(4))):
            assert verify_diagram(T, Partition.identity(T.order))
            assert verify_diagram(T, Partition.full(T.order))


class TestEnumeration:
    def test_trivial(self):
        assert enumerate_congruences(cyclic_ternary(1)) == [Partition((0,))]

    @pytest.mark.parametrize(
        "T, count",
        [(cyclic_ternary(6), 4), (min_table(4), 8), (product_table(2), 2), (heap_from_group(cyclic_group(4)), 3)],
    )
    def test_matches_bell_filter(self, T, count):
        found = [P.labels for P in enumerate_congruences(T)]
        assert found == brute_congruences(T.order, T.cube)
        assert len(found) == count

    def test_non_associative_table(self):
        # the lattice walk never relies on associativity
        T = TernaryTable(2, (0, 0, 0, 0, 0, 0, 1, 0))
        assert [P.labels for P in enumerate_congruences(T)] == brute_congruences(2, T.cube)

    def test_order_bound(self):
        with pytest.raises(ArgumentError):
            enumerate_congruences(cyclic_ternary(11))
