import itertools

import pytest

from ternquot import (
    ArgumentError,
    Partition,
    StateError,
    SubSet,
    TopTernaryStructure,
    all_topologies,
    coset_quotient_group,
    cyclic_group,
    cyclic_ternary,
    derived_ternary,
    discrete,
    heap_from_group,
    indiscrete,
    is_closed_congruence,
    is_homeomorphism,
    is_top_ternary_group,
    is_top_ternary_semigroup,
    min_table,
    open_subgroup_is_closed,
    product_table,
    quotient_top_semigroup,
    rees_congruence,
    sierpinski,
    symmetric_group,
    topology_from_subbasis,
    translated_open,
    translation_maps,
)
from ternquot.topstruct import coset_partition

S3 = symmetric_group(3)
A3 = [0, S3.index((1, 2, 0)), S3.index((2, 0, 1))]
Z4 = heap_from_group(cyclic_group(4))
SPLIT = topology_from_subbasis(3, [[2], [1, 2]])


def top(T, space, mode="strict"):
    return TopTernaryStructure(T, space, mode)


class TestPredicates:
    def test_discrete_cyclic(self):
        assert is_top_ternary_semigroup(top(cyclic_ternary(4), discrete(4)))

    def test_min_table_split(self):
        assert is_top_ternary_semigroup(top(min_table(3), SPLIT, "relaxed"))
        assert not is_top_ternary_semigroup(top(min_table(3), SPLIT, "strict"))

    def test_groups(self):
        assert is_top_ternary_group(top(Z4, discrete(4)))
        assert is_top_ternary_group(top(cyclic_ternary(2), indiscrete(2), "relaxed"))
        assert not is_top_ternary_group(top(cyclic_ternary(2), indiscrete(2)))

    def test_missing_inverse(self):
        with pytest.raises(StateError):
            is_top_ternary_group(top(product_table(2), discrete(2)))

    def test_nonassociative(self):
        with pytest.raises(StateError):
            is_top_ternary_semigroup(top(heap_from_group(S3), discrete(6)))

    def test_bad_inputs(self):
        with pytest.raises(ArgumentError):
            top(min_table(2), discrete(3))
        with pytest.raises(ArgumentError):
            top(min_table(2), discrete(2), "loose")

    def test_sierpinski_continuity(self):
        # opens are up-sets: min and max pull {1} back to up-sets, parity does not
        assert top(min_table(2), sierpinski(), "relaxed").multiplication_continuous
        assert top(min_table(2).relabel([1, 0]), sierpinski(), "relaxed").multiplication_continuous
        assert not top(cyclic_ternary(2), sierpinski(), "relaxed").multiplication_continuous


class TestTranslations:
    def test_heap_z4(self):
        tr = translation_maps(top(Z4, discrete(4)), 1, 2)
        assert tr.left.image == tuple((x + 3) % 4 for x in range(4))
        assert tr.inversion.image == (0, 1, 2, 3)

    def test_identity_translation(self):
        tr = translation_maps(top(cyclic_ternary(3), discrete(3)), 0, 0)
        assert tr.left.image == (0, 1, 2)

    def test_homeomorphisms_relaxed(self):
        for space in all_topologies(3):
            X = top(cyclic_ternary(3), space, "relaxed")
            if not is_top_ternary_group(X):
                continue
            for a, b in itertools.product(range(3), repeat=2):
                for m in translation_maps(X, a, b):
                    assert is_homeomorphism(m, space, space)

    def test_translated_open(self):
        X = top(Z4, discrete(4))
        assert translated_open(X, [0, 1], [2], "AAU")[1]
        prod, ok = translated_open(X, [], [2], "AUA")
        assert not prod and ok
        Y = top(cyclic_ternary(2), indiscrete(2), "relaxed")
        prod, ok = translated_open(Y, [0], [0, 1], "AAU")
        assert prod.elements() == (0, 1) and ok

    def test_translated_open_requires_open(self):
        with pytest.raises(ArgumentError):
            translated_open(top(cyclic_ternary(2), indiscrete(2), "relaxed"), [0], [0], "AAU")


class TestOpenSubgroups:
    def test_heap_z4(self):
        v = open_subgroup_is_closed(top(Z4, discrete(4)), [0, 2])
        assert v.closed and [c.elements() for c in v.cosets] == [(0, 2), (1, 3)]

    def test_alternating(self):
        v = open_subgroup_is_closed(top(derived_ternary(S3), discrete(6)), A3)
        assert v.closed and len(v.cosets) == 2 and v.asserted

    def test_relaxed_not_asserted(self):
        T = cyclic_ternary(4)
        space = topology_from_subbasis(4, [[0, 2], [1, 3]])
        v = open_subgroup_is_closed(top(T, space, "relaxed"), [0, 2])
        assert v.closed and not v.asserted

    def test_not_open(self):
        with pytest.raises(ArgumentError):
            open_subgroup_is_closed(top(cyclic_ternary(2), indiscrete(2), "relaxed"), [0])

    def test_coset_partition(self):
        H = SubSet.of(6, A3)
        P, cosets = coset_partition(derived_ternary(S3), H)
        assert P.num_classes == 2 and cosets[0] == H


class TestCosetQuotient:
    def test_heap_z4(self):
        cq = coset_quotient_group(top(Z4, discrete(4)), [0, 2])
        assert cq.steps.passed and cq.steps.asserted
        assert cq.structure.table.cube == heap_from_group(cyclic_group(2)).cube
        assert cq.structure.topology.is_discrete

    def test_alternating(self):
        cq = coset_quotient_group(top(derived_ternary(S3), discrete(6)), A3)
        assert cq.structure.order == 2 and cq.steps.passed and cq.structure.hausdorff

    def test_full_subgroup(self):
        cq = coset_quotient_group(top(Z4, discrete(4)), range(4))
        assert cq.structure.order == 1 and is_top_ternary_group(cq.structure)

    def test_not_normal(self):
        with pytest.raises(ArgumentError):
            coset_quotient_group(top(derived_ternary(S3), discrete(6)), [0, S3.index((1, 0, 2))])


class TestCongruenceQuotient:
    def test_closed_congruence(self):
        assert is_closed_congruence(top(cyclic_ternary(3), discrete(3)), Partition((0, 1, 0)))
        assert not is_closed_congruence(top(cyclic_ternary(2), indiscrete(2), "relaxed"), Partition((0, 1)))

    def test_mod2(self):
        tq = quotient_top_semigroup(top(cyclic_ternary(6), discrete(6)), Partition((0, 1) * 3))
        r = tq.report
        assert all(r.hypotheses) and all(r.conclusions) and is_top_ternary_semigroup(tq.structure)

    def test_rees_min3(self):
        T = min_table(3)
        tq = quotient_top_semigroup(top(T, discrete(3)), rees_congruence(T, [0, 1]))
        assert is_top_ternary_semigroup(tq.structure) and tq.structure.order == 2

    def test_counterexample(self):
        X = top(cyclic_ternary(2), indiscrete(2), "relaxed")
        tq = quotient_top_semigroup(X, Partition.identity(2))
        r = tq.report
        assert r.source_top_semigroup and r.triple_quotient
        assert not r.congruence_closed and not r.quotient_hausdorff
        assert tq.structure.table.cube == cyclic_ternary(2).cube

    def test_split_min3_mod(self):
        X = top(min_table(3), SPLIT, "relaxed")
        tq = quotient_top_semigroup(X, Partition((0, 0, 1)))
        assert not tq.report.congruence_closed and tq.report.multiplication_continuous

    def test_strict_theorem_over_small_spaces(self):
        # a StructuralError here would mean a replayed conclusion failed
        for space in all_topologies(2):
            for P in (Partition.identity(2), Partition.full(2)):
                quotient_top_semigroup(top(min_table(2), space), P)
