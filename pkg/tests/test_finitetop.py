import pytest

from oracles import (
    brute_closure,
    brute_interior,
    brute_quotient_topology,
    brute_topologies,
    generated_topology,
    product_opens,
)
from ternquot import (
    ArgumentError,
    ElementMap,
    FiniteTopology,
    SubSet,
    all_topologies,
    closure,
    discrete,
    find_separating_box,
    indiscrete,
    interior,
    is_closed_map,
    is_continuous,
    is_hausdorff,
    is_open_map,
    is_quotient_map,
    is_regular_ideal,
    is_weak_topology_sum,
    min_table,
    product_topology,
    quotient_topology,
    rees_space,
    saturate,
    saturated_interior,
    sierpinski,
    subspace_topology,
    topology_from_subbasis,
)
from ternquot.finitetop import product_map


def opens(T):
    return {frozenset(o.elements()) for o in T.opens()}


def fs(*xs):
    return frozenset(xs)


class TestConstruction:
    def test_from_opens_axioms(self):
        with pytest.raises(ArgumentError, match="full"):
            FiniteTopology.from_opens(2, [[], [0]])
        with pytest.raises(ArgumentError, match="empty"):
            FiniteTopology.from_opens(2, [[0], [0, 1]])
        with pytest.raises(ArgumentError, match="union"):
            FiniteTopology.from_opens(3, [[], [0], [1], [0, 1, 2]])
        with pytest.raises(ArgumentError, match="intersection"):
            FiniteTopology.from_opens(3, [[], [0, 1], [1, 2], [0, 1, 2]])

    def test_bad_neighbourhoods(self):
        with pytest.raises(ArgumentError):
            FiniteTopology.from_neighborhoods(2, [0b10, 0b10])

    def test_subbasis_examples(self):
        assert opens(topology_from_subbasis(2, [[1]])) == {fs(), fs(1), fs(0, 1)}
        assert len(topology_from_subbasis(3, [[0], [1], [2]]).masks) == 8
        got = opens(topology_from_subbasis(4, [[0, 1], [1, 2]]))
        assert got == {fs(), fs(1), fs(0, 1), fs(1, 2), fs(0, 1, 2), fs(0, 1, 2, 3)}
        assert got == generated_topology(4, [[0, 1], [1, 2]])

    def test_masks_equal_neighbourhood_family(self):
        T = topology_from_subbasis(4, [[0, 1], [1, 2], [3]])
        assert T == FiniteTopology.from_opens(4, T.masks)

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355)])
    def test_all_topologies(self, n, count):
        found = all_topologies(n)
        assert len(found) == count
        assert {frozenset(map(frozenset, opens(T))) for T in found} == set(brute_topologies(n))

    def test_sierpinski(self):
        S = sierpinski()
        assert opens(S) == {fs(), fs(1), fs(0, 1)}

    def test_subspace(self):
        T = topology_from_subbasis(3, [[2], [1, 2]])
        assert opens(subspace_topology(T, [0, 2])) == {fs(), fs(1), fs(0, 1)}


class TestProducts:
    def test_examples(self):
        assert product_topology(discrete(2), discrete(2)).is_discrete
        assert opens(product_topology(indiscrete(2), indiscrete(2))) == {fs(), fs(0, 1, 2, 3)}
        SS = product_topology(sierpinski(), sierpinski())
        assert SS.is_open([3]) and not SS.is_open([0])

    def test_against_box_oracle(self):
        for A in all_topologies(2):
            for B in all_topologies(3)[::4]:
                assert opens(product_topology(A, B)) == product_opens(opens(A), 2, opens(B), 3)

    def test_index_layout(self):
        P = product_topology(discrete(2), sierpinski())
        # (a, b) -> 2a + b; {(0,1)} is open because {1} is open in the Sierpinski factor
        assert P.is_open([1]) and not P.is_open([0])

    def test_size_bound(self):
        with pytest.raises(ArgumentError):
            product_topology(discrete(9), discrete(9), discrete(9))


class TestQuotient:
    def test_examples(self):
        q = ElementMap(3, 2, (0, 0, 1))
        assert quotient_topology(discrete(3), q).is_discrete
        assert opens(quotient_topology(indiscrete(3), q)) == {fs(), fs(0, 1)}
        T = topology_from_subbasis(3, [[2], [1, 2]])
        assert opens(quotient_topology(T, q)) == {fs(), fs(1), fs(0, 1)}

    def test_not_surjective(self):
        with pytest.raises(ArgumentError):
            quotient_topology(discrete(2), ElementMap(2, 3, (0, 1)))

    def test_final_against_oracle(self):
        q = ElementMap(4, 2, (0, 1, 1, 0))
        for T in all_topologies(4)[::7]:
            assert opens(quotient_topology(T, q)) == brute_quotient_topology(opens(T), q.image, 2)


class TestMaps:
    def test_constant_is_continuous(self):
        for T in all_topologies(3):
            assert is_continuous(ElementMap(3, 2, (1, 1, 1)), T, sierpinski())

    def test_identity(self):
        ident = ElementMap.identity(3)
        D = discrete(3)
        assert is_continuous(ident, D, D) and is_open_map(ident, D, D) and is_closed_map(ident, D, D)
        two = ElementMap.identity(2)
        assert is_continuous(two, discrete(2), sierpinski())
        assert not is_continuous(two, sierpinski(), discrete(2))

    def test_quotient_maps(self):
        q = ElementMap(3, 2, (0, 0, 1))
        assert is_quotient_map(q, discrete(3), quotient_topology(discrete(3), q))
        assert not is_quotient_map(ElementMap.identity(2), discrete(2), indiscrete(2))
        pi = ElementMap(2, 1, (0, 0))
        pi3 = product_map(pi, pi, pi)
        one = discrete(1)
        assert is_quotient_map(pi3, product_topology(discrete(2), discrete(2), discrete(2)),
                               product_topology(one, one, one))

    def test_closed_map_brute(self):
        # compare against enumerating every closed set
        S = sierpinski()
        f = ElementMap(2, 2, (1, 1))
        assert is_closed_map(f, S, S) == all(
            S.is_closed(f.image_of(SubSet(2, c))) for c in range(4) if S.closed_mask(c)
        )


class TestOperators:
    def test_closure_interior(self):
        assert closure(discrete(3), [1]).elements() == (1,)
        assert closure(indiscrete(2), [0]).elements() == (0, 1)
        S = sierpinski()
        assert not interior(S, [0]) and closure(S, [1]).elements() == (0, 1)

    def test_against_oracle(self):
        for T in all_topologies(3):
            fam = opens(T)
            for bits in range(8):
                A = frozenset(SubSet(3, bits).elements())
                assert set(closure(T, A).elements()) == brute_closure(3, fam, A)
                assert set(interior(T, A).elements()) == brute_interior(fam, A)

    def test_hausdorff(self):
        assert is_hausdorff(discrete(4))
        assert not is_hausdorff(sierpinski())
        assert not is_hausdorff(indiscrete(2))
        assert sum(is_hausdorff(T) for T in all_topologies(4)) == 1

    def test_saturate(self):
        q = ElementMap(3, 2, (0, 0, 1))
        assert saturate(q, [0]).elements() == (0, 1)
        assert not saturate(q, [])
        assert saturate(q, [0, 1]).elements() == (0, 1)

    def test_saturated_interior(self):
        q = ElementMap(4, 2, (0, 0, 1, 1))
        assert saturated_interior(q, [0, 1, 2]).elements() == (0, 1)
        assert saturated_interior(q, range(4)).elements() == (0, 1, 2, 3)
        assert not saturated_interior(q, [])


def mult_map(T):
    n = T.order
    return ElementMap(n ** 3, n, T.cube)


class TestSeparatingBox:
    def test_discrete_returns_inputs(self):
        T = min_table(3)
        D3 = discrete(3)
        box = find_separating_box(mult_map(T), D3, D3, D3, D3, [1, 2], [2], [1], [1])
        assert [b.elements() for b in box] == [(1, 2), (2,), (1,)]

    def test_indiscrete_full(self):
        T = min_table(2)
        I2 = indiscrete(2)
        box = find_separating_box(mult_map(T), I2, I2, I2, I2, [0], [1], [1], [0, 1])
        assert all(b.elements() == (0, 1) for b in box)

    def test_indiscrete_target_discrete_domain(self):
        # with a discrete domain the minimal box is (A, B, C) itself
        T, D2 = min_table(2), discrete(2)
        box = find_separating_box(mult_map(T), D2, D2, D2, indiscrete(2), [0], [1], [1], [0, 1])
        assert [b.elements() for b in box] == [(0,), (1,), (1,)]

    def test_sierpinski_min(self):
        S = sierpinski()
        box = find_separating_box(mult_map(min_table(2)), S, S, S, S, [1], [1], [1], [1])
        assert [b.elements() for b in box] == [(1,), (1,), (1,)]

    def test_preconditions(self):
        S, T = sierpinski(), min_table(2)
        with pytest.raises(ArgumentError, match="not open"):
            find_separating_box(mult_map(T), S, S, S, S, [0], [0], [0], [0])
        with pytest.raises(ArgumentError, match="contained"):
            find_separating_box(mult_map(T), S, S, S, S, [0], [1], [1], [1])
        with pytest.raises(ArgumentError, match="continuous"):
            find_separating_box(mult_map(T), S, S, S, discrete(2), [1], [1], [1], [1])


class TestWeakSums:
    def test_examples(self):
        for T in all_topologies(3):
            assert is_weak_topology_sum(T, [range(3)])
        assert is_weak_topology_sum(discrete(3), [[0], [1], [2]])
        assert not is_weak_topology_sum(indiscrete(2), [[0], [1]])

    def test_cover(self):
        with pytest.raises(ArgumentError):
            is_weak_topology_sum(discrete(3), [[0], [1]])


class TestRegularIdeals:
    def test_discrete(self):
        T = min_table(3)
        assert all(is_regular_ideal(T, discrete(3), I) for I in ([0], [0, 1], [0, 1, 2]))

    def test_not_closed(self):
        with pytest.raises(ArgumentError):
            is_regular_ideal(min_table(2), indiscrete(2), [0])

    def test_split_topology(self):
        TS = topology_from_subbasis(3, [[2], [0, 1]])
        assert len(TS.masks) == 4
        assert is_regular_ideal(min_table(3), TS, [0, 1])

    def test_not_regular(self):
        TS = topology_from_subbasis(3, [[2], [1, 2]])
        assert not is_regular_ideal(min_table(3), TS, [0])


class TestReesSpace:
    def test_discrete(self):
        top, pts = rees_space(discrete(3), [0])
        assert pts == (1, 2) and top.is_discrete

    def test_indiscrete(self):
        top, pts = rees_space(indiscrete(3), [0])
        assert pts == (0, 1, 2) and opens(top) == {fs(), fs(0, 1, 2)}

    def test_full_ideal(self):
        top, pts = rees_space(discrete(3), [0, 1, 2])
        assert pts == () and top.order == 0

    def test_nonempty(self):
        with pytest.raises(ArgumentError):
            rees_space(discrete(2), [])
