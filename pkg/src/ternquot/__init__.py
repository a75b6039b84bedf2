"""Finite ternary semigroups, their congruences and quotients, and finite topological models."""

from .congruence import (
    Partition,
    QuotientResult,
    congruence_closure,
    enumerate_congruences,
    find_congruence_violation,
    format_partition,
    is_congruence,
    parse_partition,
    quotient_semigroup,
    rees_congruence,
    verify_diagram,
)
from .core import (
    GroupTable,
    NormalityReport,
    SubSet,
    TernaryTable,
    all_ideals,
    all_ternary_subgroups,
    constant_table,
    cyclic_group,
    cyclic_ternary,
    derived_ternary,
    dihedral_group,
    find_associativity_violation,
    heap_from_group,
    inverse_of,
    is_ideal,
    is_normal_subgroup,
    is_ternary_group,
    is_ternary_semigroup,
    is_ternary_subgroup,
    left_coset,
    left_zero_table,
    max_table,
    min_table,
    mul3,
    normality_report,
    product_table,
    right_coset,
    right_zero_table,
    set_product,
    symmetric_group,
)
from .enumeration import canonical_cube, enumerate_ternary_semigroups
from .errors import (
    ArgumentError,
    AxiomViolation,
    ParseError,
    ParseRangeError,
    ParseSyntaxError,
    StateError,
    StructuralError,
    TernaryError,
)
from .fileformat import Instance, parse_instance, read_instance, serialize_instance
from .finitetop import (
    ElementMap,
    FiniteTopology,
    all_topologies,
    closure,
    discrete,
    find_separating_box,
    indiscrete,
    interior,
    is_closed_map,
    is_continuous,
    is_hausdorff,
    is_homeomorphism,
    is_open_map,
    is_quotient_map,
    is_regular_ideal,
    is_weak_topology_sum,
    product_topology,
    quotient_topology,
    rees_space,
    saturate,
    saturated_interior,
    sierpinski,
    subspace_topology,
    topology_from_subbasis,
)
from .replay import ReplayRecord, ReplayReport, replay_suite
from .topstruct import (
    TopTernaryStructure,
    coset_quotient_group,
    is_closed_congruence,
    is_top_ternary_group,
    is_top_ternary_semigroup,
    open_subgroup_is_closed,
    quotient_top_semigroup,
    translated_open,
    translation_maps,
)

__version__ = "0.1.0"
