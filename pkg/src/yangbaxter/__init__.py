"""Finite set-theoretic solutions of the braid relation and skew left braces:
construction, verification, classification, and census enumeration."""

from .groups import (
    AbelianGroup,
    FiniteGroup,
    PermGroup,
    abelian_group,
    abelian_groups_of_order,
    center,
    cyclic_group,
    dihedral_group,
    direct_product_group,
    element_order,
    invariant_factors,
    is_normal,
    orbits,
    perm_group_closure,
    quaternion_group,
    quotient,
    small_groups,
    subgroup_generated,
    symmetric_group,
)
from .solution import (
    FiniteSolution,
    InjectivityReport,
    TwoReductivity,
    VerificationError,
    Violation,
    canonical_key,
    has_lri,
    injectivity_necessary_checks,
    inverse_solution,
    is_2reductive,
    is_involutive,
    is_left_distributive,
    is_permutational,
    is_projection,
    is_right_distributive,
    is_square_free,
    permutational_solution,
    projection_solution,
    relabel,
    satisfies_condition_star,
    solution_from_dict,
    solution_to_text,
    solutions_isomorphic,
    parse_solution_text,
    validate_tables,
    verify,
)
from .retraction import (
    MultipermutationResult,
    PermutationGroups,
    SolutionPartition,
    is_congruence,
    multipermutation_level,
    partition_from_blocks,
    permutation_groups,
    quotient_solution,
    relation,
    retraction,
)
from .unions import (
    AbelianUnion,
    UnionIsomorphism,
    UnionPredicates,
    abelian_union,
    canonical_form,
    enumerate_2reductive,
    injectivity_checks,
    opposite_union,
    solution_to_union,
    union_from_dict,
    union_predicates,
    union_to_solution,
    unions_isomorphic,
)
from .brace import (
    BraceError,
    Ideal,
    KernelReport,
    ReductivityProfile,
    SkewBrace,
    SocleSeries,
    almost_trivial_brace,
    associated_solution,
    brace_from_dict,
    dihedral_example_brace,
    is_biskew,
    is_ideal,
    kernel_ideals,
    opposite_brace,
    product_brace,
    quotient_brace,
    reductivity_profile,
    socle,
    socle_series,
    trivial_brace,
    verify_brace,
    z2n_brace,
    z2n_dual_brace,
)

__version__ = "0.1.0"
