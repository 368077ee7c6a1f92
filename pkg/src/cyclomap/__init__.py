"""Piecewise-monomial mappings on finite-field cosets and their
many-to-one classification."""

from . import errors
from .cyclotomic import (
    Branch,
    BranchMap,
    BranchRelation,
    CosetDecomposition,
    GroupContext,
    Polynomial,
    RelationKind,
    decompose,
    multiplicative_group,
    subgroup_of_order,
    unit_circle,
)
from .gf import (
    DiophantineSolution,
    Field,
    ProgressionKind,
    ResidueSetRelation,
    make_field,
    residue_progression_relation,
    solve_diophantine,
)
from .mto1 import (
    CriterionVerdict,
    Mto1Report,
    classify_branch_map,
    classify_callable,
    classify_pairs,
    classify_polynomial,
    criterion_2to1_any_l,
    criterion_equal_d,
    criterion_l2,
    criterion_l3,
    lift_to_full_field,
    specialized_criterion,
)
from .notation import (
    field_from_id,
    format_element,
    parse_branches,
    parse_element,
    parse_field_id,
    parse_polynomial,
)
from .search import (
    MismatchReport,
    SplitMix64,
    SweepSpec,
    differential_verify,
    enumerate_mto1,
)
from .unitary import (
    FamilyResult,
    FamilySpec,
    WrappedMap,
    classify_unit_mapping,
    classify_wrapped,
    criterion_wrapped,
    criterion_xrh,
    eval_wrapped,
    family_construct,
    infer_monomial_branches,
    make_wrapped,
    reduce_to_unit,
    xrh_valid_ms,
)

__version__ = "0.1.0"
