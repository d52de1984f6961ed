"""Projective-bimodule 2-categories over families of self-injective algebras."""

from .algebra import (
    Algebra,
    AlgebraError,
    Check,
    dual_numbers,
    field_algebra,
    monomial_algebra,
    preprojective_a2,
    truncated_polynomial,
    zigzag_a2,
)
from .category import (
    CAX,
    AlgebraFamily,
    BimodHom,
    CellIdeal,
    FamilyError,
    Identity,
    Proj,
    cell_ideal,
    cell_rep_hom_dim,
    check_ideal_homogeneous,
    compose,
    degree_zero_hom,
    duflo,
    family,
    graded_hom_dim,
    hom_space,
    indecomposables,
    left_adjoint,
    lcell_members,
    m_multiplicity,
    multisemigroup_of,
    nakayama_permutation,
    parse_1mor,
    radical,
    right_adjoint,
    validate_family,
)
