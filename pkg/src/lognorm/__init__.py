"""Rank and Galois character of the group of naive cyclotomic norms.

The character calculus gives the closed-form rank and character for
Galois fields; the concrete layer cross-checks it with a brute-force
l-adic kernel oracle on small quadratic and biquadratic fields.
"""

from .padic import (
    PadicError,
    PadicMatrix,
    PadicNumber,
    PrecisionError,
    hensel_sqrt,
    iwasawa_log,
    padic_exp,
    padic_matrix_rank,
    teichmuller,
    val_ell,
)
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    all_subgroups,
    conjugacy_classes,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    group_from_json,
    group_from_permutations,
    metacyclic_group,
    quotient_map,
    unit_group_mod,
)
from .chars import (
    CharacterError,
    CharacterTable,
    ClassFunction,
    Multiplicities,
    character_table,
    cla_rank,
    gross_equality_criterion,
    herbrand_character,
    induced_trivial,
    inner_product,
    meet,
    multiplicities,
    naive_norm_character,
    naive_rank_galois,
    prime_part_of_regular,
    subfield_heredity_check,
)
from .numfield import (
    AmbiguityError,
    DecompositionData,
    FieldError,
    FieldSpec,
    Place,
    QuadElement,
    SpecParseError,
    UnsupportedFieldError,
    biquadratic_spec,
    class_number,
    cyclotomic_spec,
    decomposition_data,
    fundamental_unit,
    log_valuation,
    naive_rank_oracle,
    naive_rank_oracle_retry,
    oracle_matrix,
    parse_spec,
    quadratic_spec,
    rational_spec,
    places_above,
    principal_power_generator,
    product_formula_residual,
    squarefree_radicands,
    torsion_order,
)
from .cli import RankReport, build_report, main

__version__ = "0.1.0"
