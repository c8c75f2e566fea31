"""Analysis of constant-length substitutions.

Core objects live in submodules:

- words: Substitution, languages, complexity, primitivity, aperiodicity
- semigroup: the semigroup generated by the column maps and its Green structure
- transforms: derived substitutions (powers, collars, shifted pairs, pure base,
  height, suspensions, injectivization)
- encodings: inner/outer encodings, minimal sets, coincidence partitions, R-sets
- deciders: factor deciders (almost automorphic, bijective) and the full report
- fixtures: the bundled example substitutions
- cli: the `colsub` command-line tool
"""

from .errors import ColsubError, InputError, PreconditionError, ResourceBudgetError
from .words import (
    LanguageCache,
    Substitution,
    allowed_words,
    aperiodicity_cap,
    column_map,
    complexity_profile,
    equivalent_up_to_renaming,
    fix_power,
    fixed_point_prefix,
    fixed_point_seed,
    format_rules,
    is_aperiodic,
    is_primitive,
    parse_rules,
    substitute,
    theta_fixed_letters,
)

from .semigroup import (
    GreenData,
    PairAperiodicityReport,
    TransformationSemigroup,
    generate,
    green,
    has_unique_minimal_left_ideal,
    j_depth,
    kernel_is_left_zero,
    naive_column_number,
    pair_aperiodicity,
)
from .transforms import (
    CollarSpec,
    CollaredLetterMap,
    HeightInfo,
    collar,
    height,
    injectivize,
    power,
    pure_base,
    shift_ext,
    split_name,
    suspend_split,
)
from .encodings import (
    InnerEncoding,
    MinimalSets,
    OuterEncoding,
    Partition,
    RSet,
    associated_inner_encoding,
    canonical_is_inner,
    canonical_outer_encoding,
    inner_encoding_from_code,
    inner_encoding_from_partition,
    minimal_sets,
    r_set,
)
from .deciders import (
    AAVerdict,
    BijectiveVerdict,
    LocalRule,
    StageResult,
    SweepEntry,
    analyze,
    decide_aa_factor,
    decide_bijective_general,
    decide_bijective_inner,
    kappa_of_shift,
    shift_for_kappa,
)

__all__ = [
    "ColsubError",
    "InputError",
    "PreconditionError",
    "ResourceBudgetError",
    "LanguageCache",
    "Substitution",
    "allowed_words",
    "aperiodicity_cap",
    "column_map",
    "complexity_profile",
    "equivalent_up_to_renaming",
    "fix_power",
    "fixed_point_prefix",
    "fixed_point_seed",
    "format_rules",
    "is_aperiodic",
    "is_primitive",
    "parse_rules",
    "substitute",
    "theta_fixed_letters",
    "GreenData",
    "PairAperiodicityReport",
    "TransformationSemigroup",
    "generate",
    "green",
    "has_unique_minimal_left_ideal",
    "j_depth",
    "kernel_is_left_zero",
    "naive_column_number",
    "pair_aperiodicity",
    "CollarSpec",
    "CollaredLetterMap",
    "HeightInfo",
    "collar",
    "height",
    "injectivize",
    "power",
    "pure_base",
    "shift_ext",
    "split_name",
    "suspend_split",
    "InnerEncoding",
    "MinimalSets",
    "OuterEncoding",
    "Partition",
    "RSet",
    "associated_inner_encoding",
    "canonical_is_inner",
    "canonical_outer_encoding",
    "inner_encoding_from_code",
    "inner_encoding_from_partition",
    "minimal_sets",
    "r_set",
    "AAVerdict",
    "BijectiveVerdict",
    "LocalRule",
    "StageResult",
    "SweepEntry",
    "analyze",
    "decide_aa_factor",
    "decide_bijective_general",
    "decide_bijective_inner",
    "kappa_of_shift",
    "shift_for_kappa",
]
