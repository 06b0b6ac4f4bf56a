"""Exact combinatorics toolkit for shifted set families and junta extraction.

Layers: ``setcore`` (bit-vector sets, families, exact arithmetic, IO),
``shifting`` (compression operators), ``properties`` (decision procedures
with witnesses), ``junta`` (constructive extraction and parameter
calculators), ``oracles`` (seeded generators and brute-force references),
``theorems`` (named verification sweeps), ``cli`` (command-line front end).
"""

from .setcore import (
    KSet,
    SetFamily,
    FamilyFormatError,
    ResourceLimitError,
    binom,
    biased_measure,
    enumerate_k_subsets,
    full_level,
    load_family,
    parse_family,
    prefix_count,
    save_family,
    serialize_family,
    trace,
)
from .shifting import (
    is_shifted,
    make_shifted,
    make_shifted_together,
    shift_family,
    shift_junta,
    shift_set,
)
from .properties import (
    CheckResult,
    HittingSystem,
    are_cross_t_intersecting,
    bollobas_thomason_check,
    check_cross_agreeing,
    check_cross_union,
    check_hitting,
    count_property_t,
    dichotomy_check,
    has_property_t,
    is_cross_dependent,
    lemcross_check,
    lemhls_check,
    upper_shadow,
)
from .junta import (
    E,
    HypothesisError,
    JuntaSpec,
    RegimeParams,
    compute_regime_j,
    cor111_params,
    cor_constants,
    extract_biased_juntas,
    extract_hitting_juntas,
    extract_pair_juntas,
    junta_family,
    junta_member,
    residual,
    split_by_line,
)
from .oracles import (
    CorpusManifest,
    GeneratorConfig,
    SplitMix64,
    emc_extremal,
    exhaustive_min_junta,
    gen_cross_t_pair,
    gen_random_shifted,
    star_family,
    threshold_family,
)

__version__ = "0.1.0"
