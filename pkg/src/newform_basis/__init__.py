"""Exact newform coefficient tables and additive-basis decompositions."""

from .admissible import (
    AdmissibleCheck,
    AdmissibleSet,
    CardinalityReport,
    RepairWitness,
    cardinality_report,
    dyadic_construction,
    greedy_maximal,
    is_admissible,
    repair,
)
from .coefficients import (
    DELTA,
    FORM_11A,
    CoeffTable,
    IdentityReport,
    NewformDescriptor,
    builtin_descriptor,
    check_identities,
    expand_eta_product,
    hecke_extend,
    load_newform,
    save_prime_table,
)
from .decomposer import (
    CfBound,
    ConstructivePipeline,
    Decomposition,
    PrimePowerExpansion,
    SearchDecomposer,
    VerifyReport,
    cf_bound,
    decompose_constructive,
    decompose_search,
    prime_power_expand,
    verify_decomposition,
)
from .errors import (
    FormatError,
    InfeasibleError,
    IntegrityError,
    MemoryGuardError,
    NewformBasisError,
    NotFoundError,
    TableTooSmallError,
    VerificationError,
)
from .signs import DensityReport, SignReport, first_negative, large_coeff_density, prime_sets
from .waring_goldbach import (
    HuaConstants,
    SingularSeriesEstimate,
    WGSolution,
    count_representations,
    find_solution,
    hua_constants,
    hua_main_term,
    singular_series,
)

__all__ = [
    "AdmissibleCheck",
    "AdmissibleSet",
    "CardinalityReport",
    "CfBound",
    "CoeffTable",
    "ConstructivePipeline",
    "DELTA",
    "Decomposition",
    "DensityReport",
    "FORM_11A",
    "FormatError",
    "HuaConstants",
    "IdentityReport",
    "InfeasibleError",
    "IntegrityError",
    "MemoryGuardError",
    "NewformBasisError",
    "NewformDescriptor",
    "NotFoundError",
    "PrimePowerExpansion",
    "RepairWitness",
    "SearchDecomposer",
    "SignReport",
    "SingularSeriesEstimate",
    "TableTooSmallError",
    "VerificationError",
    "VerifyReport",
    "WGSolution",
    "builtin_descriptor",
    "cardinality_report",
    "cf_bound",
    "check_identities",
    "count_representations",
    "decompose_constructive",
    "decompose_search",
    "dyadic_construction",
    "expand_eta_product",
    "find_solution",
    "first_negative",
    "greedy_maximal",
    "hecke_extend",
    "hua_constants",
    "hua_main_term",
    "is_admissible",
    "large_coeff_density",
    "load_newform",
    "prime_power_expand",
    "prime_sets",
    "repair",
    "save_prime_table",
    "singular_series",
    "verify_decomposition",
]
