"""Single-deletion-correcting binary codes.

Word arithmetic, VT congruence codes with exact size formulas, validity
checking and exact maximum-size search, and 0-1 ILP model generation with a
deterministic LP writer, verifier, and built-in exact solver.
"""

__version__ = "0.1.0"

from .bitseq import (
    MAX_LEN,
    Word,
    WordSet,
    complement,
    concat,
    deletion_surface,
    enumerate_words,
    hamming_weight,
    levenshtein_id,
    run_count,
)
from .vt import (
    is_perfect,
    parse_code,
    format_code,
    vt_code,
    vt_syndrome,
    vt0_size,
    vt1_size,
)
from .sdecc import (
    BoundsRecord,
    ConflictGraph,
    SdeccResult,
    SearchOptions,
    SearchResult,
    bounds,
    conflict_graph,
    decode_single,
    is_sdecc,
    max_sdecc_exact,
)
from .constraints import (
    ConstraintFamily,
    RunClass,
    build_model,
    c6_preset,
    dominated_words,
    gen_c0,
    gen_c1,
    gen_c2,
    gen_c3,
    gen_c4,
    gen_c5,
    gen_c6,
    run_class_members,
)
from .ilp import (
    IlpModel,
    InfeasibleModelError,
    LinearConstraint,
    Solution,
    VerifyReport,
    read_lp,
    read_solution,
    solve_builtin,
    variable_name,
    verify_solution,
    write_lp,
)

__all__ = [
    "MAX_LEN",
    "Word",
    "WordSet",
    "complement",
    "concat",
    "deletion_surface",
    "enumerate_words",
    "hamming_weight",
    "levenshtein_id",
    "run_count",
    "is_perfect",
    "parse_code",
    "format_code",
    "vt_code",
    "vt_syndrome",
    "vt0_size",
    "vt1_size",
    "BoundsRecord",
    "ConflictGraph",
    "SdeccResult",
    "SearchOptions",
    "SearchResult",
    "bounds",
    "conflict_graph",
    "decode_single",
    "is_sdecc",
    "max_sdecc_exact",
    "ConstraintFamily",
    "RunClass",
    "build_model",
    "c6_preset",
    "dominated_words",
    "gen_c0",
    "gen_c1",
    "gen_c2",
    "gen_c3",
    "gen_c4",
    "gen_c5",
    "gen_c6",
    "run_class_members",
    "IlpModel",
    "InfeasibleModelError",
    "LinearConstraint",
    "Solution",
    "VerifyReport",
    "read_lp",
    "read_solution",
    "solve_builtin",
    "variable_name",
    "verify_solution",
    "write_lp",
    "__version__",
]
