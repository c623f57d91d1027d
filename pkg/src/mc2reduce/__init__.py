"""Lossless reductions from integer linear systems to 2-commodity form.

The pipeline runs in three stages (zero-sum column append, power-of-two
padding, pair-and-replace gadget encoding), each with an exact solution
recovery map.  The reduced matrix is additionally addressable entry by entry
through a local oracle that never builds it, and an exact rational solver
cross-checks everything.
"""

from .matrix import (
    ClassValidationError,
    MatrixClass,
    SignMagnitude,
    SparseIntSystem,
    check_class,
    decode_sign_magnitude,
    encode_sign_magnitude,
    system_from_dense,
    validate_class,
    w_bound,
)
from .mio import MatrixFormatError, load_system, parse_system_str, save_system, serialize_system
from .oracle import OracleContext
from .pairreplace import (
    GadgetDescriptor,
    Mc2Gadget,
    ReductionTrace,
    emit_gadget,
    recover_gz2_from_mc2,
    reduce_gz2_to_mc2,
)
from .rowstats import (
    MalformedRowError,
    RowStats,
    SignStats,
    all_row_stats,
    num_gadgets_closed_form,
    num_gadgets_recurrence,
    row_stats,
)
from .stages import (
    StageCert,
    recover_g_from_gz,
    recover_gz_from_gz2,
    reduce_g_to_gz,
    reduce_gz_to_gz2,
)
from .verify import (
    SolveOutcome,
    exact_solve,
    gadget_sum_check,
    is_solution,
    oracle_equivalence_check,
    pipeline_roundtrip,
    residual,
)

__version__ = "0.1.0"

__all__ = [
    "ClassValidationError",
    "GadgetDescriptor",
    "MalformedRowError",
    "MatrixClass",
    "MatrixFormatError",
    "Mc2Gadget",
    "OracleContext",
    "ReductionTrace",
    "RowStats",
    "SignMagnitude",
    "SignStats",
    "SolveOutcome",
    "SparseIntSystem",
    "StageCert",
    "all_row_stats",
    "check_class",
    "decode_sign_magnitude",
    "emit_gadget",
    "encode_sign_magnitude",
    "exact_solve",
    "gadget_sum_check",
    "is_solution",
    "load_system",
    "num_gadgets_closed_form",
    "num_gadgets_recurrence",
    "oracle_equivalence_check",
    "parse_system_str",
    "pipeline_roundtrip",
    "recover_g_from_gz",
    "recover_gz_from_gz2",
    "recover_gz2_from_mc2",
    "reduce_g_to_gz",
    "reduce_gz_to_gz2",
    "reduce_gz2_to_mc2",
    "residual",
    "row_stats",
    "save_system",
    "serialize_system",
    "system_from_dense",
    "validate_class",
    "w_bound",
]
