"""Stage-lattice quantum circuit simulator.

Circuits are ordered sequences of stages; a stage is a parallel row of
gates spanning the whole register.  Two evaluators are provided: a naive
full-matrix route and a streaming route whose workspace is linear in the
register dimension, plus measurement, a benchmark harness, and end-to-end
drivers for the hidden-shift and discrete-log/factoring experiments.
"""
from .bench import BenchRow, hadamard_stage_circuit, rows_to_csv, rows_to_table, run_benchmark
from .circuit import Circuit, Stage, circuit_validate
from .circuit_format import (
    CircuitDocument,
    format_basis_label,
    parse_amplitude_lines,
    parse_circuit,
    parse_input_spec,
)
from .engine import (
    NAIVE_MAX_DIM,
    EvalMetrics,
    apply_stage_streamed,
    eval_efficient,
    eval_naive,
)
from .errors import (
    AttemptsExhaustedError,
    DimensionMismatchError,
    EmptyWireSetError,
    InvalidInputError,
    InvalidInstanceError,
    MalformedTableError,
    NonUnitaryError,
    NotBijectiveError,
    NotCoprimeError,
    NotInvertibleError,
    NotNormalizedError,
    NotTwoToOneError,
    ParseError,
    ResourceLimitError,
    SimulatorError,
    StageDimensionMismatchError,
    TriesExhaustedError,
    ValidationError,
)
from .gates import (
    Gate,
    gate_cnot,
    gate_custom,
    gate_hadamard,
    gate_identity,
    gate_identity_on,
    gate_not,
    gate_permutation,
    gate_qft,
)
from .gf2 import gf2_nullspace
from .linalg import StateVector, is_unitary, mat_mul, mat_vec, tensor_product
from .measurement import (
    MeasurementOutcome,
    measure_full,
    measure_partial,
    probabilities,
    sample_histogram,
)
from .numtheory import gcd, is_prime, mod_inverse, mod_pow, order_of
from .shor import (
    DlogInstance,
    DlogOutcome,
    build_dlog_circuit,
    build_dlog_oracle,
    dlog_input_state,
    factor,
    shor_dlog,
)
from .simon import (
    Classification,
    FunctionTable,
    SimonResult,
    build_simon_circuit,
    build_simon_oracle,
    dump_table,
    load_table,
    random_one_to_one_table,
    random_two_to_one_table,
    simon_interference_check,
    simon_run,
    simon_topregister_distribution,
)

__version__ = "0.1.0"
