"""Compile multi-controlled rotations into trains of identical global
Molmer-Sorensen pulses interleaved with single-qubit rotations on one
target qubit, and verify the result by exact statevector simulation."""

from .series import EVEN, ODD, LaurentPoly, ParityError, TrigSeries, from_laurent, to_laurent
from .subspace import (
    SubspaceModel,
    compute_thetas,
    default_params,
    energy_gap,
    phase_reset_ok,
    star_spectrum,
)
from .fitting import (
    ConstraintSet,
    ControlledRz,
    FittingError,
    WeightDependentX,
    constraint_set_crot,
    fit_A,
    fit_weight_dependent,
    weighted_params,
)
from .synthesis import (
    CompilationPlan,
    CompletionError,
    ExtractionError,
    complete,
    crot_angles,
    evaluate_plan,
    extract_angles,
    invert_plan,
    pad_for_phase_reset,
    weighted_angles,
)
from .circuit import (
    Circuit,
    CircuitFormatError,
    Gate,
    PhaseResetError,
    QubitIndexError,
    UnknownGateError,
    build_crot_circuit,
    build_from_merged,
    build_toffoli_circuit,
    deserialize,
    merge_adjacent_rz,
    plan_merged_angles,
    serialize,
    to_text,
)
from .simulate import (
    StateVector,
    apply_gate,
    circuit_unitary,
    control_blocks,
    ideal_crot,
    ideal_toffoli,
    ideal_weighted,
    max_off_block,
    phase_distance,
    project_ancilla,
    run_circuit,
)

__version__ = "0.1.0"

__all__ = [
    "EVEN",
    "ODD",
    "LaurentPoly",
    "ParityError",
    "TrigSeries",
    "from_laurent",
    "to_laurent",
    "SubspaceModel",
    "compute_thetas",
    "default_params",
    "energy_gap",
    "phase_reset_ok",
    "star_spectrum",
    "ConstraintSet",
    "ControlledRz",
    "FittingError",
    "WeightDependentX",
    "constraint_set_crot",
    "fit_A",
    "fit_weight_dependent",
    "weighted_params",
    "CompilationPlan",
    "CompletionError",
    "ExtractionError",
    "complete",
    "crot_angles",
    "evaluate_plan",
    "extract_angles",
    "invert_plan",
    "pad_for_phase_reset",
    "weighted_angles",
    "Circuit",
    "CircuitFormatError",
    "Gate",
    "PhaseResetError",
    "QubitIndexError",
    "UnknownGateError",
    "build_crot_circuit",
    "build_from_merged",
    "build_toffoli_circuit",
    "deserialize",
    "merge_adjacent_rz",
    "plan_merged_angles",
    "serialize",
    "to_text",
    "StateVector",
    "apply_gate",
    "circuit_unitary",
    "control_blocks",
    "ideal_crot",
    "ideal_toffoli",
    "ideal_weighted",
    "max_off_block",
    "phase_distance",
    "project_ancilla",
    "run_circuit",
]
