"""wproto: exact verification of quantum communication over W-class resources.

A dense state-vector library that builds generalized W-states, checks the
coefficient/entropy conditions under which they can carry protocols, and
runs the teleportation and superdense-coding constructions branch by
branch — every measurement outcome is enumerated and verified exactly, no
sampling involved.
"""

from .qsim import (
    PAULI_FOUR,
    STRUCTURAL_TOL,
    DensityMatrix,
    DimensionError,
    InternalConsistencyError,
    MeasurementBasis,
    NormalizationError,
    ProtocolOutcome,
    ProtocolViolationError,
    StateVector,
    Unitary,
    apply_unitary,
    fidelity,
    gram_matrix,
    inner_product,
    make_basis_state,
    partial_trace,
    project,
    superpose,
    tensor,
    von_neumann_entropy,
    zero_state,
)
from .wstates import (
    CoefficientVector,
    ConditionReport,
    generalized_ghz,
    generalized_w,
    ghz,
    ghz_condition,
    ghz_suitability_scan,
    modified_w_coefficients,
    partition_entropy_formula,
    permute_coefficients,
    random_coefficients,
    random_condition_coefficients,
    standard_w,
    sub_w,
    suitability_scan,
    teleport_condition,
    two_term_decomposition,
    w_coefficients,
)
from .teleport import (
    FIDELITY_THRESHOLD,
    EncodedUnknownState,
    ProtocolReport,
    UnknownState,
    UnsuitableResourceError,
    bob_strategy1_set,
    bob_strategy2_set,
    encoded_state,
    ghz_measurement_family,
    measurement_family,
    one_qubit_measurement_family,
    raw_ghz_measurement_vectors,
    raw_measurement_vectors,
    raw_one_qubit_measurement_vectors,
    run_teleport_encoded,
    run_teleport_one_qubit,
    serial_basis,
    transfer_unitary,
    unknown_state_grid,
)
from .sdc import (
    CapacityResult,
    DecodeVerdict,
    EncodingSet,
    capacity_check,
    decode,
    encode,
    general_encoding_set,
    pauli_product_set,
    pauli_set,
    w4_multiunary_set,
)

__version__ = "0.1.0"
