"""Teleportation over generalized W-state resources.

Qubit layout for a protocol run, in joint-state order:

    [unknown register (1 or m qubits)] [sender's n-m resource qubits]
    [receiver's m resource qubits] [optional auxiliary Bell pair]

The sender measures the unknown register together with her resource share
in a four-vector orthogonal family; the family is orthonormal exactly when
the resource satisfies the half-half split condition, so an unsuitable
resource is rejected up front rather than producing silently degraded
fidelity.  After two classical bits, the receiver's m qubits hold the input
encoded in span{|0..0>, |w>} (|w> = the normalized excitation block on his
qubits) up to one of four subspace corrections, and he can

  * ``subspace``  - keep the state encoded in that two-dimensional span,
  * ``transfer``  - unitarily move it onto his last physical qubit,
  * ``serial``    - teleport it onto a fresh Bell-pair qubit with a second
                    local measurement and a final single-qubit correction.

Every engine here enumerates all measurement branches deterministically;
nothing is sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qsim import (
    PAULI_FOUR,
    STRUCTURAL_TOL,
    DimensionError,
    InternalConsistencyError,
    MeasurementBasis,
    NormalizationError,
    ProtocolOutcome,
    StateVector,
    Unitary,
    apply_unitary,
    fidelity,
    inner_product,
    make_basis_state,
    orthonormal_extension,
    project,
    superpose,
    tensor,
    zero_state,
)
from .wstates import (
    CoefficientVector,
    ConditionReport,
    generalized_w,
    ghz_condition,
    sub_w,
    teleport_condition,
)

#: a protocol run succeeds when every outcome fidelity clears this bar
FIDELITY_THRESHOLD = 1.0 - 1e-9

FAMILY_LABELS = ("xi+", "xi-", "eta+", "eta-")
SERIAL_LABELS = ("phi1+", "phi1-", "phi2+", "phi2-")

# Outcome label -> index into a sigma-ordered correction set
# (sigma_0, sigma_1, i*sigma_2, sigma_3).
CORRECTION_INDEX = {
    "xi+": 0,
    "eta+": 1,
    "eta-": 2,
    "xi-": 3,
    "phi1+": 0,
    "phi2+": 1,
    "phi2-": 2,
    "phi1-": 3,
}

STRATEGIES = ("subspace", "transfer", "serial")


class UnsuitableResourceError(ValueError):
    """The resource state cannot run the protocol; carries the failed check."""

    def __init__(self, message: str, report: ConditionReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class UnknownState:
    """The one-qubit state alpha|0> + beta|1> to be teleported."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(total - 1.0) > STRUCTURAL_TOL:
            raise NormalizationError(
                f"|alpha|^2 + |beta|^2 = {total:.12g} must equal 1"
            )

    @property
    def state_vector(self) -> StateVector:
        return StateVector(1, [self.alpha, self.beta])


@dataclass(frozen=True)
class EncodedUnknownState:
    """A two-term m-qubit state alpha|0..0> + beta|w> riding a basis pair.

    ``zero_state``/``wm_state`` are the orthogonal pair spanning the encoded
    subspace; for a given resource, ``wm_state`` is the renormalized
    excitation block on the receiver's qubits (see :func:`encoded_state`).
    """

    alpha: complex
    beta: complex
    m: int
    zero_state: StateVector
    wm_state: StateVector

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(total - 1.0) > STRUCTURAL_TOL:
            raise NormalizationError(
                f"|alpha|^2 + |beta|^2 = {total:.12g} must equal 1"
            )
        if self.zero_state.num_qubits != self.m or self.wm_state.num_qubits != self.m:
            raise DimensionError("basis pair must live on m qubits")
        if not (self.zero_state.normalized and self.wm_state.normalized):
            raise NormalizationError("basis pair must be normalized")
        if abs(inner_product(self.zero_state, self.wm_state)) > STRUCTURAL_TOL:
            raise ValueError("basis pair must be orthogonal")

    @property
    def state_vector(self) -> StateVector:
        return superpose([(self.alpha, self.zero_state), (self.beta, self.wm_state)])


@dataclass(frozen=True)
class ProtocolReport:
    """Aggregate of one protocol run over every measurement branch."""

    resource: str
    strategy: str | None
    outcomes: tuple[ProtocolOutcome, ...]
    fidelities: dict[str, float]
    min_fidelity: float
    classical_bits_sent: int
    success: bool
    reason: str


def _build_report(
    resource: str,
    strategy: str | None,
    outcomes: list[ProtocolOutcome],
    fidelities: dict[str, float],
) -> ProtocolReport:
    min_fid = min(fidelities.values())
    success = min_fid >= FIDELITY_THRESHOLD
    reason = (
        "every outcome reproduces the input exactly"
        if success
        else f"minimum outcome fidelity {min_fid:.12g} is below 1 - 1e-9"
    )
    return ProtocolReport(
        resource=resource,
        strategy=strategy,
        outcomes=tuple(outcomes),
        fidelities=dict(fidelities),
        min_fidelity=min_fid,
        classical_bits_sent=2,
        success=success,
        reason=reason,
    )


def require_condition(c: CoefficientVector, m: int) -> ConditionReport:
    """Gate: raise UnsuitableResourceError unless the split condition holds."""
    report = teleport_condition(c, m)
    if not report.holds:
        raise UnsuitableResourceError(
            f"resource does not split half-and-half at m={m}"
            f" (sums {report.left_sum:.6g} / {report.right_sum:.6g});"
            " the measurement family would not be orthonormal",
            report,
        )
    return report


def _blocks(c: CoefficientVector, m: int) -> tuple[StateVector, StateVector, StateVector, float]:
    """(front block, raw back block, normalized back block, back norm).

    The split condition forces both block norms to 1/sqrt(2); vanishing
    blocks can only come from inconsistent input and are rejected because
    the measurement vectors would collapse.
    """
    n = c.n
    front = sub_w(c, 1, n - m)
    back_raw = sub_w(c, n - m + 1, n)
    back_norm = back_raw.norm
    if front.norm < 1e-12 or back_norm < 1e-12:
        raise UnsuitableResourceError(
            "an excitation block of the resource vanishes; measurement vectors collapse"
        )
    wm = StateVector(m, back_raw.amplitudes / back_norm)
    return front, back_raw, wm, back_norm


def encoded_state(
    c: CoefficientVector, m: int, alpha: complex, beta: complex
) -> EncodedUnknownState:
    """Encoded input alpha|0..0> + beta|w> with |w> taken from the resource."""
    _, _, wm, _ = _blocks(c, m)
    return EncodedUnknownState(
        alpha=alpha, beta=beta, m=m, zero_state=zero_state(m), wm_state=wm
    )


def raw_measurement_vectors(
    c: CoefficientVector, m: int
) -> tuple[tuple[str, ...], list[StateVector]]:
    """The four family vectors for an m-qubit unknown register, ungated.

    Diagnostic: built from the +/- pattern regardless of whether the split
    condition holds, so callers can inspect how far the Gram matrix is from
    the identity for an unsuitable resource.  The vectors live on
    m + (n - m) = n qubits: unknown register first, then the sender's share.
    """
    n = c.n
    front, back_raw, wm, back_norm = _blocks(c, m)
    zero_u = zero_state(m)
    zero_a = zero_state(n - m)
    xi_p = superpose([(1, tensor(zero_u, front)), (1, tensor(back_raw, zero_a))])
    xi_m = superpose([(1, tensor(zero_u, front)), (-1, tensor(back_raw, zero_a))])
    eta_p = superpose([(back_norm, tensor(zero_u, zero_a)), (1, tensor(wm, front))])
    eta_m = superpose([(back_norm, tensor(zero_u, zero_a)), (-1, tensor(wm, front))])
    return FAMILY_LABELS, [xi_p, xi_m, eta_p, eta_m]


def measurement_family(c: CoefficientVector, m: int) -> MeasurementBasis:
    """Orthonormal family for teleporting an encoded m-qubit state.

    Requires the split condition (enforced); each +/- expression then has
    norm one with no extra normalization factor, since both of its terms
    carry squared weight 1/2.  The basis is partial for n > 2 and covers
    qubits 1..n of the joint state.
    """
    require_condition(c, m)
    labels, vectors = raw_measurement_vectors(c, m)
    return MeasurementBasis(range(1, c.n + 1), vectors, labels)


def raw_one_qubit_measurement_vectors(
    c: CoefficientVector, m: int
) -> tuple[tuple[str, ...], list[StateVector]]:
    """Family vectors for a one-qubit unknown register, ungated.

    Same +/- pattern as :func:`raw_measurement_vectors` with the unknown
    register shrunk to a single qubit; the scalar on the flipped term is
    the back-block norm, with the block's phases folded into the receiver's
    encoded basis state.  Vectors live on 1 + (n - m) qubits.
    """
    n = c.n
    front, _, _, back_norm = _blocks(c, m)
    k0 = make_basis_state(1, [0])
    k1 = make_basis_state(1, [1])
    zero_a = zero_state(n - m)
    xi_p = superpose([(1, tensor(k0, front)), (back_norm, tensor(k1, zero_a))])
    xi_m = superpose([(1, tensor(k0, front)), (-back_norm, tensor(k1, zero_a))])
    eta_p = superpose([(back_norm, tensor(k0, zero_a)), (1, tensor(k1, front))])
    eta_m = superpose([(back_norm, tensor(k0, zero_a)), (-1, tensor(k1, front))])
    return FAMILY_LABELS, [xi_p, xi_m, eta_p, eta_m]


def one_qubit_measurement_family(c: CoefficientVector, m: int) -> MeasurementBasis:
    """Orthonormal family for teleporting a genuine one-qubit state."""
    require_condition(c, m)
    labels, vectors = raw_one_qubit_measurement_vectors(c, m)
    return MeasurementBasis(range(1, c.n - m + 2), vectors, labels)


def raw_ghz_measurement_vectors(
    a1: complex, a2: complex, n: int
) -> tuple[tuple[str, ...], list[StateVector]]:
    """Bell-type family for a generalized GHZ resource, ungated.

    Vectors on n qubits (unknown qubit plus the sender's n-1 resource
    qubits); orthonormal exactly when |a1|^2 = |a2|^2 = 1/2.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    k0 = make_basis_state(1, [0])
    k1 = make_basis_state(1, [1])
    all0 = zero_state(n - 1)
    all1 = make_basis_state(n - 1, [1] * (n - 1))
    xi_p = superpose([(a1, tensor(k0, all0)), (a2, tensor(k1, all1))])
    xi_m = superpose([(a1, tensor(k0, all0)), (-a2, tensor(k1, all1))])
    eta_p = superpose([(a2, tensor(k0, all1)), (a1, tensor(k1, all0))])
    eta_m = superpose([(a2, tensor(k0, all1)), (-a1, tensor(k1, all0))])
    return FAMILY_LABELS, [xi_p, xi_m, eta_p, eta_m]


def ghz_measurement_family(a1: complex, a2: complex, n: int) -> MeasurementBasis:
    """Orthonormal Bell-type family for a (proper) GHZ resource."""
    report = ghz_condition(a1, a2)
    if not report.holds:
        raise UnsuitableResourceError(
            f"GHZ-type resource needs |a1|^2 = |a2|^2 = 1/2, got"
            f" {report.left_sum:.6g} / {report.right_sum:.6g}",
            report,
        )
    labels, vectors = raw_ghz_measurement_vectors(a1, a2, n)
    return MeasurementBasis(range(1, n + 1), vectors, labels)


def bob_strategy1_set(m: int, wm: StateVector) -> list[Unitary]:
    """Four unitaries acting as (sigma_0, sigma_1, i*sigma_2, sigma_3) on
    span{|0..0>, wm} and as the identity on the orthogonal complement.

    These are the receiver-side corrections that keep the teleported state
    encoded in the two-dimensional subspace.
    """
    zero = zero_state(m)
    if not wm.normalized:
        raise NormalizationError("wm must be normalized")
    if wm.num_qubits != m:
        raise DimensionError(f"wm must live on {m} qubits")
    if abs(inner_product(zero, wm)) > STRUCTURAL_TOL:
        raise ValueError("wm must be orthogonal to |0...0>")
    b0 = zero.amplitudes
    b1 = wm.amplitudes
    complement = np.eye(2**m) - np.outer(b0, b0.conj()) - np.outer(b1, b1.conj())
    ops = []
    for sigma in PAULI_FOUR:
        sub = (
            sigma[0, 0] * np.outer(b0, b0.conj())
            + sigma[0, 1] * np.outer(b0, b1.conj())
            + sigma[1, 0] * np.outer(b1, b0.conj())
            + sigma[1, 1] * np.outer(b1, b1.conj())
        )
        ops.append(Unitary(complement + sub))
    return ops


def transfer_unitary(m: int, wm: StateVector) -> Unitary:
    """Unitary realizing {|0..0>, wm} -> {|0..0>, |0..01>}.

    The action on the complement is a fixed deterministic completion:
    Gram-Schmidt over the computational basis extends both the domain pair
    and the range pair to full bases, matched index by index.  For m = 2
    with wm = (|01>+|10>)/sqrt(2) this lands on the singlet-to-|10> pattern.
    """
    zero = zero_state(m)
    if abs(inner_product(zero, wm)) > STRUCTURAL_TOL:
        raise ValueError("wm must be orthogonal to |0...0>")
    dim = 2**m
    one_last = make_basis_state(m, [0] * (m - 1) + [1])
    domain = orthonormal_extension([zero.amplitudes, wm.amplitudes], dim)
    target = orthonormal_extension([zero.amplitudes, one_last.amplitudes], dim)
    return Unitary(target.T @ domain.conj())


def bob_strategy2_set(m: int, wm: StateVector) -> list[Unitary]:
    """The strategy-1 corrections composed with the transfer onto one qubit.

    Applying the k-th operator to the k-th measurement branch leaves the
    receiver's register in |0..0> (x) (alpha|0> + beta|1>) on his last qubit.
    """
    t = transfer_unitary(m, wm)
    return [Unitary(t.matrix @ u.matrix) for u in bob_strategy1_set(m, wm)]


def serial_basis(m: int, wm: StateVector) -> MeasurementBasis:
    """Four-vector partial family for the receiver's second measurement.

    Vectors on his m register qubits plus the first Bell-pair qubit:

        phi1+- = (|0..0>|0> +- wm|1>)/sqrt(2)
        phi2+- = (|0..0>|1> +- wm|0>)/sqrt(2)

    Only 4 of 2^(m+1) directions, so ``project`` verifies in-span support.
    The phi2- outcome pairs with the branch carrying both the swap and the
    sign flip, which the i*sigma_2 correction undoes exactly.
    """
    zero = zero_state(m)
    if abs(inner_product(zero, wm)) > STRUCTURAL_TOL:
        raise ValueError("wm must be orthogonal to |0...0>")
    k0 = make_basis_state(1, [0])
    k1 = make_basis_state(1, [1])
    h = 1.0 / math.sqrt(2.0)
    vectors = [
        superpose([(h, tensor(zero, k0)), (h, tensor(wm, k1))]),
        superpose([(h, tensor(zero, k0)), (-h, tensor(wm, k1))]),
        superpose([(h, tensor(zero, k1)), (h, tensor(wm, k0))]),
        superpose([(h, tensor(zero, k1)), (-h, tensor(wm, k0))]),
    ]
    return MeasurementBasis(range(1, m + 2), vectors, SERIAL_LABELS)


def _bell_pair() -> StateVector:
    h = 1.0 / math.sqrt(2.0)
    return superpose(
        [(h, make_basis_state(2, [0, 0])), (h, make_basis_state(2, [1, 1]))]
    )


def _describe(c: CoefficientVector, m: int) -> str:
    return f"generalized W-state, n={c.n}, partition m={m}"


def run_teleport_encoded(
    c: CoefficientVector, m: int, psi: EncodedUnknownState
) -> ProtocolReport:
    """Teleport an encoded two-term m-qubit state through the resource.

    Enumerates the sender's four outcomes, applies the receiver's subspace
    correction per branch, and reports the fidelity of the corrected state
    against the input for every branch.
    """
    require_condition(c, m)
    if psi.m != m:
        raise DimensionError(f"encoded state has m={psi.m}, resource partition m={m}")
    _, _, wm, _ = _blocks(c, m)
    joint = tensor(psi.state_vector, generalized_w(c))
    basis = measurement_family(c, m)
    corrections = bob_strategy1_set(m, wm)
    target = psi.state_vector
    receiver = tuple(range(1, m + 1))
    outcomes: list[ProtocolOutcome] = []
    fidelities: dict[str, float] = {}
    for branch in project(joint, basis):
        corr = corrections[CORRECTION_INDEX[branch.label]]
        fixed = apply_unitary(branch.post_state, corr, receiver)
        fidelities[branch.label] = fidelity(fixed, target)
        outcomes.append(
            ProtocolOutcome(branch.label, branch.probability, fixed, corr)
        )
    return _build_report(_describe(c, m), None, outcomes, fidelities)


def run_teleport_one_qubit(
    c: CoefficientVector,
    m: int,
    psi: UnknownState,
    strategy: str = "subspace",
) -> ProtocolReport:
    """Teleport a genuine one-qubit state; the receiver recovers it per
    ``strategy`` (see module docstring).

    For ``subspace`` the reported fidelity is against the encoded target
    alpha|0..0> + beta|w>; for ``transfer`` and ``serial`` it is the
    fidelity of the receiver's final physical qubit against the input.
    ``serial`` enumerates the sender's four outcomes times the receiver's
    four, so its report carries sixteen branches with joint probabilities.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}")
    require_condition(c, m)
    _, _, wm, _ = _blocks(c, m)
    joint = tensor(psi.state_vector, generalized_w(c))
    basis = one_qubit_measurement_family(c, m)
    s1 = bob_strategy1_set(m, wm)
    receiver = tuple(range(1, m + 1))
    encoded_target = superpose([(psi.alpha, zero_state(m)), (psi.beta, wm)])
    outcomes: list[ProtocolOutcome] = []
    fidelities: dict[str, float] = {}

    if strategy == "subspace":
        for branch in project(joint, basis):
            corr = s1[CORRECTION_INDEX[branch.label]]
            fixed = apply_unitary(branch.post_state, corr, receiver)
            fidelities[branch.label] = fidelity(fixed, encoded_target)
            outcomes.append(
                ProtocolOutcome(branch.label, branch.probability, fixed, corr)
            )
    elif strategy == "transfer":
        s2 = bob_strategy2_set(m, wm)
        for branch in project(joint, basis):
            corr = s2[CORRECTION_INDEX[branch.label]]
            fixed = apply_unitary(branch.post_state, corr, receiver)
            single = _extract_last_qubit(fixed)
            fidelities[branch.label] = fidelity(single, psi.state_vector)
            outcomes.append(
                ProtocolOutcome(branch.label, branch.probability, fixed, corr)
            )
    else:  # serial
        second_basis = serial_basis(m, wm)
        paulis = [Unitary(s) for s in PAULI_FOUR]
        for branch in project(joint, basis):
            aligned = apply_unitary(
                branch.post_state, s1[CORRECTION_INDEX[branch.label]], receiver
            )
            local = tensor(aligned, _bell_pair())
            for second in project(local, second_basis):
                corr = paulis[CORRECTION_INDEX[second.label]]
                final = apply_unitary(second.post_state, corr, (1,))
                label = f"{branch.label}|{second.label}"
                fidelities[label] = fidelity(final, psi.state_vector)
                outcomes.append(
                    ProtocolOutcome(
                        label, branch.probability * second.probability, final, corr
                    )
                )
    return _build_report(_describe(c, m), strategy, outcomes, fidelities)


def _extract_last_qubit(state: StateVector) -> StateVector:
    """Split |0..0>(x)(a|0>+b|1>) off a transfer-corrected register.

    The transfer corrections guarantee this factoring; any support outside
    the first two amplitudes means the correction table is wrong, which is
    a bug, not a caller error.
    """
    amps = state.amplitudes
    if amps.shape[0] > 2:
        stray = float(np.abs(amps[2:]).max())
        if stray > STRUCTURAL_TOL:
            raise InternalConsistencyError(
                f"transfer strategy left residual entanglement (|amp| {stray:.3e})"
            )
    pair = amps[:2]
    return StateVector(1, pair / np.linalg.norm(pair))


def unknown_state_grid(count: int, seed: int) -> list[UnknownState]:
    """Deterministic grid of unknown states including complex phases.

    Seed-derived so a run can be reproduced exactly from its recorded
    configuration.
    """
    if count < 1:
        raise ValueError("need at least one grid point")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, math.pi / 2.0, size=count)
    phase = rng.uniform(0.0, 2.0 * math.pi, size=count)
    return [
        UnknownState(math.cos(t), math.sin(t) * complex(math.cos(p), math.sin(p)))
        for t, p in zip(theta, phase)
    ]
