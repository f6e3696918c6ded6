"""Dense pure-state simulation kernel for small qubit registers.

States are dense complex amplitude vectors indexed so that qubit 1 is the
most significant bit of the amplitude index: ``|q1 q2 ... qn>`` lives at
index ``q1*2^(n-1) + q2*2^(n-2) + ... + qn``.  With at most a dozen qubits
in play, dense vectors keep every operation exact up to float rounding.

All values are immutable after construction (amplitude buffers are marked
read-only) and every operation is a pure function, so independent
computations can be run in parallel without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: tolerance for structural checks: normalization, orthogonality, hermiticity
STRUCTURAL_TOL = 1e-10
#: tolerance for norm preservation under unitary application
NORM_PRESERVATION_TOL = 1e-12
#: outcome probabilities below this are reported without a post-state
ZERO_PROBABILITY = 1e-24

# The four single-qubit encoding operators used throughout: identity, bit
# flip, bit-plus-sign flip, sign flip.  The third entry is i*sigma_y, kept
# real so that |0> -> -|1> and |1> -> |0>.
SIGMA_0 = np.eye(2, dtype=np.complex128)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
I_SIGMA_2 = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI_FOUR = (SIGMA_0, SIGMA_1, I_SIGMA_2, SIGMA_3)


class DimensionError(ValueError):
    """Operands act on incompatible qubit counts or vector lengths."""


class NormalizationError(ValueError):
    """A state or coefficient vector is not normalized where it must be."""


class ProtocolViolationError(RuntimeError):
    """A measurement family is invalid for the state it is applied to.

    Raised when a would-be basis fails the orthonormality check, or when a
    state has support outside the span of a partial basis.  Either way the
    resource/state combination cannot realize the intended protocol.
    """


class InternalConsistencyError(RuntimeError):
    """An internally guaranteed identity failed; indicates a bug."""


class StateVector:
    """Pure state of ``num_qubits`` qubits as a dense complex vector.

    ``normalized`` is derived at construction: True iff the squared norm is
    within ``STRUCTURAL_TOL`` of one.  Un-normalized vectors are allowed
    (sub-state blocks of a larger superposition carry their own weight) but
    stay flagged so consumers can refuse them where normalization matters.
    """

    __slots__ = ("num_qubits", "amplitudes", "normalized")

    def __init__(self, num_qubits: int, amplitudes: Sequence[complex] | np.ndarray):
        if num_qubits < 1:
            raise DimensionError("a state needs at least one qubit")
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != 2**num_qubits:
            raise DimensionError(
                f"expected {2**num_qubits} amplitudes for {num_qubits} qubits,"
                f" got shape {amps.shape}"
            )
        amps.flags.writeable = False
        self.num_qubits = num_qubits
        self.amplitudes = amps
        self.normalized = bool(abs(self.norm_squared - 1.0) <= STRUCTURAL_TOL)

    @property
    def norm_squared(self) -> float:
        return float(np.real(np.vdot(self.amplitudes, self.amplitudes)))

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_squared)

    def __repr__(self) -> str:
        return (
            f"StateVector(num_qubits={self.num_qubits},"
            f" norm={self.norm:.12g}, normalized={self.normalized})"
        )


class DensityMatrix:
    """Mixed or reduced state: Hermitian, unit-trace, PSD up to rounding."""

    __slots__ = ("num_qubits", "entries", "eigenvalues")

    def __init__(self, num_qubits: int, entries: np.ndarray):
        if num_qubits < 1:
            raise DimensionError("a density matrix needs at least one qubit")
        mat = np.array(entries, dtype=np.complex128)
        dim = 2**num_qubits
        if mat.shape != (dim, dim):
            raise DimensionError(f"expected a {dim}x{dim} matrix, got {mat.shape}")
        herm_dev = float(np.abs(mat - mat.conj().T).max())
        if herm_dev > STRUCTURAL_TOL:
            raise ValueError(f"matrix is not Hermitian (max deviation {herm_dev:.3e})")
        trace_dev = abs(complex(np.trace(mat)) - 1.0)
        if trace_dev > STRUCTURAL_TOL:
            raise ValueError(f"trace must be 1 (deviation {trace_dev:.3e})")
        eigs = np.linalg.eigvalsh(mat)
        if eigs[0] < -STRUCTURAL_TOL:
            raise ValueError(f"matrix has a negative eigenvalue ({eigs[0]:.3e})")
        mat.flags.writeable = False
        eigs.flags.writeable = False
        self.num_qubits = num_qubits
        self.entries = mat
        self.eigenvalues = eigs

    def __repr__(self) -> str:
        return f"DensityMatrix(num_qubits={self.num_qubits})"


class Unitary:
    """Complex square matrix verified unitary at construction."""

    __slots__ = ("dimension", "matrix")

    def __init__(self, matrix: np.ndarray):
        mat = np.array(matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError(f"expected a square matrix, got {mat.shape}")
        dim = mat.shape[0]
        if dim & (dim - 1) != 0 or dim < 2:
            raise DimensionError(f"dimension must be a power of two, got {dim}")
        dev = float(np.abs(mat.conj().T @ mat - np.eye(dim)).max())
        if dev > STRUCTURAL_TOL:
            raise ValueError(f"matrix is not unitary (max U†U-I deviation {dev:.3e})")
        mat.flags.writeable = False
        self.dimension = dim
        self.matrix = mat

    @property
    def num_qubits(self) -> int:
        return self.dimension.bit_length() - 1

    def __repr__(self) -> str:
        return f"Unitary(dimension={self.dimension})"


class MeasurementBasis:
    """Orthonormal family of labeled vectors on an ordered qubit subset.

    A family with fewer vectors than the subset dimension is *partial*;
    ``project`` then demands that the measured state has no support outside
    the family's span, which turns "this resource cannot run the protocol"
    into a detectable error instead of silent probability loss.
    """

    __slots__ = ("subset", "vectors", "labels")

    def __init__(
        self,
        subset: Sequence[int],
        vectors: Sequence[StateVector],
        labels: Sequence[str] | None = None,
    ):
        idx = tuple(int(q) for q in subset)
        if not idx:
            raise ValueError("measurement subset must be non-empty")
        if len(set(idx)) != len(idx):
            raise ValueError("measurement subset has repeated qubit indices")
        if min(idx) < 1:
            raise ValueError("qubit indices are 1-based")
        k = len(idx)
        vecs = tuple(vectors)
        if not vecs:
            raise ValueError("measurement basis needs at least one vector")
        if len(vecs) > 2**k:
            raise ValueError(f"at most {2**k} vectors fit on {k} qubits")
        for v in vecs:
            if v.num_qubits != k:
                raise DimensionError(
                    f"basis vector on {v.num_qubits} qubits does not match subset size {k}"
                )
        if labels is None:
            labels = tuple(f"m{i}" for i in range(len(vecs)))
        labels = tuple(str(s) for s in labels)
        if len(labels) != len(vecs) or len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct and match the vector count")
        gram = gram_matrix(vecs)
        dev = float(np.abs(gram - np.eye(len(vecs))).max())
        if dev > STRUCTURAL_TOL:
            raise ProtocolViolationError(
                f"measurement family is not orthonormal (max Gram deviation {dev:.3e})"
            )
        self.subset = idx
        self.vectors = vecs
        self.labels = labels

    @property
    def is_partial(self) -> bool:
        return len(self.vectors) < 2 ** len(self.subset)

    def __repr__(self) -> str:
        return (
            f"MeasurementBasis(subset={self.subset}, vectors={len(self.vectors)},"
            f" partial={self.is_partial})"
        )


@dataclass(frozen=True)
class ProtocolOutcome:
    """One measurement branch: label, probability, post-state, correction.

    ``post_state`` covers the unmeasured qubits in their original order and
    is None when the branch probability is (numerically) zero or when every
    qubit was measured.  ``correction`` is filled in by the protocol layer.
    """

    label: str
    probability: float
    post_state: StateVector | None
    correction: Unitary | None = None


def _validated_subset(subset: Sequence[int], num_qubits: int) -> tuple[int, ...]:
    idx = tuple(int(q) for q in subset)
    if not idx:
        raise ValueError("qubit subset must be non-empty")
    if len(set(idx)) != len(idx):
        raise ValueError("qubit subset has repeated indices")
    if min(idx) < 1 or max(idx) > num_qubits:
        raise ValueError(f"qubit indices must lie in 1..{num_qubits}, got {idx}")
    return idx


def make_basis_state(num_qubits: int, bits: Sequence[int]) -> StateVector:
    """Computational basis state |b1 b2 ... bn> (qubit 1 = leftmost bit)."""
    bits = list(bits)
    if len(bits) != num_qubits:
        raise DimensionError(f"expected {num_qubits} bits, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0 or 1")
    index = 0
    for b in bits:
        index = (index << 1) | b
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def zero_state(num_qubits: int) -> StateVector:
    """The all-zeros state |00...0>."""
    return make_basis_state(num_qubits, [0] * num_qubits)


def superpose(terms: Iterable[tuple[complex, StateVector]]) -> StateVector:
    """Componentwise linear combination of same-size states.

    The result's ``normalized`` flag is set only if its norm lands within
    tolerance of one; no rescaling is performed.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("superpose needs at least one term")
    n = terms[0][1].num_qubits
    acc = np.zeros(2**n, dtype=np.complex128)
    for coeff, sv in terms:
        if sv.num_qubits != n:
            raise DimensionError(
                f"mixed qubit counts in superposition: {sv.num_qubits} vs {n}"
            )
        acc += complex(coeff) * sv.amplitudes
    return StateVector(n, acc)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product; the qubits of ``b`` follow those of ``a``."""
    return StateVector(a.num_qubits + b.num_qubits, np.kron(a.amplitudes, b.amplitudes))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.num_qubits != b.num_qubits:
        raise DimensionError(
            f"inner product needs equal qubit counts, got {a.num_qubits} and {b.num_qubits}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|² between normalized states; global phase drops out."""
    if not (a.normalized and b.normalized):
        raise NormalizationError("fidelity is defined for normalized states only")
    return abs(inner_product(a, b)) ** 2


def gram_matrix(vectors: Sequence[StateVector]) -> np.ndarray:
    """Matrix of pairwise inner products <v_i|v_j>."""
    arr = np.array([v.amplitudes for v in vectors])
    return arr.conj() @ arr.T


def apply_unitary(state: StateVector, u: Unitary, subset: Sequence[int]) -> StateVector:
    """Apply ``u`` to the listed qubits (in listed order), identity elsewhere."""
    idx = _validated_subset(subset, state.num_qubits)
    k = len(idx)
    if u.dimension != 2**k:
        raise DimensionError(
            f"operator of dimension {u.dimension} cannot act on {k} qubits"
        )
    n = state.num_qubits
    axes = [q - 1 for q in idx]
    rest = [ax for ax in range(n) if ax not in axes]
    perm = axes + rest
    psi = state.amplitudes.reshape((2,) * n).transpose(perm).reshape(2**k, -1)
    out = (u.matrix @ psi).reshape((2,) * n).transpose(np.argsort(perm)).reshape(-1)
    result = StateVector(n, out)
    if abs(result.norm - state.norm) > NORM_PRESERVATION_TOL:
        raise InternalConsistencyError("unitary application failed to preserve the norm")
    return result


def project(state: StateVector, basis: MeasurementBasis) -> list[ProtocolOutcome]:
    """Projective measurement of ``basis.subset`` in the given family.

    Returns one outcome per basis vector, with the exact Born probability
    and the renormalized post-measurement state of the remaining qubits
    (original order).  For a partial basis the in-span probability must be
    one; otherwise the state cannot be measured faithfully in this family
    and a ProtocolViolationError is raised.
    """
    if abs(state.norm_squared - 1.0) > STRUCTURAL_TOL:
        raise NormalizationError("projective measurement expects a normalized state")
    idx = _validated_subset(basis.subset, state.num_qubits)
    n = state.num_qubits
    k = len(idx)
    axes = [q - 1 for q in idx]
    rest = [ax for ax in range(n) if ax not in axes]
    psi = state.amplitudes.reshape((2,) * n).transpose(axes + rest).reshape(2**k, -1)
    outcomes: list[ProtocolOutcome] = []
    total = 0.0
    for label, vec in zip(basis.labels, basis.vectors):
        branch = vec.amplitudes.conj() @ psi
        p = float(np.real(np.vdot(branch, branch)))
        total += p
        post = None
        if p > ZERO_PROBABILITY and n > k:
            post = StateVector(n - k, branch / math.sqrt(p))
        outcomes.append(ProtocolOutcome(label=label, probability=p, post_state=post))
    if abs(total - 1.0) > STRUCTURAL_TOL:
        raise ProtocolViolationError(
            f"state has probability {1.0 - total:.6e} outside the span of the"
            f" measurement family ({len(basis.vectors)} vectors on {k} qubits)"
        )
    return outcomes


def partial_trace(state: StateVector, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix of the ``keep`` qubits (in listed order)."""
    idx = _validated_subset(keep, state.num_qubits)
    n = state.num_qubits
    if len(idx) == n:
        raise ValueError("keep must be a proper subset; use an outer product instead")
    if abs(state.norm_squared - 1.0) > STRUCTURAL_TOL:
        raise NormalizationError("partial trace expects a normalized state")
    axes = [q - 1 for q in idx]
    rest = [ax for ax in range(n) if ax not in axes]
    k = len(idx)
    psi = state.amplitudes.reshape((2,) * n).transpose(axes + rest).reshape(2**k, -1)
    return DensityMatrix(k, psi @ psi.conj().T)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum(lam * log2(lam)) over the spectrum, with 0*log0 = 0.

    Eigenvalues pushed slightly negative by rounding are clamped to zero
    before the log (construction already bounds them below by -1e-10).
    """
    lam = np.clip(rho.eigenvalues, 0.0, None)
    lam = lam[lam > 0.0]
    return max(0.0, float(-(lam * np.log2(lam)).sum()))


def orthonormal_extension(vectors: Sequence[np.ndarray], dim: int) -> np.ndarray:
    """Extend orthonormal vectors to a full orthonormal basis (rows).

    Deterministic: missing directions come from Gram-Schmidt over the
    computational basis in index order, so callers that bake the result
    into operators get the same completion every run.
    """
    basis: list[np.ndarray] = []
    for v in vectors:
        v = np.asarray(v, dtype=np.complex128)
        if abs(np.vdot(v, v) - 1.0) > STRUCTURAL_TOL:
            raise NormalizationError("seed vectors must be normalized")
        for b in basis:
            if abs(np.vdot(b, v)) > STRUCTURAL_TOL:
                raise ValueError("seed vectors must be mutually orthogonal")
        basis.append(v.copy())
    for j in range(dim):
        if len(basis) == dim:
            break
        e = np.zeros(dim, dtype=np.complex128)
        e[j] = 1.0
        for _ in range(2):  # twice for numerical orthogonality
            for b in basis:
                e = e - b * np.vdot(b, e)
        nrm = float(np.linalg.norm(e))
        if nrm > 1e-6:
            basis.append(e / nrm)
    if len(basis) != dim:
        raise InternalConsistencyError("failed to complete an orthonormal basis")
    return np.array(basis)
