"""Single-excitation ("W-class") state families and suitability conditions.

A generalized W-state on n qubits puts one excitation in superposition
across the register: sum_l a_l |0..010..0> with the 1 at position l.  Such
a state splits, for any cut after the first n-m qubits, into exactly two
mutually orthogonal terms, and it supports perfect teleportation and
superdense coding across that cut iff the excitation weight is shared
half-and-half:

    sum_{l<=n-m} |a_l|^2  =  sum_{l>n-m} |a_l|^2  =  1/2,

equivalently iff the m-qubit side of the cut is completely mixed (reduced
entropy one).  This module builds the states and checks the conditions;
the protocol engines live in :mod:`wproto.teleport` and :mod:`wproto.sdc`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qsim import (
    STRUCTURAL_TOL,
    InternalConsistencyError,
    NormalizationError,
    StateVector,
    partial_trace,
    von_neumann_entropy,
    zero_state,
)

#: tolerance for the "reduced entropy equals one" cross-check
ENTROPY_TOL = 1e-9


class CoefficientVector:
    """The complex amplitudes a_1..a_n of a generalized W-state.

    Must be normalized on input: sum |a_l|^2 = 1 within tolerance.  No
    silent rescaling — the suitability conditions are statements about
    normalized states, so a caller presenting unnormalized coefficients
    gets an error naming the deficit.  Zero entries are allowed.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[complex] | np.ndarray):
        arr = np.array(coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] < 2:
            raise ValueError("need at least two coefficients")
        total = float(np.sum(np.abs(arr) ** 2))
        if abs(total - 1.0) > STRUCTURAL_TOL:
            raise NormalizationError(
                f"coefficients have squared norm {total:.12g}"
                f" (deficit {1.0 - total:.12g}); normalize explicitly"
            )
        arr.flags.writeable = False
        self.coeffs = arr

    @classmethod
    def normalize(cls, coeffs: Sequence[complex] | np.ndarray) -> "CoefficientVector":
        """Explicitly rescale arbitrary nonzero coefficients to unit norm."""
        arr = np.asarray(coeffs, dtype=np.complex128)
        nrm = float(np.linalg.norm(arr))
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(arr / nrm)

    @property
    def n(self) -> int:
        return int(self.coeffs.shape[0])

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"CoefficientVector(n={self.n})"


@dataclass(frozen=True)
class ConditionReport:
    """Both sides of the half-half split condition for one partition size.

    ``holds`` requires the residual *and* the distance of the left sum from
    1/2 to be below tolerance; equality of the sums alone would let
    unnormalized input slip through.
    """

    partition_size: int
    left_sum: float
    right_sum: float
    residual: float
    holds: bool


def _condition_report(m: int, left: float, right: float) -> ConditionReport:
    residual = abs(left - right)
    holds = residual < STRUCTURAL_TOL and abs(left - 0.5) < STRUCTURAL_TOL
    return ConditionReport(
        partition_size=m, left_sum=left, right_sum=right, residual=residual, holds=holds
    )


def generalized_w(c: CoefficientVector) -> StateVector:
    """sum_l a_l |0..010..0| with the excitation at position l; normalized."""
    n = c.n
    amps = np.zeros(2**n, dtype=np.complex128)
    for l in range(n):
        amps[1 << (n - 1 - l)] = c.coeffs[l]
    return StateVector(n, amps)


def sub_w(c: CoefficientVector, start: int, end: int) -> StateVector:
    """Un-normalized excitation block with coefficients a_start..a_end.

    The result lives on end-start+1 qubits and has norm
    sqrt(sum |a_l|^2 over the range); for the full range this is the
    normalized state itself.
    """
    if not (1 <= start <= end <= c.n):
        raise ValueError(f"invalid range ({start}, {end}) for n={c.n}")
    k = end - start + 1
    amps = np.zeros(2**k, dtype=np.complex128)
    for l in range(start, end + 1):
        amps[1 << (k - 1 - (l - start))] = c.coeffs[l - 1]
    return StateVector(k, amps)


def two_term_decomposition(
    c: CoefficientVector, m: int
) -> tuple[StateVector, StateVector, StateVector, StateVector]:
    """Split into (front block, zeros, zeros, back block) for the cut at m.

    Returns (W'_{1..m}, |0..0> on the trailing n-m qubits, |0..0> on the
    leading m qubits, W'_{m+1..n}) so that

        tensor(t[0], t[1]) + tensor(t[2], t[3])

    reassembles ``generalized_w(c)`` exactly.
    """
    n = c.n
    if not (1 <= m <= n - 1):
        raise ValueError(f"partition size m={m} must lie in 1..{n - 1}")
    return (
        sub_w(c, 1, m),
        zero_state(n - m),
        zero_state(m),
        sub_w(c, m + 1, n),
    )


def w_coefficients(n: int) -> CoefficientVector:
    """Uniform coefficients 1/sqrt(n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return CoefficientVector(np.full(n, 1.0 / math.sqrt(n)))


def modified_w_coefficients(n: int) -> CoefficientVector:
    """Half the excitation weight on the last qubit, the rest shared evenly.

    a_n = 1/sqrt(2) and a_l = 1/sqrt(2(n-1)) otherwise, so the m=1 split
    condition holds for every n.  For n=3 this is (1/2, 1/2, 1/sqrt(2)).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    coeffs = np.full(n, 1.0 / math.sqrt(2.0 * (n - 1)), dtype=np.complex128)
    coeffs[-1] = 1.0 / math.sqrt(2.0)
    return CoefficientVector(coeffs)


def standard_w(n: int) -> StateVector:
    """The n-qubit W-state: uniform single-excitation superposition."""
    return generalized_w(w_coefficients(n))


def generalized_ghz(a1: complex, a2: complex, n: int) -> StateVector:
    """a1 |00...0> + a2 |11...1| on n qubits; coefficients must be normalized."""
    if n < 2:
        raise ValueError("need n >= 2")
    total = abs(a1) ** 2 + abs(a2) ** 2
    if abs(total - 1.0) > STRUCTURAL_TOL:
        raise NormalizationError(
            f"|a1|^2 + |a2|^2 = {total:.12g} must equal 1; normalize explicitly"
        )
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = a1
    amps[-1] = a2
    return StateVector(n, amps)


def ghz(n: int) -> StateVector:
    """The n-qubit GHZ-state (|00...0> + |11...1>)/sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return generalized_ghz(s, s, n)


def teleport_condition(c: CoefficientVector, m: int) -> ConditionReport:
    """Check the half-half split for the cut "last m qubits vs the rest".

    Other qubit assignments are reached by permuting the coefficients first
    (see :func:`permute_coefficients`); the single canonical formula keeps
    the bookkeeping honest.
    """
    n = c.n
    if not (1 <= m <= n - 1):
        raise ValueError(f"partition size m={m} must lie in 1..{n - 1}")
    weights = np.abs(c.coeffs) ** 2
    left = float(weights[: n - m].sum())
    right = float(weights[n - m :].sum())
    return _condition_report(m, left, right)


def ghz_condition(a1: complex, a2: complex, m: int = 1) -> ConditionReport:
    """Split condition for a1 |0..0> + a2 |1..1>: |a1|^2 = |a2|^2 = 1/2.

    Every bipartition of such a state has the same reduced spectrum
    {|a1|^2, |a2|^2}, so the report is independent of the partition size.
    """
    total = abs(a1) ** 2 + abs(a2) ** 2
    if abs(total - 1.0) > STRUCTURAL_TOL:
        raise NormalizationError(
            f"|a1|^2 + |a2|^2 = {total:.12g} must equal 1; normalize explicitly"
        )
    return _condition_report(m, abs(a1) ** 2, abs(a2) ** 2)


def partition_entropy_formula(n: int, x: int) -> float:
    """Closed-form bipartition entropy of the n-qubit W-state.

    For any x-qubit subset: H(x/n) = -(x/n)log2(x/n) - (1-x/n)log2(1-x/n),
    which reaches one exactly when n is even and x = n/2.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0 < x < n):
        raise ValueError(f"subset size x={x} must lie in 1..{n - 1}")
    p = x / n
    return -(p * math.log2(p)) - ((1.0 - p) * math.log2(1.0 - p))


def _last_m_entropy(state: StateVector, m: int) -> float:
    n = state.num_qubits
    return von_neumann_entropy(partial_trace(state, range(n - m + 1, n + 1)))


def suitability_scan(c: CoefficientVector) -> list[ConditionReport]:
    """Condition reports for every partition size m in 1..n-1.

    Each report is cross-validated against the simulated reduced entropy of
    the last-m-qubit subsystem: ``holds`` must coincide with that entropy
    being one within 1e-9.  A disagreement would mean the checker and the
    simulator have diverged, so it raises instead of returning.
    """
    state = generalized_w(c)
    reports = []
    for m in range(1, c.n):
        rep = teleport_condition(c, m)
        entropy_one = abs(_last_m_entropy(state, m) - 1.0) <= ENTROPY_TOL
        if rep.holds != entropy_one:
            raise InternalConsistencyError(
                f"split condition and unit-entropy check disagree at m={m}"
            )
        reports.append(rep)
    return reports


def ghz_suitability_scan(a1: complex, a2: complex, n: int) -> list[ConditionReport]:
    """Per-partition reports for a generalized GHZ state, entropy-validated."""
    state = generalized_ghz(a1, a2, n)
    reports = []
    for m in range(1, n):
        rep = ghz_condition(a1, a2, m)
        entropy_one = abs(_last_m_entropy(state, m) - 1.0) <= ENTROPY_TOL
        if rep.holds != entropy_one:
            raise InternalConsistencyError(
                f"GHZ condition and unit-entropy check disagree at m={m}"
            )
        reports.append(rep)
    return reports


def permute_coefficients(c: CoefficientVector, order: Sequence[int]) -> CoefficientVector:
    """Relabel qubits: entry i of the result is coefficient ``order[i]``.

    ``order`` is a permutation of 1..n.  Permuting coefficients and
    permuting the qubits of ``generalized_w(c)`` are the same operation, so
    this is how arbitrary qubit assignments are fed to the last-m condition.
    """
    order = [int(q) for q in order]
    if sorted(order) != list(range(1, c.n + 1)):
        raise ValueError(f"order must be a permutation of 1..{c.n}")
    return CoefficientVector(c.coeffs[[q - 1 for q in order]])


def random_coefficients(n: int, rng: np.random.Generator) -> CoefficientVector:
    """Haar-ish random normalized complex coefficients."""
    raw = rng.normal(size=n) + 1j * rng.normal(size=n)
    return CoefficientVector.normalize(raw)


def random_condition_coefficients(
    n: int, m: int, rng: np.random.Generator
) -> CoefficientVector:
    """Random coefficients that satisfy the split condition at partition m.

    Each block is drawn at random and rescaled to squared norm 1/2, so
    ``teleport_condition(result, m).holds`` by construction.
    """
    if not (1 <= m <= n - 1):
        raise ValueError(f"partition size m={m} must lie in 1..{n - 1}")
    front = rng.normal(size=n - m) + 1j * rng.normal(size=n - m)
    back = rng.normal(size=m) + 1j * rng.normal(size=m)
    front *= 1.0 / (math.sqrt(2.0) * np.linalg.norm(front))
    back *= 1.0 / (math.sqrt(2.0) * np.linalg.norm(back))
    return CoefficientVector(np.concatenate([front, back]))
