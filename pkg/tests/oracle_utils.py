"""Independent oracles for the test suite.

Everything here is deliberately written with explicit index arithmetic
(qubit 1 = most significant bit) instead of the library's reshape/transpose
machinery, so a bug in the package cannot hide in its own verification.
"""

from __future__ import annotations

import numpy as np


def ket(n: int, bits: str) -> np.ndarray:
    """Basis vector |bits> built by plain binary index arithmetic."""
    assert len(bits) == n
    vec = np.zeros(2**n, dtype=np.complex128)
    vec[int(bits, 2)] = 1.0
    return vec


def build_state(n: int, terms: dict[str, complex]) -> np.ndarray:
    """Hand-expanded superposition written as bitstring -> amplitude."""
    vec = np.zeros(2**n, dtype=np.complex128)
    for bits, amp in terms.items():
        vec[int(bits, 2)] += amp
    return vec


def oracle_branch(joint: np.ndarray, vec: np.ndarray, n: int, k: int) -> np.ndarray:
    """Un-normalized post-state of measuring the FIRST k qubits onto ``vec``.

    Loops over every computational index; the first k qubits form the high
    bits of the amplitude index.
    """
    rest = n - k
    out = np.zeros(2**rest, dtype=np.complex128)
    for idx in range(2**n):
        a = idx >> rest
        b = idx & ((1 << rest) - 1)
        out[b] += np.conj(vec[a]) * joint[idx]
    return out


def oracle_reduced_density(psi: np.ndarray, n: int, keep: list[int]) -> np.ndarray:
    """Reduced density matrix of the 1-based ``keep`` qubits, by bit surgery."""
    keep0 = [q - 1 for q in keep]
    rest0 = [q for q in range(n) if q not in keep0]
    mat = np.zeros((2 ** len(keep0), 2 ** len(rest0)), dtype=np.complex128)
    for idx in range(2**n):
        a = 0
        for q in keep0:
            a = (a << 1) | ((idx >> (n - 1 - q)) & 1)
        b = 0
        for q in rest0:
            b = (b << 1) | ((idx >> (n - 1 - q)) & 1)
        mat[a, b] += psi[idx]
    return mat @ mat.conj().T


def oracle_entropy(rho: np.ndarray) -> float:
    lam = np.linalg.eigvalsh(rho)
    lam = lam[lam > 1e-15]
    return float(-(lam * np.log2(lam)).sum())


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase fixing."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def gram_of(vectors: list[np.ndarray]) -> np.ndarray:
    """Pairwise inner products by explicit loops."""
    k = len(vectors)
    g = np.zeros((k, k), dtype=np.complex128)
    for i in range(k):
        for j in range(k):
            g[i, j] = np.sum(np.conj(vectors[i]) * vectors[j])
    return g
