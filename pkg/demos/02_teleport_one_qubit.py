"""Teleporting one qubit through the four-qubit W-state, three ways.

The sender holds the unknown qubit and the first two resource qubits; the
receiver holds the last two.  After the sender's four-outcome measurement
and two classical bits, the receiver recovers the input by one of three
strategies.  Every branch is enumerated exactly — the printed fidelities
are algebraic identities, not statistics.
"""

import numpy as np

from wproto import UnknownState, run_teleport_one_qubit, w_coefficients

c = w_coefficients(4)
psi = UnknownState(0.6, 0.8j)
print(f"input qubit: alpha={psi.alpha}, beta={psi.beta}")
print()

print("=== strategy 'subspace': keep the state encoded on two qubits ===")
report = run_teleport_one_qubit(c, 2, psi, "subspace")
for outcome in report.outcomes:
    print(
        f"  outcome {outcome.label:<5} p={outcome.probability:.4f}"
        f"  fidelity vs encoded target = {report.fidelities[outcome.label]:.12f}"
    )
print("  ->", report.reason)
print()
print("The input now lives in span{|00>, (|01>+|10>)/sqrt(2)} of the")
print("receiver's register; the four corrections are the subspace versions")
print("of the usual single-qubit recovery operators.")
print()

print("=== strategy 'transfer': squeeze it onto one physical qubit ===")
report = run_teleport_one_qubit(c, 2, psi, "transfer")
for outcome in report.outcomes:
    amps = np.round(outcome.post_state.amplitudes, 6)
    print(f"  outcome {outcome.label:<5} receiver register -> {amps}")
print("  ->", report.reason)
print()
print("The corrections compose the subspace recovery with the basis change")
print("{|00>, (|01>+|10>)/sqrt(2)} -> {|00>, |01>}: the register factors as")
print("|0>(alpha|0> + beta|1>) and the last qubit carries the input.")
print()

print("=== strategy 'serial': relay through a fresh Bell pair ===")
report = run_teleport_one_qubit(c, 2, psi, "serial")
print(f"  {len(report.outcomes)} combined branches (4 sender x 4 receiver),")
print(f"  each with joint probability {report.outcomes[0].probability:.6f}")
print(f"  minimum fidelity over all branches: {report.min_fidelity:.12f}")
print(f"  classical bits from the sender: {report.classical_bits_sent}")
print()
print("All three strategies recover the input exactly on every branch —")
print("and the same engine verifies this for any resource that satisfies")
print("the half-half split, at any size.")
