"""Exact statevector preparation, expectation values, and shot sampling.

The dense simulator is the verification oracle for the closed forms: run
the preparation circuit, take exact expectations, then estimate the same
quantities from finite shot counts and watch the error shrink.
"""

import math

from graphlab import (
    build_graph_circuit,
    correlator,
    estimate_correlator,
    expectation,
    gme,
    gme_from_means,
    pauli_mean,
    run,
    sample,
    star,
)


def main() -> None:
    g = star(4, phi=math.pi / 3, theta=math.pi / 3)
    circ = build_graph_circuit(g)
    print("preparation circuit:", len(circ.gates), "gates on", circ.n, "qubits")

    state = run(circ)
    print("statevector dimension:", len(state))

    # exact expectations agree with the closed forms
    for axis in "xyz":
        exact = expectation(state, [(0, axis)])
        closed = pauli_mean(g, 0, axis)
        print(f"<{axis}_0>: simulated {exact:+.9f}  closed form {closed:+.9f}")

    means = [expectation(state, [(0, a)]) for a in "xyz"]
    print(f"hub gme via simulation: {gme_from_means(*means):.9f} vs {gme(g, 0):.9f}")

    # raw bitstring histogram of all five qubits (leftmost char = qubit 4)
    counts = sample(state, [0, 1, 2, 3, 4], shots=10, seed=42)
    print("10 sampled bitstrings:", dict(sorted(counts.counts.items())))

    # shot estimates converge to the closed form like 1/sqrt(shots)
    want = correlator(g, 0, 1, "x", "y")
    print(f"exact <x_0 y_1> = {want:+.6f}")
    for shots in (100, 10_000, 1_000_000):
        est = estimate_correlator(circ, 0, 1, "x", "y", shots=shots, seed=7)
        print(f"  {shots:>7} shots: {est:+.6f}  (error {abs(est - want):.6f})")


if __name__ == "__main__":
    main()
