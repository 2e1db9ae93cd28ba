"""Basis-gate transpilation and Monte-Carlo trajectory noise.

Circuits are rewritten over {id, x, sx, rz, cnot}, then per-shot Pauli
errors are placed after noisy gates and readout bits are flipped.  With all
rates zero the trajectory sampler reproduces ideal sampling bit for bit.
"""

import math

from graphlab import (
    DEFAULT_NOISE,
    NoiseModel,
    TrajectoryConfig,
    build_graph_circuit,
    correlator,
    noisy_estimate_correlator,
    noisy_sample,
    run,
    sample,
    star,
    transpile,
)


def main() -> None:
    g = star(4, phi=math.pi / 3, theta=math.pi / 3)
    circ = build_graph_circuit(g)
    basis = transpile(circ)
    print("native circuit:", len(circ.gates), "gates; transpiled:", len(basis.gates))
    print("default noise model:", DEFAULT_NOISE)

    # zero noise reduces to the ideal sampler exactly
    quiet = NoiseModel(0.0, 0.0, 0.0)
    cfg = TrajectoryConfig(shots=2000, seed=5)
    ideal = sample(run(basis), [0, 1], shots=2000, seed=5)
    noiseless = noisy_sample(basis, quiet, [0, 1], cfg)
    print("zero-noise counts equal ideal counts:", noiseless.counts == ideal.counts)

    # deviation from the closed form grows with the error rates
    want = correlator(g, 0, 1, "z", "x")
    print(f"exact <z_0 x_1> = {want:+.6f}")
    cfg = TrajectoryConfig(shots=20_000, seed=9)
    for scale in (0.0, 1.0, 5.0):
        noise = NoiseModel(
            readout_flip=0.01 * scale, err_1q=0.0001 * scale, err_2q=0.01 * scale
        )
        est = noisy_estimate_correlator(circ, noise, 0, 1, "z", "x", cfg)
        print(f"  rates x{scale}: estimate {est:+.6f}  (off by {abs(est - want):.6f})")


if __name__ == "__main__":
    main()
