"""Closed-form single-qubit means, entanglement, and two-point correlators.

Everything here costs O(degree) per value, no statevector involved, so the
same calls work unchanged on graphs far beyond simulable sizes.
"""

import math

from graphlab import (
    bloch_vector,
    correlator,
    correlator_uniform,
    gme,
    gme_star_center,
    gme_uniform,
    star,
)


def main() -> None:
    g = star(4, phi=math.pi / 3, theta=math.pi / 4)

    m = bloch_vector(g, 0)
    print(f"hub mean spin: ({m.mx:+.6f}, {m.my:+.6f}, {m.mz:+.6f}), |m| = {m.norm():.6f}")
    print(f"hub entanglement: {gme(g, 0):.6f}")
    print(f"leaf entanglement: {gme(g, 1):.6f}")

    # the hub of a maximally weighted star is maximally entangled
    print("gme at phi=theta=pi/2:", gme(star(4, phi=math.pi / 2, theta=math.pi / 2), 0))

    # all nine two-point correlators of the hub-leaf pair
    for a in "xyz":
        line = "  ".join(f"{a}{b}: {correlator(g, 0, 1, a, b):+.6f}" for b in "xyz")
        print(f"pair (0,1)  {line}")

    # uniform-weight shortcuts parameterized by degree only
    print("gme_uniform(pi/3, pi/4, degree=4):", f"{gme_uniform(math.pi / 3, math.pi / 4, 4):.6f}")
    print(
        "correlator_uniform xx, degrees (3, 0), adjacent:",
        f"{correlator_uniform(math.pi / 3, math.pi / 4, 3, 0, 'x', 'x'):.6f}",
    )

    # per-leaf weights on a four-leaf star
    phis = (math.pi / 2, math.pi / 3, math.pi / 4, math.pi / 5, math.pi / 6)
    thetas = (math.pi / 2, math.pi / 3, math.pi / 4, math.pi / 5)
    print("mixed-weight star hub gme:", f"{gme_star_center(phis, thetas):.6f}")

    # scales to sizes no simulator reaches
    print("hub gme of a 100000-leaf star:", f"{gme_uniform(1.1, 0.02, 100_000):.6f}")


if __name__ == "__main__":
    main()
