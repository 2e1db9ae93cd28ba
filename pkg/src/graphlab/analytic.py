"""Closed-form single-vertex means, entanglement, and two-point correlators.

The state behind every formula here is one X-rotation layer followed by one
ZZ layer: |psi> = prod_edges RZZ_jk(theta_jk) prod_vertices RX_i(phi_i)|0...0>.
Because the ZZ layer is diagonal, conjugating a one- or two-vertex Pauli
observable through it stays local: only the edges touching the observed
vertices matter, and each such edge (l, j) turns sigma^x_l / sigma^y_l into
itself times (cos theta_lj + i sin theta_lj Z_l Z_j).

Every vertex factor of that conjugated operator is affine in Z_l, so writing
Z_l through its eigenprojectors splits the observable into at most four
terms, each a tensor product of single-vertex operators.  The remaining
expectation is over the product state prod RX_i(phi_i)|0>, where each vertex
contributes an independent 2x2 mean.  Cost is O(deg l + deg m) per
correlator, with no statevector anywhere.

Neighbors j seen from vertex l enter through the complex factor

    w_lj = cos(theta_lj) + i sin(theta_lj) cos(phi_j)

whose product over the neighborhood drives all in-plane means, and whose
squared magnitude drives the entanglement of a single vertex.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from .graph import WeightedGraph

__all__ = [
    "AXES",
    "BlochVector",
    "neighbor_factor",
    "pauli_mean",
    "bloch_vector",
    "gme",
    "gme_uniform",
    "gme_star_center",
    "correlator",
    "correlator_uniform",
]

AXES = ("x", "y", "z")

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_PROJ = {
    +1: np.array([[1, 0], [0, 0]], dtype=complex),
    -1: np.array([[0, 0], [0, 1]], dtype=complex),
}


class BlochVector(NamedTuple):
    mx: float
    my: float
    mz: float

    def norm(self) -> float:
        return math.sqrt(self.mx**2 + self.my**2 + self.mz**2)


def _check_axis(axis: str) -> str:
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    return axis


def neighbor_factor(theta: float, phi: float) -> complex:
    """cos(theta) + i sin(theta) cos(phi), one neighbor's contribution."""
    return complex(math.cos(theta), math.sin(theta) * math.cos(phi))


def _neighborhood_product(graph: WeightedGraph, l: int) -> complex:
    prod = 1.0 + 0.0j
    for j, theta in graph.adjacency(l).items():
        prod *= neighbor_factor(theta, graph.vertex_weights[j])
    return prod


def pauli_mean(graph: WeightedGraph, l: int, axis: str) -> float:
    """<sigma^axis_l>, exactly, in O(deg l).

    z is untouched by the ZZ layer, so <sigma^z_l> = cos(phi_l).  x and y
    pick up the neighborhood product: <sigma^x_l> = sin(phi_l) Im(prod w),
    <sigma^y_l> = -sin(phi_l) Re(prod w).  An empty neighborhood gives
    prod w = 1.
    """
    graph.check_vertex(l)
    _check_axis(axis)
    phi = graph.vertex_weights[l]
    if axis == "z":
        return math.cos(phi)
    prod = _neighborhood_product(graph, l)
    if axis == "x":
        return math.sin(phi) * prod.imag
    return -math.sin(phi) * prod.real


def bloch_vector(graph: WeightedGraph, l: int) -> BlochVector:
    graph.check_vertex(l)
    phi = graph.vertex_weights[l]
    prod = _neighborhood_product(graph, l)
    return BlochVector(
        math.sin(phi) * prod.imag,
        -math.sin(phi) * prod.real,
        math.cos(phi),
    )


def _gme_from_radicand(radicand: float) -> float:
    # roundoff can leave the radicand epsilon-negative at maximal mixing
    return 0.5 - 0.5 * math.sqrt(max(radicand, 0.0))


def gme(graph: WeightedGraph, l: int) -> float:
    """Entanglement of vertex l with the rest, 0.5 * (1 - |bloch|).

    |bloch|^2 has the closed form cos^2(phi_l) + sin^2(phi_l) *
    prod_j (cos^2 theta_lj + sin^2 theta_lj cos^2 phi_j); the value lies in
    [0, 1/2], with 0 exactly when the vertex factorizes.
    """
    graph.check_vertex(l)
    phi = graph.vertex_weights[l]
    prod = 1.0
    for j, theta in graph.adjacency(l).items():
        phi_j = graph.vertex_weights[j]
        prod *= math.cos(theta) ** 2 + math.sin(theta) ** 2 * math.cos(phi_j) ** 2
    return _gme_from_radicand(math.cos(phi) ** 2 + math.sin(phi) ** 2 * prod)


def gme_uniform(phi: float, theta: float, degree: int) -> float:
    """gme of a degree-`degree` vertex when every phi and theta are equal."""
    if not isinstance(degree, int) or degree < 0:
        raise ValueError(f"degree must be a non-negative integer, got {degree!r}")
    base = math.cos(theta) ** 2 + math.sin(theta) ** 2 * math.cos(phi) ** 2
    return _gme_from_radicand(math.cos(phi) ** 2 + math.sin(phi) ** 2 * base**degree)


def gme_star_center(phis, thetas) -> float:
    """Entanglement of the hub of a four-leaf star.

    `phis` are the five vertex angles (hub first), `thetas` the four spoke
    angles, in leaf order.
    """
    phis = tuple(float(p) for p in phis)
    thetas = tuple(float(t) for t in thetas)
    if len(phis) != 5 or len(thetas) != 4:
        raise ValueError(
            f"expected 5 vertex angles and 4 edge angles, got {len(phis)} and {len(thetas)}"
        )
    prod = 1.0
    for phi_leaf, theta in zip(phis[1:], thetas):
        prod *= math.cos(theta) ** 2 + math.sin(theta) ** 2 * math.cos(phi_leaf) ** 2
    return _gme_from_radicand(math.cos(phis[0]) ** 2 + math.sin(phis[0]) ** 2 * prod)


# -- two-point correlators -----------------------------------------------------


def _local_mean(phi: float, op: np.ndarray) -> complex:
    # single-vertex state RX(phi)|0> = (cos(phi/2), -i sin(phi/2))
    chi = np.array([math.cos(phi / 2), -1j * math.sin(phi / 2)])
    return complex(np.conj(chi) @ op @ chi)


def _phase_diag(alpha: float) -> np.ndarray:
    # the affine edge factor cos(a) + i sin(a) Z, diagonalized
    return np.array([[cmath.exp(1j * alpha), 0], [0, cmath.exp(-1j * alpha)]])


def correlator(graph: WeightedGraph, l: int, m: int, axis_l: str, axis_m: str) -> float:
    """<sigma^a_l sigma^b_m>, exactly, in O(deg l + deg m).

    Conjugating the observable through the ZZ layer and resolving Z_l, Z_m
    on their eigenprojectors leaves four scalar terms.  Within each term,
    a neighbor exclusive to one vertex contributes w evaluated at a signed
    angle, a shared neighbor r couples the two signs through the single
    angle (s*theta_lr + t*theta_mr), and an edge between l and m itself
    lands as an extra diagonal factor on the partner vertex.
    """
    graph.check_vertex(l)
    graph.check_vertex(m)
    if l == m:
        raise ValueError(f"correlator needs two distinct vertices, got {l} twice")
    _check_axis(axis_l)
    _check_axis(axis_m)

    weights = graph.vertex_weights
    # sigma^z commutes with the ZZ layer, so a z observable drags no edges in
    adj_l = graph.adjacency(l) if axis_l != "z" else {}
    adj_m = graph.adjacency(m) if axis_m != "z" else {}
    theta_lm = adj_l.pop(m, None)
    theta_ml = adj_m.pop(l, None)
    shared = sorted(set(adj_l) & set(adj_m))
    only_l = sorted(set(adj_l) - set(shared))
    only_m = sorted(set(adj_m) - set(shared))

    total = 0.0 + 0.0j
    for s in (+1, -1):
        for t in (+1, -1):
            op_l = _PROJ[s] @ _PAULI[axis_l]
            if theta_ml is not None:
                op_l = op_l @ _phase_diag(t * theta_ml)
            op_m = _PROJ[t] @ _PAULI[axis_m]
            if theta_lm is not None:
                op_m = _phase_diag(s * theta_lm) @ op_m
            term = _local_mean(weights[l], op_l) * _local_mean(weights[m], op_m)
            for r in shared:
                term *= neighbor_factor(s * adj_l[r] + t * adj_m[r], weights[r])
            for j in only_l:
                term *= neighbor_factor(s * adj_l[j], weights[j])
            for k in only_m:
                term *= neighbor_factor(t * adj_m[k], weights[k])
            total += term
    if abs(total.imag) > 1e-12:
        raise RuntimeError(f"correlator has imaginary residue {total.imag!r}")
    return total.real


def correlator_uniform(
    phi: float,
    theta: float,
    deg_l: int,
    deg_m: int,
    axis_l: str,
    axis_m: str,
    adjacent: bool = True,
) -> float:
    """Correlator of a uniform-weight pair whose neighborhoods are disjoint.

    deg_l and deg_m count the neighbors of each vertex OTHER than the
    partner; with adjacent=True the pair is additionally joined by an edge
    of weight theta.  The pair edge only enters the mixed x/y-with-z
    correlators: it cancels identically from xx, yy and xy, so those read
    the same either way.

    With w = cos(theta) + i sin(theta) cos(phi):

        zz = cos^2(phi)
        xx =  sin^2(phi) Im(w^deg_l) Im(w^deg_m)
        yy =  sin^2(phi) Re(w^deg_l) Re(w^deg_m)
        xy = -sin^2(phi) Im(w^deg_l) Re(w^deg_m)
        xz =  sin(phi) cos(phi) cos(theta) Im(w^deg_l)
              + sin(phi) sin(theta) Re(w^deg_l)     (adjacent; drop the
              cos(theta) and the second term when not)
        yz = -sin(phi) cos(theta) cos(phi) Re(w^deg_l)
              + sin(phi) sin(theta) Im(w^deg_l)     (likewise)

    and the remaining pairs follow from swapping the two vertices.
    """
    for deg in (deg_l, deg_m):
        if not isinstance(deg, int) or deg < 0:
            raise ValueError(f"degrees must be non-negative integers, got {deg!r}")
    _check_axis(axis_l)
    _check_axis(axis_m)

    pair = axis_l + axis_m
    if pair in ("yx", "zx", "zy"):
        # swap symmetry: <sigma^a_l sigma^b_m> = <sigma^b_m sigma^a_l>
        return correlator_uniform(phi, theta, deg_m, deg_l, axis_m, axis_l, adjacent)

    sp, cp = math.sin(phi), math.cos(phi)
    st, ct = math.sin(theta), math.cos(theta)
    w_l = neighbor_factor(theta, phi) ** deg_l
    w_m = neighbor_factor(theta, phi) ** deg_m

    if pair == "zz":
        return cp * cp
    if pair == "xx":
        return sp * sp * w_l.imag * w_m.imag
    if pair == "yy":
        return sp * sp * w_l.real * w_m.real
    if pair == "xy":
        return -sp * sp * w_l.imag * w_m.real
    if pair == "xz":
        if adjacent:
            return sp * cp * ct * w_l.imag + sp * st * w_l.real
        return sp * cp * w_l.imag
    # yz
    if adjacent:
        return -sp * ct * cp * w_l.real + sp * st * w_l.imag
    return -sp * cp * w_l.real
