"""Shared test utilities, including an independent brute-force oracle.

The oracle here builds full 2^n x 2^n gate matrices from the mathematical
definitions by explicit bit manipulation.  It shares no code with the
package's strided kernels, so agreement between the two is meaningful.
"""

from __future__ import annotations

import math

import numpy as np

from graphlab.simcore import Circuit, Gate

# -- independent full-matrix simulator ----------------------------------------


def _mat_1q(gate: Gate) -> np.ndarray:
    a = gate.angle
    if gate.kind == "rx":
        return np.array(
            [[math.cos(a / 2), -1j * math.sin(a / 2)],
             [-1j * math.sin(a / 2), math.cos(a / 2)]]
        )
    if gate.kind == "ry":
        return np.array(
            [[math.cos(a / 2), -math.sin(a / 2)],
             [math.sin(a / 2), math.cos(a / 2)]],
            dtype=complex,
        )
    if gate.kind == "rz":
        return np.diag([np.exp(-0.5j * a), np.exp(0.5j * a)])
    if gate.kind == "x":
        return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    if gate.kind == "sx":
        return 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
    if gate.kind == "id":
        return np.eye(2, dtype=complex)
    raise AssertionError(gate.kind)


def full_gate_matrix(n: int, gate: Gate) -> np.ndarray:
    """2^n x 2^n matrix of one gate, bit q of the index being qubit q."""
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=complex)
    if gate.kind == "rzz":
        j, k = gate.qubits
        for b in range(dim):
            zj = 1 - 2 * ((b >> j) & 1)
            zk = 1 - 2 * ((b >> k) & 1)
            mat[b, b] = np.exp(-0.5j * gate.angle * zj * zk)
        return mat
    if gate.kind == "cnot":
        c, t = gate.qubits
        for b in range(dim):
            out = b ^ (1 << t) if (b >> c) & 1 else b
            mat[out, b] = 1.0
        return mat
    (q,) = gate.qubits
    u = _mat_1q(gate)
    for b in range(dim):
        bit = (b >> q) & 1
        for r in (0, 1):
            out = (b & ~(1 << q)) | (r << q)
            mat[out, b] += u[r, bit]
    return mat


def oracle_run(circuit: Circuit) -> np.ndarray:
    """|0...0> through the circuit using full matrices only."""
    state = np.zeros(1 << circuit.n, dtype=complex)
    state[0] = 1.0
    for gate in circuit.gates:
        state = full_gate_matrix(circuit.n, gate) @ state
    return state


def oracle_pauli_product(state: np.ndarray, ops: list[tuple[int, str]]) -> float:
    """<state| prod sigma |state> via full matrices."""
    n = int(math.log2(len(state)))
    phi = state.copy()
    for vertex, axis in ops:
        if axis == "x":
            mat = full_gate_matrix(n, Gate.x(vertex))
        elif axis == "y":
            dim = len(state)
            mat = np.zeros((dim, dim), dtype=complex)
            for b in range(dim):
                bit = (b >> vertex) & 1
                out = b ^ (1 << vertex)
                mat[out, b] = 1j if bit == 0 else -1j
        else:
            dim = len(state)
            mat = np.diag([1.0 - 2.0 * ((b >> vertex) & 1) for b in range(dim)]).astype(complex)
        phi = mat @ phi
    value = complex(np.vdot(state, phi))
    assert abs(value.imag) < 1e-10
    return value.real


# -- random inputs --------------------------------------------------------------

ALL_KINDS = ("rx", "ry", "rz", "rzz", "x", "sx", "cnot", "id")


def random_circuit(rng: np.random.Generator, n: int, n_gates: int) -> Circuit:
    gates = []
    kinds = ALL_KINDS if n >= 2 else tuple(k for k in ALL_KINDS if k not in ("rzz", "cnot"))
    for _ in range(n_gates):
        kind = kinds[int(rng.integers(0, len(kinds)))]
        if kind in ("rzz", "cnot"):
            pair = rng.choice(n, size=2, replace=False)
            qubits = (int(pair[0]), int(pair[1]))
        else:
            qubits = (int(rng.integers(0, n)),)
        angle = float(rng.uniform(-2 * math.pi, 2 * math.pi)) if kind in ("rx", "ry", "rz", "rzz") else None
        gates.append(Gate(kind, qubits, angle))
    return Circuit(n, tuple(gates))


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return amps / np.linalg.norm(amps)


# -- realizing graphs for the uniform closed forms ------------------------------


def pair_with_leaves(deg_l: int, deg_m: int, phi: float, theta: float, adjacent: bool):
    """Vertices 0 and 1 with disjoint leaf sets; optionally joined by an edge."""
    from graphlab.graph import WeightedGraph

    n = 2 + deg_l + deg_m
    edges = []
    if adjacent:
        edges.append((0, 1, theta))
    edges += [(0, 2 + i, theta) for i in range(deg_l)]
    edges += [(1, 2 + deg_l + i, theta) for i in range(deg_m)]
    return WeightedGraph(n, (phi,) * n, tuple(edges))


# -- emitted-file comparison -----------------------------------------------------


def reproducible_bytes(path: str) -> bytes:
    """File content with the declared timestamp metadata stripped."""
    with open(path, "rb") as fh:
        raw = fh.read()
    keep = [
        line
        for line in raw.split(b"\n")
        if not line.startswith(b"# timestamp:") and b'"timestamp"' not in line
    ]
    return b"\n".join(keep)
