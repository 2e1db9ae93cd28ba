"""Dense statevector simulation, sampling, and shot-based estimators.

Conventions, fixed across the package:

* Amplitude index bit q is qubit q, so qubit 0 is the least significant bit.
* Bitstrings are printed most-significant-first: in a string returned for
  measured qubits [q0, q1, ...], the LAST character is q0's outcome.
* States are plain complex128 numpy arrays of length 2**n, modified in place
  by gate kernels through strided views (no full-state temporaries).
* Randomness comes from numpy's PCG64 via SeedSequence; a master seed is
  split into named streams and per-task seeds by hashing the integer path
  (see stream_rng / derive_seed), so parallel sweeps stay reproducible.

Exact expectation values computed here are the reference that every closed
form and every sampled estimate elsewhere in the package is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Gate",
    "Circuit",
    "ResourceLimitError",
    "ShotCounts",
    "DEFAULT_MAX_QUBITS",
    "build_graph_circuit",
    "zero_state",
    "apply_gate",
    "apply_pauli",
    "run",
    "expectation",
    "measurement_circuit",
    "marginal_probabilities",
    "sample",
    "estimate_pauli_mean",
    "estimate_correlator",
    "gme_from_means",
    "state_fidelity",
    "stream_rng",
    "derive_seed",
]

DEFAULT_MAX_QUBITS = 24

ROTATION_KINDS = frozenset({"rx", "ry", "rz", "rzz"})
FIXED_KINDS = frozenset({"x", "sx", "cnot", "id"})
GATE_KINDS = ROTATION_KINDS | FIXED_KINDS

# named sub-streams of a master seed
STREAM_MEASURE = 0
STREAM_ERRORS = 1
STREAM_READOUT = 2


class ResourceLimitError(RuntimeError):
    """Raised when a requested simulation exceeds the configured qubit cap."""


def stream_rng(seed: int, stream: int, *path: int) -> np.random.Generator:
    """Generator for the given named stream of a master seed."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(stream), *map(int, path)]))


def derive_seed(master: int, *path: int) -> int:
    """Hash (master, *path) into an independent 63-bit task seed."""
    if master < 0:
        raise ValueError(f"seed must be non-negative, got {master}")
    seq = np.random.SeedSequence([int(master), *map(int, path)])
    return int(seq.generate_state(1, dtype=np.uint64)[0] >> 1)


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind in ("rzz", "cnot") else 1
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind} acts on {want} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubits must be distinct, got {self.qubits}")
        if self.kind in ROTATION_KINDS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} needs a finite angle, got {self.angle!r}")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")

    # constructors, so circuits read as Gate.rx(0, phi), Gate.cnot(0, 1), ...
    @classmethod
    def rx(cls, q: int, angle: float) -> "Gate":
        return cls("rx", (q,), float(angle))

    @classmethod
    def ry(cls, q: int, angle: float) -> "Gate":
        return cls("ry", (q,), float(angle))

    @classmethod
    def rz(cls, q: int, angle: float) -> "Gate":
        return cls("rz", (q,), float(angle))

    @classmethod
    def rzz(cls, j: int, k: int, angle: float) -> "Gate":
        return cls("rzz", (j, k), float(angle))

    @classmethod
    def x(cls, q: int) -> "Gate":
        return cls("x", (q,))

    @classmethod
    def sx(cls, q: int) -> "Gate":
        return cls("sx", (q,))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls("cnot", (control, target))

    @classmethod
    def idle(cls, q: int) -> "Gate":
        return cls("id", (q,))


@dataclass(frozen=True)
class Circuit:
    """Immutable gate list on n qubits; time order is list order."""

    n: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"qubit count must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(q < 0 or q >= self.n for q in g.qubits):
                raise ValueError(f"gate {g} touches a qubit outside 0..{self.n - 1}")

    def extended(self, extra: "Circuit | tuple[Gate, ...] | list[Gate]") -> "Circuit":
        gates = extra.gates if isinstance(extra, Circuit) else tuple(extra)
        return Circuit(self.n, self.gates + tuple(gates))


def build_graph_circuit(graph) -> Circuit:
    """One X-rotation layer then one ZZ layer, angles taken from the graph."""
    gates = [Gate.rx(v, graph.vertex_weights[v]) for v in range(graph.n)]
    gates += [Gate.rzz(j, k, theta) for j, k, theta in graph.edges]
    return Circuit(graph.n, tuple(gates))


# -- gate kernels --------------------------------------------------------------

_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])


def _matrix_1q(gate: Gate) -> np.ndarray:
    a = gate.angle
    if gate.kind == "rx":
        c, s = math.cos(a / 2), math.sin(a / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if gate.kind == "ry":
        c, s = math.cos(a / 2), math.sin(a / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if gate.kind == "rz":
        return np.array([[np.exp(-0.5j * a), 0], [0, np.exp(0.5j * a)]])
    if gate.kind == "x":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if gate.kind == "sx":
        return _SX.copy()
    if gate.kind == "id":
        return np.eye(2, dtype=complex)
    raise ValueError(f"{gate.kind} is not a one-qubit gate")


def _apply_matrix_1q(state: np.ndarray, mat: np.ndarray, q: int) -> None:
    view = state.reshape(-1, 2, 1 << q)
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = mat[0, 0] * lo + mat[0, 1] * hi
    view[:, 1, :] = mat[1, 0] * lo + mat[1, 1] * hi


def _pair_view(state: np.ndarray, qa: int, qb: int) -> np.ndarray:
    # axes: (rest, bit of the higher qubit, mid, bit of the lower qubit, low)
    q_lo, q_hi = (qa, qb) if qa < qb else (qb, qa)
    return state.reshape(-1, 2, 1 << (q_hi - q_lo - 1), 2, 1 << q_lo)


def _apply_rzz(state: np.ndarray, theta: float, j: int, k: int) -> None:
    view = _pair_view(state, j, k)
    even = np.exp(-0.5j * theta)
    odd = np.exp(0.5j * theta)
    view[:, 0, :, 0, :] *= even
    view[:, 1, :, 1, :] *= even
    view[:, 0, :, 1, :] *= odd
    view[:, 1, :, 0, :] *= odd


def _apply_cnot(state: np.ndarray, control: int, target: int) -> None:
    view = _pair_view(state, control, target)
    if control > target:
        a, b = view[:, 1, :, 0, :], view[:, 1, :, 1, :]
    else:
        a, b = view[:, 0, :, 1, :], view[:, 1, :, 1, :]
    tmp = a.copy()
    a[...] = b
    b[...] = tmp


def apply_gate(state: np.ndarray, gate: Gate) -> None:
    """Apply one gate to `state` in place."""
    if gate.kind == "rzz":
        _apply_rzz(state, gate.angle, *gate.qubits)
    elif gate.kind == "cnot":
        _apply_cnot(state, *gate.qubits)
    elif gate.kind == "id":
        pass
    elif gate.kind == "rz":
        view = state.reshape(-1, 2, 1 << gate.qubits[0])
        view[:, 0, :] *= np.exp(-0.5j * gate.angle)
        view[:, 1, :] *= np.exp(0.5j * gate.angle)
    else:
        _apply_matrix_1q(state, _matrix_1q(gate), gate.qubits[0])


def apply_pauli(state: np.ndarray, q: int, which: str) -> None:
    """Apply a single Pauli x/y/z to `state` in place (used for error insertion)."""
    view = state.reshape(-1, 2, 1 << q)
    if which == "x":
        tmp = view[:, 0, :].copy()
        view[:, 0, :] = view[:, 1, :]
        view[:, 1, :] = tmp
    elif which == "y":
        tmp = view[:, 0, :].copy()
        view[:, 0, :] = -1j * view[:, 1, :]
        view[:, 1, :] = 1j * tmp
    elif which == "z":
        view[:, 1, :] *= -1.0
    else:
        raise ValueError(f"unknown Pauli {which!r}")


def zero_state(n: int) -> np.ndarray:
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


def n_qubits(state: np.ndarray) -> int:
    n = int(len(state)).bit_length() - 1
    if 1 << n != len(state):
        raise ValueError(f"state length {len(state)} is not a power of two")
    return n


def run(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Evolve |0...0> through the circuit; refuses n beyond max_qubits."""
    if circuit.n > max_qubits:
        raise ResourceLimitError(
            f"{circuit.n} qubits exceeds the configured maximum of {max_qubits}"
        )
    state = zero_state(circuit.n)
    for gate in circuit.gates:
        apply_gate(state, gate)
    norm = float(np.linalg.norm(state))
    if abs(norm - 1.0) > 1e-10:
        raise RuntimeError(f"state norm drifted to {norm!r}")
    return state


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _check_targets(ops, n: int) -> list[tuple[int, str]]:
    out = []
    for vertex, axis in ops:
        if not 0 <= vertex < n:
            raise ValueError(f"vertex {vertex} outside 0..{n - 1}")
        if axis not in _PAULI:
            raise ValueError(f"axis must be x, y or z, got {axis!r}")
        out.append((vertex, axis))
    if len({v for v, _ in out}) != len(out):
        raise ValueError(f"target vertices must be distinct, got {[v for v, _ in out]}")
    return out


def expectation(state: np.ndarray, ops: list[tuple[int, str]]) -> float:
    """Exact <state| prod_i sigma^axis_i |state> for distinct target vertices.

    The value of a Hermitian product observable is real; the imaginary
    residue is checked against 1e-12 and stripped.
    """
    n = n_qubits(state)
    targets = _check_targets(ops, n)
    rotated = state.copy()
    for vertex, axis in targets:
        _apply_matrix_1q(rotated, _PAULI[axis], vertex)
    value = complex(np.vdot(state, rotated))
    if abs(value.imag) > 1e-12:
        raise RuntimeError(f"expectation has imaginary residue {value.imag!r}")
    return value.real


def measurement_circuit(circuit: Circuit, targets: list[tuple[int, str]]) -> Circuit:
    """Append the basis rotations that map each target axis onto sigma^z.

    x is read after RY(-pi/2), y after RX(pi/2), z directly.
    """
    checked = _check_targets(targets, circuit.n)
    extra = []
    for vertex, axis in checked:
        if axis == "x":
            extra.append(Gate.ry(vertex, -math.pi / 2))
        elif axis == "y":
            extra.append(Gate.rx(vertex, math.pi / 2))
    return circuit.extended(tuple(extra))


@dataclass(frozen=True)
class ShotCounts:
    """Histogram of measured bitstrings; keys print most-significant-first."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError(f"shots must be positive, got {self.shots}")
        total = sum(self.counts.values())
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots}")
        lengths = {len(key) for key in self.counts}
        if len(lengths) > 1:
            raise ValueError(f"inconsistent bitstring lengths {sorted(lengths)}")
        stray = {ch for key in self.counts for ch in key} - {"0", "1"}
        if stray:
            raise ValueError(f"bitstring keys may only contain 0 and 1, got {sorted(stray)}")

    def parity_mean(self) -> float:
        """Mean of (-1)**(sum of bits), the sigma^z product estimator."""
        acc = 0
        for key, cnt in self.counts.items():
            acc += cnt if key.count("1") % 2 == 0 else -cnt
        return acc / self.shots


def marginal_probabilities(state: np.ndarray, qubits: list[int]) -> np.ndarray:
    """Born probabilities of the listed qubits, other qubits traced out.

    Entry c of the result is the probability of outcome code c, where bit i
    of c is the value of qubits[i].
    """
    n = n_qubits(state)
    if not qubits:
        raise ValueError("need at least one measured qubit")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"measured qubits must be distinct, got {qubits}")
    for q in qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} outside 0..{n - 1}")
    probs = np.abs(state) ** 2
    grid = probs.reshape((2,) * n)  # axis a holds qubit n-1-a
    drop = tuple(n - 1 - q for q in range(n) if q not in set(qubits))
    kept = grid.sum(axis=drop) if drop else grid
    # remaining axes are qubits sorted descending; reorder so that the
    # flattened index has qubits[0] as its least significant bit
    desc = sorted(qubits, reverse=True)
    order = [desc.index(q) for q in reversed(qubits)]
    return np.transpose(kept, order).reshape(-1)


def _codes_to_counts(codes: np.ndarray, width: int, shots: int) -> ShotCounts:
    hist = np.bincount(codes, minlength=1 << width)
    counts = {format(code, f"0{width}b"): int(c) for code, c in enumerate(hist) if c}
    return ShotCounts(counts, shots)


def sample(state: np.ndarray, qubits: list[int], shots: int, seed: int) -> ShotCounts:
    """Draw i.i.d. standard-basis outcomes for the listed qubits.

    One uniform draw per shot (measurement stream of `seed`), inverted
    through the cumulative marginal distribution; a fixed seed gives
    identical counts on every call.
    """
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    probs = marginal_probabilities(state, qubits)
    draws = stream_rng(seed, STREAM_MEASURE).random(shots)
    cdf = np.cumsum(probs)
    codes = np.searchsorted(cdf, draws, side="right")
    np.clip(codes, 0, len(probs) - 1, out=codes)
    return _codes_to_counts(codes, len(qubits), shots)


def estimate_pauli_mean(
    circuit: Circuit,
    l: int,
    axis: str,
    shots: int,
    seed: int,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> float:
    """Shot-based <sigma^axis_l>: rotate, simulate once, sample qubit l."""
    rotated = measurement_circuit(circuit, [(l, axis)])
    state = run(rotated, max_qubits)
    return sample(state, [l], shots, seed).parity_mean()


def estimate_correlator(
    circuit: Circuit,
    l: int,
    m: int,
    axis_l: str,
    axis_m: str,
    shots: int,
    seed: int,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> float:
    """Shot-based <sigma^a_l sigma^b_m> via the two-bit parity estimator."""
    rotated = measurement_circuit(circuit, [(l, axis_l), (m, axis_m)])
    state = run(rotated, max_qubits)
    return sample(state, [l, m], shots, seed).parity_mean()


def gme_from_means(mx: float, my: float, mz: float) -> float:
    """Single-vertex entanglement from a Bloch vector, 0.5*(1 - |m|).

    Sampling noise can push |m| slightly past 1; the norm is clamped so the
    result stays in [0, 1/2].
    """
    norm = math.sqrt(mx * mx + my * my + mz * mz)
    return 0.5 * (1.0 - min(norm, 1.0))


def state_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2, insensitive to global phase."""
    return float(abs(np.vdot(a, b)) ** 2)
