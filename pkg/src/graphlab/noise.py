"""Basis-gate transpilation and Monte-Carlo trajectory noise.

The hardware-facing gate set is {id, x, sx, rz, cnot}.  A ZZ rotation
becomes cnot - rz - cnot exactly; RX and RY become five-gate
rz - sx - rz - sx - rz sequences whose angles are checked numerically
against the exact 2x2 matrices when this module is imported, so a wrong
decomposition can never ship silently.

Noise is simulated shot by shot: after every x or sx a uniformly chosen
Pauli error lands on that qubit with probability err_1q, after every cnot a
uniformly chosen non-identity two-qubit Pauli with probability err_2q, and
each measured bit flips independently with probability readout_flip.
rz and id are treated as error-free (virtual / idle).

Implementation of the sampler: error placements are drawn first for all
shots, shots are grouped by their (usually empty) error pattern, and one
statevector is evolved per distinct pattern.  That is statistically the
same as replaying the circuit per shot, but the overwhelmingly common
error-free trajectory is simulated exactly once.  Zero-probability channels
draw no randomness at all, which is what makes a zero-noise run reproduce
the ideal estimators bit for bit under the shared seed contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .simcore import (
    DEFAULT_MAX_QUBITS,
    STREAM_ERRORS,
    STREAM_MEASURE,
    STREAM_READOUT,
    Circuit,
    Gate,
    ResourceLimitError,
    ShotCounts,
    _codes_to_counts,
    apply_gate,
    apply_pauli,
    marginal_probabilities,
    measurement_circuit,
    stream_rng,
    zero_state,
)

__all__ = [
    "BASIS_KINDS",
    "NoiseModel",
    "DEFAULT_NOISE",
    "TrajectoryConfig",
    "transpile",
    "noisy_sample",
    "noisy_estimate_pauli_mean",
    "noisy_estimate_correlator",
]

BASIS_KINDS = frozenset({"id", "x", "sx", "rz", "cnot"})

# cap on the prefix-state cache used to restart error trajectories mid-circuit
_PREFIX_CACHE_BYTES = 1 << 26


@dataclass(frozen=True)
class NoiseModel:
    """Per-event error probabilities; all zero means ideal hardware."""

    readout_flip: float
    err_1q: float
    err_2q: float

    def __post_init__(self) -> None:
        for name in ("readout_flip", "err_1q", "err_2q"):
            p = getattr(self, name)
            if not isinstance(p, (int, float)) or not 0.0 <= float(p) <= 1.0:
                raise ValueError(f"{name} must be a probability in [0, 1], got {p!r}")

    def is_zero(self) -> bool:
        return self.readout_flip == 0.0 and self.err_1q == 0.0 and self.err_2q == 0.0


# magnitudes typical of current superconducting devices
DEFAULT_NOISE = NoiseModel(readout_flip=1e-2, err_1q=1e-4, err_2q=1e-2)


@dataclass(frozen=True)
class TrajectoryConfig:
    shots: int
    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.shots, int) or self.shots < 1:
            raise ValueError(f"shots must be a positive integer, got {self.shots!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")


# -- transpilation -------------------------------------------------------------


def _zsxz_gates(q: int, theta: float, phi: float, lam: float) -> list[Gate]:
    # generic one-qubit rotation as rz(lam), sx, rz(theta+pi), sx, rz(phi+pi),
    # listed in time order; equals the target up to global phase
    return [
        Gate.rz(q, lam),
        Gate.sx(q),
        Gate.rz(q, theta + math.pi),
        Gate.sx(q),
        Gate.rz(q, phi + math.pi),
    ]


def _decompose(gate: Gate) -> list[Gate]:
    if gate.kind in BASIS_KINDS:
        return [gate]
    if gate.kind == "rx":
        return _zsxz_gates(gate.qubits[0], gate.angle, -math.pi / 2, math.pi / 2)
    if gate.kind == "ry":
        return _zsxz_gates(gate.qubits[0], gate.angle, 0.0, 0.0)
    if gate.kind == "rzz":
        j, k = gate.qubits
        return [Gate.cnot(j, k), Gate.rz(k, gate.angle), Gate.cnot(j, k)]
    raise ValueError(f"no decomposition for gate kind {gate.kind!r}")


def transpile(circuit: Circuit) -> Circuit:
    """Rewrite a circuit over {id, x, sx, rz, cnot}; basis gates pass through."""
    gates: list[Gate] = []
    for gate in circuit.gates:
        gates.extend(_decompose(gate))
    return Circuit(circuit.n, tuple(gates))


def _gate_matrix_2x2(gate: Gate) -> np.ndarray:
    if gate.kind == "rz":
        return np.array([[np.exp(-0.5j * gate.angle), 0], [0, np.exp(0.5j * gate.angle)]])
    if gate.kind == "sx":
        return 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
    raise ValueError(gate.kind)


def _equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    idx = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(b[idx]) < 1e-15:
        return False
    phase = a[idx] / b[idx]
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def _verify_decompositions() -> None:
    """Check the rz/sx sequences against exact RX/RY matrices; abort on drift."""
    angles = [0.0, 1e-3, math.pi / 7, math.pi / 2, 1.234, 2.0, math.pi, -2.2, -math.pi / 3]
    for angle in angles:
        c, s = math.cos(angle / 2), math.sin(angle / 2)
        targets = {
            "rx": np.array([[c, -1j * s], [-1j * s, c]]),
            "ry": np.array([[c, -s], [s, c]], dtype=complex),
        }
        for kind, target in targets.items():
            seq = _decompose(Gate(kind, (0,), angle))
            mat = np.eye(2, dtype=complex)
            for gate in seq:
                mat = _gate_matrix_2x2(gate) @ mat
            if not _equal_up_to_phase(target, mat, 1e-12):
                raise RuntimeError(
                    f"basis decomposition of {kind}({angle}) does not match its matrix"
                )


_verify_decompositions()


# -- trajectory sampling -------------------------------------------------------

_PAULI_NAMES = ("x", "y", "z")


def _require_basis(circuit: Circuit) -> None:
    for gate in circuit.gates:
        if gate.kind not in BASIS_KINDS:
            raise ValueError(
                f"gate kind {gate.kind!r} is not in the basis set; transpile first"
            )


def _apply_error(state: np.ndarray, gate: Gate, code: int) -> None:
    if gate.kind == "cnot":
        # code 0..14 maps to the 15 non-identity Pauli pairs
        a, b = divmod(code + 1, 4)
        if a:
            apply_pauli(state, gate.qubits[0], _PAULI_NAMES[a - 1])
        if b:
            apply_pauli(state, gate.qubits[1], _PAULI_NAMES[b - 1])
    else:
        apply_pauli(state, gate.qubits[0], _PAULI_NAMES[code])


def _draw_error_events(
    circuit: Circuit, noise: NoiseModel, shots: int, seed: int
) -> dict[tuple[tuple[int, int], ...], np.ndarray]:
    """Group shot indices by their error pattern ((gate_index, code), ...).

    Per shot and per noisy gate the error is an independent Bernoulli draw;
    sampling a binomial count per location and then placing the hits on a
    uniform subset of shots realizes exactly that law.  Locations with zero
    probability are skipped without consuming randomness.
    """
    rng = stream_rng(seed, STREAM_ERRORS)
    by_shot: dict[int, list[tuple[int, int]]] = {}
    for idx, gate in enumerate(circuit.gates):
        if gate.kind in ("x", "sx"):
            p, n_choices = noise.err_1q, 3
        elif gate.kind == "cnot":
            p, n_choices = noise.err_2q, 15
        else:
            continue
        if p == 0.0:
            continue
        hits = int(rng.binomial(shots, p))
        if hits == 0:
            continue
        where = rng.choice(shots, size=hits, replace=False)
        codes = rng.integers(0, n_choices, size=hits)
        for shot, code in zip(where.tolist(), codes.tolist()):
            by_shot.setdefault(shot, []).append((idx, int(code)))
    grouped: dict[tuple[tuple[int, int], ...], list[int]] = {}
    for shot, events in by_shot.items():
        grouped.setdefault(tuple(events), []).append(shot)
    return {
        pattern: np.array(sorted(shot_list), dtype=np.int64)
        for pattern, shot_list in grouped.items()
    }


def noisy_sample(
    circuit: Circuit,
    noise: NoiseModel,
    targets: list[int],
    cfg: TrajectoryConfig,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> ShotCounts:
    """Measure `targets` of a basis circuit under the trajectory noise model.

    Deterministic for a fixed cfg.seed.  One uniform draw per shot decides
    its measurement outcome (shared measurement stream), so with all rates
    zero the counts coincide with simcore.sample on the ideal state.
    """
    _require_basis(circuit)
    if circuit.n > max_qubits:
        raise ResourceLimitError(
            f"{circuit.n} qubits exceeds the configured maximum of {max_qubits}"
        )
    if not targets:
        raise ValueError("need at least one measured qubit")

    shots, seed = cfg.shots, cfg.seed
    gates = circuit.gates

    # prefix[i] = state after the first i gates, kept only while affordable;
    # error trajectories restart from the deepest prefix before their first error
    dim = 1 << circuit.n
    keep_prefixes = 16 * dim * (len(gates) + 1) <= _PREFIX_CACHE_BYTES
    prefixes: list[np.ndarray] = []
    state = zero_state(circuit.n)
    if keep_prefixes:
        prefixes.append(state.copy())
    for gate in gates:
        apply_gate(state, gate)
        if keep_prefixes:
            prefixes.append(state.copy())
    clean_cdf = np.cumsum(marginal_probabilities(state, targets))

    patterns = _draw_error_events(circuit, noise, shots, seed)

    draws = stream_rng(seed, STREAM_MEASURE).random(shots)
    codes = np.empty(shots, dtype=np.int64)
    noisy_shots_mask = np.zeros(shots, dtype=bool)

    for pattern in sorted(patterns):
        shot_ids = patterns[pattern]
        noisy_shots_mask[shot_ids] = True
        first_idx = pattern[0][0]
        if keep_prefixes:
            traj = prefixes[first_idx + 1].copy()
        else:
            traj = zero_state(circuit.n)
            for gate in gates[: first_idx + 1]:
                apply_gate(traj, gate)
        pending = list(pattern)
        while pending and pending[0][0] == first_idx:
            _apply_error(traj, gates[first_idx], pending.pop(0)[1])
        cursor = first_idx + 1
        for idx, code in pending:
            for gate in gates[cursor : idx + 1]:
                apply_gate(traj, gate)
            cursor = idx + 1
            _apply_error(traj, gates[idx], code)
        for gate in gates[cursor:]:
            apply_gate(traj, gate)
        cdf = np.cumsum(marginal_probabilities(traj, targets))
        codes[shot_ids] = np.searchsorted(cdf, draws[shot_ids], side="right")

    clean_ids = np.nonzero(~noisy_shots_mask)[0]
    codes[clean_ids] = np.searchsorted(clean_cdf, draws[clean_ids], side="right")
    np.clip(codes, 0, (1 << len(targets)) - 1, out=codes)

    if noise.readout_flip > 0.0:
        flips = stream_rng(seed, STREAM_READOUT).random((shots, len(targets)))
        flip_bits = (flips < noise.readout_flip).astype(np.int64)
        for bit in range(len(targets)):
            codes ^= flip_bits[:, bit] << bit

    return _codes_to_counts(codes, len(targets), shots)


def _noisy_parity(
    circuit: Circuit,
    noise: NoiseModel,
    targets: list[tuple[int, str]],
    cfg: TrajectoryConfig,
    max_qubits: int,
) -> float:
    rotations = measurement_circuit(Circuit(circuit.n, ()), targets)
    full = transpile(circuit).extended(transpile(rotations))
    counts = noisy_sample(full, noise, [v for v, _ in targets], cfg, max_qubits)
    return counts.parity_mean()


def noisy_estimate_pauli_mean(
    circuit: Circuit,
    noise: NoiseModel,
    l: int,
    axis: str,
    cfg: TrajectoryConfig,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> float:
    """Trajectory estimate of <sigma^axis_l>; rotations are transpiled too."""
    return _noisy_parity(circuit, noise, [(l, axis)], cfg, max_qubits)


def noisy_estimate_correlator(
    circuit: Circuit,
    noise: NoiseModel,
    l: int,
    m: int,
    axis_l: str,
    axis_m: str,
    cfg: TrajectoryConfig,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> float:
    """Trajectory estimate of <sigma^a_l sigma^b_m>."""
    return _noisy_parity(circuit, noise, [(l, axis_l), (m, axis_m)], cfg, max_qubits)
