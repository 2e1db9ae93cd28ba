"""Weighted graph states: closed forms, exact simulation, sampling, noise.

The object of study is the n-qubit state prepared by one X-rotation layer
(angle phi_i per vertex) followed by one commuting ZZ layer (angle theta_jk
per edge) on an arbitrary weighted graph.  The package provides

* graph:    the weighted-graph type, builders, and a JSON file format,
* analytic: exact O(degree) single-vertex means, entanglement, and
            two-point correlators straight from the weights,
* simcore:  a dense statevector simulator with shot sampling, the reference
            everything else is validated against,
* noise:    transpilation to {id, x, sx, rz, cnot} and Monte-Carlo
            trajectory noise with readout flips,
* sweep:    reproducible (phi, theta) grid sweeps with CSV/JSON emission,
* cli:      the `graphlab` command (analytic, sweep, k14, compare).
"""

__version__ = "0.1.0"

from .graph import (
    GraphParseError,
    WeightedGraph,
    load_graph,
    make_uniform,
    parse_graph,
    path_graph,
    random_graph,
    save_graph,
    serialize_graph,
    star,
)
from .analytic import (
    AXES,
    BlochVector,
    bloch_vector,
    correlator,
    correlator_uniform,
    gme,
    gme_star_center,
    gme_uniform,
    neighbor_factor,
    pauli_mean,
)
from .simcore import (
    DEFAULT_MAX_QUBITS,
    Circuit,
    Gate,
    ResourceLimitError,
    ShotCounts,
    apply_gate,
    build_graph_circuit,
    derive_seed,
    estimate_correlator,
    estimate_pauli_mean,
    expectation,
    gme_from_means,
    marginal_probabilities,
    measurement_circuit,
    run,
    sample,
    state_fidelity,
    stream_rng,
    zero_state,
)
from .noise import (
    BASIS_KINDS,
    DEFAULT_NOISE,
    NoiseModel,
    TrajectoryConfig,
    noisy_estimate_correlator,
    noisy_estimate_pauli_mean,
    noisy_sample,
    transpile,
)
from .sweep import (
    ALL_AXIS_PAIRS,
    SweepConfig,
    SweepResult,
    compare_columns,
    grid_points,
    linear_grid,
    read_table,
    run_sweep,
    summarize,
    worker_count,
    write_tables,
)

__all__ = [name for name in dir() if not name.startswith("_")]
