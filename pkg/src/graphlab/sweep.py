"""Parameter sweeps over uniform (phi, theta) grids, with file emission.

A sweep fixes a topology, overwrites all weights with a uniform (phi, theta)
per grid point, and tabulates requested quantities: the entanglement of one
vertex and/or two-point correlators of one vertex pair.  Each quantity gets
its own table with columns

    phi,theta,analytic,ideal,noisy,d_ideal,d_noisy

where `ideal` is the shot-based estimate on the exact state, `noisy` the
trajectory estimate on the transpiled circuit, and the d columns are
absolute deviations from `analytic`.  Unrequested cells stay empty (CSV) or
null (JSON).

Grid points are independent tasks; they can run across worker processes
(GRAPHLAB_THREADS caps the pool) and are merged back in grid order.  Every
estimator call receives a seed hashed from (master seed, point index,
quantity index, call slot), so results are byte-identical no matter how the
pool schedules the work.  Output files are reproducible except for one
timestamp metadata line that is explicitly marked as such.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .analytic import AXES, correlator, gme
from .graph import WeightedGraph
from .noise import NoiseModel, TrajectoryConfig, noisy_estimate_correlator, noisy_estimate_pauli_mean
from .simcore import (
    DEFAULT_MAX_QUBITS,
    ResourceLimitError,
    build_graph_circuit,
    derive_seed,
    estimate_correlator,
    estimate_pauli_mean,
    gme_from_means,
)

__all__ = [
    "SweepConfig",
    "SweepResult",
    "Row",
    "grid_points",
    "run_sweep",
    "worker_count",
    "write_tables",
    "read_table",
    "compare_columns",
    "COLUMNS",
    "ALL_AXIS_PAIRS",
]

COLUMNS = ("phi", "theta", "analytic", "ideal", "noisy", "d_ideal", "d_noisy")
ALL_AXIS_PAIRS = tuple(a + b for a in AXES for b in AXES)


@dataclass(frozen=True)
class Row:
    phi: float
    theta: float
    analytic: float
    ideal: float | None = None
    noisy: float | None = None

    @property
    def d_ideal(self) -> float | None:
        return None if self.ideal is None else abs(self.analytic - self.ideal)

    @property
    def d_noisy(self) -> float | None:
        return None if self.noisy is None else abs(self.analytic - self.noisy)


@dataclass(frozen=True)
class SweepConfig:
    """What to sweep; see run_sweep."""

    graph: WeightedGraph  # topology only; weights are overwritten per point
    graph_label: str
    phis: tuple[float, ...]
    thetas: tuple[float, ...]
    vertex: int | None = None
    pair: tuple[int, int] | None = None
    axes: tuple[str, ...] = ()
    shots: int | None = None
    seed: int = 0
    noise: NoiseModel | None = None
    max_qubits: int = DEFAULT_MAX_QUBITS
    workers: int | None = None  # None: one per cpu, capped by GRAPHLAB_THREADS

    def __post_init__(self) -> None:
        if not self.phis or not self.thetas:
            raise ValueError("phi and theta grids must be non-empty")
        if self.vertex is None and self.pair is None:
            raise ValueError("nothing to sweep: give a vertex and/or a pair")
        if self.vertex is not None:
            self.graph.check_vertex(self.vertex)
        if self.pair is not None:
            l, m = self.pair
            self.graph.check_vertex(l)
            self.graph.check_vertex(m)
            if l == m:
                raise ValueError(f"pair needs two distinct vertices, got {l} twice")
            if not self.axes:
                raise ValueError("a pair sweep needs at least one axis pair")
        for ab in self.axes:
            if ab not in ALL_AXIS_PAIRS:
                raise ValueError(f"bad axis pair {ab!r}; use e.g. xx, xy, zz")
        if self.axes and self.pair is None:
            raise ValueError("--axes given without a pair")
        if self.shots is not None and self.shots < 1:
            raise ValueError(f"shots must be positive, got {self.shots}")
        if self.noise is not None and self.shots is None:
            raise ValueError("noisy estimation needs a shot count")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")

    def quantities(self) -> tuple[tuple, ...]:
        out: list[tuple] = []
        if self.vertex is not None:
            out.append(("gme", self.vertex))
        if self.pair is not None:
            l, m = self.pair
            out.extend(("corr", l, m, ab[0], ab[1]) for ab in self.axes)
        return tuple(out)


def quantity_name(quantity: tuple) -> str:
    if quantity[0] == "gme":
        return f"gme_v{quantity[1]}"
    _, l, m, a, b = quantity
    return f"corr_{l}_{m}_{a}{b}"


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    tables: dict[str, tuple[Row, ...]] = field(compare=False)

    def names(self) -> tuple[str, ...]:
        return tuple(self.tables)


def grid_points(phis, thetas) -> list[tuple[float, float]]:
    """Row-major grid, phi as the outer loop."""
    return [(phi, theta) for phi in phis for theta in thetas]


def linear_grid(start: float, stop: float, count: int) -> tuple[float, ...]:
    if count < 1:
        raise ValueError(f"grid needs at least one point, got {count}")
    if count == 1:
        return (float(start),)
    step = (stop - start) / (count - 1)
    return tuple(float(start + i * step) for i in range(count))


# slots for per-call seed derivation within one (point, quantity) cell
_SLOT_IDEAL = 0
_SLOT_NOISY = 8


def _point_task(task: tuple) -> tuple[int, list[tuple]]:
    """Evaluate all requested quantities at one grid point.

    Runs in worker processes; everything in `task` is picklable primitives.
    """
    (index, phi, theta, n, edge_pairs, quantities, shots, seed, noise_probs, max_qubits) = task
    g = WeightedGraph(n, (phi,) * n, tuple((j, k, theta) for j, k in edge_pairs))
    circuit = build_graph_circuit(g)
    noise = NoiseModel(*noise_probs) if noise_probs is not None else None

    values = []
    for qi, quantity in enumerate(quantities):
        ideal = noisy = None
        if quantity[0] == "gme":
            vertex = quantity[1]
            exact = gme(g, vertex)
            if shots is not None:
                means = [
                    estimate_pauli_mean(
                        circuit, vertex, axis, shots,
                        derive_seed(seed, index, qi, _SLOT_IDEAL + slot), max_qubits,
                    )
                    for slot, axis in enumerate(AXES)
                ]
                ideal = gme_from_means(*means)
            if noise is not None:
                means = [
                    noisy_estimate_pauli_mean(
                        circuit, noise, vertex, axis,
                        TrajectoryConfig(shots, derive_seed(seed, index, qi, _SLOT_NOISY + slot)),
                        max_qubits,
                    )
                    for slot, axis in enumerate(AXES)
                ]
                noisy = gme_from_means(*means)
        else:
            _, l, m, a, b = quantity
            exact = correlator(g, l, m, a, b)
            if shots is not None:
                ideal = estimate_correlator(
                    circuit, l, m, a, b, shots,
                    derive_seed(seed, index, qi, _SLOT_IDEAL), max_qubits,
                )
            if noise is not None:
                noisy = noisy_estimate_correlator(
                    circuit, noise, l, m, a, b,
                    TrajectoryConfig(shots, derive_seed(seed, index, qi, _SLOT_NOISY)),
                    max_qubits,
                )
        values.append((exact, ideal, noisy))
    return index, values


def worker_count(requested: int | None) -> int:
    """Requested (or cpu count) capped by the GRAPHLAB_THREADS env var."""
    available = os.cpu_count() or 1
    cap = os.environ.get("GRAPHLAB_THREADS")
    if cap is not None:
        try:
            cap_value = int(cap)
        except ValueError:
            raise ValueError(f"GRAPHLAB_THREADS must be an integer, got {cap!r}") from None
        if cap_value < 1:
            raise ValueError(f"GRAPHLAB_THREADS must be >= 1, got {cap_value}")
    else:
        cap_value = available
    return max(1, min(requested or available, cap_value))


def run_sweep(cfg: SweepConfig) -> SweepResult:
    # fail fast in the parent instead of from inside the pool
    if cfg.shots is not None and cfg.graph.n > cfg.max_qubits:
        raise ResourceLimitError(
            f"{cfg.graph.n} qubits exceeds the configured maximum of {cfg.max_qubits}"
        )
    quantities = cfg.quantities()
    edge_pairs = tuple((j, k) for j, k, _ in cfg.graph.edges)
    noise_probs = (
        (cfg.noise.readout_flip, cfg.noise.err_1q, cfg.noise.err_2q)
        if cfg.noise is not None
        else None
    )
    points = grid_points(cfg.phis, cfg.thetas)
    tasks = [
        (i, phi, theta, cfg.graph.n, edge_pairs, quantities, cfg.shots, cfg.seed,
         noise_probs, cfg.max_qubits)
        for i, (phi, theta) in enumerate(points)
    ]

    workers = worker_count(cfg.workers)
    if workers == 1 or len(tasks) < 4:
        results = [_point_task(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_point_task, tasks, chunksize=chunk))
    results.sort(key=lambda item: item[0])

    tables: dict[str, tuple[Row, ...]] = {}
    for qi, quantity in enumerate(quantities):
        rows = []
        for (index, values), (phi, theta) in zip(results, points):
            exact, ideal, noisy = values[qi]
            rows.append(Row(phi, theta, exact, ideal, noisy))
        tables[quantity_name(quantity)] = tuple(rows)
    return SweepResult(cfg, tables)


# -- file emission ---------------------------------------------------------------


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def _grid_label(values: tuple[float, ...]) -> str:
    return f"{values[0]!r}:{values[-1]!r}:{len(values)}"


def _meta_lines(cfg: SweepConfig, name: str) -> list[tuple[str, str]]:
    noise = (
        f"readout={cfg.noise.readout_flip!r},err1q={cfg.noise.err_1q!r},err2q={cfg.noise.err_2q!r}"
        if cfg.noise is not None
        else "none"
    )
    return [
        ("table", name),
        ("graph", cfg.graph_label),
        ("phi", _grid_label(cfg.phis)),
        ("theta", _grid_label(cfg.thetas)),
        ("shots", str(cfg.shots) if cfg.shots is not None else "none"),
        ("seed", str(cfg.seed)),
        ("noise", noise),
        ("package", f"graphlab {__version__}"),
        # the one non-reproducible line in any emitted file
        ("timestamp", datetime.now(timezone.utc).isoformat(timespec="seconds")),
    ]


def _csv_text(cfg: SweepConfig, name: str, rows, columns) -> str:
    buf = io.StringIO()
    for key, value in _meta_lines(cfg, name):
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(getattr(row, col)) for col in columns])
    return buf.getvalue()


def _json_text(cfg: SweepConfig, name: str, rows, columns) -> str:
    doc = {
        "meta": {key: value for key, value in _meta_lines(cfg, name)},
        "columns": list(columns),
        "rows": [[getattr(row, col) for col in columns] for row in rows],
    }
    return json.dumps(doc, indent=1) + "\n"


_DIFF_COLUMNS = ("phi", "theta", "d_ideal", "d_noisy")


def write_tables(result: SweepResult, out_dir: str, prefix: str, fmt: str = "csv") -> list[str]:
    """Write one value table and one difference table per quantity.

    fmt is csv, json, or both.  Returns the written paths.  Difference
    tables carry only the d columns and exist to make deviation surfaces
    directly plottable.
    """
    if fmt not in ("csv", "json", "both"):
        raise ValueError(f"format must be csv, json or both, got {fmt!r}")
    os.makedirs(out_dir, exist_ok=True)
    cfg = result.config
    written = []
    for name, rows in result.tables.items():
        for kind, columns in (("", COLUMNS), ("_diff", _DIFF_COLUMNS)):
            base = f"{prefix}_{name}{kind}"
            if fmt in ("csv", "both"):
                path = os.path.join(out_dir, base + ".csv")
                with open(path, "w", encoding="utf-8", newline="\n") as fh:
                    fh.write(_csv_text(cfg, base, rows, columns))
                written.append(path)
            if fmt in ("json", "both"):
                path = os.path.join(out_dir, base + ".json")
                with open(path, "w", encoding="utf-8", newline="\n") as fh:
                    fh.write(_json_text(cfg, base, rows, columns))
                written.append(path)
    return written


def summarize(result: SweepResult) -> list[str]:
    """One line per table with its maximum deviations."""
    lines = []
    for name, rows in result.tables.items():
        parts = [name]
        d_ideal = [row.d_ideal for row in rows if row.d_ideal is not None]
        d_noisy = [row.d_noisy for row in rows if row.d_noisy is not None]
        if d_ideal:
            parts.append(f"max_d_ideal={max(d_ideal):.6f}")
        if d_noisy:
            parts.append(f"max_d_noisy={max(d_noisy):.6f}")
        if len(parts) == 1:
            parts.append("analytic only")
        lines.append("  ".join(parts))
    return lines


# -- reading and comparing ---------------------------------------------------------


def read_table(path: str) -> tuple[dict[str, str], list[str], list[list[float | None]]]:
    """Read a CSV or JSON table back: (meta, columns, rows)."""
    if path.endswith(".json"):
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return dict(doc["meta"]), list(doc["columns"]), [list(r) for r in doc["rows"]]
    meta: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    body = []
    for line in lines:
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = value
        elif line:
            body.append(line)
    if not body:
        raise ValueError(f"{path} has no table body")
    reader = csv.reader(body)
    columns = next(reader)
    rows = [[float(cell) if cell else None for cell in record] for record in reader]
    return meta, columns, rows


def compare_columns(
    table_a: tuple[dict, list, list],
    table_b: tuple[dict, list, list],
    col_a: str,
    col_b: str,
) -> list[tuple[float, float, float]]:
    """Per grid point |a - b|; the two tables must share the exact grid."""
    _, cols_a, rows_a = table_a
    _, cols_b, rows_b = table_b
    for cols, col, tag in ((cols_a, col_a, "first"), (cols_b, col_b, "second")):
        if col not in cols:
            raise ValueError(f"{tag} table has no column {col!r}")
    if len(rows_a) != len(rows_b):
        raise ValueError(f"grids differ: {len(rows_a)} vs {len(rows_b)} points")
    ia, ib = cols_a.index(col_a), cols_b.index(col_b)
    pa, ta = cols_a.index("phi"), cols_a.index("theta")
    pb, tb = cols_b.index("phi"), cols_b.index("theta")
    out = []
    for ra, rb in zip(rows_a, rows_b):
        if ra[pa] != rb[pb] or ra[ta] != rb[tb]:
            raise ValueError(
                f"grids differ at ({ra[pa]}, {ra[ta]}) vs ({rb[pb]}, {rb[tb]})"
            )
        va, vb = ra[ia], rb[ib]
        if va is None or vb is None:
            raise ValueError(f"empty cell in column {col_a!r}/{col_b!r} at ({ra[pa]}, {ra[ta]})")
        out.append((ra[pa], ra[ta], abs(va - vb)))
    return out
