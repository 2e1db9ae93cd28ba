"""The graphlab command line.

Subcommands:

* analytic: closed-form Bloch vector, entanglement, and correlators for one
  weighted graph (from a file or a built-in uniform star).
* sweep:    tabulate those quantities over a uniform (phi, theta) grid,
  optionally with shot-based and noisy estimates, written to CSV/JSON.
* k14:      the preset four-leaf-star experiment: hub entanglement plus all
  nine (0,1) correlators on a 21x21 grid with sampled and noisy estimates.
* compare:  per-point absolute difference between two emitted tables.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 resource limit.
"""

from __future__ import annotations

import argparse
import math
import sys

from .analytic import bloch_vector, correlator, gme
from .graph import GraphParseError, WeightedGraph, load_graph, make_uniform, star
from .noise import DEFAULT_NOISE, NoiseModel
from .simcore import DEFAULT_MAX_QUBITS, ResourceLimitError
from .sweep import (
    ALL_AXIS_PAIRS,
    SweepConfig,
    compare_columns,
    linear_grid,
    read_table,
    run_sweep,
    summarize,
    write_tables,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_RESOURCE = 4


# -- argument parsing helpers -------------------------------------------------


def _parse_grid(text: str) -> tuple[float, ...]:
    """start:stop:points with inclusive endpoints, e.g. 0:3.14159:21"""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:points, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"expected start:stop:points, got {text!r}") from None
    return linear_grid(start, stop, count)


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected L,M, got {text!r}")
    return int(parts[0]), int(parts[1])


def _parse_axes(text: str) -> tuple[str, ...]:
    if text == "all":
        return ALL_AXIS_PAIRS
    axes = tuple(token.strip() for token in text.split(",") if token.strip())
    for ab in axes:
        if ab not in ALL_AXIS_PAIRS:
            raise ValueError(f"bad axis pair {ab!r}; use two of x,y,z e.g. xy")
    if not axes:
        raise ValueError("empty axis list")
    return axes


def _parse_noise(text: str) -> NoiseModel | None:
    if text == "none":
        return None
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected readout,err1q,err2q, got {text!r}")
    return NoiseModel(float(parts[0]), float(parts[1]), float(parts[2]))


def _parse_uniform(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected PHI,THETA, got {text!r}")
    return float(parts[0]), float(parts[1])


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE", help="graph description file")
    src.add_argument("--star", type=int, metavar="K", help="built-in star with K leaves")


def _add_common_sweep_args(
    p: argparse.ArgumentParser,
    shots_default: int | None,
    noise_default: NoiseModel | None = None,
) -> None:
    p.add_argument("--phi", type=_parse_grid, default=None, metavar="A:B:N",
                   help="phi grid start:stop:points (radians)")
    p.add_argument("--theta", type=_parse_grid, default=None, metavar="A:B:N",
                   help="theta grid start:stop:points (radians)")
    p.add_argument("--shots", type=int, default=shots_default,
                   help="shots per estimator; omit for analytic-only")
    p.add_argument("--seed", type=int, default=7, help="master seed (default 7)")
    p.add_argument("--noise", type=_parse_noise, default=noise_default, metavar="R,E1,E2",
                   help="readout,err1q,err2q probabilities, or 'none'")
    p.add_argument("--out", default=None, metavar="DIR", help="output directory")
    p.add_argument("--format", choices=("csv", "json", "both"), default="csv")
    p.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: one per cpu, capped by GRAPHLAB_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphlab",
        description="weighted graph states: closed forms, sampling, noisy trajectories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="closed-form values for one graph")
    _add_graph_source(p)
    p.add_argument("--uniform", type=_parse_uniform, default=None, metavar="PHI,THETA",
                   help="override all weights (required with --star)")
    p.add_argument("--vertex", type=int, default=None, metavar="L")
    p.add_argument("--pair", type=_parse_pair, default=None, metavar="L,M")
    p.add_argument("--axes", type=_parse_axes, default=ALL_AXIS_PAIRS, metavar="LIST",
                   help="comma-separated axis pairs or 'all' (default)")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("sweep", help="tabulate quantities over a (phi, theta) grid")
    _add_graph_source(p)
    p.add_argument("--vertex", type=int, default=None, metavar="L",
                   help="tabulate this vertex's entanglement")
    p.add_argument("--pair", type=_parse_pair, default=None, metavar="L,M",
                   help="tabulate correlators of this pair")
    p.add_argument("--axes", type=_parse_axes, default=None, metavar="LIST",
                   help="axis pairs for --pair (default: all nine)")
    _add_common_sweep_args(p, shots_default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("k14", help="four-leaf star preset: hub gme + all (0,1) correlators")
    _add_common_sweep_args(p, shots_default=10_000, noise_default=DEFAULT_NOISE)
    p.set_defaults(func=cmd_k14)

    p = sub.add_parser("compare", help="per-point |a-b| between two emitted tables")
    p.add_argument("table_a")
    p.add_argument("table_b")
    p.add_argument("--col-a", default="analytic", choices=("analytic", "ideal", "noisy"))
    p.add_argument("--col-b", default="analytic", choices=("analytic", "ideal", "noisy"))
    p.add_argument("--out", default=None, metavar="FILE", help="write the difference table here")
    p.set_defaults(func=cmd_compare)

    return parser


# -- commands -------------------------------------------------------------------


def _load_source(args) -> tuple[WeightedGraph, str]:
    if args.graph is not None:
        g = load_graph(args.graph)
        return g, f"file:{args.graph}"
    g = star(args.star)
    return g, f"star({args.star})"


def cmd_analytic(args) -> int:
    g, label = _load_source(args)
    if args.graph is None and args.uniform is None:
        raise ValueError("--star needs --uniform PHI,THETA to fix the weights")
    if args.uniform is not None:
        g = make_uniform(g, *args.uniform)
        label += f" uniform({args.uniform[0]!r},{args.uniform[1]!r})"
    if args.vertex is None and args.pair is None:
        raise ValueError("nothing to compute: give --vertex and/or --pair")
    print(f"graph: {label}  n={g.n}  edges={len(g.edges)}")
    if args.vertex is not None:
        mx, my, mz = bloch_vector(g, args.vertex)
        print(f"vertex {args.vertex}: mx={mx!r} my={my!r} mz={mz!r}")
        print(f"vertex {args.vertex}: gme={gme(g, args.vertex)!r}")
    if args.pair is not None:
        l, m = args.pair
        for ab in args.axes:
            value = correlator(g, l, m, ab[0], ab[1])
            print(f"pair ({l},{m}) {ab}: {value!r}")
    return EXIT_OK


_PI_GRID_21 = linear_grid(0.0, math.pi, 21)


def _run_and_write(cfg: SweepConfig, out_dir: str, prefix: str, fmt: str) -> int:
    result = run_sweep(cfg)
    paths = write_tables(result, out_dir, prefix, fmt)
    for line in summarize(result):
        print(line)
    print(f"wrote {len(paths)} files to {out_dir}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    g, label = _load_source(args)
    axes = args.axes
    if args.pair is not None and axes is None:
        axes = ALL_AXIS_PAIRS
    cfg = SweepConfig(
        graph=g,
        graph_label=label,
        phis=args.phi if args.phi is not None else _PI_GRID_21,
        thetas=args.theta if args.theta is not None else _PI_GRID_21,
        vertex=args.vertex,
        pair=args.pair,
        axes=axes or (),
        shots=args.shots,
        seed=args.seed,
        noise=args.noise,
        max_qubits=args.max_qubits,
        workers=args.workers,
    )
    return _run_and_write(cfg, args.out or "sweep_out", "sweep", args.format)


def cmd_k14(args) -> int:
    if args.shots is None:
        raise ValueError("k14 needs a shot count")
    cfg = SweepConfig(
        graph=star(4),
        graph_label="star(4)",
        phis=args.phi if args.phi is not None else _PI_GRID_21,
        thetas=args.theta if args.theta is not None else _PI_GRID_21,
        vertex=0,
        pair=(0, 1),
        axes=ALL_AXIS_PAIRS,
        shots=args.shots,
        seed=args.seed,
        noise=args.noise,
        max_qubits=args.max_qubits,
        workers=args.workers,
    )
    return _run_and_write(cfg, args.out or "k14_out", "k14", args.format)


def cmd_compare(args) -> int:
    table_a = read_table(args.table_a)
    table_b = read_table(args.table_b)
    diffs = compare_columns(table_a, table_b, args.col_a, args.col_b)
    values = [d for _, _, d in diffs]
    print(
        f"compare {args.table_a}[{args.col_a}] vs {args.table_b}[{args.col_b}]: "
        f"points={len(values)} max={max(values)!r} mean={sum(values) / len(values)!r}"
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# a: {args.table_a}[{args.col_a}]\n")
            fh.write(f"# b: {args.table_b}[{args.col_b}]\n")
            fh.write("phi,theta,diff\n")
            for phi, theta, d in diffs:
                fh.write(f"{phi!r},{theta!r},{d!r}\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed its message; --help exits 0
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GraphParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
