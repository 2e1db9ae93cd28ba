"""Vertex- and edge-weighted graphs.

A graph here is the classical description of a one-layer variational state:
every vertex l carries an X-rotation angle phi_l and every edge (j, k) an
Ising coupling angle theta_jk.  Vertices are the integers 0..n-1.  Edges are
undirected, stored canonically as (min, max, theta), sorted, with no
self-loops and no duplicates.

Graphs are immutable; all mutating-looking helpers return new instances.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "WeightedGraph",
    "GraphParseError",
    "make_uniform",
    "star",
    "path_graph",
    "random_graph",
    "parse_graph",
    "serialize_graph",
    "load_graph",
    "save_graph",
]


class GraphParseError(ValueError):
    """Raised when a graph file is syntactically or semantically invalid."""


def _check_weight(value: float, what: str) -> float:
    try:
        w = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"{what} must be a real number, got {value!r}") from None
    if not math.isfinite(w):
        raise ValueError(f"{what} must be finite, got {w!r}")
    return w


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with per-vertex angles phi and per-edge angles theta."""

    n: int
    vertex_weights: tuple[float, ...]
    edges: tuple[tuple[int, int, float], ...]
    # vertex -> {neighbor: theta}, derived once at construction
    _adj: dict[int, dict[int, float]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        weights = tuple(_check_weight(w, "vertex weight") for w in self.vertex_weights)
        if len(weights) != self.n:
            raise ValueError(
                f"expected {self.n} vertex weights, got {len(weights)}"
            )
        adj: dict[int, dict[int, float]] = {v: {} for v in range(self.n)}
        canon = []
        for edge in self.edges:
            j, k, theta = edge
            if not (isinstance(j, int) and isinstance(k, int)):
                raise ValueError(f"edge endpoints must be integers, got {edge!r}")
            if not (0 <= j < self.n and 0 <= k < self.n):
                raise ValueError(f"edge {edge!r} has an endpoint outside 0..{self.n - 1}")
            if j == k:
                raise ValueError(f"self-loop on vertex {j} is not allowed")
            theta = _check_weight(theta, f"weight of edge ({j}, {k})")
            a, b = (j, k) if j < k else (k, j)
            if b in adj[a]:
                raise ValueError(f"duplicate edge ({a}, {b})")
            adj[a][b] = theta
            adj[b][a] = theta
            canon.append((a, b, theta))
        canon.sort()
        object.__setattr__(self, "vertex_weights", weights)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "_adj", adj)

    # -- queries ------------------------------------------------------------

    def check_vertex(self, l: int) -> int:
        if not isinstance(l, int) or not 0 <= l < self.n:
            raise ValueError(f"vertex {l!r} is outside 0..{self.n - 1}")
        return l

    def phi(self, l: int) -> float:
        return self.vertex_weights[self.check_vertex(l)]

    def neighborhood(self, l: int) -> tuple[int, ...]:
        """Open neighborhood of l, sorted ascending."""
        return tuple(sorted(self._adj[self.check_vertex(l)]))

    def closed_neighborhood(self, l: int) -> tuple[int, ...]:
        """Neighborhood of l including l itself, sorted ascending."""
        self.check_vertex(l)
        return tuple(sorted(set(self._adj[l]) | {l}))

    def common_neighbors(self, l: int, m: int) -> tuple[int, ...]:
        """Vertices adjacent to both l and m, sorted ascending."""
        self.check_vertex(l)
        self.check_vertex(m)
        return tuple(sorted(set(self._adj[l]) & set(self._adj[m])))

    def degree(self, l: int) -> int:
        return len(self._adj[self.check_vertex(l)])

    def has_edge(self, j: int, k: int) -> bool:
        self.check_vertex(j)
        self.check_vertex(k)
        return k in self._adj[j]

    def edge_weight(self, j: int, k: int) -> float:
        """Theta of edge (j, k); raises KeyError if the edge is absent."""
        self.check_vertex(j)
        self.check_vertex(k)
        try:
            return self._adj[j][k]
        except KeyError:
            raise KeyError(f"no edge ({j}, {k})") from None

    def adjacency(self, l: int) -> dict[int, float]:
        """Copy of l's neighbor -> theta map."""
        return dict(self._adj[self.check_vertex(l)])


# -- builders ----------------------------------------------------------------


def make_uniform(graph: WeightedGraph, phi: float, theta: float) -> WeightedGraph:
    """Same topology as `graph`, all vertex weights phi, all edge weights theta."""
    return WeightedGraph(
        graph.n,
        (float(phi),) * graph.n,
        tuple((j, k, float(theta)) for j, k, _ in graph.edges),
    )


def star(k: int, phi: float = 0.0, theta: float = 0.0) -> WeightedGraph:
    """Star with center 0 and leaves 1..k, uniform weights."""
    if k < 1:
        raise ValueError(f"a star needs at least one leaf, got k={k}")
    edges = tuple((0, leaf, float(theta)) for leaf in range(1, k + 1))
    return WeightedGraph(k + 1, (float(phi),) * (k + 1), edges)


def path_graph(n: int, phi: float = 0.0, theta: float = 0.0) -> WeightedGraph:
    """Path 0-1-...-(n-1), uniform weights."""
    edges = tuple((i, i + 1, float(theta)) for i in range(n - 1))
    return WeightedGraph(n, (float(phi),) * n, edges)


def random_graph(
    n: int,
    seed: int,
    edge_prob: float = 0.5,
    weight_range: tuple[float, float] = (0.0, math.pi),
) -> WeightedGraph:
    """Seeded random graph with weights drawn uniformly from `weight_range`.

    Draw order is fixed (vertex weights first, then each vertex pair in
    lexicographic order: one inclusion draw, then a weight draw if included),
    so a given (n, seed, edge_prob) always yields the same graph.
    """
    rng = np.random.default_rng(seed)
    lo, hi = weight_range
    phis = tuple(float(x) for x in rng.uniform(lo, hi, size=n))
    edges = []
    for j in range(n):
        for k in range(j + 1, n):
            if rng.random() < edge_prob:
                edges.append((j, k, float(rng.uniform(lo, hi))))
    return WeightedGraph(n, phis, tuple(edges))


# -- file format --------------------------------------------------------------
#
# {"n": 3, "vertex_weights": [0.1, 0.2, 0.3],
#  "edges": [{"j": 0, "k": 1, "theta": 1.5708}, {"j": 1, "k": 2}],
#  "theta": 0.7}
#
# "phi": x is shorthand for n copies of x; a top-level "theta" fills in edges
# that do not carry their own.


def parse_graph(text: str) -> WeightedGraph:
    """Parse the JSON graph format; raises GraphParseError on any defect."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GraphParseError("top level must be a JSON object")

    unknown = set(doc) - {"n", "vertex_weights", "phi", "edges", "theta"}
    if unknown:
        raise GraphParseError(f"unknown keys: {sorted(unknown)}")

    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GraphParseError(f'"n" must be a positive integer, got {n!r}')

    if "vertex_weights" in doc and "phi" in doc:
        raise GraphParseError('give either "vertex_weights" or "phi", not both')
    if "phi" in doc:
        phi = doc["phi"]
        if not isinstance(phi, (int, float)) or isinstance(phi, bool):
            raise GraphParseError(f'"phi" must be a number, got {phi!r}')
        weights = [float(phi)] * n
    elif "vertex_weights" in doc:
        weights = doc["vertex_weights"]
        if not isinstance(weights, list) or any(
            not isinstance(w, (int, float)) or isinstance(w, bool) for w in weights
        ):
            raise GraphParseError('"vertex_weights" must be a list of numbers')
        if len(weights) != n:
            raise GraphParseError(
                f'"vertex_weights" has {len(weights)} entries for n={n} (missing weight?)'
            )
    else:
        raise GraphParseError('missing vertex weights: give "vertex_weights" or "phi"')

    default_theta = doc.get("theta")
    if default_theta is not None and (
        not isinstance(default_theta, (int, float)) or isinstance(default_theta, bool)
    ):
        raise GraphParseError(f'top-level "theta" must be a number, got {default_theta!r}')

    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphParseError('"edges" must be a list')
    edges = []
    for entry in raw_edges:
        if not isinstance(entry, dict) or set(entry) - {"j", "k", "theta"}:
            raise GraphParseError(f"malformed edge entry {entry!r}")
        try:
            j, k = entry["j"], entry["k"]
        except KeyError as exc:
            raise GraphParseError(f"edge entry {entry!r} lacks {exc}") from None
        if not isinstance(j, int) or not isinstance(k, int) or isinstance(j, bool) or isinstance(k, bool):
            raise GraphParseError(f"edge endpoints must be integers in {entry!r}")
        theta = entry.get("theta", default_theta)
        if theta is None:
            raise GraphParseError(
                f"edge ({j}, {k}) has no theta and no top-level default is set"
            )
        if not isinstance(theta, (int, float)) or isinstance(theta, bool):
            raise GraphParseError(f"edge ({j}, {k}) theta must be a number, got {theta!r}")
        edges.append((j, k, float(theta)))

    try:
        return WeightedGraph(n, tuple(float(w) for w in weights), tuple(edges))
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


def serialize_graph(graph: WeightedGraph) -> str:
    """Canonical text form: explicit weights, sorted edges, LF line ends.

    parse_graph(serialize_graph(g)) == g, and serializing again reproduces
    the exact same bytes.
    """
    doc = {
        "n": graph.n,
        "vertex_weights": list(graph.vertex_weights),
        "edges": [{"j": j, "k": k, "theta": theta} for j, k, theta in graph.edges],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_graph(path: str) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(graph: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_graph(graph))
