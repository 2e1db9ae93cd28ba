"""Build, query, and serialize vertex/edge-weighted graphs.

Vertices carry an RX angle phi, edges an RZZ angle theta.  The container
canonicalizes edges (j < k, sorted) so equality and serialization are
stable regardless of input order.
"""

import math

from graphlab import (
    WeightedGraph,
    make_uniform,
    parse_graph,
    path_graph,
    random_graph,
    serialize_graph,
    star,
)


def main() -> None:
    # explicit construction: 4 vertices, a triangle plus a pendant
    g = WeightedGraph(
        4,
        vertex_weights=(0.3, 0.6, 0.9, 1.2),
        edges=((0, 1, 0.5), (1, 2, 0.7), (0, 2, 0.9), (2, 3, 1.1)),
    )
    print("triangle + pendant:", g.n, "vertices,", len(g.edges), "edges")
    print("  neighbors of 2:", g.neighborhood(2))
    print("  common neighbors of 0 and 1:", g.common_neighbors(0, 1))
    print("  theta on (0,2):", g.edge_weight(0, 2))

    # builders for the common families
    hub = star(4, phi=math.pi / 3, theta=math.pi / 4)
    chain = path_graph(5, phi=0.8, theta=1.0)
    print("star(4) center degree:", hub.degree(0))
    print("path(5) inner degree:", chain.degree(2))

    # seeded random graphs are reproducible
    a = random_graph(6, seed=11)
    assert a == random_graph(6, seed=11)
    print("random_graph(6, seed=11):", len(a.edges), "edges")

    # uniform reweighting keeps the topology
    uni = make_uniform(a, phi=math.pi / 2, theta=math.pi / 2)
    print("uniform copy keeps", len(uni.edges), "edges")

    # the JSON file format round-trips exactly
    text = serialize_graph(hub)
    assert parse_graph(text) == hub
    print("serialized star(4):")
    print(text)


if __name__ == "__main__":
    main()
