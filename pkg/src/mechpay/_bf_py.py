"""Pure-Python relaxation kernel.

Label-correcting Bellman-Ford from a virtual super source: every vertex
starts at distance 0, which is equivalent to a source with a zero-weight
arc to each vertex, so reachability never has to be argued.  A simple
shortest path uses at most ``n - 1`` arcs, hence an improvement in the
n-th full pass proves a negative cycle.

Cycle extraction walks predecessor arcs ``n`` steps back from the last
improved vertex.  The predecessor graph has out-degree at most one, so
after ``n`` steps the walk sits on a predecessor cycle; collecting until
the start vertex reappears yields a simple cycle whose weight cannot be
positive, and the caller re-verifies strict negativity.

The compiled twin in ``_bf.pyx`` mirrors this code statement for
statement.  Both perform the identical sequence of IEEE double
operations, so their outputs agree bit for bit; keep any change in sync.
"""

from __future__ import annotations


def bellman_ford(n_vertices, tails, heads, weights):
    """Run relaxation passes over the arc list in index order.

    Returns ``(dist, cycle)`` where ``dist`` is the list of final labels
    and ``cycle`` is either ``None`` (converged: the labels satisfy
    ``dist[head] <= dist[tail] + w`` for every arc) or a list of arc
    indices forming a simple negative-weight cycle in traversal order.
    """
    tails = list(tails)
    heads = list(heads)
    weights = list(weights)
    n_arcs = len(tails)

    dist = [0.0] * n_vertices
    pred = [-1] * n_vertices

    last_improved = -1
    for _ in range(n_vertices):
        improved = -1
        for a in range(n_arcs):
            cand = dist[tails[a]] + weights[a]
            if cand < dist[heads[a]]:
                dist[heads[a]] = cand
                pred[heads[a]] = a
                improved = heads[a]
        if improved < 0:
            return dist, None
        last_improved = improved

    v = last_improved
    for _ in range(n_vertices):
        p = pred[v]
        if p < 0:
            raise RuntimeError("predecessor walk left the improved region")
        v = tails[p]

    start = v
    cycle = []
    cur = v
    while True:
        p = pred[cur]
        if p < 0 or len(cycle) > n_vertices:
            raise RuntimeError("predecessor graph lost the cycle")
        cycle.append(p)
        cur = tails[p]
        if cur == start:
            break
    cycle.reverse()
    return dist, cycle
