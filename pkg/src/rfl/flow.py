"""Dinic max-flow and degree-constrained bipartite subgraph extraction.

The only clients are desk-scale instances (a few dozen nodes), so the solver
favors clarity: adjacency lists of [to, capacity, reverse-index] triples,
BFS level graph, DFS blocking flow.
"""

from __future__ import annotations

from collections import deque

from .graphs import BipartiteGraph, Edge


class Dinic:
    def __init__(self, num_nodes: int):
        self.adj: list[list[list[int]]] = [[] for _ in range(num_nodes)]

    def add_edge(self, u: int, v: int, capacity: int) -> tuple[int, int]:
        """Returns (u, index) handle for querying residual capacity later."""
        self.adj[u].append([v, capacity, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])
        return (u, len(self.adj[u]) - 1)

    def flow_on(self, handle: tuple[int, int]) -> int:
        u, idx = handle
        arc = self.adj[u][idx]
        return self.adj[arc[0]][arc[2]][1]  # reverse capacity = pushed flow

    def max_flow(self, source: int, sink: int) -> int:
        total = 0
        while True:
            level = self._bfs(source, sink)
            if level is None:
                return total
            iters = [0] * len(self.adj)
            while True:
                pushed = self._dfs(source, sink, float("inf"), level, iters)
                if not pushed:
                    break
                total += pushed
        return total

    def _bfs(self, source: int, sink: int) -> list[int] | None:
        level = [-1] * len(self.adj)
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for to, cap, _rev in self.adj[u]:
                if cap > 0 and level[to] < 0:
                    level[to] = level[u] + 1
                    queue.append(to)
        return level if level[sink] >= 0 else None

    def _dfs(self, u: int, sink: int, limit, level: list[int], iters: list[int]) -> int:
        if u == sink:
            return int(limit)
        while iters[u] < len(self.adj[u]):
            arc = self.adj[u][iters[u]]
            to, cap, rev = arc
            if cap > 0 and level[to] == level[u] + 1:
                pushed = self._dfs(to, sink, min(limit, cap), level, iters)
                if pushed:
                    arc[1] -= pushed
                    self.adj[to][rev][1] += pushed
                    return pushed
            iters[u] += 1
        return 0


def degree_constrained_subgraph(
    n: int,
    candidate_edges: list[Edge],
    caps_x: list[int],
    caps_y: list[int],
) -> list[Edge] | None:
    """A subgraph of the candidate edges where X-vertex i has degree exactly
    caps_x[i-1] and Y-vertex n+j degree exactly caps_y[j-1], or None.

    Network: source -> X (cap per vertex), X -> Y along candidates (cap 1),
    Y -> sink (cap per vertex); exact degrees iff the flow saturates both
    sides, i.e. equals the common capacity sum.
    """
    need = sum(caps_x)
    if need != sum(caps_y):
        return None
    # node ids: 0 = source, X-vertex x -> x, Y-vertex y -> y, 2n+1 = sink
    source, sink = 0, 2 * n + 1
    net = Dinic(2 * n + 2)
    for i, cap in enumerate(caps_x):
        if cap:
            net.add_edge(source, 1 + i, cap)
    for j, cap in enumerate(caps_y):
        if cap:
            net.add_edge(n + 1 + j, sink, cap)
    handles = []
    for x, y in candidate_edges:
        handles.append(((x, y), net.add_edge(x, y, 1)))
    if net.max_flow(source, sink) != need:
        return None
    return [edge for edge, h in handles if net.flow_on(h) == 1]


def k_factor_exists(g: BipartiteGraph, k: int) -> bool:
    """Whether g contains a spanning k-regular subgraph."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = g.n
    chosen = degree_constrained_subgraph(n, list(g.edges()), [k] * n, [k] * n)
    return chosen is not None
