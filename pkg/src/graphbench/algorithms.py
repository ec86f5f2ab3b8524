"""Classical traversal, shortest-path, spanning-tree, and connectivity
algorithms on the CSR graph.

All functions are pure and deterministic: neighbor expansion is always in
ascending node id and edge ties break lexicographically by (weight, u, v),
so repeated runs (and independent implementations following the same rules)
produce identical output.  Unreachable distances are ``math.inf`` and are
serialized as the string ``"inf"`` by the CLI.
"""

import heapq
from dataclasses import dataclass

import numpy as np

from ._validation import check_graph, check_node
from .errors import ContractError
from .partition import Partition

__all__ = [
    "PathResult",
    "DistanceMatrix",
    "MstResult",
    "bfs",
    "dfs",
    "dijkstra",
    "floyd_warshall",
    "prim",
    "kruskal",
    "connected_components",
    "strongly_connected_components",
]


@dataclass(frozen=True)
class PathResult:
    """Single-source distances plus the shortest-path tree (pred = -1 at roots
    and unreachable nodes)."""

    dist: np.ndarray
    pred: np.ndarray


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs shortest-path distances."""

    d: np.ndarray


@dataclass(frozen=True)
class MstResult:
    """Minimum spanning tree (or forest when the graph is disconnected)."""

    edges: tuple
    total_weight: float
    connected: bool


def bfs(g, source):
    """Breadth-first search from ``source``.

    Returns ``(visit_order, hop_dist)`` where ``hop_dist`` holds unweighted
    shortest hop counts (inf when unreachable).  Nodes inside one layer are
    visited in ascending id.
    """
    source = check_node(g, source)
    dist = np.full(g.n_nodes, np.inf)
    dist[source] = 0.0
    order = [source]
    frontier = [source]
    depth = 0
    while frontier:
        fresh = set()
        for u in frontier:
            for v in g.neighbors(u):
                if dist[v] == np.inf:
                    fresh.add(int(v))
        depth += 1
        frontier = sorted(fresh)
        for v in frontier:
            dist[v] = depth
            order.append(v)
    return order, dist


def dfs(g, source):
    """Iterative depth-first search from ``source``.

    Neighbors are expanded in ascending id.  Returns ``(preorder,
    finish_order)`` over the reachable nodes.
    """
    source = check_node(g, source)
    visited = np.zeros(g.n_nodes, dtype=bool)
    visited[source] = True
    preorder = [source]
    finish = []
    stack = [(source, 0)]
    while stack:
        u, i = stack[-1]
        nbrs = g.neighbors(u)
        while i < len(nbrs) and visited[nbrs[i]]:
            i += 1
        if i < len(nbrs):
            v = int(nbrs[i])
            stack[-1] = (u, i + 1)
            visited[v] = True
            preorder.append(v)
            stack.append((v, 0))
        else:
            stack.pop()
            finish.append(u)
    return preorder, finish


def dijkstra(g, source):
    """Single-source shortest paths for non-negative weights (binary heap,
    stale entries skipped)."""
    source = check_node(g, source)
    check_graph(g, nonnegative_weights=True)
    dist = np.full(g.n_nodes, np.inf)
    pred = np.full(g.n_nodes, -1, dtype=np.int64)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue  # stale entry
        lo, hi = g.indptr[u], g.indptr[u + 1]
        for v, w in zip(g.indices[lo:hi], g.weights[lo:hi]):
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, int(v)))
    return PathResult(dist=dist, pred=pred)


def floyd_warshall(g):
    """All-pairs shortest paths by the in-place k-loop dynamic program.

    Handles negative edge weights; raises ``ContractError`` naming a witness
    node if a negative cycle is detected.
    """
    n = g.n_nodes
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u in range(n):
        lo, hi = g.indptr[u], g.indptr[u + 1]
        d[u, g.indices[lo:hi]] = g.weights[lo:hi]
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    diag = np.diagonal(d)
    if np.any(diag < 0):
        witness = int(np.flatnonzero(diag < 0)[0])
        raise ContractError(f"negative cycle through node {witness}")
    return DistanceMatrix(d=d)


def _undirected_edges_sorted(g):
    """Stored edges as canonical (w, u, v) tuples, lexicographically sorted."""
    edges = [(w, u, v) for u, v, w in g.edges()]
    edges.sort()
    return edges


def prim(g):
    """Minimum spanning tree grown greedily from the lowest-id node of each
    component; candidate edges tie-break by (weight, u, v)."""
    check_graph(g, directed=False)
    n = g.n_nodes
    in_tree = np.zeros(n, dtype=bool)
    edges = []
    total = 0.0
    components = 0
    for root in range(n):
        if in_tree[root]:
            continue
        components += 1
        in_tree[root] = True
        heap = []

        def push_edges(u):
            lo, hi = g.indptr[u], g.indptr[u + 1]
            for v, w in zip(g.indices[lo:hi], g.weights[lo:hi]):
                if not in_tree[v]:
                    a, b = (u, int(v)) if u < v else (int(v), u)
                    heapq.heappush(heap, (float(w), a, b, int(v)))

        push_edges(root)
        while heap:
            w, a, b, new = heapq.heappop(heap)
            if in_tree[new]:
                continue
            in_tree[new] = True
            edges.append((a, b, w))
            total += w
            push_edges(new)
    return MstResult(edges=tuple(edges), total_weight=total, connected=components == 1)


class _DisjointSet:
    """Union-find with path compression and union by rank."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def kruskal(g):
    """Minimum spanning tree via edges sorted by (weight, u, v) and union-find."""
    check_graph(g, directed=False)
    dsu = _DisjointSet(g.n_nodes)
    edges = []
    total = 0.0
    for w, u, v in _undirected_edges_sorted(g):
        if dsu.union(u, v):
            edges.append((u, v, w))
            total += w
    roots = {dsu.find(u) for u in range(g.n_nodes)}
    return MstResult(edges=tuple(edges), total_weight=total, connected=len(roots) <= 1)


def connected_components(g):
    """Connected components of an undirected graph; component ids are ordered
    by the smallest contained node id."""
    check_graph(g, directed=False)
    assign = np.full(g.n_nodes, -1, dtype=np.int64)
    next_id = 0
    for start in range(g.n_nodes):
        if assign[start] != -1:
            continue
        assign[start] = next_id
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if assign[v] == -1:
                    assign[v] = next_id
                    stack.append(int(v))
        next_id += 1
    return Partition(assign=assign, n_communities=next_id)


def strongly_connected_components(g):
    """Tarjan's algorithm, iterative.  Component ids follow pop order, which
    is the reverse topological order of the condensation."""
    check_graph(g, directed=True)
    n = g.n_nodes
    UNSEEN = -1
    index = np.full(n, UNSEEN, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    assign = np.full(n, -1, dtype=np.int64)
    counter = 0
    n_comp = 0
    scc_stack = []

    for root in range(n):
        if index[root] != UNSEEN:
            continue
        work = [(root, 0)]
        while work:
            u, i = work[-1]
            if i == 0:
                index[u] = low[u] = counter
                counter += 1
                scc_stack.append(u)
                on_stack[u] = True
            nbrs = g.neighbors(u)
            recursed = False
            while i < len(nbrs):
                v = int(nbrs[i])
                i += 1
                if index[v] == UNSEEN:
                    work[-1] = (u, i)
                    work.append((v, 0))
                    recursed = True
                    break
                if on_stack[v]:
                    low[u] = min(low[u], index[v])
            if recursed:
                continue
            work.pop()
            if low[u] == index[u]:
                while True:
                    v = scc_stack.pop()
                    on_stack[v] = False
                    assign[v] = n_comp
                    if v == u:
                        break
                n_comp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
    return Partition(assign=assign, n_communities=n_comp)
