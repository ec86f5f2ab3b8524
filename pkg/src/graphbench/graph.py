"""Immutable CSR graph, dataset container, and train/val/test splitting.

The :class:`Graph` stores topology in compressed sparse row form: for node
``u`` the neighbor ids live in ``indices[indptr[u]:indptr[u+1]]`` (sorted
ascending) with matching entries in ``weights``.  Undirected graphs store
each edge {u, v} in both rows, so ``m_stored == 2 * m``.  Self-loops are
never stored; the GCN propagation operator adds them virtually.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ._validation import as_float_array, as_label_array, check_graph, rng_from_seed
from .errors import GraphConstructionError, SplitError

__all__ = [
    "Graph",
    "FeatureMatrix",
    "Dataset",
    "Split",
    "build_graph",
    "read_edge_list",
    "normalized_adjacency",
    "stratified_split",
]


@dataclass(frozen=True)
class Graph:
    """Immutable graph topology in CSR form with optional edge weights.

    Safe to share across threads; every algorithm in this package treats it
    as read-only.
    """

    n_nodes: int
    directed: bool
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    dropped_self_loops: int = 0

    def __post_init__(self):
        for name in ("indptr", "indices", "weights"):
            getattr(self, name).setflags(write=False)

    @property
    def m(self):
        """Number of edges (undirected edges counted once)."""
        stored = len(self.indices)
        return stored if self.directed else stored // 2

    @property
    def m_stored(self):
        return len(self.indices)

    def degree(self, u=None):
        """Out-degree of node ``u``, or the full degree array."""
        counts = np.diff(self.indptr)
        return counts if u is None else int(counts[u])

    def neighbors(self, u):
        """Sorted neighbor ids of ``u`` (read-only view)."""
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def neighbor_weights(self, u):
        return self.weights[self.indptr[u]:self.indptr[u + 1]]

    def has_edge(self, u, v):
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def edges(self):
        """Iterate over (u, v, w); undirected edges are yielded once, u < v."""
        for u in range(self.n_nodes):
            lo, hi = self.indptr[u], self.indptr[u + 1]
            for v, w in zip(self.indices[lo:hi], self.weights[lo:hi]):
                if self.directed or u < v:
                    yield int(u), int(v), float(w)

    def adjacency(self, binary=False):
        """Topology as a scipy CSR matrix (stored weights, or 0/1)."""
        data = np.ones_like(self.weights) if binary else self.weights.copy()
        return sp.csr_matrix(
            (data, self.indices.copy(), self.indptr.copy()),
            shape=(self.n_nodes, self.n_nodes),
        )


@dataclass
class FeatureMatrix:
    """Dense node-by-dimension real matrix with named columns."""

    data: np.ndarray
    column_names: list

    def __post_init__(self):
        self.data = as_float_array(self.data, "features")
        self.column_names = list(self.column_names)
        if self.data.shape[1] != len(self.column_names):
            raise ValueError(
                f"{self.data.shape[1]} columns but {len(self.column_names)} column names"
            )

    @property
    def n_rows(self):
        return self.data.shape[0]

    @property
    def dim(self):
        return self.data.shape[1]


@dataclass(frozen=True)
class Dataset:
    """A graph plus node features, integer class labels, and external ids."""

    name: str
    graph: Graph
    features: FeatureMatrix
    labels: np.ndarray
    n_classes: int
    node_ids: list
    dropped_citations: int = 0

    def __post_init__(self):
        n = self.graph.n_nodes
        if self.features.n_rows != n or len(self.labels) != n or len(self.node_ids) != n:
            raise ValueError("features, labels, and node_ids must all have one row per node")
        if self.labels.min(initial=0) < 0 or self.labels.max(initial=-1) >= self.n_classes:
            raise ValueError("labels must lie in [0, n_classes)")
        self.labels.setflags(write=False)


@dataclass(frozen=True)
class Split:
    """Disjoint train/val/test node index sets covering all nodes."""

    train: np.ndarray
    val: np.ndarray
    test: np.ndarray
    seed: int

    def __post_init__(self):
        parts = [set(self.train.tolist()), set(self.val.tolist()), set(self.test.tolist())]
        total = len(self.train) + len(self.val) + len(self.test)
        if len(parts[0] | parts[1] | parts[2]) != total:
            raise SplitError("train/val/test sets overlap or contain duplicates")


def build_graph(edge_list, n_nodes, directed=False):
    """Build an immutable CSR graph from an edge list.

    Parameters
    ----------
    edge_list : iterable of (u, v) or (u, v, w)
        Missing weights default to 1.0.  Duplicate edges are collapsed
        keeping the weight seen last; self-loops are dropped (the count is
        recorded on ``Graph.dropped_self_loops``).
    n_nodes : int
    directed : bool

    Raises
    ------
    GraphConstructionError
        On an out-of-range endpoint or a non-finite weight.
    """
    n_nodes = int(n_nodes)
    if n_nodes < 0:
        raise GraphConstructionError("n_nodes must be non-negative")

    dedup = {}
    dropped = 0
    for edge in edge_list:
        if len(edge) == 2:
            u, v = edge
            w = 1.0
        else:
            u, v, w = edge
        u, v, w = int(u), int(v), float(w)
        if not (0 <= u < n_nodes and 0 <= v < n_nodes):
            raise GraphConstructionError(
                f"edge ({u}, {v}) out of range for n_nodes={n_nodes}"
            )
        if not np.isfinite(w):
            raise GraphConstructionError(f"edge ({u}, {v}) has non-finite weight {w}")
        if u == v:
            dropped += 1
            continue
        key = (u, v) if directed else (min(u, v), max(u, v))
        dedup[key] = w

    if dedup:
        pairs = np.array(list(dedup.keys()), dtype=np.int64)
        ws = np.array(list(dedup.values()), dtype=np.float64)
        if not directed:
            pairs = np.vstack([pairs, pairs[:, ::-1]])
            ws = np.concatenate([ws, ws])
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        rows, cols, ws = pairs[order, 0], pairs[order, 1], ws[order]
        indptr = np.zeros(n_nodes + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        indptr = np.cumsum(indptr)
    else:
        rows = np.empty(0, dtype=np.int64)
        cols = np.empty(0, dtype=np.int64)
        ws = np.empty(0, dtype=np.float64)
        indptr = np.zeros(n_nodes + 1, dtype=np.int64)

    return Graph(
        n_nodes=n_nodes,
        directed=directed,
        indptr=indptr,
        indices=cols,
        weights=ws,
        dropped_self_loops=dropped,
    )


def read_edge_list(path, directed=False, n_nodes=None):
    """Read a whitespace-separated ``u v [w]`` edge file ('#' starts a comment).

    Node count defaults to ``max id + 1``.
    """
    edges = []
    max_id = -1
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise GraphConstructionError(
                    f"{path}:{lineno}: expected 'u v [w]', got {line!r}"
                )
            u, v = int(parts[0]), int(parts[1])
            max_id = max(max_id, u, v)
            edges.append((u, v, float(parts[2])) if len(parts) == 3 else (u, v))
    if n_nodes is None:
        n_nodes = max_id + 1
    return build_graph(edges, n_nodes=n_nodes, directed=directed)


def normalized_adjacency(g):
    """Symmetrically normalized adjacency with self-loops.

    Returns the GCN propagation operator computed from the *binary*
    topology: self-loops are added to the 0/1 adjacency and each entry is
    scaled by the inverse square roots of the loop-augmented degrees.  The
    result is symmetric with every row summing to at most 1.
    """
    check_graph(g, directed=False)
    a = g.adjacency(binary=True)
    a = a + sp.identity(g.n_nodes, format="csr")
    inv_sqrt = 1.0 / np.sqrt(a.sum(axis=1).A1)
    d = sp.diags(inv_sqrt)
    out = (d @ a @ d).tocsr()
    out.sort_indices()
    return out


def _class_counts(n_class, ratios):
    """Largest-remainder apportionment; ties favor train, then val, then test."""
    exact = np.asarray(ratios, dtype=np.float64) * n_class
    counts = np.floor(exact).astype(np.int64)
    frac = exact - counts
    for _ in range(n_class - counts.sum()):
        i = int(np.argmax(frac))  # argmax takes the first (priority) bucket on ties
        counts[i] += 1
        frac[i] = -1.0
    return counts


def stratified_split(labels, ratios=(0.6, 0.2, 0.2), seed=0):
    """Per-class random partition into train/val/test by the given ratios.

    Every class is shuffled independently and apportioned by the
    largest-remainder rule, so per-class counts stay within one node of the
    exact proportions.  Deterministic for a fixed seed.

    Raises
    ------
    SplitError
        If any class has fewer than 3 members.
    """
    labels = as_label_array(labels, "labels")
    ratios = tuple(float(r) for r in ratios)
    if len(ratios) != 3 or any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise SplitError(f"ratios must be three non-negative values summing to 1, got {ratios}")

    rng = rng_from_seed(seed)
    buckets = [[], [], []]
    for cls in np.unique(labels):
        members = np.flatnonzero(labels == cls)
        if len(members) < 3:
            raise SplitError(f"class {cls} has only {len(members)} member(s); need at least 3")
        members = rng.permutation(members)
        counts = _class_counts(len(members), ratios)
        offsets = np.concatenate([[0], np.cumsum(counts)])
        for b in range(3):
            buckets[b].append(members[offsets[b]:offsets[b + 1]])

    train, val, test = (np.sort(np.concatenate(b)) for b in buckets)
    return Split(train=train, val=val, test=test, seed=int(seed))
