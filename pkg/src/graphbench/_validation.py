"""Input validation helpers shared by the estimators and algorithm functions."""

import numpy as np

from .errors import ContractError


def check_graph(g, *, directed=None, nonnegative_weights=False, min_edges=0):
    """Validate a Graph against an operation's preconditions.

    Parameters
    ----------
    g : Graph
    directed : bool or None
        Require the graph to be directed (True) or undirected (False).
    nonnegative_weights : bool
        Reject graphs carrying any negative edge weight.
    min_edges : int
        Minimum number of stored edges (undirected edges counted once).

    Raises
    ------
    ContractError
    """
    if directed is True and not g.directed:
        raise ContractError("operation requires a directed graph")
    if directed is False and g.directed:
        raise ContractError("operation requires an undirected graph")
    if nonnegative_weights and g.weights.size and g.weights.min() < 0:
        raise ContractError("operation requires non-negative edge weights")
    if g.m < min_edges:
        raise ContractError(f"operation requires at least {min_edges} edge(s), got {g.m}")


def check_node(g, node, name="source"):
    node = int(node)
    if not 0 <= node < g.n_nodes:
        raise ContractError(f"{name}={node} out of range for graph with {g.n_nodes} nodes")
    return node


def as_float_array(X, name="X", allow_1d=False):
    """Coerce to a finite float64 ndarray, rejecting NaN/Inf."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1 and not allow_1d:
        raise ValueError(f"{name} must be 2-dimensional, got shape {X.shape}")
    if X.size and not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite values")
    return X


def as_label_array(y, name="y"):
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {y.shape}")
    return y.astype(np.int64)


def check_same_length(a, b, name_a="y_true", name_b="y_pred"):
    if len(a) != len(b):
        raise ValueError(f"{name_a} and {name_b} have different lengths: {len(a)} != {len(b)}")


def rng_from_seed(seed):
    """Derive a fresh PCG64 generator from an integer seed (or pass through)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
