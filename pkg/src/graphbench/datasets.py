"""Dataset loading: bundled Karate Club, citation-network TSV files, and a
synthetic attributed benchmark graph.

Citation datasets (Cora, CiteSeer, PubMed) follow the classic two-file
layout: ``<name>.content`` has rows ``paper_id f_1 ... f_k label`` and
``<name>.cites`` has rows ``cited_id citing_id``.  The raw files are not
redistributed here; point ``GRAPHBENCH_DATA_DIR`` at a directory containing
``cora/cora.content`` etc. to enable them.
"""

import os
from importlib import resources
from pathlib import Path

import numpy as np

from ._validation import rng_from_seed
from .errors import ConfigError, DatasetFormatError
from .graph import Dataset, FeatureMatrix, build_graph

__all__ = [
    "karate_club",
    "load_citation_dataset",
    "synthetic_blocks",
    "load_dataset",
    "dataset_available",
    "KNOWN_DATASETS",
]


def _data_file(name):
    return resources.files("graphbench.data") / name


def karate_club():
    """Zachary's karate club with the two post-split factions as labels.

    The 34 members have no attributes of their own, so features are one-hot
    node indicators.
    """
    edges = []
    with (_data_file("karate.edges")).open() as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                u, v = line.split()
                edges.append((int(u), int(v)))
    labels = np.zeros(34, dtype=np.int64)
    with (_data_file("karate.labels")).open() as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                node, cls = line.split()
                labels[int(node)] = int(cls)
    graph = build_graph(edges, n_nodes=34, directed=False)
    features = FeatureMatrix(np.eye(34), [f"node_{i}" for i in range(34)])
    return Dataset(
        name="karate",
        graph=graph,
        features=features,
        labels=labels,
        n_classes=2,
        node_ids=list(range(34)),
    )


def load_citation_dataset(content_path, cites_path, name="citation"):
    """Load a Cora-style citation network from its content and cites files.

    Nodes are ordered by first appearance in the content file.  Citations
    are made undirected; any citation that references an unknown paper id is
    dropped and counted on ``Dataset.dropped_citations``.  String labels map
    to class ids in sorted label order.
    """
    ids = []
    index = {}
    rows = []
    raw_labels = []
    n_features = None
    with open(content_path) as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.strip().split()
            if not parts:
                continue
            if len(parts) < 3:
                raise DatasetFormatError(
                    f"{content_path}:{lineno}: expected 'id features... label'"
                )
            paper_id, feats, label = parts[0], parts[1:-1], parts[-1]
            if n_features is None:
                n_features = len(feats)
            elif len(feats) != n_features:
                raise DatasetFormatError(
                    f"{content_path}:{lineno}: ragged row "
                    f"({len(feats)} features, expected {n_features})"
                )
            if paper_id in index:
                raise DatasetFormatError(f"{content_path}:{lineno}: duplicate id {paper_id}")
            index[paper_id] = len(ids)
            ids.append(paper_id)
            rows.append(np.array(feats, dtype=np.float64))
            raw_labels.append(label)
    if not ids:
        raise DatasetFormatError(f"{content_path}: empty content file")

    classes = sorted(set(raw_labels))
    class_of = {c: i for i, c in enumerate(classes)}
    labels = np.array([class_of[l] for l in raw_labels], dtype=np.int64)

    edges = []
    dropped = 0
    with open(cites_path) as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.strip().split()
            if not parts:
                continue
            if len(parts) != 2:
                raise DatasetFormatError(
                    f"{cites_path}:{lineno}: expected 'cited_id citing_id'"
                )
            cited, citing = parts
            if cited in index and citing in index:
                edges.append((index[cited], index[citing]))
            else:
                dropped += 1

    graph = build_graph(edges, n_nodes=len(ids), directed=False)
    features = FeatureMatrix(np.vstack(rows), [f"w{i}" for i in range(n_features)])
    return Dataset(
        name=name,
        graph=graph,
        features=features,
        labels=labels,
        n_classes=len(classes),
        node_ids=ids,
        dropped_citations=dropped,
    )


def synthetic_blocks(n_per_class=100, n_classes=3, p_in=0.05, p_out=0.005,
                     n_features=64, flip=0.3, seed=7):
    """Deterministic attributed planted-partition graph for pipeline tests.

    Nodes in the same block connect with probability ``p_in`` and across
    blocks with ``p_out``.  Features are a noisy one-hot class template: a
    class-specific band of columns is hot, with each bit flipped on/off with
    probability ``flip``, giving baselines signal while leaving headroom for
    structure-aware models.
    """
    rng = rng_from_seed(seed)
    n = n_per_class * n_classes
    labels = np.repeat(np.arange(n_classes), n_per_class)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            p = p_in if labels[u] == labels[v] else p_out
            if rng.random() < p:
                edges.append((u, v))
    band = n_features // n_classes
    base = np.zeros((n, n_features))
    for c in range(n_classes):
        base[labels == c, c * band:(c + 1) * band] = 1.0
    noise = rng.random((n, n_features)) < flip
    data = np.abs(base - noise)  # flip selected bits
    features = FeatureMatrix(data, [f"f{i}" for i in range(n_features)])
    graph = build_graph(edges, n_nodes=n, directed=False)
    return Dataset(
        name="synth",
        graph=graph,
        features=features,
        labels=labels,
        n_classes=n_classes,
        node_ids=list(range(n)),
    )


KNOWN_DATASETS = ("karate", "synth", "cora", "citeseer", "pubmed")

_CITATION_FILES = {
    "cora": ("cora.content", "cora.cites"),
    "citeseer": ("citeseer.content", "citeseer.cites"),
    "pubmed": ("pubmed.content", "pubmed.cites"),
}


def _citation_paths(name, data_dir=None):
    roots = []
    if data_dir is not None:
        roots.append(Path(data_dir))
    env = os.environ.get("GRAPHBENCH_DATA_DIR")
    if env:
        roots.append(Path(env))
    content_name, cites_name = _CITATION_FILES[name]
    for root in roots:
        for base in (root / name, root):
            content, cites = base / content_name, base / cites_name
            if content.is_file() and cites.is_file():
                return content, cites
    return None


def dataset_available(name, data_dir=None):
    name = name.lower()
    if name not in KNOWN_DATASETS:
        return False
    if name in ("karate", "synth"):
        return True
    return _citation_paths(name, data_dir) is not None


def load_dataset(name, data_dir=None):
    """Resolve a dataset by name.

    ``karate`` and ``synth`` are always available; citation datasets are
    searched for under ``data_dir`` and ``GRAPHBENCH_DATA_DIR``.
    """
    name = name.lower()
    if name not in KNOWN_DATASETS:
        raise ConfigError(f"unknown dataset {name!r}; known: {', '.join(KNOWN_DATASETS)}")
    if name == "karate":
        return karate_club()
    if name == "synth":
        return synthetic_blocks()
    paths = _citation_paths(name, data_dir)
    if paths is None:
        raise ConfigError(
            f"dataset {name!r} requires its raw files; place "
            f"{_CITATION_FILES[name][0]} and {_CITATION_FILES[name][1]} under "
            f"$GRAPHBENCH_DATA_DIR/{name}/ (or pass data_dir)"
        )
    return load_citation_dataset(*paths, name=name)
