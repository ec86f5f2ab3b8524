"""Node-to-group assignment shared by connectivity, community detection, and
clustering outputs."""

from dataclasses import dataclass

import numpy as np

__all__ = ["Partition"]


@dataclass(frozen=True)
class Partition:
    """Assignment of each node to one group, with ids forming 0..k-1."""

    assign: np.ndarray
    n_communities: int

    def __post_init__(self):
        assign = np.asarray(self.assign, dtype=np.int64)
        object.__setattr__(self, "assign", assign)
        assign.setflags(write=False)
        if assign.size:
            present = np.unique(assign)
            if present[0] < 0 or present[-1] >= self.n_communities:
                raise ValueError("community ids must lie in [0, n_communities)")
            if len(present) != self.n_communities:
                raise ValueError("community ids must form a contiguous range")

    @classmethod
    def from_labels(cls, labels):
        """Build a partition relabeled canonically (first appearance by node id)."""
        labels = np.asarray(labels)
        mapping = {}
        assign = np.empty(len(labels), dtype=np.int64)
        for i, lab in enumerate(labels.tolist()):
            if lab not in mapping:
                mapping[lab] = len(mapping)
            assign[i] = mapping[lab]
        return cls(assign=assign, n_communities=len(mapping))

    def canonicalize(self):
        return Partition.from_labels(self.assign)

    def groups(self):
        """List of node-index arrays, one per community id."""
        return [np.flatnonzero(self.assign == c) for c in range(self.n_communities)]

    def __len__(self):
        return len(self.assign)
