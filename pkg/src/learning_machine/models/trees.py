"""Bagged depth-limited decision trees.

Splits are chosen by Gini impurity decrease over a random subset of
ceil(sqrt(d)) candidate columns per node. Candidate columns are scanned in
ascending index order and a replacement requires a strictly larger gain,
so ties resolve to the lowest column index; within a column the split scan
keeps the lowest qualifying threshold. Leaves carry the survival fraction
of their training rows; the ensemble prediction is the mean leaf
probability over all trees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import TrainingError
from ..kernels import best_split_column
from ..rng import rng_for

_LEAF = -1


@dataclass(frozen=True)
class Tree:
    feature: tuple[int, ...]
    threshold: tuple[float, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    prob: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "feature": list(self.feature),
            "threshold": list(self.threshold),
            "left": list(self.left),
            "right": list(self.right),
            "prob": list(self.prob),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Tree":
        return cls(
            tuple(doc["feature"]),
            tuple(doc["threshold"]),
            tuple(doc["left"]),
            tuple(doc["right"]),
            tuple(doc["prob"]),
        )


class _Builder:
    def __init__(self, X: np.ndarray, y: np.ndarray, max_depth: int, min_leaf: int, rng: np.random.Generator):
        self.X = X
        self.y = y
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.rng = rng
        self.n_candidates = max(1, math.ceil(math.sqrt(X.shape[1])))
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.prob: list[float] = []

    def _new_node(self) -> int:
        self.feature.append(_LEAF)
        self.threshold.append(0.0)
        self.left.append(_LEAF)
        self.right.append(_LEAF)
        self.prob.append(0.0)
        return len(self.feature) - 1

    def grow(self, idx: np.ndarray, depth: int) -> int:
        node = self._new_node()
        y_node = self.y[idx]
        n = len(idx)
        pos = float(y_node.sum())
        self.prob[node] = pos / n
        if depth >= self.max_depth or n < 2 * self.min_leaf or pos == 0.0 or pos == n:
            return node

        candidates = np.sort(self.rng.choice(self.X.shape[1], size=self.n_candidates, replace=False))
        best_gain, best_feature, best_threshold = 0.0, _LEAF, 0.0
        for f in candidates:
            col = self.X[idx, f]
            order = np.argsort(col, kind="stable")
            gain, threshold, _ = best_split_column(
                np.ascontiguousarray(col[order]), np.ascontiguousarray(y_node[order]), self.min_leaf
            )
            if gain > best_gain:
                best_gain, best_feature, best_threshold = gain, int(f), threshold
        if best_feature == _LEAF:
            return node

        mask = self.X[idx, best_feature] <= best_threshold
        self.feature[node] = best_feature
        self.threshold[node] = best_threshold
        self.left[node] = self.grow(idx[mask], depth + 1)
        self.right[node] = self.grow(idx[~mask], depth + 1)
        return node

    def build(self) -> Tree:
        self.grow(np.arange(len(self.y)), 0)
        return Tree(
            tuple(self.feature),
            tuple(self.threshold),
            tuple(self.left),
            tuple(self.right),
            tuple(self.prob),
        )


def fit_tree(X: np.ndarray, y: np.ndarray, max_depth: int, min_leaf: int, rng: np.random.Generator) -> Tree:
    return _Builder(X, y, max_depth, min_leaf, rng).build()


def tree_predict(tree: Tree, X: np.ndarray) -> np.ndarray:
    out = np.empty(len(X))
    stack = [(0, np.arange(len(X)))]
    while stack:
        node, idx = stack.pop()
        if len(idx) == 0:
            continue
        f = tree.feature[node]
        if f == _LEAF:
            out[idx] = tree.prob[node]
            continue
        mask = X[idx, f] <= tree.threshold[node]
        stack.append((tree.left[node], idx[mask]))
        stack.append((tree.right[node], idx[~mask]))
    return out


def fit_bagged_trees(
    X: np.ndarray, y: np.ndarray, n_trees: int, max_depth: int, min_leaf: int, seed: int
) -> list[Tree]:
    classes = np.unique(y)
    if len(classes) < 2:
        raise TrainingError("training labels contain a single class; model undefined")
    n = len(y)
    trees = []
    for t in range(n_trees):
        rng = rng_for(seed, "tree", t)
        # bootstrap; redraw when the resample collapses to one class
        for attempt in range(100):
            rows = rng.integers(0, n, n)
            if len(np.unique(y[rows])) == 2:
                break
        else:
            raise TrainingError("could not draw a two-class bootstrap resample")
        trees.append(fit_tree(X[rows], y[rows], max_depth, min_leaf, rng))
    return trees


def forest_predict(trees: list[Tree], X: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(X))
    for tree in trees:
        acc += tree_predict(tree, X)
    return acc / len(trees)
