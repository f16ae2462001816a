"""Domain-classifier drift quantification.

Labels reference rows 0 and window rows 1, then measures how well an
L2-regularized logistic regression can tell them apart under k-fold
cross-validation. Out-of-fold predictions are pooled into a single AUC;
chance level (AUC 0.5) means the datasets are indistinguishable. The
score folds the AUC to [0, 1] as max(0, 2*auc - 1).

Folds are stratified by source (reference and window rows are split into
k folds independently and merged) so every training fold sees both
classes. Continuous features are standardized with pooled statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..data.schema import Dataset
from ..errors import DriftInputError, SchemaMismatchError
from ..kernels import logistic_gd
from ..models.encoding import FeatureEncoder
from ..models.metrics import rank_auc
from ..rng import rng_for

DETECTION_LAMBDA = 1.0
DETECTION_FOLDS = 5
_MAX_ITER = 5000
_TOL = 1e-6


@dataclass(frozen=True)
class DetectionResult:
    auc: float
    score: float
    n_folds: int
    seed: int

    def to_dict(self) -> dict:
        return {"auc": self.auc, "score": self.score, "n_folds": self.n_folds, "seed": self.seed}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "DetectionResult":
        return cls(doc["auc"], doc["score"], doc["n_folds"], doc["seed"])


def _fold_slices(n: int, k: int, order: np.ndarray) -> list[np.ndarray]:
    return [order[np.arange(i, n, k)] for i in range(k)]


def logistic_detection(
    ref: Dataset, new: Dataset, seed: int, n_folds: int = DETECTION_FOLDS, lam: float = DETECTION_LAMBDA
) -> DetectionResult:
    if len(ref) == 0 or len(new) == 0:
        raise DriftInputError("logistic_detection requires two non-empty datasets")
    if ref.schema != new.schema:
        raise SchemaMismatchError("logistic_detection: datasets must share a schema")
    if len(ref) < n_folds or len(new) < n_folds:
        raise DriftInputError(
            f"logistic_detection: need at least {n_folds} rows per side, "
            f"got {len(ref)} and {len(new)}"
        )

    pooled = list(ref.records) + list(new.records)
    encoder = FeatureEncoder.fit(ref.schema, pooled)
    X = np.ascontiguousarray(encoder.encode(pooled))
    y = np.zeros(len(pooled))
    y[len(ref):] = 1.0

    rng = rng_for(seed, "detection")
    ref_folds = _fold_slices(len(ref), n_folds, rng.permutation(len(ref)))
    new_folds = _fold_slices(len(new), n_folds, len(ref) + rng.permutation(len(new)))

    oof = np.zeros(len(pooled))
    for ref_fold, new_fold in zip(ref_folds, new_folds):
        test_idx = np.concatenate([ref_fold, new_fold])
        mask = np.ones(len(pooled), dtype=bool)
        mask[test_idx] = False
        w, b, _, _, _ = logistic_gd(np.ascontiguousarray(X[mask]), y[mask], lam, _MAX_ITER, _TOL)
        z = X[test_idx] @ w + b
        oof[test_idx] = 0.5 * (1.0 + np.tanh(0.5 * z))

    auc = rank_auc(y, oof)
    return DetectionResult(auc=auc, score=max(0.0, 2.0 * auc - 1.0), n_folds=n_folds, seed=seed)
