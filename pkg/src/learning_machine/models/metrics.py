"""Evaluation metrics for survival-probability predictions.

AUC is computed from the Mann-Whitney rank statistic with ties sharing the
average rank, which matches the all-pairs concordance count (ties worth
half). Log-loss clips probabilities at 1e-12. observed_survival_rate and
mean_predicted_survival are carried so calibration gaps can be reported
per evaluation window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..data.schema import Dataset, label_five_year_survival

LOG_LOSS_CLIP = 1e-12


@dataclass(frozen=True)
class Metrics:
    auc: float
    accuracy: float
    brier: float
    log_loss: float
    n: int
    observed_survival_rate: float
    mean_predicted_survival: float

    def to_dict(self) -> dict:
        return {
            "auc": self.auc,
            "accuracy": self.accuracy,
            "brier": self.brier,
            "log_loss": self.log_loss,
            "n": self.n,
            "observed_survival_rate": self.observed_survival_rate,
            "mean_predicted_survival": self.mean_predicted_survival,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "Metrics":
        return cls(**{k: doc[k] for k in (
            "auc", "accuracy", "brier", "log_loss", "n",
            "observed_survival_rate", "mean_predicted_survival",
        )})


def _average_ranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    sorted_vals = values[order]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0  # 1-based average rank
        i = j + 1
    return ranks


def rank_auc(labels: np.ndarray, scores: np.ndarray) -> float:
    """AUC via average ranks; 0.5 when one class is absent."""
    labels = np.asarray(labels, dtype=np.float64)
    scores = np.asarray(scores, dtype=np.float64)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        return 0.5
    ranks = _average_ranks(scores)
    pos_rank_sum = float(ranks[labels == 1.0].sum())
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def metrics_from_arrays(labels: np.ndarray, probs: np.ndarray) -> Metrics:
    labels = np.asarray(labels, dtype=np.float64)
    probs = np.asarray(probs, dtype=np.float64)
    clipped = np.clip(probs, LOG_LOSS_CLIP, 1.0 - LOG_LOSS_CLIP)
    predicted = probs >= 0.5
    return Metrics(
        auc=rank_auc(labels, probs),
        accuracy=float(np.mean(predicted == (labels == 1.0))),
        brier=float(np.mean((probs - labels) ** 2)),
        log_loss=float(-np.mean(labels * np.log(clipped) + (1 - labels) * np.log(1 - clipped))),
        n=len(labels),
        observed_survival_rate=float(labels.mean()),
        mean_predicted_survival=float(probs.mean()),
    )


def evaluate(model, dataset: Dataset) -> Metrics:
    """Score a trained model on a dataset where every record has a definitive label."""
    from ..data.schema import has_definitive_label
    from ..errors import MissingOutcomeError

    for r in dataset.records:
        if not has_definitive_label(r):
            raise MissingOutcomeError(
                f"record {r.patient_id} has no definitive five-year label; "
                "filter with Dataset.labeled() first"
            )
    labels = np.array([label_five_year_survival(r) for r in dataset.records], dtype=np.float64)
    from .registry import predict_proba_batch  # local import to avoid a cycle

    probs = predict_proba_batch(model, dataset.records)
    return metrics_from_arrays(labels, probs)
