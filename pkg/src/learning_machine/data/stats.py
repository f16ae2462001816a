"""Descriptive statistics for a dataset window.

Histograms use 20 equal-width bins over the schema range so that summaries
of different windows share bin edges and can be compared side by side.
Standard deviation is the population convention (divide by n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..errors import ValidationError
from .schema import Dataset, FeatureKind, has_definitive_label, label_five_year_survival

HISTOGRAM_BINS = 20


@dataclass(frozen=True)
class ContinuousStats:
    count: int
    mean: float
    std: float
    min: float
    max: float
    bin_edges: tuple[float, ...]
    bin_counts: tuple[int, ...]


@dataclass(frozen=True)
class CategoricalStats:
    frequencies: Mapping[str, int]  # keyed in schema category order


@dataclass(frozen=True)
class StatsSummary:
    n: int
    continuous: Mapping[str, ContinuousStats]
    categorical: Mapping[str, CategoricalStats]
    survived_5y_rate: float | None  # None when no record carries a definitive label
    n_labeled: int

    def reference_value(self, name: str):
        """Occlusion reference: the mean for continuous, the modal category otherwise."""
        if name in self.continuous:
            return self.continuous[name].mean
        freq = self.categorical[name].frequencies
        return max(freq, key=lambda c: freq[c])  # ties: first in schema order

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "continuous": {
                k: {
                    "count": v.count,
                    "mean": v.mean,
                    "std": v.std,
                    "min": v.min,
                    "max": v.max,
                    "bin_edges": list(v.bin_edges),
                    "bin_counts": list(v.bin_counts),
                }
                for k, v in self.continuous.items()
            },
            "categorical": {
                k: {"frequencies": dict(v.frequencies)} for k, v in self.categorical.items()
            },
            "survived_5y_rate": self.survived_5y_rate,
            "n_labeled": self.n_labeled,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "StatsSummary":
        return cls(
            n=doc["n"],
            continuous={
                k: ContinuousStats(
                    count=v["count"],
                    mean=v["mean"],
                    std=v["std"],
                    min=v["min"],
                    max=v["max"],
                    bin_edges=tuple(v["bin_edges"]),
                    bin_counts=tuple(v["bin_counts"]),
                )
                for k, v in doc["continuous"].items()
            },
            categorical={
                k: CategoricalStats(frequencies=dict(v["frequencies"]))
                for k, v in doc["categorical"].items()
            },
            survived_5y_rate=doc["survived_5y_rate"],
            n_labeled=doc["n_labeled"],
        )


def descriptive_stats(dataset: Dataset) -> StatsSummary:
    if len(dataset) == 0:
        raise ValidationError("descriptive_stats requires a non-empty dataset")
    continuous: dict[str, ContinuousStats] = {}
    categorical: dict[str, CategoricalStats] = {}
    for spec in dataset.schema.features:
        values = dataset.feature_values(spec.name)
        if spec.kind is FeatureKind.CONTINUOUS:
            arr = np.asarray(values, dtype=np.float64)
            lo, hi = spec.range  # type: ignore[misc]
            counts, edges = np.histogram(arr, bins=HISTOGRAM_BINS, range=(lo, hi))
            continuous[spec.name] = ContinuousStats(
                count=len(arr),
                mean=float(arr.mean()),
                std=float(arr.std()),  # population std
                min=float(arr.min()),
                max=float(arr.max()),
                bin_edges=tuple(float(e) for e in edges),
                bin_counts=tuple(int(c) for c in counts),
            )
        else:
            freq = {c: 0 for c in spec.categories}  # type: ignore[union-attr]
            for v in values:
                freq[v] += 1
            categorical[spec.name] = CategoricalStats(frequencies=freq)
    labeled = [r for r in dataset.records if has_definitive_label(r)]
    rate = (
        sum(label_five_year_survival(r) for r in labeled) / len(labeled) if labeled else None
    )
    return StatsSummary(
        n=len(dataset),
        continuous=continuous,
        categorical=categorical,
        survived_5y_rate=rate,
        n_labeled=len(labeled),
    )
