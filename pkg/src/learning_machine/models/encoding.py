"""Design-matrix encoding shared by training, prediction and drift detection.

Continuous features are standardized with the statistics captured at fit
time (training window, or pooled samples for drift detection); categorical
features are one-hot encoded against the first schema category as the
reference level. Encoders are immutable and serializable so an artifact
reproduces its training-time encoding exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..data.schema import FeatureKind, FeatureSchema, PatientRecord


@dataclass(frozen=True)
class FeatureEncoder:
    schema: FeatureSchema
    means: Mapping[str, float]
    stds: Mapping[str, float]

    @classmethod
    def fit(cls, schema: FeatureSchema, records: Sequence[PatientRecord]) -> "FeatureEncoder":
        means: dict[str, float] = {}
        stds: dict[str, float] = {}
        for spec in schema.continuous():
            arr = np.asarray([r.features[spec.name] for r in records], dtype=np.float64)
            means[spec.name] = float(arr.mean())
            std = float(arr.std())
            stds[spec.name] = std if std > 0.0 else 1.0
        return cls(schema=schema, means=means, stds=stds)

    @property
    def column_names(self) -> tuple[str, ...]:
        cols: list[str] = []
        for spec in self.schema.features:
            if spec.kind is FeatureKind.CONTINUOUS:
                cols.append(spec.name)
            else:
                cols.extend(f"{spec.name}={c}" for c in spec.categories[1:])  # type: ignore[index]
        return tuple(cols)

    @property
    def n_columns(self) -> int:
        return len(self.column_names)

    def encode(self, records: Iterable[PatientRecord]) -> np.ndarray:
        records = list(records)
        X = np.zeros((len(records), self.n_columns))
        col = 0
        for spec in self.schema.features:
            if spec.kind is FeatureKind.CONTINUOUS:
                raw = np.asarray([r.features[spec.name] for r in records], dtype=np.float64)
                X[:, col] = (raw - self.means[spec.name]) / self.stds[spec.name]
                col += 1
            else:
                categories = spec.categories[1:]  # type: ignore[index]
                index = {c: j for j, c in enumerate(categories)}
                for i, r in enumerate(records):
                    j = index.get(r.features[spec.name])
                    if j is not None:
                        X[i, col + j] = 1.0
                col += len(categories)
        return X

    def encode_one(self, record: PatientRecord) -> np.ndarray:
        return self.encode([record])[0]

    def to_dict(self) -> dict:
        return {"means": dict(self.means), "stds": dict(self.stds), "schema": self.schema.to_dict()}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "FeatureEncoder":
        return cls(
            schema=FeatureSchema.from_dict(doc["schema"]),
            means=dict(doc["means"]),
            stds=dict(doc["stds"]),
        )
