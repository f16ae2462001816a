"""Feature attribution: global permutation importance and per-instance occlusion.

permutation_importance(f) = baseline AUC minus the mean AUC over `repeats`
independent within-column permutations of feature f. A feature the model
ignores leaves predictions unchanged under permutation, so its importance
is exactly zero.

instance_attribution(f) = p(record) - p(record with f replaced by the
reference mean for continuous features or the reference modal category
otherwise). No randomness is involved.
"""

from __future__ import annotations

import dataclasses
from typing import Mapping

import numpy as np

from ..data.schema import Dataset, PatientRecord, label_five_year_survival
from ..data.stats import StatsSummary
from ..errors import ValidationError
from ..rng import rng_for
from .metrics import rank_auc


def permutation_importance(
    model, dataset: Dataset, seed: int, repeats: int = 3
) -> dict[str, float]:
    if repeats < 1:
        raise ValidationError("repeats must be >= 1")
    from .registry import check_schema, predict_proba_batch

    check_schema(model, dataset)
    records = dataset.labeled().records
    labels = np.array([label_five_year_survival(r) for r in records], dtype=np.float64)
    baseline = rank_auc(labels, predict_proba_batch(model, records))

    importances: dict[str, float] = {}
    for spec in dataset.schema.features:
        rng = rng_for(seed, "perm", spec.name)
        drops = []
        values = [r.features[spec.name] for r in records]
        for _ in range(repeats):
            shuffled = [values[i] for i in rng.permutation(len(records))]
            permuted = [
                dataclasses.replace(r, features={**r.features, spec.name: v})
                for r, v in zip(records, shuffled)
            ]
            drops.append(baseline - rank_auc(labels, predict_proba_batch(model, permuted)))
        importances[spec.name] = float(np.mean(drops))
    return importances


def instance_attribution(model, record: PatientRecord, reference_stats: StatsSummary) -> Mapping[str, float]:
    from .registry import predict_proba_batch

    base = float(predict_proba_batch(model, [record])[0])
    occluded = []
    names = []
    for spec in model.encoder.schema.features:
        names.append(spec.name)
        occluded.append(
            dataclasses.replace(
                record,
                features={**record.features, spec.name: reference_stats.reference_value(spec.name)},
            )
        )
    probs = predict_proba_batch(model, occluded)
    return {name: base - float(p) for name, p in zip(names, probs)}
