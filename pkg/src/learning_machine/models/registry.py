"""Model artifacts: training, prediction and serialization.

A ModelArtifact captures everything needed to reproduce its predictions
bit for bit: family, hyperparameters, fitted parameters, the training-time
feature encoder (standardization statistics), the training-window
descriptive statistics (occlusion reference for attribution), seed and
training metrics. Version ids are content hashes, so retraining with
identical inputs yields an identical id.

Ensembles are bootstrap-resampled members sharing family, hyperparameters
and training window; their spread provides the epistemic part of the
uncertainty pair. Aleatoric uncertainty is min(p, 1-p): an output
probability near 0 or 1 (a large winning class score) means low aleatoric
uncertainty.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from ..data.schema import Dataset, PatientRecord, label_five_year_survival, validate_record
from ..data.stats import StatsSummary, descriptive_stats
from ..errors import SchemaMismatchError, TrainingError, ValidationError
from ..rng import derive_seed
from .encoding import FeatureEncoder
from .logistic import fit_logistic, sigmoid
from .metrics import Metrics, metrics_from_arrays
from .trees import Tree, fit_bagged_trees, forest_predict

PROB_CLIP = 1e-9


class ModelFamily(str, Enum):
    LOGISTIC = "logistic"
    TREE_ENSEMBLE = "tree_ensemble"


_HYPERPARAM_SPECS: dict[ModelFamily, dict[str, tuple[type, float, float]]] = {
    # name -> (type, lo, hi); sanity bounds only, the tuner's search
    # spaces are narrower
    ModelFamily.LOGISTIC: {"lam": (float, 0.0, math.inf)},
    ModelFamily.TREE_ENSEMBLE: {
        "n_trees": (int, 1, 500),
        "max_depth": (int, 1, 64),
        "min_leaf": (int, 1, 10**6),
    },
}


def validate_hyperparams(family: ModelFamily, hyperparams: Mapping) -> dict:
    spec = _HYPERPARAM_SPECS[family]
    unknown = set(hyperparams) - set(spec)
    if unknown:
        raise ValidationError(f"unknown hyperparameters for {family.value}: {sorted(unknown)}")
    missing = set(spec) - set(hyperparams)
    if missing:
        raise ValidationError(f"missing hyperparameters for {family.value}: {sorted(missing)}")
    out = {}
    for name, (typ, lo, hi) in spec.items():
        value = hyperparams[name]
        if typ is int:
            if round(value) != value:
                raise ValidationError(f"hyperparameter {name!r} must be an integer, got {value}")
            value = int(value)
        else:
            value = float(value)
        if not lo <= value <= hi:
            raise ValidationError(f"hyperparameter {name!r}={value} outside [{lo}, {hi}]")
        out[name] = value
    return out


@dataclass(frozen=True)
class Uncertainty:
    aleatoric: float
    epistemic: float

    def to_dict(self) -> dict:
        return {"aleatoric": self.aleatoric, "epistemic": self.epistemic}


@dataclass(frozen=True)
class Prediction:
    survival_probability: float
    uncertainty: Uncertainty
    attribution: Mapping[str, float]
    model_version: str
    step: int | None = None

    def to_dict(self) -> dict:
        return {
            "survival_probability": self.survival_probability,
            "uncertainty": self.uncertainty.to_dict(),
            "attribution": dict(self.attribution),
            "model_version": self.model_version,
            "step": self.step,
        }


@dataclass(frozen=True)
class ModelArtifact:
    version_id: str
    family: ModelFamily
    hyperparams: Mapping
    parameters: Mapping
    encoder: FeatureEncoder
    train_stats: StatsSummary
    train_window: str
    train_seed: int
    trained_at_step: int = 0
    metrics_at_train: Metrics | None = None

    def to_dict(self) -> dict:
        return {
            "version_id": self.version_id,
            "family": self.family.value,
            "hyperparams": dict(self.hyperparams),
            "parameters": _parameters_to_dict(self.family, self.parameters),
            "encoder": self.encoder.to_dict(),
            "train_stats": self.train_stats.to_dict(),
            "train_window": self.train_window,
            "train_seed": self.train_seed,
            "trained_at_step": self.trained_at_step,
            "metrics_at_train": self.metrics_at_train.to_dict() if self.metrics_at_train else None,
            "kind": "model",
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "ModelArtifact":
        family = ModelFamily(doc["family"])
        return cls(
            version_id=doc["version_id"],
            family=family,
            hyperparams=dict(doc["hyperparams"]),
            parameters=_parameters_from_dict(family, doc["parameters"]),
            encoder=FeatureEncoder.from_dict(doc["encoder"]),
            train_stats=StatsSummary.from_dict(doc["train_stats"]),
            train_window=doc["train_window"],
            train_seed=doc["train_seed"],
            trained_at_step=doc["trained_at_step"],
            metrics_at_train=Metrics.from_dict(doc["metrics_at_train"]) if doc.get("metrics_at_train") else None,
        )


@dataclass(frozen=True)
class EnsembleArtifact:
    version_id: str
    members: tuple[ModelArtifact, ...]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValidationError("an ensemble needs at least 2 members")
        head = self.members[0]
        for m in self.members[1:]:
            if (
                m.family != head.family
                or dict(m.hyperparams) != dict(head.hyperparams)
                or m.train_window != head.train_window
            ):
                raise ValidationError("ensemble members must share family, hyperparams and train_window")

    @property
    def family(self) -> ModelFamily:
        return self.members[0].family

    @property
    def hyperparams(self) -> Mapping:
        return self.members[0].hyperparams

    @property
    def train_window(self) -> str:
        return self.members[0].train_window

    @property
    def train_stats(self) -> StatsSummary:
        return self.members[0].train_stats

    @property
    def encoder(self) -> FeatureEncoder:
        return self.members[0].encoder

    @property
    def metrics_at_train(self) -> Metrics | None:
        return self.members[0].metrics_at_train

    @property
    def trained_at_step(self) -> int:
        return self.members[0].trained_at_step

    def to_dict(self) -> dict:
        return {
            "version_id": self.version_id,
            "members": [m.to_dict() for m in self.members],
            "kind": "ensemble",
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "EnsembleArtifact":
        return cls(
            version_id=doc["version_id"],
            members=tuple(ModelArtifact.from_dict(m) for m in doc["members"]),
        )


def artifact_from_dict(doc: Mapping) -> "ModelArtifact | EnsembleArtifact":
    if doc.get("kind") == "ensemble":
        return EnsembleArtifact.from_dict(doc)
    return ModelArtifact.from_dict(doc)


def _parameters_to_dict(family: ModelFamily, parameters: Mapping) -> dict:
    if family is ModelFamily.LOGISTIC:
        return {"w": [float(v) for v in parameters["w"]], "b": float(parameters["b"])}
    return {"trees": [t.to_dict() for t in parameters["trees"]]}


def _parameters_from_dict(family: ModelFamily, doc: Mapping) -> dict:
    if family is ModelFamily.LOGISTIC:
        return {"w": np.asarray(doc["w"], dtype=np.float64), "b": float(doc["b"])}
    return {"trees": [Tree.from_dict(t) for t in doc["trees"]]}


def _version_id(prefix: str, payload) -> str:
    blob = json.dumps(payload, sort_keys=True, default=repr).encode()
    return f"{prefix}-{hashlib.sha256(blob).hexdigest()[:12]}"


def _check_parameters_finite(family: ModelFamily, parameters: Mapping) -> None:
    if family is ModelFamily.LOGISTIC:
        values = [*parameters["w"], parameters["b"]]
        if not all(math.isfinite(float(v)) for v in values):
            raise TrainingError("non-finite logistic parameters")


def train_model(
    family: ModelFamily | str,
    dataset: Dataset,
    hyperparams: Mapping,
    seed: int,
    trained_at_step: int = 0,
) -> ModelArtifact:
    family = ModelFamily(family)
    hyperparams = validate_hyperparams(family, hyperparams)
    labeled = dataset.labeled()
    if len(labeled) == 0:
        raise TrainingError("no records with a definitive five-year label")

    encoder = FeatureEncoder.fit(dataset.schema, labeled.records)
    X = np.ascontiguousarray(encoder.encode(labeled.records))
    y = np.array([label_five_year_survival(r) for r in labeled.records], dtype=np.float64)

    if family is ModelFamily.LOGISTIC:
        w, b = fit_logistic(X, y, hyperparams["lam"])
        parameters: dict = {"w": w, "b": b}
        probs = _clip(sigmoid(X @ w + b))
    else:
        trees = fit_bagged_trees(
            X, y, hyperparams["n_trees"], hyperparams["max_depth"], hyperparams["min_leaf"],
            seed=derive_seed(seed, "forest"),
        )
        parameters = {"trees": trees}
        probs = _clip(forest_predict(trees, X))
    _check_parameters_finite(family, parameters)

    version_id = _version_id(
        "m",
        {
            "family": family.value,
            "hyperparams": hyperparams,
            "window": labeled.window_label,
            "seed": seed,
            "parameters": _parameters_to_dict(family, parameters),
        },
    )
    return ModelArtifact(
        version_id=version_id,
        family=family,
        hyperparams=hyperparams,
        parameters=parameters,
        encoder=encoder,
        train_stats=descriptive_stats(labeled),
        train_window=labeled.window_label,
        train_seed=seed,
        trained_at_step=trained_at_step,
        metrics_at_train=metrics_from_arrays(y, probs),
    )


def bootstrap_ensemble(
    family: ModelFamily | str,
    dataset: Dataset,
    hyperparams: Mapping,
    n_members: int,
    seed: int,
    trained_at_step: int = 0,
) -> EnsembleArtifact:
    if n_members < 2:
        raise ValidationError("n_members must be >= 2")
    family = ModelFamily(family)
    labeled = dataset.labeled()
    if len(labeled) == 0:
        raise TrainingError("no records with a definitive five-year label")
    labels = np.array([label_five_year_survival(r) for r in labeled.records])
    members = []
    for m in range(n_members):
        member_seed = derive_seed(seed, "member", m)
        rng = np.random.default_rng(np.uint64(member_seed))
        for attempt in range(100):
            rows = rng.integers(0, len(labeled), len(labeled))
            if len(np.unique(labels[rows])) == 2:
                break
        else:
            raise TrainingError("could not draw a two-class bootstrap resample")
        resampled = Dataset(
            labeled.schema,
            tuple(labeled.records[i] for i in rows),
            window_label=labeled.window_label,
            validate=False,
        )
        members.append(
            train_model(family, resampled, hyperparams, seed=member_seed, trained_at_step=trained_at_step)
        )
    version_id = _version_id("e", {"members": [m.version_id for m in members]})
    return EnsembleArtifact(version_id=version_id, members=tuple(members))


def _clip(p: np.ndarray) -> np.ndarray:
    return np.clip(p, PROB_CLIP, 1.0 - PROB_CLIP)


def _raw_proba_batch(artifact: ModelArtifact, X: np.ndarray) -> np.ndarray:
    if artifact.family is ModelFamily.LOGISTIC:
        return sigmoid(X @ artifact.parameters["w"] + artifact.parameters["b"])
    return forest_predict(artifact.parameters["trees"], X)


def predict_proba_batch(model: "ModelArtifact | EnsembleArtifact", records: Sequence[PatientRecord]) -> np.ndarray:
    """Clipped survival probabilities for many records (no attribution)."""
    if isinstance(model, EnsembleArtifact):
        # each member standardizes with its own bootstrap-resample statistics
        member_probs = np.stack(
            [_raw_proba_batch(m, m.encoder.encode(records)) for m in model.members]
        )
        return _clip(member_probs.mean(axis=0))
    return _clip(_raw_proba_batch(model, model.encoder.encode(records)))


def predict(
    model: "ModelArtifact | EnsembleArtifact",
    record: PatientRecord,
    reference_stats: StatsSummary | None = None,
    step: int | None = None,
) -> Prediction:
    """Single-record prediction with the (aleatoric, epistemic) pair and occlusion attribution."""
    validate_record(record, model.encoder.schema)
    if reference_stats is None:
        reference_stats = model.train_stats

    if isinstance(model, EnsembleArtifact):
        member_probs = np.array(
            [_raw_proba_batch(m, m.encoder.encode([record]))[0] for m in model.members]
        )
        p = float(_clip(np.array([member_probs.mean()]))[0])
        epistemic = float(member_probs.std())  # population std; identical members give exactly 0
    else:
        p = float(_clip(_raw_proba_batch(model, model.encoder.encode([record])))[0])
        epistemic = 0.0

    from .attribution import instance_attribution  # cycle: attribution predicts via this module

    return Prediction(
        survival_probability=p,
        uncertainty=Uncertainty(aleatoric=min(p, 1.0 - p), epistemic=epistemic),
        attribution=instance_attribution(model, record, reference_stats),
        model_version=model.version_id,
        step=step,
    )


def check_schema(model: "ModelArtifact | EnsembleArtifact", dataset: Dataset) -> None:
    if dataset.schema != model.encoder.schema:
        raise SchemaMismatchError("dataset schema differs from the model's training schema")
