from .encoding import FeatureEncoder
from .logistic import fit_logistic, logistic_grad, logistic_loss, sigmoid
from .metrics import Metrics, evaluate, metrics_from_arrays, rank_auc
from .registry import (
    EnsembleArtifact,
    ModelArtifact,
    ModelFamily,
    Prediction,
    Uncertainty,
    artifact_from_dict,
    bootstrap_ensemble,
    predict,
    predict_proba_batch,
    train_model,
    validate_hyperparams,
)
from .attribution import instance_attribution, permutation_importance

__all__ = [
    "EnsembleArtifact",
    "FeatureEncoder",
    "Metrics",
    "ModelArtifact",
    "ModelFamily",
    "Prediction",
    "Uncertainty",
    "artifact_from_dict",
    "bootstrap_ensemble",
    "evaluate",
    "fit_logistic",
    "instance_attribution",
    "logistic_grad",
    "logistic_loss",
    "metrics_from_arrays",
    "permutation_importance",
    "predict",
    "predict_proba_batch",
    "rank_auc",
    "sigmoid",
    "train_model",
    "validate_hyperparams",
]
