"""Family selection: tune each candidate family, keep the best.

The objective for a family is the validation AUC of a model trained on the
training window with the trial's hyperparameters. Per-trial training seeds
derive from (run seed, family, trial index), so a rerun reproduces the
whole report. Ties between families go to the earlier entry of
FAMILY_ORDER (the simpler, more interpretable model).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..data.schema import Dataset
from ..errors import TrainingError
from ..models import Metrics, ModelFamily, evaluate, train_model
from ..rng import derive_seed
from .bayes import bayes_opt
from .search import TunerResult
from .space import ParamSpec, SearchSpace

FAMILY_ORDER = (ModelFamily.LOGISTIC, ModelFamily.TREE_ENSEMBLE)

DEFAULT_SPACES: dict[ModelFamily, SearchSpace] = {
    ModelFamily.LOGISTIC: SearchSpace(
        params=(ParamSpec("lam", "continuous", lo=1e-2, hi=1e2, scale="log"),)
    ),
    ModelFamily.TREE_ENSEMBLE: SearchSpace(
        params=(
            ParamSpec("n_trees", "int", lo=5, hi=25),
            ParamSpec("max_depth", "int", lo=2, hi=6),
            ParamSpec("min_leaf", "int", lo=5, hi=50),
        )
    ),
}


@dataclass(frozen=True)
class SelectionReport:
    family_results: Mapping[str, TunerResult]
    chosen_family: ModelFamily
    chosen_hyperparams: Mapping
    validation_metrics: Mapping[str, Metrics]  # best-of-family refit, scored on validation
    protocol: str
    seed: int

    def to_dict(self) -> dict:
        return {
            "family_results": {k: v.to_dict() for k, v in self.family_results.items()},
            "chosen_family": self.chosen_family.value,
            "chosen_hyperparams": dict(self.chosen_hyperparams),
            "validation_metrics": {k: m.to_dict() for k, m in self.validation_metrics.items()},
            "protocol": self.protocol,
            "seed": self.seed,
        }


def select_model(
    train: Dataset,
    validation: Dataset,
    families: Sequence[ModelFamily | str],
    budget_per_family: int,
    seed: int,
) -> SelectionReport:
    families = [ModelFamily(f) for f in families]
    if not families:
        raise TrainingError("select_model needs at least one family")
    train_labeled = train.labeled()
    val_labeled = validation.labeled()
    if len(train_labeled) == 0 or len(val_labeled) == 0:
        raise TrainingError("select_model needs labeled training and validation data")

    family_results: dict[str, TunerResult] = {}
    for family in families:
        trial_counter = {"i": 0}

        def objective(hyperparams, family=family, trial_counter=trial_counter):
            i = trial_counter["i"]
            trial_counter["i"] += 1
            model = train_model(
                family, train_labeled, hyperparams, seed=derive_seed(seed, family.value, i)
            )
            return evaluate(model, val_labeled).auc

        family_results[family.value] = bayes_opt(
            DEFAULT_SPACES[family], objective, budget_per_family, seed=derive_seed(seed, family.value)
        )

    chosen: ModelFamily | None = None
    best_score = None
    for family in FAMILY_ORDER:  # canonical order makes ties go to the simpler family
        if family not in families:
            continue
        result = family_results[family.value]
        if result.best_score is not None and (best_score is None or result.best_score > best_score):
            chosen, best_score = family, result.best_score
    if chosen is None:
        raise TrainingError("every trial of every family failed")

    validation_metrics: dict[str, Metrics] = {}
    for family in families:
        result = family_results[family.value]
        if result.best_hyperparams is None:
            continue
        refit = train_model(
            family, train_labeled, result.best_hyperparams, seed=derive_seed(seed, family.value, "refit")
        )
        validation_metrics[family.value] = evaluate(refit, val_labeled)

    return SelectionReport(
        family_results=family_results,
        chosen_family=chosen,
        chosen_hyperparams=family_results[chosen.value].best_hyperparams,
        validation_metrics=validation_metrics,
        protocol=(
            f"per family: bayes_opt budget {budget_per_family} maximizing validation AUC; "
            f"train n={len(train_labeled)} ({train_labeled.window_label}), "
            f"validation n={len(val_labeled)} ({val_labeled.window_label})"
        ),
        seed=seed,
    )
