import numpy as np
import pytest

from learning_machine.data import Dataset, Outcome, OutcomeEvent, default_schema
from learning_machine.errors import TrainingError
from learning_machine.models import ModelFamily
from learning_machine.tuning import select_model

from test_data_schema import make_record


def linear_dataset(n, seed, label="w"):
    """Labels from a linear logit of age and tumour_size (favors the logistic family)."""
    rng = np.random.default_rng(seed)
    records = []
    for i in range(n):
        age = float(rng.uniform(30, 90))
        size = float(rng.uniform(5, 60))
        logit = 0.8 - 0.08 * (size - 30) - 0.04 * (age - 60)
        survived = rng.random() < 1 / (1 + np.exp(-logit))
        months = 70 if survived else 20
        event = OutcomeEvent.ALIVE_OR_CENSORED if survived else OutcomeEvent.DIED_OF_DISEASE
        records.append(
            make_record(
                pid=f"{label}{i}", age=age, size=size,
                grade=str(rng.integers(1, 5)),
                outcome=Outcome(months, event),
            )
        )
    return Dataset(default_schema(), tuple(records), window_label=label)


class TestSelectModel:
    def test_single_family_chosen(self):
        train, val = linear_dataset(200, 1, "tr"), linear_dataset(120, 2, "va")
        report = select_model(train, val, ["logistic"], budget_per_family=5, seed=0)
        assert report.chosen_family is ModelFamily.LOGISTIC
        assert report.family_results["logistic"].best_score is not None
        assert "logistic" in report.validation_metrics

    def test_linear_labels_prefer_logistic(self):
        wins = 0
        for seed in range(6):
            train = linear_dataset(250, 100 + seed, "tr")
            val = linear_dataset(150, 200 + seed, "va")
            report = select_model(
                train, val, ["logistic", "tree_ensemble"], budget_per_family=7, seed=seed
            )
            logi = report.family_results["logistic"].best_score
            tree = report.family_results["tree_ensemble"].best_score
            if logi >= tree:
                wins += 1
        assert wins >= 4

    def test_deterministic_per_seed(self):
        train, val = linear_dataset(150, 5, "tr"), linear_dataset(90, 6, "va")
        a = select_model(train, val, ["logistic"], budget_per_family=5, seed=3)
        b = select_model(train, val, ["logistic"], budget_per_family=5, seed=3)
        assert a.to_dict() == b.to_dict()

    def test_unlabeled_data_rejected(self):
        empty = Dataset(default_schema(), (make_record(),))
        labeled = linear_dataset(50, 7)
        with pytest.raises(TrainingError):
            select_model(empty, labeled, ["logistic"], 5, 0)
