"""Synthetic SEER-like cohort generator with configurable temporal drift.

Each year's cohort is drawn from per-feature base distributions whose
parameters move linearly with (year - base_year) according to the drift
coefficients. With all coefficients at zero, every year is an i.i.d. draw
from the same law. Survival is sampled from a logistic model of the
standardized features; survival_logit_trend shifts its intercept per year,
which realizes regimes where a model trained on early years underestimates
survival later on.

Continuous feature effects enter the survival logit standardized by the
base-year mean/std, so coefficient scales do not depend on units.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from ..errors import ConfigError
from .schema import Dataset, Outcome, OutcomeEvent, PatientRecord, default_schema

_DECISIONS = ("surgery", "surgery+radio", "chemo", "hormone")


@dataclass(frozen=True)
class SyntheticConfig:
    base_year: int = 1982
    years: int = 10
    patients_per_year: int = 500
    seed: int = 0

    # base distributions
    age_mean: float = 58.0
    age_std: float = 11.0
    tumour_size_mean: float = 25.0
    tumour_size_std: float = 9.0
    grade_probs: tuple[float, ...] = (0.2, 0.4, 0.3, 0.1)
    stage_probs: tuple[float, ...] = (0.35, 0.35, 0.2, 0.1)
    er_pos_prob: float = 0.7

    # survival model (standardized continuous effects, category-index effects)
    survival_intercept: float = 1.6
    coef_age: float = -0.35
    coef_tumour_size: float = -0.6
    coef_grade: float = -0.35
    coef_stage: float = -0.75
    coef_er_pos: float = 0.5
    censor_prob: float = 0.05

    # drift coefficients, per year since base_year
    tumour_size_trend: float = 0.0
    age_mean_trend: float = 0.0
    survival_logit_trend: float = 0.0
    grade_prob_trend: tuple[float, ...] = (0.0, 0.0, 0.0, 0.0)
    stage_prob_trend: tuple[float, ...] = (0.0, 0.0, 0.0, 0.0)
    er_pos_trend: float = 0.0

    def __post_init__(self):
        if self.years <= 0 or self.patients_per_year <= 0:
            raise ConfigError("years and patients_per_year must be positive")
        if len(self.grade_probs) != 4 or len(self.stage_probs) != 4:
            raise ConfigError("grade_probs and stage_probs must have 4 entries")
        if self.age_std <= 0 or self.tumour_size_std <= 0:
            raise ConfigError("feature standard deviations must be positive")
        if not 0.0 <= self.censor_prob < 1.0:
            raise ConfigError("censor_prob must be in [0, 1)")

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("grade_probs", "stage_probs", "grade_prob_trend", "stage_prob_trend"):
            d[key] = list(d[key])
        return d

    @classmethod
    def from_dict(cls, doc: dict) -> "SyntheticConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(doc)
        for key in ("grade_probs", "stage_probs", "grade_prob_trend", "stage_prob_trend"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json_file(cls, path: str | Path) -> "SyntheticConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_dict(doc)


def _drifted_probs(base: tuple[float, ...], trend: tuple[float, ...], dy: int) -> np.ndarray:
    p = np.asarray(base, dtype=np.float64) + np.asarray(trend, dtype=np.float64) * dy
    p = np.clip(p, 1e-9, None)
    return p / p.sum()


def _sample_categorical(rng: np.random.Generator, probs: np.ndarray, n: int) -> np.ndarray:
    return np.searchsorted(np.cumsum(probs), rng.random(n), side="right").clip(0, len(probs) - 1)


def generate_synthetic_cohort(config: SyntheticConfig) -> Dataset:
    schema = default_schema()
    rng = np.random.default_rng(np.uint64(config.seed))
    n = config.patients_per_year
    grades = schema["grade"].categories
    stages = schema["stage"].categories
    age_lo, age_hi = schema["age"].range
    ts_lo, ts_hi = schema["tumour_size"].range

    records: list[PatientRecord] = []
    for dy in range(config.years):
        year = config.base_year + dy
        age = np.clip(
            rng.normal(config.age_mean + config.age_mean_trend * dy, config.age_std, n),
            age_lo,
            age_hi,
        )
        tumour = np.clip(
            rng.normal(
                config.tumour_size_mean + config.tumour_size_trend * dy,
                config.tumour_size_std,
                n,
            ),
            ts_lo,
            ts_hi,
        )
        grade_idx = _sample_categorical(rng, _drifted_probs(config.grade_probs, config.grade_prob_trend, dy), n)
        stage_idx = _sample_categorical(rng, _drifted_probs(config.stage_probs, config.stage_prob_trend, dy), n)
        er_p = float(np.clip(config.er_pos_prob + config.er_pos_trend * dy, 0.0, 1.0))
        er_pos = rng.random(n) < er_p

        logit = (
            config.survival_intercept
            + config.survival_logit_trend * dy
            + config.coef_age * (age - config.age_mean) / config.age_std
            + config.coef_tumour_size * (tumour - config.tumour_size_mean) / config.tumour_size_std
            + config.coef_grade * grade_idx
            + config.coef_stage * stage_idx
            + config.coef_er_pos * er_pos
        )
        survived = rng.random(n) < 0.5 * (1.0 + np.tanh(0.5 * logit))
        censored = rng.random(n) < config.censor_prob

        months_if_died = rng.integers(0, 60, n)
        months_if_survived = 60 + rng.integers(0, 121, n)
        months_if_censored = rng.integers(0, 60, n)
        decisions = rng.integers(0, len(_DECISIONS), n)

        for i in range(n):
            if censored[i]:
                outcome = Outcome(int(months_if_censored[i]), OutcomeEvent.ALIVE_OR_CENSORED, _DECISIONS[decisions[i]])
            elif survived[i]:
                outcome = Outcome(int(months_if_survived[i]), OutcomeEvent.ALIVE_OR_CENSORED, _DECISIONS[decisions[i]])
            else:
                outcome = Outcome(int(months_if_died[i]), OutcomeEvent.DIED_OF_DISEASE, _DECISIONS[decisions[i]])
            records.append(
                PatientRecord(
                    patient_id=f"p{year}-{i:05d}",
                    diagnosis_year=year,
                    features={
                        "age": float(age[i]),
                        "tumour_size": float(tumour[i]),
                        "grade": grades[grade_idx[i]],
                        "stage": stages[stage_idx[i]],
                        "er_status": "pos" if er_pos[i] else "neg",
                    },
                    outcome=outcome,
                )
            )
    label = f"{config.base_year}-{config.base_year + config.years - 1}"
    return Dataset(schema, tuple(records), window_label=label, validate=False)
