"""Whole-dataset drift report with multiple-testing correction.

Per feature: KS (continuous) or Pearson chi-square (categorical), plus a
boundary-adherence score for continuous features. Across all per-feature
p-values, Benjamini-Hochberg at level alpha sets the corrected flags. A
domain-classifier detection score is always computed; KS on prediction
scores and on uncertainty values is included when those are supplied.

Verdict policy (each threshold configurable):
  drift  - any BH-corrected flag, or detection score above
           detection_threshold, or prediction-score KS p below alpha;
  warn   - any single feature's raw p below alpha / n_features
           (family-wise scaled so same-law windows rarely warn);
  none   - otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from ..data.schema import Dataset, FeatureKind
from ..errors import SchemaMismatchError, ValidationError
from .detection import DetectionResult, logistic_detection
from .stat_tests import TestResult, boundary_adherence, chi_square_categorical, ks_two_sample, output_drift


class Verdict(str, Enum):
    NONE = "none"
    WARN = "warn"
    DRIFT = "drift"


@dataclass(frozen=True)
class VerdictPolicy:
    alpha: float = 0.05
    detection_threshold: float = 0.2

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "detection_threshold": self.detection_threshold}


def benjamini_hochberg(p_values: Sequence[float], alpha: float) -> list[bool]:
    """BH step-up procedure; returns a reject flag per input p-value.

    alpha <= 0 rejects nothing, whatever the p-values.
    """
    m = len(p_values)
    if m == 0 or alpha <= 0.0:
        return [False] * m
    p = np.asarray(p_values, dtype=np.float64)
    order = np.argsort(p, kind="stable")
    k_star = 0
    for rank, idx in enumerate(order, start=1):
        if p[idx] <= alpha * rank / m:
            k_star = rank
    reject = np.zeros(m, dtype=bool)
    reject[order[:k_star]] = True
    return reject.tolist()


@dataclass(frozen=True)
class DriftReport:
    reference_id: str
    window_id: str
    feature_tests: Mapping[str, TestResult]
    boundary_scores: Mapping[str, float]
    corrected_flags: Mapping[str, bool]
    detection: DetectionResult
    output_score_drift: TestResult | None
    output_uncertainty_drift: TestResult | None
    alpha: float
    policy: VerdictPolicy
    verdict: Verdict
    created_at: str
    report_id: str = ""
    flagged: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "flagged", tuple(sorted(k for k, v in self.corrected_flags.items() if v))
        )

    def to_dict(self) -> dict:
        return {
            "report_id": self.report_id,
            "reference_id": self.reference_id,
            "window_id": self.window_id,
            "feature_tests": {k: v.to_dict() for k, v in self.feature_tests.items()},
            "boundary_scores": dict(self.boundary_scores),
            "corrected_flags": dict(self.corrected_flags),
            "detection": self.detection.to_dict(),
            "output_score_drift": self.output_score_drift.to_dict() if self.output_score_drift else None,
            "output_uncertainty_drift": (
                self.output_uncertainty_drift.to_dict() if self.output_uncertainty_drift else None
            ),
            "alpha": self.alpha,
            "policy": self.policy.to_dict(),
            "verdict": self.verdict.value,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "DriftReport":
        return cls(
            reference_id=doc["reference_id"],
            window_id=doc["window_id"],
            feature_tests={k: TestResult.from_dict(v) for k, v in doc["feature_tests"].items()},
            boundary_scores=dict(doc["boundary_scores"]),
            corrected_flags=dict(doc["corrected_flags"]),
            detection=DetectionResult.from_dict(doc["detection"]),
            output_score_drift=(
                TestResult.from_dict(doc["output_score_drift"]) if doc.get("output_score_drift") else None
            ),
            output_uncertainty_drift=(
                TestResult.from_dict(doc["output_uncertainty_drift"])
                if doc.get("output_uncertainty_drift")
                else None
            ),
            alpha=doc["alpha"],
            policy=VerdictPolicy(**doc["policy"]),
            verdict=Verdict(doc["verdict"]),
            created_at=doc["created_at"],
            report_id=doc.get("report_id", ""),
        )


def drift_report(
    reference: Dataset,
    window: Dataset,
    seed: int,
    ref_scores: Sequence[float] | None = None,
    new_scores: Sequence[float] | None = None,
    ref_uncertainties: Sequence[float] | None = None,
    new_uncertainties: Sequence[float] | None = None,
    alpha: float = 0.05,
    policy: VerdictPolicy | None = None,
    report_id: str = "",
) -> DriftReport:
    if reference.schema != window.schema:
        raise SchemaMismatchError("drift_report: reference and window must share a schema")
    if not 0.0 <= alpha < 1.0:
        raise ValidationError("alpha must be in [0, 1)")
    policy = policy or VerdictPolicy(alpha=alpha)

    feature_tests: dict[str, TestResult] = {}
    boundary_scores: dict[str, float] = {}
    for spec in reference.schema.features:
        ref_vals = reference.feature_values(spec.name)
        new_vals = window.feature_values(spec.name)
        if spec.kind is FeatureKind.CONTINUOUS:
            feature_tests[spec.name] = ks_two_sample(ref_vals, new_vals)
            boundary_scores[spec.name] = boundary_adherence(ref_vals, new_vals)
        else:
            categories = spec.categories  # type: ignore[union-attr]
            ref_freq = {c: ref_vals.count(c) for c in categories}
            new_freq = {c: new_vals.count(c) for c in categories}
            feature_tests[spec.name] = chi_square_categorical(ref_freq, new_freq)

    names = list(feature_tests)
    flags = benjamini_hochberg([feature_tests[n].p_value for n in names], alpha)
    corrected_flags = dict(zip(names, flags))

    detection = logistic_detection(reference, window, seed=seed)

    score_drift = None
    if ref_scores is not None and new_scores is not None:
        score_drift = output_drift(ref_scores, new_scores)
    uncertainty_drift = None
    if ref_uncertainties is not None and new_uncertainties is not None:
        uncertainty_drift = ks_two_sample(ref_uncertainties, new_uncertainties)
        uncertainty_drift = TestResult(
            uncertainty_drift.statistic,
            uncertainty_drift.p_value,
            uncertainty_drift.n_ref,
            uncertainty_drift.n_new,
            method="ks_uncertainty",
        )

    drift = (
        any(flags)
        or detection.score > policy.detection_threshold
        or (score_drift is not None and score_drift.p_value < alpha)
    )
    warn_level = alpha / max(1, len(names))
    warn = any(feature_tests[n].p_value < warn_level for n in names)
    verdict = Verdict.DRIFT if drift else (Verdict.WARN if warn else Verdict.NONE)

    return DriftReport(
        reference_id=reference.window_label or "reference",
        window_id=window.window_label or "window",
        feature_tests=feature_tests,
        boundary_scores=boundary_scores,
        corrected_flags=corrected_flags,
        detection=detection,
        output_score_drift=score_drift,
        output_uncertainty_drift=uncertainty_drift,
        alpha=alpha,
        policy=policy,
        verdict=verdict,
        created_at=datetime.now(timezone.utc).isoformat(),
        report_id=report_id,
    )
