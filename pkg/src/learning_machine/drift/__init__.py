from .stat_tests import (
    TestResult,
    boundary_adherence,
    chi_square_categorical,
    ks_two_sample,
    output_drift,
)
from .detection import DetectionResult, logistic_detection
from .report import DriftReport, Verdict, VerdictPolicy, benjamini_hochberg, drift_report

__all__ = [
    "DetectionResult",
    "DriftReport",
    "TestResult",
    "Verdict",
    "VerdictPolicy",
    "benjamini_hochberg",
    "boundary_adherence",
    "chi_square_categorical",
    "drift_report",
    "ks_two_sample",
    "logistic_detection",
    "output_drift",
]
