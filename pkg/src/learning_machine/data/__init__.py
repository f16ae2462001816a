from .schema import (
    Dataset,
    FeatureKind,
    FeatureSchema,
    FeatureSpec,
    Outcome,
    OutcomeEvent,
    PatientRecord,
    default_schema,
    has_definitive_label,
    label_five_year_survival,
    window,
)
from .stats import StatsSummary, descriptive_stats
from .synthetic import SyntheticConfig, generate_synthetic_cohort
from .io import load_csv_dataset, write_csv_dataset

__all__ = [
    "Dataset",
    "FeatureKind",
    "FeatureSchema",
    "FeatureSpec",
    "Outcome",
    "OutcomeEvent",
    "PatientRecord",
    "StatsSummary",
    "SyntheticConfig",
    "default_schema",
    "descriptive_stats",
    "generate_synthetic_cohort",
    "has_definitive_label",
    "label_five_year_survival",
    "load_csv_dataset",
    "window",
    "write_csv_dataset",
]
