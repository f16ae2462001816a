"""Patient-data schema, record validation, windowing and outcome labels.

Everything here is immutable after construction; datasets are validated
eagerly so any Dataset instance is schema-clean by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from ..errors import EmptyWindowError, MissingOutcomeError, ValidationError

FIVE_YEAR_MONTHS = 60


class FeatureKind(str, Enum):
    CONTINUOUS = "continuous"
    CATEGORICAL = "categorical"


class OutcomeEvent(str, Enum):
    DIED_OF_DISEASE = "died_of_disease"
    ALIVE_OR_CENSORED = "alive_or_censored"


@dataclass(frozen=True)
class FeatureSpec:
    name: str
    kind: FeatureKind
    unit: str = ""
    range: tuple[float, float] | None = None  # continuous only
    categories: tuple[str, ...] | None = None  # categorical only
    required: bool = True

    def __post_init__(self):
        if not self.name:
            raise ValidationError("feature name must be non-empty")
        if self.kind is FeatureKind.CONTINUOUS:
            if self.range is None:
                raise ValidationError(f"continuous feature {self.name!r} needs a range")
            lo, hi = self.range
            if not lo < hi:
                raise ValidationError(f"feature {self.name!r}: range min {lo} must be < max {hi}")
        else:
            if not self.categories or len(self.categories) < 2:
                raise ValidationError(f"categorical feature {self.name!r} needs >= 2 categories")
            if len(set(self.categories)) != len(self.categories):
                raise ValidationError(f"feature {self.name!r}: duplicate categories")


@dataclass(frozen=True)
class FeatureSchema:
    features: tuple[FeatureSpec, ...]

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise ValidationError("feature names must be unique")
        object.__setattr__(self, "_by_name", {f.name: f for f in self.features})

    def __getitem__(self, name: str) -> FeatureSpec:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    def continuous(self) -> tuple[FeatureSpec, ...]:
        return tuple(f for f in self.features if f.kind is FeatureKind.CONTINUOUS)

    def categorical(self) -> tuple[FeatureSpec, ...]:
        return tuple(f for f in self.features if f.kind is FeatureKind.CATEGORICAL)

    def to_dict(self) -> dict:
        out = []
        for f in self.features:
            d: dict = {"name": f.name, "kind": f.kind.value, "unit": f.unit, "required": f.required}
            if f.range is not None:
                d["range"] = list(f.range)
            if f.categories is not None:
                d["categories"] = list(f.categories)
            out.append(d)
        return {"features": out}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "FeatureSchema":
        specs = []
        for d in doc["features"]:
            specs.append(
                FeatureSpec(
                    name=d["name"],
                    kind=FeatureKind(d["kind"]),
                    unit=d.get("unit", ""),
                    range=tuple(d["range"]) if "range" in d else None,
                    categories=tuple(d["categories"]) if "categories" in d else None,
                    required=d.get("required", True),
                )
            )
        return cls(features=tuple(specs))


def default_schema() -> FeatureSchema:
    """SEER-like breast cancer prognosis features."""
    return FeatureSchema(
        features=(
            FeatureSpec("age", FeatureKind.CONTINUOUS, unit="years", range=(18.0, 110.0)),
            FeatureSpec("tumour_size", FeatureKind.CONTINUOUS, unit="mm", range=(0.0, 200.0)),
            FeatureSpec("grade", FeatureKind.CATEGORICAL, categories=("1", "2", "3", "4")),
            FeatureSpec("stage", FeatureKind.CATEGORICAL, categories=("I", "II", "III", "IV")),
            FeatureSpec("er_status", FeatureKind.CATEGORICAL, categories=("neg", "pos")),
        )
    )


@dataclass(frozen=True)
class Outcome:
    survival_months: int
    event: OutcomeEvent
    decision: str = ""
    recorded_at_step: int | None = None

    def __post_init__(self):
        if self.survival_months < 0:
            raise ValidationError("survival_months must be non-negative")


@dataclass(frozen=True)
class PatientRecord:
    patient_id: str
    diagnosis_year: int
    features: Mapping[str, float | str]
    outcome: Outcome | None = None


def validate_record(record: PatientRecord, schema: FeatureSchema, where: str = "") -> None:
    """Raise ValidationError naming the offending feature if the record is invalid."""
    ctx = f"{where}: " if where else ""
    for spec in schema.features:
        if spec.name not in record.features:
            if spec.required:
                raise ValidationError(f"{ctx}missing required feature {spec.name!r}")
            continue
        value = record.features[spec.name]
        if spec.kind is FeatureKind.CONTINUOUS:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"{ctx}feature {spec.name!r}: expected a number, got {value!r}")
            lo, hi = spec.range  # type: ignore[misc]
            if not (lo <= float(value) <= hi):
                raise ValidationError(
                    f"{ctx}feature {spec.name!r}: value {value} outside range [{lo}, {hi}]"
                )
        else:
            if value not in spec.categories:  # type: ignore[operator]
                raise ValidationError(
                    f"{ctx}feature {spec.name!r}: value {value!r} not in categories "
                    f"{set(spec.categories)}"  # type: ignore[arg-type]
                )
    for name in record.features:
        if name not in schema:
            raise ValidationError(f"{ctx}unknown feature {name!r}")


@dataclass(frozen=True)
class Dataset:
    schema: FeatureSchema
    records: tuple[PatientRecord, ...]
    window_label: str = ""
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        if self.validate:
            for i, record in enumerate(self.records):
                validate_record(record, self.schema, where=f"record {i} ({record.patient_id})")

    def __len__(self) -> int:
        return len(self.records)

    def years(self) -> tuple[int, ...]:
        return tuple(sorted({r.diagnosis_year for r in self.records}))

    def feature_values(self, name: str) -> list:
        return [r.features[name] for r in self.records]

    def labeled(self) -> "Dataset":
        """Subset with a definitive five-year label (censoring before 60 months drops out)."""
        kept = tuple(r for r in self.records if has_definitive_label(r))
        return Dataset(self.schema, kept, self.window_label, validate=False)


def window(dataset: Dataset, year_range: tuple[int, int]) -> Dataset:
    start, end = year_range
    if start > end:
        raise ValidationError(f"window start {start} must be <= end {end}")
    kept = tuple(r for r in dataset.records if start <= r.diagnosis_year <= end)
    if not kept:
        raise EmptyWindowError(start, end)
    return Dataset(dataset.schema, kept, window_label=f"{start}-{end}", validate=False)


def has_definitive_label(record: PatientRecord) -> bool:
    """True when the five-year outcome is knowable from the record."""
    if record.outcome is None:
        return False
    o = record.outcome
    return o.survival_months >= FIVE_YEAR_MONTHS or o.event is OutcomeEvent.DIED_OF_DISEASE


def label_five_year_survival(record: PatientRecord) -> bool:
    if record.outcome is None:
        raise MissingOutcomeError(f"record {record.patient_id} has no outcome yet")
    return record.outcome.survival_months >= FIVE_YEAR_MONTHS


def labels_for(records: Iterable[PatientRecord]) -> list[bool]:
    return [label_five_year_survival(r) for r in records]
