"""CSV ingestion and export.

Header layout: patient_id, diagnosis_year, one column per schema feature
in schema order, then the fixed outcome columns survival_months, event,
decision. Empty outcome cells mean "no outcome yet". Continuous values are
written with repr precision so a write/load round trip reproduces the
dataset exactly.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable

from ..errors import ValidationError
from .schema import (
    Dataset,
    FeatureKind,
    FeatureSchema,
    Outcome,
    OutcomeEvent,
    PatientRecord,
    validate_record,
)

OUTCOME_COLUMNS = ("survival_months", "event", "decision")


def csv_header(schema: FeatureSchema) -> list[str]:
    return ["patient_id", "diagnosis_year", *schema.names, *OUTCOME_COLUMNS]


def parse_csv_rows(rows: Iterable[dict], schema: FeatureSchema, source: str = "<rows>") -> list[PatientRecord]:
    records = []
    for i, row in enumerate(rows):
        where = f"{source} row {i + 1}"
        records.append(parse_row(row, schema, where))
    return records


def parse_row(row: dict, schema: FeatureSchema, where: str) -> PatientRecord:
    def cell(name: str) -> str:
        value = row.get(name)
        if value is None:
            raise ValidationError(f"{where}: missing column {name!r}")
        return str(value).strip()

    patient_id = cell("patient_id")
    try:
        year = int(cell("diagnosis_year"))
    except ValueError:
        raise ValidationError(f"{where}: column 'diagnosis_year': unparseable integer {row.get('diagnosis_year')!r}")

    features: dict[str, float | str] = {}
    for spec in schema.features:
        raw = cell(spec.name)
        if raw == "" and not spec.required:
            continue
        if spec.kind is FeatureKind.CONTINUOUS:
            try:
                features[spec.name] = float(raw)
            except ValueError:
                raise ValidationError(f"{where}: column {spec.name!r}: unparseable number {raw!r}")
        else:
            features[spec.name] = raw

    months_raw = cell("survival_months")
    event_raw = cell("event")
    decision_raw = cell("decision")
    outcome = None
    if months_raw or event_raw:
        if not months_raw or not event_raw:
            raise ValidationError(f"{where}: outcome columns must be all present or all empty")
        try:
            months = int(months_raw)
        except ValueError:
            raise ValidationError(f"{where}: column 'survival_months': unparseable integer {months_raw!r}")
        try:
            event = OutcomeEvent(event_raw)
        except ValueError:
            raise ValidationError(
                f"{where}: column 'event': {event_raw!r} is not one of "
                f"{[e.value for e in OutcomeEvent]}"
            )
        if months < 0:
            raise ValidationError(f"{where}: column 'survival_months': must be non-negative")
        outcome = Outcome(months, event, decision_raw)

    record = PatientRecord(patient_id, year, features, outcome)
    validate_record(record, schema, where=where)
    return record


def load_csv_dataset(path: str | Path, schema: FeatureSchema) -> Dataset:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        return read_csv_dataset(fh, schema, source=str(path))


def read_csv_dataset(fh, schema: FeatureSchema, source: str = "<csv>") -> Dataset:
    reader = csv.DictReader(fh)
    expected = csv_header(schema)
    if reader.fieldnames is None:
        raise ValidationError(f"{source}: empty file")
    if list(reader.fieldnames) != expected:
        raise ValidationError(
            f"{source}: header mismatch; expected {expected}, got {list(reader.fieldnames)}"
        )
    records = parse_csv_rows(reader, schema, source=source)
    return Dataset(schema, tuple(records), window_label=Path(source).stem, validate=False)


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dataset_to_csv(dataset: Dataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(dataset.schema))
    for r in dataset.records:
        row = [r.patient_id, r.diagnosis_year]
        for spec in dataset.schema.features:
            row.append(_format_value(r.features.get(spec.name, "")))
        if r.outcome is None:
            row.extend(["", "", ""])
        else:
            row.extend([r.outcome.survival_months, r.outcome.event.value, r.outcome.decision])
        writer.writerow(row)
    return buf.getvalue()


def write_csv_dataset(dataset: Dataset, path: str | Path) -> None:
    Path(path).write_text(dataset_to_csv(dataset), encoding="utf-8")
