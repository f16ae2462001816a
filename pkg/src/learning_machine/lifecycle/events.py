"""Append-only event log entries.

One JSON object per line; indices are dense and strictly increasing, so a
replay of any prefix is deterministic. Payloads are kind-specific plain
dicts (JSON-safe values only).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Mapping


class EventKind(str, Enum):
    PREDICT_REQUESTED = "PredictRequested"
    OUTCOME_POSTED = "OutcomePosted"
    BATCH_INGESTED = "BatchIngested"
    DRIFT_REPORT_COMPUTED = "DriftReportComputed"
    RETRAIN_STARTED = "RetrainStarted"
    PROMOTED = "Promoted"


@dataclass(frozen=True)
class Event:
    index: int
    kind: EventKind
    payload: Mapping
    step: int

    def to_json_line(self) -> str:
        return json.dumps(
            {"index": self.index, "kind": self.kind.value, "payload": dict(self.payload), "step": self.step},
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json_line(cls, line: str) -> "Event":
        doc = json.loads(line)
        return cls(
            index=doc["index"],
            kind=EventKind(doc["kind"]),
            payload=doc["payload"],
            step=doc["step"],
        )
