"""Hyperparameter search spaces.

Dimensions are continuous (linear or log scale), integer (sampled uniform,
rounded), or categorical. The unit-cube mapping used by the Bayesian
optimizer places log-scaled dimensions in log space so a squared
exponential kernel sees them on their natural scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import SearchSpaceError


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # continuous | int | categorical
    lo: float | None = None
    hi: float | None = None
    scale: str = "linear"  # continuous only: linear | log
    choices: tuple | None = None

    def __post_init__(self):
        if self.kind in ("continuous", "int"):
            if self.lo is None or self.hi is None or not self.lo < self.hi:
                raise SearchSpaceError(f"dimension {self.name!r}: need lo < hi")
            if self.scale not in ("linear", "log"):
                raise SearchSpaceError(f"dimension {self.name!r}: unknown scale {self.scale!r}")
            if self.scale == "log" and self.lo <= 0:
                raise SearchSpaceError(f"dimension {self.name!r}: log scale requires lo > 0")
            if self.kind == "int" and self.scale != "linear":
                raise SearchSpaceError(f"dimension {self.name!r}: int dimensions are linear")
        elif self.kind == "categorical":
            if not self.choices or len(self.choices) < 2:
                raise SearchSpaceError(f"dimension {self.name!r}: need >= 2 choices")
        else:
            raise SearchSpaceError(f"dimension {self.name!r}: unknown kind {self.kind!r}")

    def sample(self, rng: np.random.Generator):
        if self.kind == "categorical":
            return self.choices[int(rng.integers(0, len(self.choices)))]
        if self.kind == "int":
            return int(rng.integers(int(self.lo), int(self.hi) + 1))
        if self.scale == "log":
            return float(math.exp(rng.uniform(math.log(self.lo), math.log(self.hi))))
        return float(rng.uniform(self.lo, self.hi))

    def contains(self, value) -> bool:
        if self.kind == "categorical":
            return value in self.choices
        if self.kind == "int":
            return float(value) == int(value) and self.lo <= value <= self.hi
        return self.lo <= value <= self.hi

    def to_unit(self, value) -> float:
        if self.kind == "categorical":
            raise SearchSpaceError("categorical dimensions have no unit coordinate")
        if self.scale == "log":
            return (math.log(value) - math.log(self.lo)) / (math.log(self.hi) - math.log(self.lo))
        return (float(value) - self.lo) / (self.hi - self.lo)

    def from_unit(self, u: float):
        u = min(1.0, max(0.0, u))
        if self.kind == "categorical":
            raise SearchSpaceError("categorical dimensions have no unit coordinate")
        if self.scale == "log":
            value = math.exp(math.log(self.lo) + u * (math.log(self.hi) - math.log(self.lo)))
            return float(min(self.hi, max(self.lo, value)))
        value = self.lo + u * (self.hi - self.lo)
        if self.kind == "int":
            return int(min(self.hi, max(self.lo, round(value))))
        return float(value)

    def to_dict(self) -> dict:
        d: dict = {"name": self.name, "kind": self.kind}
        if self.kind == "categorical":
            d["choices"] = list(self.choices)
        else:
            d.update(lo=self.lo, hi=self.hi, scale=self.scale)
        return d

    @classmethod
    def from_dict(cls, doc: Mapping) -> "ParamSpec":
        return cls(
            name=doc["name"],
            kind=doc["kind"],
            lo=doc.get("lo"),
            hi=doc.get("hi"),
            scale=doc.get("scale", "linear"),
            choices=tuple(doc["choices"]) if "choices" in doc else None,
        )


@dataclass(frozen=True)
class SearchSpace:
    params: tuple[ParamSpec, ...]

    def __post_init__(self):
        names = [p.name for p in self.params]
        if len(set(names)) != len(names):
            raise SearchSpaceError("dimension names must be unique")
        if not self.params:
            raise SearchSpaceError("a search space needs at least one dimension")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    @property
    def has_categorical(self) -> bool:
        return any(p.kind == "categorical" for p in self.params)

    def sample(self, rng: np.random.Generator) -> dict:
        return {p.name: p.sample(rng) for p in self.params}

    def contains(self, hyperparams: Mapping) -> bool:
        if set(hyperparams) != set(self.names):
            return False
        return all(p.contains(hyperparams[p.name]) for p in self.params)

    def to_unit(self, hyperparams: Mapping) -> np.ndarray:
        return np.array([p.to_unit(hyperparams[p.name]) for p in self.params])

    def from_unit(self, u: Sequence[float]) -> dict:
        return {p.name: p.from_unit(float(v)) for p, v in zip(self.params, u)}

    def to_dict(self) -> dict:
        return {"params": [p.to_dict() for p in self.params]}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "SearchSpace":
        return cls(params=tuple(ParamSpec.from_dict(p) for p in doc["params"]))
