"""Random search baseline and the shared trial/result records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..errors import SearchSpaceError
from ..rng import rng_for
from .space import SearchSpace

Objective = Callable[[Mapping], float]


@dataclass(frozen=True)
class Trial:
    hyperparams: Mapping
    score: float | None
    failed: bool = False
    error: str | None = None
    surrogate_fallback: bool = False

    def to_dict(self) -> dict:
        return {
            "hyperparams": dict(self.hyperparams),
            "score": self.score,
            "failed": self.failed,
            "error": self.error,
            "surrogate_fallback": self.surrogate_fallback,
        }


@dataclass(frozen=True)
class TunerResult:
    best_hyperparams: Mapping | None
    best_score: float | None
    trials: tuple[Trial, ...]
    budget_used: int
    seed: int

    def best_so_far(self) -> list[float]:
        """Running maximum over successful trials (skips failures)."""
        curve: list[float] = []
        best = None
        for t in self.trials:
            if not t.failed:
                best = t.score if best is None else max(best, t.score)
            if best is not None:
                curve.append(best)
        return curve

    def to_dict(self) -> dict:
        return {
            "best_hyperparams": dict(self.best_hyperparams) if self.best_hyperparams else None,
            "best_score": self.best_score,
            "trials": [t.to_dict() for t in self.trials],
            "budget_used": self.budget_used,
            "seed": self.seed,
        }


def run_trial(objective: Objective, hyperparams: Mapping, fallback: bool = False) -> Trial:
    try:
        score = float(objective(hyperparams))
    except Exception as exc:
        return Trial(hyperparams, None, failed=True, error=f"{type(exc).__name__}: {exc}", surrogate_fallback=fallback)
    return Trial(hyperparams, score, surrogate_fallback=fallback)


def collect(trials: list[Trial], seed: int) -> TunerResult:
    best: Trial | None = None
    for t in trials:
        if not t.failed and (best is None or t.score > best.score):
            best = t
    return TunerResult(
        best_hyperparams=best.hyperparams if best else None,
        best_score=best.score if best else None,
        trials=tuple(trials),
        budget_used=len(trials),
        seed=seed,
    )


def random_search(space: SearchSpace, objective: Objective, budget: int, seed: int) -> TunerResult:
    if budget < 1:
        raise SearchSpaceError("budget must be >= 1")
    rng = rng_for(seed, "random_search")
    trials = [run_trial(objective, space.sample(rng)) for _ in range(budget)]
    return collect(trials, seed)
