"""Bayesian optimization with expected improvement.

Latin-hypercube-style initial design of max(4, 2*d) points, then a loop of
GP fit -> EI argmax over 1024 scrambled-Sobol candidates regenerated per
iteration from the run seed -> evaluate. Failed objective evaluations are
recorded and excluded from the surrogate; a surrogate that cannot be
factorized even after jitter escalation downgrades that iteration to a
random draw, flagged on the trial.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import ndtr
from scipy.stats import qmc

from ..errors import SearchSpaceError
from ..rng import derive_seed, rng_for
from .gp import GaussianProcess, GPFitError
from .search import Objective, Trial, TunerResult, collect, run_trial
from .space import SearchSpace

N_CANDIDATES = 1024
_SIGMA_FLOOR = 1e-12


def expected_improvement(mean: np.ndarray, var: np.ndarray, incumbent: float) -> np.ndarray:
    """EI for maximization; exactly 0 wherever predictive variance vanishes."""
    sigma = np.sqrt(var)
    out = np.zeros_like(mean)
    live = sigma > _SIGMA_FLOOR
    z = (mean[live] - incumbent) / sigma[live]
    pdf = np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
    out[live] = (mean[live] - incumbent) * ndtr(z) + sigma[live] * pdf
    return np.maximum(out, 0.0)


def latin_hypercube(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    u = np.empty((n, d))
    for j in range(d):
        u[:, j] = (rng.permutation(n) + rng.uniform(size=n)) / n
    return u


def n_initial(d: int) -> int:
    return max(4, 2 * d)


def bayes_opt(space: SearchSpace, objective: Objective, budget: int, seed: int) -> TunerResult:
    if space.has_categorical:
        raise SearchSpaceError(
            "bayes_opt handles continuous/int dimensions only; enumerate categoricals as separate runs"
        )
    d = len(space.params)
    n_init = n_initial(d)
    if budget < n_init + 1:
        raise SearchSpaceError(f"budget must be >= n_init + 1 = {n_init + 1}")

    rng = rng_for(seed, "bayes_init")
    trials: list[Trial] = []
    observed_u: list[np.ndarray] = []
    observed_y: list[float] = []

    def evaluate(u: np.ndarray, fallback: bool = False) -> None:
        hyperparams = space.from_unit(u)
        # int dims snap to the grid; store the snapped coordinate
        u_snapped = space.to_unit(hyperparams)
        trial = run_trial(objective, hyperparams, fallback=fallback)
        trials.append(trial)
        if not trial.failed:
            observed_u.append(u_snapped)
            observed_y.append(trial.score)

    for u in latin_hypercube(n_init, d, rng):
        evaluate(u)

    iteration = 0
    while len(trials) < budget:
        iteration += 1
        cand_seed = derive_seed(seed, "candidates", iteration)
        sobol = qmc.Sobol(d, scramble=True, seed=cand_seed)
        candidates = sobol.random(N_CANDIDATES)
        if len(observed_y) >= 2 and float(np.std(observed_y)) >= 0:
            try:
                gp = GaussianProcess().fit(np.vstack(observed_u), np.array(observed_y))
                incumbent = float((max(observed_y) - gp.y_mean) / gp.y_std)
                mean, var = gp.predict(candidates)
                ei = expected_improvement(mean, var, incumbent)
                evaluate(candidates[int(np.argmax(ei))])
                continue
            except GPFitError:
                pass
        # too few successes, or surrogate failure: random draw for this iteration
        fallback_rng = rng_for(seed, "fallback", iteration)
        evaluate(fallback_rng.uniform(size=d), fallback=True)

    return collect(trials, seed)
