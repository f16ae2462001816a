"""Gaussian-process surrogate for Bayesian optimization.

Squared-exponential kernel with one shared lengthscale. Inputs live in the
unit cube; targets are standardized internally. Each fit picks
(lengthscale, signal variance) from a fixed 5x5 grid by maximum marginal
likelihood. The noise jitter starts at 1e-6 and escalates tenfold up to
1e-2 when the Cholesky factorization fails; if nothing factorizes the fit
raises GPFitError and the caller falls back to a random draw.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import LearningMachineError

LENGTHSCALE_GRID = (0.05, 0.1, 0.25, 0.5, 1.0)
SIGNAL_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)
JITTERS = (1e-6, 1e-5, 1e-4, 1e-3, 1e-2)


class GPFitError(LearningMachineError):
    """Surrogate covariance could not be factorized at any jitter level."""


def _sq_dists(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.maximum(
        (A * A).sum(1)[:, None] + (B * B).sum(1)[None, :] - 2.0 * A @ B.T, 0.0
    )


class GaussianProcess:
    def __init__(self):
        self.X: np.ndarray | None = None
        self.alpha: np.ndarray | None = None
        self.L: np.ndarray | None = None
        self.lengthscale = 0.0
        self.signal = 0.0
        self.jitter = 0.0
        self.y_mean = 0.0
        self.y_std = 1.0

    def fit(self, X: np.ndarray, y: np.ndarray) -> "GaussianProcess":
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        y = np.asarray(y, dtype=np.float64)
        self.y_mean = float(y.mean())
        y_std = float(y.std())
        self.y_std = y_std if y_std > 0 else 1.0
        t = (y - self.y_mean) / self.y_std

        d2 = _sq_dists(X, X)
        n = len(y)
        best = None
        for ls in LENGTHSCALE_GRID:
            base = np.exp(-0.5 * d2 / (ls * ls))
            for sv in SIGNAL_GRID:
                K = sv * base
                for jitter in JITTERS:
                    try:
                        L = np.linalg.cholesky(K + jitter * np.eye(n))
                    except np.linalg.LinAlgError:
                        continue
                    alpha = np.linalg.solve(L.T, np.linalg.solve(L, t))
                    mll = (
                        -0.5 * float(t @ alpha)
                        - float(np.log(np.diag(L)).sum())
                        - 0.5 * n * math.log(2.0 * math.pi)
                    )
                    if best is None or mll > best[0]:
                        best = (mll, ls, sv, jitter, L, alpha)
                    break
        if best is None:
            raise GPFitError("no (lengthscale, signal, jitter) combination factorized")
        _, self.lengthscale, self.signal, self.jitter, self.L, self.alpha = best
        self.X = X
        return self

    def predict(self, Xq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Standardized-space posterior mean and variance at query points."""
        Xq = np.atleast_2d(np.asarray(Xq, dtype=np.float64))
        Ks = self.signal * np.exp(-0.5 * _sq_dists(Xq, self.X) / (self.lengthscale**2))
        mean = Ks @ self.alpha
        v = np.linalg.solve(self.L, Ks.T)
        var = np.maximum(self.signal - (v * v).sum(0), 0.0)
        return mean, var

    def to_raw(self, mean_std: np.ndarray) -> np.ndarray:
        return mean_std * self.y_std + self.y_mean
