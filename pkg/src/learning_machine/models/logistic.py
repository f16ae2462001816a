"""From-scratch L2-regularized logistic regression.

Objective: mean cross-entropy plus 0.5*lam*||w||^2 with an unpenalized
intercept. Fitting is full-batch gradient descent with a backtracking line
search (see kernels). loss/grad below are the canonical numpy expressions
used by the finite-difference gradient check; the fitting kernel computes
the same quantities.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError, TrainingError
from ..kernels import logistic_gd

MAX_ITER = 5000
GRAD_TOL = 1e-6


def sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def logistic_loss(X: np.ndarray, y: np.ndarray, w: np.ndarray, b: float, lam: float) -> float:
    z = X @ w + b
    ce = np.logaddexp(0.0, z) - y * z
    return float(ce.mean() + 0.5 * lam * (w @ w))


def logistic_grad(X: np.ndarray, y: np.ndarray, w: np.ndarray, b: float, lam: float):
    """Analytic gradient of logistic_loss wrt (w, b)."""
    n = len(y)
    r = (sigmoid(X @ w + b) - y) / n
    return X.T @ r + lam * w, float(r.sum())


def fit_logistic(X: np.ndarray, y: np.ndarray, lam: float) -> tuple[np.ndarray, float]:
    if lam < 0:
        raise TrainingError("lam must be non-negative")
    classes = np.unique(y)
    if len(classes) < 2:
        raise TrainingError("training labels contain a single class; model undefined")
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    w, b, _, grad_inf, converged = logistic_gd(X, y, float(lam), MAX_ITER, GRAD_TOL)
    if not converged:
        raise ConvergenceError(grad_inf, MAX_ITER)
    return np.asarray(w), float(b)
