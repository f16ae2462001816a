"""Pure numpy implementations of the hot kernels.

These are the fallback backend; `learning_machine.kernels` prefers the
compiled Cython twin when it is importable. Both backends implement the
same contracts:

ks_statistic_sorted(a, b)
    sup over pooled points of |ECDF_a - ECDF_b|, both inputs ascending.
    ECDFs are right-continuous; the counts/n arithmetic is identical in
    both backends, so results agree bit for bit.

best_split_column(values, labels, min_leaf)
    Best binary split of one sorted feature column under Gini impurity.
    Returns (gain, threshold, split_index); gain is -inf when no split
    satisfies min_leaf or all values are equal. Candidate thresholds are
    midpoints between distinct neighbours; the first position achieving
    the maximum gain wins, which makes ties resolve to the lowest
    threshold.

logistic_gd(X, y, lam, max_iter, tol)
    Full-batch gradient descent with an Armijo backtracking line search:
    the step is halved until the trial point satisfies
    loss(new) <= loss - 1e-4 * eta * ||grad||^2, then doubled after each
    accepted step. (Plain non-increase acceptance admits step sizes that
    zigzag with vanishing progress when lam is huge; the sufficient
    decrease condition is the standard cure.) Loss is mean cross-entropy
    plus 0.5*lam*||w||^2; the intercept is unpenalized. Weights start at
    zero. Returns (w, b, n_iter, grad_inf_norm, converged).

    Stops converged when the gradient inf-norm falls below tol, or when 8
    consecutive accepted steps produce no representable loss decrease (for
    huge lam the float64 loss goes flat while the gradient is still above
    tol; no loss-driven search can do better than that flat region).
"""

import numpy as np

NAME = "pure"

_ETA_MAX = 1e6
_ETA_MIN = 1e-18
_ARMIJO = 1e-4


def ks_statistic_sorted(a: np.ndarray, b: np.ndarray) -> float:
    pooled = np.concatenate([a, b])
    ca = np.searchsorted(a, pooled, side="right") / len(a)
    cb = np.searchsorted(b, pooled, side="right") / len(b)
    return float(np.max(np.abs(ca - cb)))


def best_split_column(values: np.ndarray, labels: np.ndarray, min_leaf: int):
    n = len(values)
    if n < 2 * min_leaf:
        return -np.inf, 0.0, -1
    total_pos = float(labels.sum())
    q = total_pos / n
    parent = 1.0 - q * q - (1.0 - q) * (1.0 - q)

    cum_pos = np.cumsum(labels)
    i = np.arange(1, n)
    valid = (values[1:] > values[:-1]) & (i >= min_leaf) & (i <= n - min_leaf)
    if not valid.any():
        return -np.inf, 0.0, -1

    idx = i[valid]
    pos_l = cum_pos[idx - 1]
    n_l = idx.astype(np.float64)
    n_r = n - n_l
    pos_r = total_pos - pos_l
    ql = pos_l / n_l
    qr = pos_r / n_r
    gini_l = 1.0 - ql * ql - (1.0 - ql) * (1.0 - ql)
    gini_r = 1.0 - qr * qr - (1.0 - qr) * (1.0 - qr)
    gain = parent - (n_l / n) * gini_l - (n_r / n) * gini_r

    best = int(np.argmax(gain))  # first max -> lowest threshold on ties
    split = int(idx[best])
    threshold = (values[split - 1] + values[split]) / 2.0
    return float(gain[best]), float(threshold), split


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def _loss(X, y, w, b, lam):
    z = X @ w + b
    ce = np.logaddexp(0.0, z) - y * z
    return float(ce.mean() + 0.5 * lam * (w @ w))


def logistic_gd(X: np.ndarray, y: np.ndarray, lam: float, max_iter: int, tol: float):
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    eta = 1.0
    loss = _loss(X, y, w, b, lam)
    grad_inf = np.inf
    flat = 0
    for it in range(max_iter):
        z = X @ w + b
        p = _sigmoid(z)
        r = (p - y) / n
        gw = X.T @ r + lam * w
        gb = float(r.sum())
        grad_inf = max(float(np.max(np.abs(gw))) if d else 0.0, abs(gb))
        if grad_inf < tol:
            return w, b, it, grad_inf, True
        gsq = float(gw @ gw) + gb * gb
        while True:
            w2 = w - eta * gw
            b2 = b - eta * gb
            loss2 = _loss(X, y, w2, b2, lam)
            if loss2 <= loss - _ARMIJO * eta * gsq or eta < _ETA_MIN:
                break
            eta *= 0.5
        flat = flat + 1 if loss2 >= loss else 0
        w, b, loss = w2, b2, loss2
        if flat >= 8:
            return w, b, it + 1, grad_inf, True
        eta = min(eta * 2.0, _ETA_MAX)
    return w, b, max_iter, grad_inf, grad_inf < tol
