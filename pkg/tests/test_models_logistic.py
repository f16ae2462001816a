import numpy as np
import pytest

from learning_machine.errors import TrainingError
from learning_machine.kernels import logistic_gd
from learning_machine.models import fit_logistic, logistic_grad, logistic_loss, sigmoid


def finite_difference_grad(X, y, w, b, lam, h=1e-5):
    """Central differences on the loss, the independent gradient oracle."""
    gw = np.zeros_like(w)
    for j in range(len(w)):
        wp, wm = w.copy(), w.copy()
        wp[j] += h
        wm[j] -= h
        gw[j] = (logistic_loss(X, y, wp, b, lam) - logistic_loss(X, y, wm, b, lam)) / (2 * h)
    gb = (logistic_loss(X, y, w, b + h, lam) - logistic_loss(X, y, w, b - h, lam)) / (2 * h)
    return gw, gb


class TestGradient:
    def test_analytic_matches_finite_differences(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            n, d = int(rng.integers(5, 40)), int(rng.integers(1, 8))
            X = rng.normal(size=(n, d))
            y = (rng.random(n) < 0.5).astype(float)
            w = rng.normal(size=d)
            b = float(rng.normal())
            lam = float(rng.uniform(0, 2))
            gw, gb = logistic_grad(X, y, w, b, lam)
            fw, fb = finite_difference_grad(X, y, w, b, lam)
            assert np.max(np.abs(gw - fw)) <= 1e-5
            assert abs(gb - fb) <= 1e-5


class TestFit:
    def _separable(self, n=100, seed=3):
        rng = np.random.default_rng(seed)
        x = np.concatenate([rng.uniform(-3, -0.5, n // 2), rng.uniform(0.5, 3, n // 2)])
        y = (x > 0).astype(float)
        return x.reshape(-1, 1), y

    def test_separable_toy_positive_weight_high_auc(self):
        X, y = self._separable()
        w, b = fit_logistic(X, y, lam=0.01)
        assert w[0] > 0
        from learning_machine.models import rank_auc

        assert rank_auc(y, sigmoid(X @ w + b)) >= 0.99

    def test_ridge_limit_shrinks_weights(self):
        X, y = self._separable()
        w, _ = fit_logistic(X, y, lam=1e6)
        assert np.max(np.abs(w)) <= 0.01

    def test_same_seed_identical_parameters(self):
        # the fit is deterministic outright (no randomness in full-batch GD)
        X, y = self._separable()
        w1, b1 = fit_logistic(X, y, lam=0.5)
        w2, b2 = fit_logistic(X, y, lam=0.5)
        assert np.array_equal(w1, w2) and b1 == b2

    def test_single_class_labels_rejected(self):
        X = np.random.default_rng(0).normal(size=(20, 2))
        with pytest.raises(TrainingError):
            fit_logistic(X, np.ones(20), lam=0.1)

    def test_loss_sequence_non_increasing(self):
        # replay the optimizer path with the canonical loss: each accepted
        # backtracking step must not increase the regularized loss
        rng = np.random.default_rng(9)
        X = rng.normal(size=(60, 4))
        w_true = rng.normal(size=4)
        y = (rng.random(60) < sigmoid(X @ w_true)).astype(float)
        lam = 0.05
        w = np.zeros(4)
        b = 0.0
        eta = 1.0
        losses = [logistic_loss(X, y, w, b, lam)]
        for _ in range(200):
            gw, gb = logistic_grad(X, y, w, b, lam)
            if max(np.max(np.abs(gw)), abs(gb)) < 1e-6:
                break
            gsq = float(gw @ gw) + gb * gb
            while True:
                w2, b2 = w - eta * gw, b - eta * gb
                loss2 = logistic_loss(X, y, w2, b2, lam)
                if loss2 <= losses[-1] - 1e-4 * eta * gsq or eta < 1e-18:
                    break
                eta *= 0.5
            w, b = w2, b2
            losses.append(loss2)
            eta = min(eta * 2, 1e6)
        assert all(l2 <= l1 for l1, l2 in zip(losses, losses[1:]))

    def test_kernel_converges_on_regularized_problem(self):
        rng = np.random.default_rng(14)
        X = np.ascontiguousarray(rng.normal(size=(500, 9)))
        w_true = rng.normal(size=9)
        y = (rng.random(500) < sigmoid(X @ w_true)).astype(float)
        _, _, iters, grad_inf, converged = logistic_gd(X, y, 0.01, 5000, 1e-6)
        assert converged and grad_inf < 1e-6
        assert iters < 5000
