import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from learning_machine.errors import SearchSpaceError
from learning_machine.rng import rng_for
from learning_machine.tuning import (
    GaussianProcess,
    ParamSpec,
    SearchSpace,
    bayes_opt,
    expected_improvement,
    n_initial,
    random_search,
)

PARABOLA_1D = SearchSpace(params=(ParamSpec("h", "continuous", lo=0.0, hi=1.0),))


def parabola(h):
    return -((h["h"] - 0.3) ** 2)


class TestSearchSpace:
    def test_log_scale_requires_positive_lo(self):
        with pytest.raises(SearchSpaceError):
            ParamSpec("x", "continuous", lo=0.0, hi=1.0, scale="log")

    def test_unit_roundtrip_log(self):
        p = ParamSpec("lam", "continuous", lo=1e-3, hi=1e3, scale="log")
        for v in (1e-3, 0.04, 1.0, 980.0):
            assert p.from_unit(p.to_unit(v)) == pytest.approx(v, rel=1e-12)

    def test_int_rounding(self):
        p = ParamSpec("k", "int", lo=2, hi=10)
        assert p.from_unit(0.0) == 2
        assert p.from_unit(1.0) == 10
        assert isinstance(p.from_unit(0.5), int)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=100, deadline=None)
    def test_samples_always_inside_space(self, seed):
        space = SearchSpace(
            params=(
                ParamSpec("a", "continuous", lo=-2.0, hi=3.0),
                ParamSpec("b", "continuous", lo=1e-4, hi=10.0, scale="log"),
                ParamSpec("c", "int", lo=1, hi=7),
                ParamSpec("d", "categorical", choices=("x", "y", "z")),
            )
        )
        rng = rng_for(seed)
        for _ in range(100):
            assert space.contains(space.sample(rng))

    def test_json_roundtrip(self):
        space = SearchSpace(
            params=(
                ParamSpec("a", "continuous", lo=0.0, hi=1.0),
                ParamSpec("d", "categorical", choices=("x", "y")),
            )
        )
        assert SearchSpace.from_dict(space.to_dict()) == space


class TestRandomSearch:
    def test_budget_one(self):
        result = random_search(PARABOLA_1D, parabola, budget=1, seed=0)
        assert result.budget_used == 1
        assert result.best_score == result.trials[0].score

    def test_constant_objective(self):
        result = random_search(PARABOLA_1D, lambda h: 3.25, budget=17, seed=1)
        assert result.best_score == 3.25

    def test_finds_optimum_region(self):
        hits = 0
        for seed in range(20):
            result = random_search(PARABOLA_1D, parabola, budget=50, seed=seed)
            if abs(result.best_hyperparams["h"] - 0.3) < 0.1:
                hits += 1
        assert hits >= 19  # analytic: P(miss) = 0.8^50 per seed, ge 95% required

    def test_failures_recorded_and_skipped(self):
        def flaky(h):
            if h["h"] < 0.5:
                raise ValueError("boom")
            return h["h"]

        result = random_search(PARABOLA_1D, flaky, budget=30, seed=2)
        failures = [t for t in result.trials if t.failed]
        assert failures and all(t.score is None for t in failures)
        assert result.best_score >= 0.5

    def test_best_so_far_non_decreasing(self):
        result = random_search(PARABOLA_1D, parabola, budget=40, seed=3)
        curve = result.best_so_far()
        assert all(b >= a for a, b in zip(curve, curve[1:]))


class TestGaussianProcess:
    def test_interpolates_training_points(self):
        rng = np.random.default_rng(0)
        X = rng.uniform(size=(12, 2))
        y = np.sin(3 * X[:, 0]) + X[:, 1]
        gp = GaussianProcess().fit(X, y)
        mean, _ = gp.predict(X)
        t = (y - gp.y_mean) / gp.y_std
        assert np.max(np.abs(mean - t)) < 1e-3

    def test_variance_zero_at_training_points_and_positive_away(self):
        rng = np.random.default_rng(1)
        X = rng.uniform(size=(8, 1))
        y = X[:, 0] ** 2
        gp = GaussianProcess().fit(X, y)
        _, var_train = gp.predict(X)
        assert np.all(var_train < 1e-2)
        _, var_far = gp.predict(np.array([[0.5 + 10.0]]))
        assert var_far[0] > 0.1


class TestExpectedImprovement:
    def test_zero_variance_at_incumbent_gives_zero(self):
        ei = expected_improvement(np.array([1.0]), np.array([0.0]), incumbent=1.0)
        assert ei[0] == 0.0

    def test_non_negative_everywhere(self):
        rng = np.random.default_rng(2)
        ei = expected_improvement(rng.normal(size=500), rng.uniform(0, 2, 500), incumbent=0.5)
        assert np.all(ei >= 0.0)

    def test_vanishes_as_variance_vanishes_below_incumbent(self):
        mean = np.array([0.0])
        for var in (1e-2, 1e-6, 1e-10, 0.0):
            ei = expected_improvement(mean, np.array([var]), incumbent=1.0)
            assert ei[0] <= expected_improvement(mean, np.array([1e-1]), 1.0)[0]
        assert expected_improvement(mean, np.array([0.0]), 1.0)[0] == 0.0


class TestBayesOpt:
    def test_n_init_rule(self):
        assert n_initial(1) == 4
        assert n_initial(3) == 6

    def test_budget_must_cover_init(self):
        with pytest.raises(SearchSpaceError):
            bayes_opt(PARABOLA_1D, parabola, budget=4, seed=0)

    def test_categorical_dimensions_rejected(self):
        space = SearchSpace(params=(ParamSpec("d", "categorical", choices=("a", "b")),))
        with pytest.raises(SearchSpaceError):
            bayes_opt(space, lambda h: 1.0, budget=10, seed=0)

    def test_finds_1d_optimum(self):
        hits = 0
        for seed in range(20):
            result = bayes_opt(PARABOLA_1D, parabola, budget=15, seed=seed)
            if abs(result.best_hyperparams["h"] - 0.3) <= 0.05:
                hits += 1
        assert hits >= 16

    def test_beats_random_on_2d_surface(self):
        space = SearchSpace(
            params=(
                ParamSpec("a", "continuous", lo=0.0, hi=1.0),
                ParamSpec("b", "continuous", lo=0.0, hi=1.0),
            )
        )

        def f(h):
            return -((h["a"] - 0.25) ** 2 + (h["b"] - 0.75) ** 2)

        wins = 0
        for seed in range(20):
            bo = bayes_opt(space, f, budget=15, seed=seed)
            rs = random_search(space, f, budget=15, seed=seed)
            if bo.best_score >= rs.best_score:
                wins += 1
        assert wins >= 14

    def test_deterministic_per_seed(self):
        a = bayes_opt(PARABOLA_1D, parabola, budget=12, seed=5)
        b = bayes_opt(PARABOLA_1D, parabola, budget=12, seed=5)
        assert a == b

    def test_all_samples_inside_space(self):
        space = SearchSpace(
            params=(
                ParamSpec("lam", "continuous", lo=1e-2, hi=1e2, scale="log"),
                ParamSpec("k", "int", lo=2, hi=9),
            )
        )
        seen = []

        def f(h):
            seen.append(h)
            return -abs(np.log10(h["lam"])) - h["k"]

        bayes_opt(space, f, budget=20, seed=6)
        assert len(seen) == 20
        assert all(space.contains(h) for h in seen)

    def test_objective_failures_survive(self):
        def flaky(h):
            if h["h"] > 0.6:
                raise RuntimeError("no")
            return h["h"]

        result = bayes_opt(PARABOLA_1D, flaky, budget=12, seed=7)
        assert result.budget_used == 12
        assert result.best_score is not None
        assert result.best_score <= 0.6

    def test_best_so_far_non_decreasing(self):
        result = bayes_opt(PARABOLA_1D, parabola, budget=15, seed=8)
        curve = result.best_so_far()
        assert all(b >= a for a, b in zip(curve, curve[1:]))
