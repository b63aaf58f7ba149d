import numpy as np
import pytest

from batbench.errors import EmptyTrainingSetError
from batbench.evaluation import r_squared
from batbench.models import (
    DecisionTreeConfig,
    GradientBoostingConfig,
    RandomForestConfig,
    fit_decision_tree,
    fit_gradient_boosting,
    fit_random_forest,
)


def random_problem(seed, n=80, d=16):
    rng = np.random.default_rng(seed)
    X = rng.random((n, d))
    y = 3.0 * X[:, 0] - 2.0 * X[:, 3] + rng.normal(0, 0.1, n)
    return X, y


class TestDecisionTree:
    def test_depth_zero_predicts_mean(self):
        X = np.arange(8, dtype=float).reshape(-1, 1)
        y = np.arange(8, dtype=float)
        model = fit_decision_tree(DecisionTreeConfig(max_depth=0, min_samples_leaf=1), X, y)
        assert np.all(model.predict(X) == np.mean(y))

    def test_single_split_on_step_function(self):
        X = np.array([[0.0], [1.0], [2.0], [3.0]])
        y = np.array([0.0, 0.0, 10.0, 10.0])
        model = fit_decision_tree(DecisionTreeConfig(max_depth=1, min_samples_leaf=1), X, y)
        # candidate thresholds are 0.5, 1.5, 2.5; 1.5 removes all variance
        assert model.threshold[0] == 1.5
        assert np.array_equal(model.predict(X), y)

    def test_constant_target(self):
        X = np.random.default_rng(1).random((20, 4))
        y = np.full(20, 7.0)
        model = fit_decision_tree(DecisionTreeConfig(), X, y)
        assert np.all(model.predict(X) == 7.0)

    def test_empty_training_set(self):
        with pytest.raises(EmptyTrainingSetError):
            fit_decision_tree(DecisionTreeConfig(), np.zeros((0, 4)), np.zeros(0))

    def test_memorizes_distinct_rows_perfectly(self):
        X, y = random_problem(7, n=60)
        model = fit_decision_tree(
            DecisionTreeConfig(max_depth=None, min_samples_leaf=1), X, y)
        assert r_squared(y, model.predict(X)) == pytest.approx(1.0, abs=1e-12)

    def test_every_leaf_predicts_mean_of_routed_targets(self):
        X, y = random_problem(11)
        model = fit_decision_tree(DecisionTreeConfig(max_depth=4, min_samples_leaf=3), X, y)
        leaves = model.apply(X)
        for leaf in np.unique(leaves):
            routed = y[leaves == leaf]
            assert model.value[leaf] == pytest.approx(np.mean(routed), abs=1e-12)
            assert model.n_samples[leaf] == len(routed)

    def test_split_gains_are_nonnegative(self):
        X, y = random_problem(13)
        model = fit_decision_tree(DecisionTreeConfig(), X, y)
        assert np.all(model.gain >= 0.0)


class TestRandomForest:
    def test_single_unbagged_full_feature_forest_equals_tree(self):
        X, y = random_problem(3)
        forest = fit_random_forest(
            RandomForestConfig(n_trees=1, bootstrap=False, max_features=16,
                               max_depth=8, min_samples_leaf=5, seed=4), X, y)
        tree = fit_decision_tree(DecisionTreeConfig(max_depth=8, min_samples_leaf=5), X, y)
        queries = np.random.default_rng(5).random((40, 16))
        assert np.array_equal(forest.predict(queries), tree.predict(queries))

    def test_constant_target_any_seed(self):
        X = np.random.default_rng(2).random((30, 16))
        y = np.full(30, 3.5)
        for seed in (0, 1, 99):
            forest = fit_random_forest(RandomForestConfig(n_trees=5, seed=seed), X, y)
            assert np.all(forest.predict(X[:10]) == 3.5)

    def test_prediction_is_exact_mean_of_member_trees(self):
        X, y = random_problem(17)
        forest = fit_random_forest(RandomForestConfig(n_trees=3, seed=8), X, y)
        queries = np.random.default_rng(9).random((25, 16))
        members = np.vstack([t.predict(queries) for t in forest.trees])
        assert np.array_equal(forest.predict(queries), np.mean(members, axis=0))

    def test_seed_controls_fit(self):
        X, y = random_problem(19)
        q = np.random.default_rng(0).random((10, 16))
        a = fit_random_forest(RandomForestConfig(n_trees=10, seed=1), X, y).predict(q)
        b = fit_random_forest(RandomForestConfig(n_trees=10, seed=1), X, y).predict(q)
        c = fit_random_forest(RandomForestConfig(n_trees=10, seed=2), X, y).predict(q)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)


class TestGradientBoosting:
    def test_zero_stages_predict_training_mean(self):
        X, y = random_problem(23)
        model = fit_gradient_boosting(GradientBoostingConfig(n_estimators=0), X, y)
        assert np.all(model.predict(X[:7]) == np.mean(y))

    def test_one_unit_rate_stump_fits_step_exactly(self):
        X = np.array([[0.0], [1.0], [2.0], [3.0]])
        y = np.array([0.0, 0.0, 10.0, 10.0])
        model = fit_gradient_boosting(
            GradientBoostingConfig(n_estimators=1, learning_rate=1.0,
                                   max_depth=1, min_samples_leaf=1), X, y)
        assert np.array_equal(model.predict(X), y)

    def test_staged_predictions_telescope(self):
        X, y = random_problem(29)
        model = fit_gradient_boosting(
            GradientBoostingConfig(n_estimators=12, learning_rate=0.3), X, y)
        queries = np.random.default_rng(31).random((15, 16))
        stagewise = list(model.staged_predict(queries))
        assert np.all(stagewise[0] == np.mean(y))
        for m in range(1, len(stagewise)):
            step = model.learning_rate * model.stages[m - 1].predict(queries)
            assert np.max(np.abs(stagewise[m] - (stagewise[m - 1] + step))) < 1e-10
        assert np.array_equal(stagewise[-1], model.predict(queries))

    def test_full_prediction_telescopes_from_base(self):
        X, y = random_problem(37)
        model = fit_gradient_boosting(
            GradientBoostingConfig(n_estimators=20, learning_rate=0.1), X, y)
        queries = np.random.default_rng(41).random((10, 16))
        total = np.full(len(queries), model.base_prediction)
        for stage in model.stages:
            total += model.learning_rate * stage.predict(queries)
        assert np.max(np.abs(model.predict(queries) - total)) < 1e-10

    def test_training_fit_improves_with_stages(self):
        X, y = random_problem(43)
        few = fit_gradient_boosting(GradientBoostingConfig(n_estimators=5), X, y)
        many = fit_gradient_boosting(GradientBoostingConfig(n_estimators=80), X, y)
        assert r_squared(y, many.predict(X)) > r_squared(y, few.predict(X))
