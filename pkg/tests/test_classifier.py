import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from photonic_vqc.classifier import MeshClassifier, cascade_intensities, genes_to_layers
from photonic_vqc.datasets import generate_circle, load_iris, split
from photonic_vqc.encoding import encode_2d


SMALL = dict(population_size=12, n_generations=15, n_islands=2, elite_count=2)


@pytest.fixture(scope="module")
def tiny_circle():
    return generate_circle(25, seed=1)


class TestEstimatorApi:
    def test_get_set_params_round_trip(self):
        clf = MeshClassifier(population_size=33, mutation_sigma=0.12)
        params = clf.get_params()
        assert params["population_size"] == 33
        cloned = clone(clf)
        assert cloned.get_params() == params

    def test_predict_before_fit_raises(self, tiny_circle):
        with pytest.raises(NotFittedError):
            MeshClassifier().predict(tiny_circle.X)

    def test_fit_predict_shapes(self, tiny_circle):
        clf = MeshClassifier(**SMALL, random_state=0).fit(tiny_circle.X, tiny_circle.y)
        preds = clf.predict(tiny_circle.X)
        assert preds.shape == (len(tiny_circle.X),)
        assert set(np.unique(preds)) <= {0, 1}
        assert clf.intensities(tiny_circle.X).shape == (len(tiny_circle.X), 4)

    def test_score_in_unit_interval(self, tiny_circle):
        clf = MeshClassifier(**SMALL, random_state=0).fit(tiny_circle.X, tiny_circle.y)
        assert 0.0 <= clf.score(tiny_circle.X, tiny_circle.y) <= 1.0

    def test_deterministic_given_random_state(self, tiny_circle):
        a = MeshClassifier(**SMALL, random_state=5).fit(tiny_circle.X, tiny_circle.y)
        b = MeshClassifier(**SMALL, random_state=5).fit(tiny_circle.X, tiny_circle.y)
        np.testing.assert_array_equal(a.predict(tiny_circle.X), b.predict(tiny_circle.X))
        assert a.history_.rows() == b.history_.rows()

    def test_rejects_bad_feature_count(self):
        X = np.zeros((10, 3))
        y = np.array([0, 1] * 5)
        with pytest.raises(ValueError, match="2 or 4 features"):
            MeshClassifier(**SMALL).fit(X, y)

    def test_rejects_too_many_classes(self):
        X = np.random.default_rng(0).uniform(0, 1, (10, 2))
        y = np.arange(10) % 5
        with pytest.raises(ValueError, match="classes"):
            MeshClassifier(**SMALL).fit(X, y)

    def test_feature_count_mismatch_at_predict(self, tiny_circle):
        clf = MeshClassifier(**SMALL, random_state=0).fit(tiny_circle.X, tiny_circle.y)
        with pytest.raises(ValueError, match="features"):
            clf.predict(np.zeros((3, 4)))


class TestIrisPipeline:
    def test_four_feature_scaling_stats_stored(self, iris_path):
        ds = load_iris(iris_path)
        train, _ = split(ds, 0.8, seed=0)
        clf = MeshClassifier(**SMALL, random_state=0).fit(train.X, train.y)
        np.testing.assert_allclose(clf.feature_min_, train.X.min(axis=0))
        np.testing.assert_allclose(clf.feature_max_, train.X.max(axis=0))

    def test_three_class_predictions(self, iris_path):
        ds = load_iris(iris_path)
        train, test = split(ds, 0.8, seed=0)
        clf = MeshClassifier(**SMALL, random_state=0).fit(train.X, train.y)
        preds = clf.predict(test.X)
        assert set(np.unique(preds)) <= {0, 1, 2}
        acc, cm = clf.evaluate(test.X, test.y)
        assert cm.shape == (3, 3)
        assert cm.sum() == len(test.X)
        assert acc == pytest.approx(np.trace(cm) / len(test.X))


class TestTrainingHistory:
    def test_best_cost_monotone(self, tiny_circle):
        clf = MeshClassifier(**SMALL, random_state=2).fit(tiny_circle.X, tiny_circle.y)
        costs = clf.history_.best_cost
        assert all(b <= a + 1e-12 for a, b in zip(costs, costs[1:]))

    def test_history_length_matches_generations(self, tiny_circle):
        clf = MeshClassifier(**SMALL, random_state=0).fit(tiny_circle.X, tiny_circle.y)
        assert len(clf.history_.rows()) == SMALL["n_generations"]

    def test_sampled_mode_history_monotone(self, tiny_circle):
        clf = MeshClassifier(
            **SMALL, readout="sampled", phase_sigma=0.02, n_photons=200, random_state=0
        ).fit(tiny_circle.X, tiny_circle.y)
        costs = clf.history_.best_cost
        assert all(b <= a + 1e-12 for a, b in zip(costs, costs[1:]))


class TestCascade:
    def test_two_layer_cascade_matches_manual(self):
        rng = np.random.default_rng(0)
        genes = rng.uniform(0, 2 * np.pi, 24)
        layers = genes_to_layers(genes, 2)
        x = rng.uniform(0, np.pi / 2, (5, 2))
        states = encode_2d(x[:, 0], x[:, 1])
        from photonic_vqc.mesh import multi_layer_forward

        batch = cascade_intensities(states, layers)
        for i in range(5):
            np.testing.assert_allclose(
                batch[i], multi_layer_forward(states[i], layers), atol=1e-12
            )
