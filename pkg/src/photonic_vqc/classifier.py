"""Scikit-learn style classifier wrapping the mesh, the amplitude encoders,
and the genetic-algorithm trainer."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from . import encoding
from .ga import GAConfig, run_ga
from .mesh import N_MODES, N_PHASES, MeshParameters, compose_mesh
from .readout import confusion_matrix

IRIS_SCALE_MAX = np.pi / 4  # keeps y2 = x2+x3 and y3 = x3+x4 inside [0, pi/2]


def cascade_intensities(states, layers, rng=None, phase_sigma=0.0):
    """Vectorized multi-layer forward pass over an (N, 4) batch of encoded
    states; optional Gaussian phase perturbation per layer. Returns the
    (N, 4) exact intensity matrix of the final layer."""
    amps = np.asarray(states, dtype=complex)
    intensities = None
    for layer in layers:
        if phase_sigma > 0:
            layer = MeshParameters(
                theta=layer.theta + rng.normal(0.0, phase_sigma, len(layer.theta)),
                phi=layer.phi + rng.normal(0.0, phase_sigma, len(layer.phi)),
            )
        amps = amps @ compose_mesh(layer).T
        intensities = np.abs(amps) ** 2
        amps = np.sqrt(intensities).astype(complex)
    return intensities


def sample_intensities(intensities, n_photons, rng):
    """Multinomial shot noise per sample: counts / n_photons."""
    p = np.asarray(intensities, dtype=float)
    p = p / p.sum(axis=1, keepdims=True)
    counts = rng.multinomial(n_photons, p)
    return counts / n_photons


def genes_to_layers(genes, n_layers):
    genes = np.asarray(genes, dtype=float)
    return [
        MeshParameters.from_genes(genes[i * N_PHASES : (i + 1) * N_PHASES])
        for i in range(n_layers)
    ]


class MeshClassifier(ClassifierMixin, BaseEstimator):
    """Variational four-mode interferometer classifier, GA-trained.

    2-feature inputs are treated as encoder angles (clamped to [0, pi/2]);
    4-feature inputs are min-max scaled to [0, pi/4] with training-set
    statistics and reduced to three angles before encoding. Supports up to
    4 classes (one designated output mode per class) and optional cascaded
    mesh layers with measure-and-re-encode in between.

    readout="exact" uses noiseless intensities for the GA fitness;
    readout="sampled" emulates hardware training with Gaussian phase-setting
    error and finite photon counts. Prediction is always exact-readout.
    """

    def __init__(
        self,
        n_layers=1,
        population_size=50,
        n_generations=100,
        crossover_fraction=0.3,
        migration_fraction=0.5,
        migration_interval=20,
        n_islands=2,
        elite_count=2,
        mutation_sigma=0.3,
        readout="exact",
        phase_sigma=0.02,
        n_photons=1000,
        random_state=0,
    ):
        self.n_layers = n_layers
        self.population_size = population_size
        self.n_generations = n_generations
        self.crossover_fraction = crossover_fraction
        self.migration_fraction = migration_fraction
        self.migration_interval = migration_interval
        self.n_islands = n_islands
        self.elite_count = elite_count
        self.mutation_sigma = mutation_sigma
        self.readout = readout
        self.phase_sigma = phase_sigma
        self.n_photons = n_photons
        self.random_state = random_state

    def _ga_config(self):
        return GAConfig(
            population_size=self.population_size,
            n_generations=self.n_generations,
            crossover_fraction=self.crossover_fraction,
            migration_fraction=self.migration_fraction,
            migration_interval=self.migration_interval,
            n_islands=self.n_islands,
            elite_count=self.elite_count,
            mutation_sigma=self.mutation_sigma,
            rng_seed=self.random_state,
        )

    def _encode(self, X):
        if self.n_features_in_ == 2:
            angles = np.clip(X, 0.0, np.pi / 2)
            return encoding.encode_2d(angles[:, 0], angles[:, 1])
        scaled = encoding.scale_features(
            X, self.feature_min_, self.feature_max_, IRIS_SCALE_MAX
        )
        reduced = encoding.reduce_iris(scaled)
        return encoding.encode_3d(reduced[:, 0], reduced[:, 1], reduced[:, 2])

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if X.shape[1] not in (2, 4):
            raise ValueError(
                f"expected 2 or 4 features, got {X.shape[1]}"
            )
        if self.n_layers < 1:
            raise ValueError("n_layers must be at least 1")
        if self.readout not in ("exact", "sampled"):
            raise ValueError("readout must be 'exact' or 'sampled'")
        self.classes_, labels = np.unique(y, return_inverse=True)
        n_classes = len(self.classes_)
        if not 2 <= n_classes <= N_MODES:
            raise ValueError(f"need 2..{N_MODES} classes, got {n_classes}")
        self.n_features_in_ = X.shape[1]
        if self.n_features_in_ == 4:
            self.feature_min_ = X.min(axis=0)
            self.feature_max_ = X.max(axis=0)
        else:
            self.feature_min_ = None
            self.feature_max_ = None

        states = self._encode(X)
        targets = np.zeros((len(labels), N_MODES))
        targets[np.arange(len(labels)), labels] = 1.0
        n_genes = N_PHASES * self.n_layers
        sampled = self.readout == "sampled"

        def eval_fn(genes, eval_seed):
            layers = genes_to_layers(genes, self.n_layers)
            if sampled:
                rng = np.random.default_rng(eval_seed)
                ivs = cascade_intensities(
                    states, layers, rng=rng, phase_sigma=self.phase_sigma
                )
                ivs = sample_intensities(ivs, self.n_photons, rng)
            else:
                ivs = cascade_intensities(states, layers)
            # Fitness renormalizes over the designated class modes so the
            # cost optimum tracks the argmax decision rather than rewarding
            # suppression of the unused modes.
            designated = ivs[:, :n_classes]
            mass = designated.sum(axis=1, keepdims=True)
            renorm = np.divide(
                designated,
                mass,
                out=np.full_like(designated, 1.0 / n_classes),
                where=mass > 0,
            )
            cost = float(((renorm - targets[:, :n_classes]) ** 2).sum())
            preds = np.argmax(designated, axis=1)
            accuracy = float(np.mean(preds == labels))
            return cost, accuracy

        best_genes, history = run_ga(eval_fn, n_genes, self._ga_config())
        self.layers_ = genes_to_layers(best_genes, self.n_layers)
        self.history_ = history
        self.best_cost_ = history.best_cost[-1] if history.best_cost else None
        return self

    def intensities(self, X):
        """Exact final-layer intensity vectors, shape (N, 4)."""
        check_is_fitted(self, "layers_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"model expects {self.n_features_in_} features, got {X.shape[1]}"
            )
        return cascade_intensities(self._encode(X), self.layers_)

    def predict(self, X):
        ivs = self.intensities(X)
        idx = np.argmax(ivs[:, : len(self.classes_)], axis=1)
        return self.classes_[idx]

    def evaluate(self, X, y):
        """Accuracy plus the confusion matrix on a labeled set."""
        preds = self.predict(X)
        labels = np.searchsorted(self.classes_, y)
        pred_labels = np.searchsorted(self.classes_, preds)
        cm = confusion_matrix(labels, pred_labels, len(self.classes_))
        return float(np.trace(cm)) / len(y), cm
