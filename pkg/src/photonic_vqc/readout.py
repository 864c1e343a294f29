"""Intensity readout, label decision, cost and evaluation metrics."""

from __future__ import annotations

import numpy as np

from .mesh import N_MODES, MeshParameters, compose_mesh


def intensities_exact(state) -> np.ndarray:
    """Per-mode detection probabilities |amplitude|^2."""
    state = np.asarray(state, dtype=complex)
    return np.abs(state) ** 2


def intensities_sampled(state, n_photons: int, rng) -> np.ndarray:
    """Empirical photon-count frequencies from n_photons categorical draws.

    `rng` is an integer seed or a numpy Generator. Deterministic given a seed.
    """
    if n_photons < 1:
        raise ValueError("n_photons must be a positive integer")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    p = intensities_exact(state)
    p = p / p.sum()
    counts = rng.multinomial(n_photons, p)
    return counts / n_photons


def predict_label(intensities, n_classes: int) -> int:
    """Argmax over the first n_classes designated modes; ties go to the
    lowest mode index."""
    if not 2 <= n_classes <= N_MODES:
        raise ValueError(f"n_classes must be in 2..{N_MODES}, got {n_classes}")
    iv = np.asarray(intensities, dtype=float)
    return int(np.argmax(iv[..., :n_classes], axis=-1))


def one_hot_target(label: int, n_classes: int) -> np.ndarray:
    """Length-4 target with a 1 at the class's designated mode; modes past
    n_classes carry target 0 (leakage is penalized)."""
    if not 0 <= label < n_classes:
        raise ValueError(f"label {label} out of range for {n_classes} classes")
    target = np.zeros(N_MODES)
    target[label] = 1.0
    return target


def targets_from_labels(labels, n_classes: int) -> np.ndarray:
    labels = np.asarray(labels, dtype=int)
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise ValueError("labels out of range")
    targets = np.zeros((labels.shape[0], N_MODES))
    targets[np.arange(labels.shape[0]), labels] = 1.0
    return targets


def cost(intensity_vectors, targets) -> float:
    """Total squared Euclidean distance between intensity vectors and
    one-hot targets, summed over samples and all 4 modes."""
    ivs = np.atleast_2d(np.asarray(intensity_vectors, dtype=float))
    tgs = np.atleast_2d(np.asarray(targets, dtype=float))
    if ivs.shape != tgs.shape:
        raise ValueError(
            f"intensity/target shape mismatch: {ivs.shape} vs {tgs.shape}"
        )
    if ivs.shape[0] < 1:
        raise ValueError("cost requires at least one sample")
    return float(((ivs - tgs) ** 2).sum())


def confusion_matrix(y_true, y_pred, n_classes: int) -> np.ndarray:
    """C x C count matrix, rows = true class, columns = predicted class."""
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    cm = np.zeros((n_classes, n_classes), dtype=int)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


def evaluate_states(encoded_states, labels, params: MeshParameters, n_classes: int):
    """Run the mesh on pre-encoded states and score exact-readout predictions.

    Returns (accuracy, confusion_matrix).
    """
    states = np.asarray(encoded_states, dtype=complex)
    labels = np.asarray(labels, dtype=int)
    if states.shape[0] == 0:
        raise ValueError("evaluate requires a non-empty sample set")
    u = compose_mesh(params)
    out = states @ u.T
    ivs = np.abs(out) ** 2
    preds = np.argmax(ivs[:, :n_classes], axis=1)
    cm = confusion_matrix(labels, preds, n_classes)
    accuracy = float(np.trace(cm)) / labels.shape[0]
    return accuracy, cm
