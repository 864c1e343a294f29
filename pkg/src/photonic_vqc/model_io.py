"""Versioned, human-readable model persistence (JSON)."""

from __future__ import annotations

import json

import numpy as np

from .classifier import IRIS_SCALE_MAX, MeshClassifier
from .mesh import MeshParameters

MODEL_FORMAT_VERSION = 1


def model_to_dict(clf: MeshClassifier, task: str | None = None) -> dict:
    """Snapshot a fitted classifier: per-layer phases, scaling statistics,
    task metadata, and the training configuration."""
    scaler = None
    if clf.feature_min_ is not None:
        scaler = {
            "min": [float(v) for v in clf.feature_min_],
            "max": [float(v) for v in clf.feature_max_],
            "target_max": float(IRIS_SCALE_MAX),
        }
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "task": task,
        "feature_dim": int(clf.n_features_in_),
        "classes": [int(c) for c in clf.classes_],
        "n_layers": int(clf.n_layers),
        "layers": [
            {
                "theta": [float(v) for v in layer.theta],
                "phi": [float(v) for v in layer.phi],
            }
            for layer in clf.layers_
        ],
        "scaler": scaler,
        "config": clf.get_params(),
    }


def dumps_model(model: dict) -> str:
    """Canonical serialization so save -> load -> save is byte-identical."""
    return json.dumps(model, indent=2, sort_keys=True) + "\n"


def save_model(path, model: dict):
    from .io_utils import atomic_write_text

    atomic_write_text(path, dumps_model(model))


def load_model(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        model = json.load(fh)
    version = model.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {version!r}")
    return model


def classifier_from_model(model: dict) -> MeshClassifier:
    """Rebuild a fitted classifier from a model dict (no retraining)."""
    clf = MeshClassifier(**model["config"])
    clf.classes_ = np.array(model["classes"])
    clf.n_features_in_ = int(model["feature_dim"])
    scaler = model.get("scaler")
    if scaler is not None:
        clf.feature_min_ = np.array(scaler["min"], dtype=float)
        clf.feature_max_ = np.array(scaler["max"], dtype=float)
    else:
        clf.feature_min_ = None
        clf.feature_max_ = None
    clf.layers_ = [
        MeshParameters(theta=np.array(l["theta"]), phi=np.array(l["phi"]))
        for l in model["layers"]
    ]
    clf.history_ = None
    return clf
