"""Synthetic nonlinear-boundary datasets, Iris loading, and train/test splits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .io_utils import atomic_write_text

DOMAIN_MAX = np.pi / 2
# Square and circle are centered at (pi/4, pi/4) and sized so the two
# classes cover equal areas of the [0, pi/2]^2 domain.
SQUARE_SIDE = DOMAIN_MAX / np.sqrt(2.0)
CIRCLE_RADIUS = DOMAIN_MAX / np.sqrt(2.0 * np.pi)
SINE_AMPLITUDE = np.pi / 8
SINE_FREQUENCY = 8.0

IRIS_CLASS_NAMES = ("setosa", "versicolor", "virginica")


class DatasetError(ValueError):
    """Malformed dataset file or invalid split request."""


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray
    n_classes: int
    feature_dim: int
    boundary: str | None = None

    def __len__(self):
        return self.X.shape[0]


def square_label(x1, x2):
    """1 inside the centered square of side SQUARE_SIDE, else 0."""
    c = np.pi / 4
    inside = np.maximum(np.abs(x1 - c), np.abs(x2 - c)) <= SQUARE_SIDE / 2
    return np.asarray(inside, dtype=int)


def circle_label(x1, x2):
    """1 inside the centered circle of radius CIRCLE_RADIUS, else 0."""
    c = np.pi / 4
    inside = (x1 - c) ** 2 + (x2 - c) ** 2 <= CIRCLE_RADIUS**2
    return np.asarray(inside, dtype=int)


def sine_label(x1, x2):
    """1 strictly above the curve x2 = pi/4 + (pi/8) sin(8 x1), else 0."""
    above = x2 > np.pi / 4 + SINE_AMPLITUDE * np.sin(SINE_FREQUENCY * x1)
    return np.asarray(above, dtype=int)


_BOUNDARIES = {"square": square_label, "circle": circle_label, "sine": sine_label}


def boundary_predicate(name: str):
    try:
        return _BOUNDARIES[name]
    except KeyError:
        raise ValueError(f"unknown boundary {name!r}; choose from {sorted(_BOUNDARIES)}")


def _generate(boundary: str, n_per_class: int, seed: int) -> Dataset:
    if n_per_class < 1:
        raise ValueError("n_per_class must be at least 1")
    predicate = boundary_predicate(boundary)
    rng = np.random.default_rng(seed)
    collected = {0: [], 1: []}
    while len(collected[0]) < n_per_class or len(collected[1]) < n_per_class:
        pts = rng.uniform(0.0, DOMAIN_MAX, size=(4 * n_per_class, 2))
        labels = predicate(pts[:, 0], pts[:, 1])
        for cls in (0, 1):
            need = n_per_class - len(collected[cls])
            if need > 0:
                collected[cls].extend(pts[labels == cls][:need])
    X = np.array(collected[0] + collected[1])
    y = np.array([0] * n_per_class + [1] * n_per_class)
    order = rng.permutation(2 * n_per_class)
    return Dataset(X=X[order], y=y[order], n_classes=2, feature_dim=2, boundary=boundary)


def generate_square(n_per_class: int, seed: int = 0) -> Dataset:
    return _generate("square", n_per_class, seed)


def generate_circle(n_per_class: int, seed: int = 0) -> Dataset:
    return _generate("circle", n_per_class, seed)


def generate_sine(n_per_class: int, seed: int = 0) -> Dataset:
    return _generate("sine", n_per_class, seed)


def _iris_label(name: str, line_no: int) -> int:
    key = name.strip().lower()
    if key.startswith("iris-"):
        key = key[len("iris-") :]
    if key not in IRIS_CLASS_NAMES:
        raise DatasetError(f"line {line_no}: unknown iris class {name!r}")
    return IRIS_CLASS_NAMES.index(key)


def load_iris(path) -> Dataset:
    """Load the canonical 5-column Iris CSV (4 numeric features + class
    name). A header line is tolerated and skipped."""
    features, labels = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 5:
                raise DatasetError(
                    f"line {line_no}: expected 5 columns, got {len(fields)}"
                )
            try:
                row = [float(v) for v in fields[:4]]
            except ValueError:
                if line_no == 1:
                    continue  # header
                raise DatasetError(f"line {line_no}: non-numeric feature value")
            features.append(row)
            labels.append(_iris_label(fields[4], line_no))
    if not features:
        raise DatasetError(f"{path}: no data rows found")
    return Dataset(
        X=np.array(features), y=np.array(labels), n_classes=3, feature_dim=4
    )


def split(ds: Dataset, train_fraction: float, seed: int = 0, stratified: bool = True):
    """Seeded shuffle-and-split; stratified keeps per-class proportions
    within one sample. Returns (train, test)."""
    n = len(ds)
    if n == 0:
        raise DatasetError("cannot split an empty dataset")
    rng = np.random.default_rng(seed)
    if stratified:
        train_idx, test_idx = [], []
        for cls in range(ds.n_classes):
            idx = np.flatnonzero(ds.y == cls)
            idx = rng.permutation(idx)
            k = int(round(train_fraction * len(idx)))
            train_idx.extend(idx[:k])
            test_idx.extend(idx[k:])
        train_idx = rng.permutation(np.array(train_idx, dtype=int))
        test_idx = rng.permutation(np.array(test_idx, dtype=int))
    else:
        perm = rng.permutation(n)
        k = int(round(train_fraction * n))
        train_idx, test_idx = perm[:k], perm[k:]
    if len(train_idx) == 0 or len(test_idx) == 0:
        raise DatasetError("train_fraction produces an empty split")

    def take(idx):
        return Dataset(
            X=ds.X[idx],
            y=ds.y[idx],
            n_classes=ds.n_classes,
            feature_dim=ds.feature_dim,
            boundary=ds.boundary,
        )

    return take(train_idx), take(test_idx)


def save_csv(path, ds: Dataset):
    """Write the generic dataset format: header x1..xD,label."""
    header = ",".join(f"x{i + 1}" for i in range(ds.feature_dim)) + ",label"
    lines = [header]
    for row, label in zip(ds.X, ds.y):
        lines.append(",".join(repr(float(v)) for v in row) + f",{int(label)}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_csv(path) -> Dataset:
    """Read the generic x1..xD,label format written by save_csv."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise DatasetError(f"{path}: empty dataset file")
    header = lines[0].split(",")
    if header[-1] != "label" or not all(
        h == f"x{i + 1}" for i, h in enumerate(header[:-1])
    ):
        raise DatasetError(f"{path}: unrecognized header {lines[0]!r}")
    dim = len(header) - 1
    features, labels = [], []
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != dim + 1:
            raise DatasetError(
                f"line {line_no}: expected {dim + 1} columns, got {len(fields)}"
            )
        try:
            features.append([float(v) for v in fields[:dim]])
            labels.append(int(fields[dim]))
        except ValueError:
            raise DatasetError(f"line {line_no}: malformed value")
    y = np.array(labels)
    return Dataset(
        X=np.array(features), y=y, n_classes=int(y.max()) + 1, feature_dim=dim
    )


def load_dataset(path) -> Dataset:
    """Load either the generic x1..xD,label format or the canonical Iris CSV."""
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith("x1,"):
        return load_csv(path)
    return load_iris(path)
