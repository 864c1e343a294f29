"""Command-line harness: dataset generation, training, evaluation,
decision-boundary export, and heater current planning.

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import datasets
from .classifier import MeshClassifier
from .hardware import load_calibration, phase_to_current
from .io_utils import atomic_write_text
from .model_io import classifier_from_model, load_model, model_to_dict, save_model

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

# Per-task migration fraction defaults (square, circle, sine, iris).
TASK_MIGRATION = {"square": 0.5, "circle": 0.7, "sine": 0.5, "iris": 0.5}

TRAIN_DEFAULTS = {
    "population": 50,
    "generations": 100,
    "crossover_fraction": 0.3,
    "migration_fraction": None,  # falls back to the task default
    "migration_interval": 20,
    "islands": 2,
    "elite": 2,
    "mutation_sigma": 0.3,
    "seed": 0,
    "mode": "exact",
    "photons": 1000,
    "phase_sigma": 0.02,
    "layers": 1,
}


class ConfigError(Exception):
    exit_code = EXIT_CONFIG


class DataError(Exception):
    exit_code = EXIT_DATA


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="photonic-vqc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic dataset CSV")
    p.add_argument("--task", required=True, choices=["square", "circle", "sine"])
    p.add_argument("--n-per-class", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train a model with the genetic algorithm")
    p.add_argument("--task", required=True, choices=["square", "circle", "sine", "iris"])
    p.add_argument("--data", required=True, help="training dataset CSV")
    p.add_argument("--out-model", required=True)
    p.add_argument("--out-history", required=True)
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--population", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--crossover-fraction", type=float)
    p.add_argument("--migration-fraction", type=float)
    p.add_argument("--migration-interval", type=int)
    p.add_argument("--islands", type=int)
    p.add_argument("--elite", type=int)
    p.add_argument("--mutation-sigma", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=["exact", "hardware-emulation"])
    p.add_argument("--photons", type=int)
    p.add_argument("--phase-sigma", type=float)
    p.add_argument("--layers", type=int)

    p = sub.add_parser("evaluate", help="score a trained model on a dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out-confusion", required=True)
    p.add_argument("--out-predictions", required=True)

    p = sub.add_parser("boundary-grid", help="export predicted labels on a 2D grid")
    p.add_argument("--model", required=True)
    p.add_argument("--resolution", type=int, default=100)
    p.add_argument("--out", required=True)

    p = sub.add_parser("plan-currents", help="map trained phases to heater currents")
    p.add_argument("--model", required=True)
    p.add_argument("--calibration", required=True)
    p.add_argument("--out", required=True)

    return parser


_GENERATORS = {
    "square": datasets.generate_square,
    "circle": datasets.generate_circle,
    "sine": datasets.generate_sine,
}


def cmd_generate(args) -> int:
    ds = _GENERATORS[args.task](args.n_per_class, seed=args.seed)
    try:
        datasets.save_csv(args.out, ds)
    except OSError as exc:
        raise DataError(f"cannot write {args.out}: {exc}")
    for cls in range(ds.n_classes):
        print(f"class {cls}: {int(np.sum(ds.y == cls))} samples")
    print(f"wrote {len(ds)} samples to {args.out}")
    return EXIT_OK


def _load_dataset(path):
    try:
        return datasets.load_dataset(path)
    except OSError as exc:
        raise DataError(f"cannot read dataset {path}: {exc}")
    except datasets.DatasetError as exc:
        raise DataError(f"{path}: {exc}")


def _merged_train_settings(args) -> dict:
    settings = dict(TRAIN_DEFAULTS)
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON ({exc})")
        unknown = set(file_cfg) - set(settings)
        if unknown:
            raise ConfigError(f"{args.config}: unknown keys {sorted(unknown)}")
        settings.update(file_cfg)
    for key in settings:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if settings["migration_fraction"] is None:
        settings["migration_fraction"] = TASK_MIGRATION[args.task]
    return settings


def cmd_train(args) -> int:
    cfg = _merged_train_settings(args)
    ds = _load_dataset(args.data)
    if args.task == "iris" and ds.feature_dim != 4:
        raise DataError(f"iris task requires 4 features, dataset has {ds.feature_dim}")
    if args.task != "iris" and ds.feature_dim != 2:
        raise DataError(
            f"task {args.task} requires 2 features, dataset has {ds.feature_dim}"
        )
    clf = MeshClassifier(
        n_layers=cfg["layers"],
        population_size=cfg["population"],
        n_generations=cfg["generations"],
        crossover_fraction=cfg["crossover_fraction"],
        migration_fraction=cfg["migration_fraction"],
        migration_interval=cfg["migration_interval"],
        n_islands=cfg["islands"],
        elite_count=cfg["elite"],
        mutation_sigma=cfg["mutation_sigma"],
        readout="sampled" if cfg["mode"] == "hardware-emulation" else "exact",
        phase_sigma=cfg["phase_sigma"],
        n_photons=cfg["photons"],
        random_state=cfg["seed"],
    )
    try:
        clf.fit(ds.X, ds.y)
    except ValueError as exc:
        raise ConfigError(str(exc))
    save_model(args.out_model, model_to_dict(clf, task=args.task))
    clf.history_.write_csv(args.out_history)
    train_acc, _ = clf.evaluate(ds.X, ds.y)
    print(f"best cost: {clf.best_cost_:.6f}")
    print(f"train accuracy: {train_acc:.4f}")
    print(f"model written to {args.out_model}")
    return EXIT_OK


def _load_classifier(path):
    try:
        model = load_model(path)
    except OSError as exc:
        raise DataError(f"cannot read model {path}: {exc}")
    except (ValueError, KeyError) as exc:
        raise DataError(f"{path}: invalid model file ({exc})")
    return model, classifier_from_model(model)


def cmd_evaluate(args) -> int:
    _, clf = _load_classifier(args.model)
    ds = _load_dataset(args.data)
    if ds.feature_dim != clf.n_features_in_:
        raise DataError(
            f"model expects {clf.n_features_in_} features but dataset "
            f"has {ds.feature_dim}"
        )
    accuracy, cm = clf.evaluate(ds.X, ds.y)
    preds = clf.predict(ds.X)

    n = len(clf.classes_)
    lines = ["true_class," + ",".join(f"pred_{c}" for c in clf.classes_)]
    for i in range(n):
        lines.append(f"{clf.classes_[i]}," + ",".join(str(v) for v in cm[i]))
    atomic_write_text(args.out_confusion, "\n".join(lines) + "\n")

    header = ",".join(f"x{i + 1}" for i in range(ds.feature_dim))
    lines = [header + ",true_label,predicted_label"]
    for row, yt, yp in zip(ds.X, ds.y, preds):
        lines.append(
            ",".join(repr(float(v)) for v in row) + f",{int(yt)},{int(yp)}"
        )
    atomic_write_text(args.out_predictions, "\n".join(lines) + "\n")

    print(f"accuracy: {accuracy:.4f} ({int(np.trace(cm))}/{len(ds)})")
    return EXIT_OK


def cmd_boundary_grid(args) -> int:
    _, clf = _load_classifier(args.model)
    if clf.n_features_in_ != 2:
        raise ConfigError(
            f"boundary grids require a 2-feature model; this model has "
            f"{clf.n_features_in_} features"
        )
    if args.resolution < 2:
        raise ConfigError("resolution must be at least 2")
    axis = np.linspace(0.0, np.pi / 2, args.resolution)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    grid = np.column_stack([g1.ravel(), g2.ravel()])
    preds = clf.predict(grid)
    lines = ["x1,x2,predicted_label"]
    for (x1, x2), label in zip(grid, preds):
        lines.append(f"{float(x1)!r},{float(x2)!r},{int(label)}")
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    print(f"wrote {len(grid)} grid points to {args.out}")
    return EXIT_OK


def cmd_plan_currents(args) -> int:
    model, clf = _load_classifier(args.model)
    try:
        cals = load_calibration(args.calibration)
    except OSError as exc:
        raise DataError(f"cannot read calibration {args.calibration}: {exc}")
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"{args.calibration}: {exc}")
    lines = ["layer,shifter,mzi,role,phase_rad,current_a"]
    for layer_idx, layer in enumerate(clf.layers_):
        genes = layer.to_genes()
        for shifter, phase in enumerate(genes):
            role = "phi" if shifter % 2 == 0 else "theta"
            mzi = shifter // 2 + 1
            current = phase_to_current(phase, cals[shifter])
            lines.append(
                f"{layer_idx},{shifter},{mzi},{role},{float(phase)!r},{float(current)!r}"
            )
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    print(f"wrote current plan to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "generate": cmd_generate,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "boundary-grid": cmd_boundary_grid,
    "plan-currents": cmd_plan_currents,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
