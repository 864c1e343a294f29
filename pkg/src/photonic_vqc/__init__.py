"""Four-mode MZI photonic mesh classifier trained with a gradient-free
genetic algorithm."""

from .classifier import MeshClassifier
from .ga import GAConfig, TrainingHistory, run_ga
from .hardware import NoiseConfig, ShifterCalibration
from .mesh import MeshParameters, build_mzi, compose_mesh, forward, multi_layer_forward

__all__ = [
    "MeshClassifier",
    "GAConfig",
    "TrainingHistory",
    "run_ga",
    "NoiseConfig",
    "ShifterCalibration",
    "MeshParameters",
    "build_mzi",
    "compose_mesh",
    "forward",
    "multi_layer_forward",
]

__version__ = "0.1.0"
