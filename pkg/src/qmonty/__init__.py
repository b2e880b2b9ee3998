"""Quantum-optical Monty Hall: simulation engine, statistics, game service."""

from .core import (
    PROJECTOR_DOORS,
    SEMICLASSICAL_ANGLES,
    DoorAngles,
    RotatorAngles,
    classical_payoffs,
    win_probabilities,
)
from .exceptions import (
    DegenerateDoorOpening,
    IllegalPhaseTransition,
    InvalidAngles,
    InvalidBoxCount,
    InvalidDoorRegion,
    InvalidWeights,
    QmontyError,
)
from .noise import NO_NOISE, PauliWeights, noisy_win_probabilities

__version__ = "0.1.0"

__all__ = [
    "PROJECTOR_DOORS",
    "SEMICLASSICAL_ANGLES",
    "DoorAngles",
    "RotatorAngles",
    "classical_payoffs",
    "win_probabilities",
    "DegenerateDoorOpening",
    "IllegalPhaseTransition",
    "InvalidAngles",
    "InvalidBoxCount",
    "InvalidDoorRegion",
    "InvalidWeights",
    "QmontyError",
    "NO_NOISE",
    "PauliWeights",
    "noisy_win_probabilities",
    "__version__",
]
