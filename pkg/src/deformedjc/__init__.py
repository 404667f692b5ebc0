"""Exactly solvable deformed Jaynes-Cummings dynamics (single- and two-mode)."""

from .model import SingleModeParams, TwoModeParams
from .states import (
    FockVector,
    PairedFockVector,
    TruncationError,
    coherent,
    squeezed_vacuum,
    pair_coherent,
    two_mode_squeezed_vacuum,
    mean_photon_number,
    auto_truncation,
)
from .single import evolve_single
from .two import evolve_two

__all__ = [
    "SingleModeParams",
    "TwoModeParams",
    "FockVector",
    "PairedFockVector",
    "TruncationError",
    "coherent",
    "squeezed_vacuum",
    "pair_coherent",
    "two_mode_squeezed_vacuum",
    "mean_photon_number",
    "auto_truncation",
    "evolve_single",
    "evolve_two",
]

__version__ = "0.1.0"
