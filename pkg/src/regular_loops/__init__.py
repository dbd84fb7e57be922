"""
Regular Loops - non-backtracking loops on random regular graphs

This package samples random d-regular multigraphs, counts their simple,
primitive and all non-backtracking loops by exact and spectral methods, and
runs Monte Carlo sweeps of the transition near k = sqrt(n) between mostly
simple and mostly self-intersecting primitive loops.
"""

__version__ = "1.0.0"

from regular_loops.errors import RegularLoopsError
from regular_loops.config import Budgets, format_version_info, get_app_info
from regular_loops.graphs import (
    GraphModel,
    GraphModelFactory,
    Multigraph,
    RngStream,
    from_pairing,
    sample_configuration,
    sample_uniform_simple,
)
from regular_loops.loops import LoopCensus, NbLoop, take_census
from regular_loops.spectra import SpectralReport, spectral_report

__all__ = [
    # Version info
    "__version__",
    "get_app_info",
    "format_version_info",
    # Configuration
    "Budgets",
    "RegularLoopsError",
    # Graphs
    "GraphModel",
    "GraphModelFactory",
    "Multigraph",
    "RngStream",
    "from_pairing",
    "sample_configuration",
    "sample_uniform_simple",
    # Loops
    "LoopCensus",
    "NbLoop",
    "take_census",
    # Spectra
    "SpectralReport",
    "spectral_report",
]
