"""Two-way spectrum pursuit (TWSP) for joint column/row subset selection."""

from .applications import ChannelAssignment, assign_top_f, cross_class_kernel, one_vs_all_kernels
from .baselines import (
    brute_force_cur,
    leverage_cur,
    leverage_scores,
    random_cur,
    sp_independent_cur,
    sp_select,
)
from .cur import CurDecomposition, core_matrix, normalized_error, reconstruct, reconstruction_error
from .estimator import CURSelector
from .exceptions import (
    CombinatorialGuardError,
    ConfigurationError,
    DegenerateInputError,
    DimensionError,
    SelectionIndexError,
)
from .rng import Rng
from .solver import ConvergenceTrace, SelectionState, SolverConfig, column_candidate, row_candidate, solve
from .synth import SynthSpec, low_rank_plus_noise

__version__ = "0.1.0"

__all__ = [
    "CURSelector",
    "ChannelAssignment",
    "CombinatorialGuardError",
    "ConfigurationError",
    "ConvergenceTrace",
    "CurDecomposition",
    "DegenerateInputError",
    "DimensionError",
    "Rng",
    "SelectionIndexError",
    "SelectionState",
    "SolverConfig",
    "SynthSpec",
    "assign_top_f",
    "brute_force_cur",
    "column_candidate",
    "core_matrix",
    "cross_class_kernel",
    "leverage_cur",
    "leverage_scores",
    "low_rank_plus_noise",
    "normalized_error",
    "one_vs_all_kernels",
    "random_cur",
    "reconstruct",
    "reconstruction_error",
    "row_candidate",
    "solve",
    "sp_independent_cur",
    "sp_select",
]
