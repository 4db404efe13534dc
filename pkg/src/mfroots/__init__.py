"""Exact computation with strictly monotone usc multifunctions:
composition and iteration with correct jump propagation, structural
analysis (intensity, invariant and absorbing intervals), construction and
verification of iterative roots, and nonexistence certificates."""

from .core import (
    Branch,
    ClosedInterval,
    EquivalenceConfig,
    EquivalenceReport,
    JumpPoint,
    LEFT,
    Multifunction,
    RIGHT,
    Side,
    ValidationReport,
    ValueSet,
    compose,
    equivalent,
    evaluate,
    iterate,
    reflect,
)
from .maps import AffineMap, ComposedMap, DEC, GenericMap, INC, Orientation
from .scalar_roots import (
    ScalarRootSeed,
    conjugacy,
    decreasing_odd_root,
    decreasing_square_root_pair,
    increasing_nth_root,
)
from .structure import (
    AbsorbingData,
    HReport,
    IntensityResult,
    JumpClass,
    Partition,
    TransitionTable,
    absorbing_data,
    classify_jump,
    hypothesis_H,
    intensity,
    invariant_intervals,
    jump_set,
    partition,
    split_at_inclusion_fixed_points,
    transition_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
