"""Quantum walk on a circle of coherent-state sites.

A coin-driven walk whose positions are nonorthogonal frame states
(oscillator or squeezed coherent states) on a cyclic lattice, measured
through the frame's Gram matrix, with an exact ladder-basis simulator as
ground truth.
"""

__version__ = "0.1.0"

from .frames import (
    Frame,
    HWFrame,
    HWParams,
    HyperboloidPoint,
    IdealFrame,
    LadderCoefficients,
    SU11Frame,
    SU11Params,
    TruncationError,
    disk_coefficients,
    disk_point,
    estimate_cutoff,
    hw_center,
    hw_overlap,
    hyperboloid_point,
    map_one_mode,
    map_two_mode,
    site_angles,
    site_labels,
    su11_overlap,
    wrap_angle,
)
from .config import (
    ChartSpec,
    ConfigError,
    CrossCheckSuite,
    ExperimentConfig,
    OverlapConfig,
    parse_frame_spec,
)
from .observables import (
    BlochVector,
    GramMatrix,
    ProbabilityDistribution,
    bloch_vector,
    entanglement_entropy,
    gram,
    probabilities,
    state_norm,
    std_dev,
)
from .oracle import (
    CrossCheckCase,
    CrossCheckReport,
    LadderOperators,
    OracleObservables,
    OracleState,
    PhotonStatistics,
    cross_check,
    default_suite,
    oracle_init,
    oracle_observables,
    oracle_step,
    photon_statistics,
)
from .tables import (
    ResultTable,
    read_table,
    write_csv,
    write_json,
)
from .walk import (
    PAPER_IDEALIZED,
    PHASE_MODES,
    PHYSICAL,
    Trajectory,
    WalkState,
    coin_flip,
    hadamard,
    initial_state,
    normalized_coin_amps,
    run,
    shift,
    step,
    su2_coin,
)

__all__ = [name for name in dir() if not name.startswith("_")]
