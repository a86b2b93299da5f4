"""Exact ladder-basis simulator used as ground truth for the frame engine.

The walker is expanded over the discrete-series ladder levels m = 0..M
(tensor the coin), where the conditional shift is diagonal:
level m in the coin-up branch picks up exp(-i*dtheta*(k+m)) per step and
the coin-down branch its conjugate.  Truncation only affects the initial
expansion, whose discarded weight is controlled explicitly, so the
evolution itself is exact and every engine observable can be checked
against this module.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from scipy.linalg import expm

from .frames import (
    TWO_PI,
    SU11Params,
    SU11Frame,
    disk_coefficients,
    estimate_cutoff,
    map_one_mode,
    map_two_mode,
    site_angles,
)
from .observables import BlochVector, _bloch_from_moment, _h2
from .walk import (
    PAPER_IDEALIZED,
    PHYSICAL,
    PHASE_MODES,
    _coin_array,
    hadamard,
    normalized_coin_amps,
    run,
)

REALIZATIONS = ("ladder", "one-mode", "two-mode")

# the oracle is a validation tool, not a production solver
DESK_SCALE = {"n_sites": 64, "steps": 20, "r": 1.5}


@dataclass(frozen=True, eq=False)
class LadderOperators:
    """Dense truncated matrices of the su(1,1) ladder algebra.

    The commutators and the Casimir hold exactly on levels away from the
    cutoff edge; the last row/column carries the truncation defect.
    """

    k: float
    cutoff: int

    def __post_init__(self):
        if self.k <= 0.0:
            raise ValueError(f"Bargmann index must be positive, got {self.k}")
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be at least 1, got {self.cutoff}")

    @cached_property
    def k0(self) -> np.ndarray:
        m = np.arange(self.cutoff + 1, dtype=float)
        return np.diag(self.k + m).astype(complex)

    @cached_property
    def kplus(self) -> np.ndarray:
        m = np.arange(self.cutoff, dtype=float)
        return np.diag(np.sqrt((m + 1.0) * (m + 2.0 * self.k)), -1).astype(complex)

    @cached_property
    def kminus(self) -> np.ndarray:
        return self.kplus.conj().T

    @cached_property
    def k1(self) -> np.ndarray:
        return 0.5 * (self.kplus + self.kminus)

    @cached_property
    def k2(self) -> np.ndarray:
        return -0.5j * (self.kplus - self.kminus)

    def casimir(self) -> np.ndarray:
        return self.k0 @ self.k0 - 0.5 * (self.kplus @ self.kminus + self.kminus @ self.kplus)

    def displacement_generator(self, zeta: complex) -> np.ndarray:
        """Anti-Hermitian generator conj(zeta)*K+ - zeta*K- of the state map."""
        return np.conj(zeta) * self.kplus - zeta * self.kminus


@dataclass(frozen=True, eq=False)
class OracleState:
    """Coin-resolved ladder amplitudes psi[m, s] plus frame context."""

    k: float
    r: float
    cutoff: int
    psi: np.ndarray
    realization: str
    tail_bound: float

    def __post_init__(self):
        arr = np.array(self.psi, dtype=complex)
        if arr.shape != (self.cutoff + 1, 2):
            raise ValueError(f"psi must have shape (cutoff+1, 2), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "psi", arr)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.psi))


def _check_realization(realization: str, k: float) -> None:
    if realization not in REALIZATIONS:
        raise ValueError(f"realization must be one of {REALIZATIONS}, got {realization!r}")
    # the index maps raise for incompatible k
    if realization == "one-mode":
        map_one_mode(k, 0)
    elif realization == "two-mode":
        map_two_mode(k, 0)


def oracle_init(
    k: float,
    r: float,
    theta: float = 0.0,
    cutoff: int | None = None,
    realization: str = "ladder",
    coin_amps=(1.0, 0.0),
    tail_tol: float = 1e-12,
    self_test: bool = False,
) -> OracleState:
    """Squeezed coherent state at phase theta, expanded on the ladder.

    With self_test=True the closed-form expansion is compared against the
    numerically exponentiated displacement generator acting on the lowest
    level; the two must agree to 1e-10.
    """
    _check_realization(realization, k)
    params = SU11Params(k=k, r=r, theta=theta)
    if cutoff is None:
        cutoff = max(1, estimate_cutoff(k, r, tail_tol))
    coeffs = disk_coefficients(params, cutoff, tail_tol=tail_tol)
    a, b = normalized_coin_amps(coin_amps)
    psi = np.outer(coeffs.c, np.array([a, b]))
    if self_test:
        # exponentiate on a padded ladder: a probability tail of 1e-24 keeps
        # the amplitude reflected off the truncation edge below 1e-12
        padded = max(cutoff + 8, estimate_cutoff(k, r, 1e-24))
        ops = LadderOperators(k=k, cutoff=padded)
        zeta = r * complex(math.cos(params.theta), math.sin(params.theta))
        column = expm(ops.displacement_generator(zeta))[: cutoff + 1, 0]
        dev = float(np.max(np.abs(column - coeffs.c)))
        if dev > 1e-10:
            raise RuntimeError(
                f"closed-form expansion disagrees with the exponentiated generator by {dev:.3e}"
            )
    return OracleState(
        k=k, r=r, cutoff=cutoff, psi=psi, realization=realization, tail_bound=coeffs.tail_bound
    )


def oracle_step(state: OracleState, coin, dtheta: float) -> OracleState:
    """One walk step in the ladder basis: coin, then the diagonal shift phases."""
    c = _coin_array(coin)
    psi = state.psi @ c.T
    phase = np.exp(-1j * dtheta * (state.k + np.arange(state.cutoff + 1)))
    psi = np.column_stack([psi[:, 0] * phase, psi[:, 1] * np.conj(phase)])
    return OracleState(
        k=state.k,
        r=state.r,
        cutoff=state.cutoff,
        psi=psi,
        realization=state.realization,
        tail_bound=state.tail_bound,
    )


@lru_cache(maxsize=64)
def _site_expansions(k: float, r: float, n_sites: int, cutoff: int) -> np.ndarray:
    rows = [
        disk_coefficients(SU11Params(k=k, r=r, theta=theta), cutoff).c
        for theta in site_angles(n_sites)
    ]
    out = np.stack(rows)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class OracleObservables:
    """Ground-truth observables of an oracle state."""

    p: np.ndarray
    bloch: BlochVector
    entropy: float  # from partial-trace eigenvalues, not from the Bloch length
    k_vector: tuple[float, float, float]  # (K1, K2, K0) expectations
    norm: float

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)


def oracle_observables(state: OracleState, n_sites: int) -> OracleObservables:
    """Site distribution, coin Bloch vector, entropy and generator expectations.

    The coin density matrix comes from an exact partial trace over the
    ladder index; its eigenvalues give the entropy independently of the
    Bloch-length shortcut used by the engine.
    """
    psi = state.psi
    edge_weight = float(np.sum(np.abs(psi[-1, :]) ** 2))
    if edge_weight > 1e-10:
        warnings.warn(
            f"walker weight {edge_weight:.3e} at the ladder cutoff; increase the cutoff",
            RuntimeWarning,
        )
    sites = _site_expansions(state.k, state.r, n_sites, state.cutoff)
    proj = sites.conj() @ psi
    raw = np.sum(np.abs(proj) ** 2, axis=1)
    total = float(raw.sum())
    if total <= 0.0:
        raise RuntimeError("projected weight vanished")
    p = raw / total

    moment = psi.conj().T @ psi  # V[s,s'] = sum_m conj(psi[m,s]) psi[m,s']
    bloch = _bloch_from_moment(moment)
    norm_sq = float(moment[0, 0].real + moment[1, 1].real)
    lam = np.linalg.eigvalsh(moment) / norm_sq
    entropy = float(sum(_h2(max(x, 0.0)) for x in lam))

    m = np.arange(state.cutoff + 1, dtype=float)
    weights = np.sum(np.abs(psi) ** 2, axis=1)
    k0_exp = float(np.dot(state.k + m, weights)) / norm_sq
    coupling = np.sqrt((m[:-1] + 1.0) * (m[:-1] + 2.0 * state.k))
    kp_exp = complex(np.sum(np.conj(psi[1:, :]) * (coupling[:, None] * psi[:-1, :]))) / norm_sq
    return OracleObservables(
        p=p,
        bloch=bloch,
        entropy=entropy,
        k_vector=(kp_exp.real, kp_exp.imag, k0_exp),
        norm=math.sqrt(norm_sq),
    )


@dataclass(frozen=True)
class PhotonStatistics:
    """Occupancy histogram of the walker in a physical realization."""

    realization: str
    n_a: np.ndarray
    n_b: np.ndarray | None
    weights: np.ndarray


def photon_statistics(state: OracleState) -> PhotonStatistics:
    """Fock occupancies and their weights for the one- or two-mode realization."""
    if state.realization == "ladder":
        raise ValueError("the abstract ladder realization has no photon statistics")
    weights = np.sum(np.abs(state.psi) ** 2, axis=1)
    weights = weights / float(weights.sum())
    levels = range(state.cutoff + 1)
    if state.realization == "one-mode":
        n_a = np.array([map_one_mode(state.k, m) for m in levels])
        n_b = None
    else:
        pairs = [map_two_mode(state.k, m) for m in levels]
        n_a = np.array([pair[0] for pair in pairs])
        n_b = np.array([pair[1] for pair in pairs])
    return PhotonStatistics(realization=state.realization, n_a=n_a, n_b=n_b, weights=weights)


@dataclass(frozen=True)
class CrossCheckCase:
    """One engine-vs-oracle comparison configuration."""

    k: float
    r: float
    n_sites: int = 16
    steps: int = 10
    phase_mode: str = PHYSICAL
    coin_amps: tuple = (1.0, 0.0)
    start: int = 0

    def __post_init__(self):
        if self.phase_mode not in PHASE_MODES:
            raise ValueError(f"phase mode must be one of {PHASE_MODES}, got {self.phase_mode!r}")

    def label(self) -> str:
        return (
            f"k={self.k:g}, r={self.r:g}, L={self.n_sites}, steps={self.steps}, "
            f"mode={self.phase_mode}"
        )


@dataclass(frozen=True)
class CrossCheckReport:
    """Maximum engine-oracle deviations over a whole trajectory."""

    case: CrossCheckCase
    tolerance: float
    max_dp: float
    max_dm: float
    max_ds: float
    max_engine_norm_dev: float
    max_oracle_norm_dev: float
    expected_divergence: bool
    passed: bool
    first_failure: str | None

    def to_dict(self) -> dict:
        return {
            "case": {
                "k": self.case.k,
                "r": self.case.r,
                "sites": self.case.n_sites,
                "steps": self.case.steps,
                "phase_mode": self.case.phase_mode,
                "coin_init": [[z.real, z.imag] for z in map(complex, self.case.coin_amps)],
                "start_site": self.case.start,
            },
            "tolerance": self.tolerance,
            "max_abs_dp": self.max_dp,
            "max_abs_dm": self.max_dm,
            "max_abs_ds": self.max_ds,
            "max_engine_norm_dev": self.max_engine_norm_dev,
            "max_oracle_norm_dev": self.max_oracle_norm_dev,
            "expected_divergence": self.expected_divergence,
            "passed": self.passed,
            "first_failure": self.first_failure,
        }


def cross_check(case: CrossCheckCase, tolerance: float = 1e-8) -> CrossCheckReport:
    """Compare the frame engine with the ladder oracle step by step.

    Physical-mode runs must agree to the tolerance in P_n, the Bloch
    vector and the entropy, with both norms staying at 1.  Idealized-mode
    runs are expected to diverge (that is the content of the phase-mode
    flag) and are only reported.
    """
    if case.n_sites > DESK_SCALE["n_sites"]:
        raise ValueError(f"cross-check is desk-scale only: sites <= {DESK_SCALE['n_sites']}")
    if case.steps > DESK_SCALE["steps"]:
        raise ValueError(f"cross-check is desk-scale only: steps <= {DESK_SCALE['steps']}")
    if case.r > DESK_SCALE["r"]:
        raise ValueError(f"cross-check is desk-scale only: r <= {DESK_SCALE['r']}")

    traj = run(
        SU11Frame(k=case.k, r=case.r),
        case.n_sites,
        case.steps,
        start=case.start,
        coin_amps=case.coin_amps,
        phase_mode=case.phase_mode,
    )
    dtheta = TWO_PI / case.n_sites
    ostate = oracle_init(case.k, case.r, theta=case.start * dtheta, coin_amps=case.coin_amps)
    coin = hadamard()

    max_dp = max_dm = max_ds = 0.0
    max_engine_norm_dev = max_oracle_norm_dev = 0.0
    first_failure = None
    for l in range(case.steps + 1):
        obs = oracle_observables(ostate, case.n_sites)
        dp = float(np.max(np.abs(traj.probabilities[l] - obs.p)))
        engine_m = traj.bloch[l]
        dm = max(
            abs(engine_m[0] - obs.bloch.mx),
            abs(engine_m[1] - obs.bloch.my),
            abs(engine_m[2] - obs.bloch.mz),
        )
        ds = abs(float(traj.entropy[l]) - obs.entropy)
        e_dev = abs(float(traj.norms[l]) - 1.0)
        o_dev = abs(obs.norm - 1.0)
        if first_failure is None:
            for name, dev, tol in (
                ("P_n", dp, tolerance),
                ("bloch", dm, tolerance),
                ("entropy", ds, tolerance),
                ("engine norm", e_dev, 1e-10),
                ("oracle norm", o_dev, 1e-10),
            ):
                if dev >= tol:
                    first_failure = f"{name} at step {l} ({dev:.3e})"
                    break
        max_dp = max(max_dp, dp)
        max_dm = max(max_dm, dm)
        max_ds = max(max_ds, ds)
        max_engine_norm_dev = max(max_engine_norm_dev, e_dev)
        max_oracle_norm_dev = max(max_oracle_norm_dev, o_dev)
        if l < case.steps:
            ostate = oracle_step(ostate, coin, dtheta)

    expected_divergence = case.phase_mode != PHYSICAL
    agreed = first_failure is None
    passed = expected_divergence or agreed
    return CrossCheckReport(
        case=case,
        tolerance=tolerance,
        max_dp=max_dp,
        max_dm=max_dm,
        max_ds=max_ds,
        max_engine_norm_dev=max_engine_norm_dev,
        max_oracle_norm_dev=max_oracle_norm_dev,
        expected_divergence=expected_divergence,
        passed=passed,
        first_failure=None if expected_divergence else first_failure,
    )


def default_suite() -> tuple[CrossCheckCase, ...]:
    """Physical-mode grid over k and r, plus one idealized-mode entry."""
    cases = [
        CrossCheckCase(k=k, r=r)
        for k in (0.25, 0.75, 1.0, 10.0)
        for r in (0.5, 1.0)
    ]
    cases.append(CrossCheckCase(k=0.25, r=0.5, phase_mode=PAPER_IDEALIZED))
    return tuple(cases)
