"""Coin-driven walk dynamics on a cyclic lattice of frame sites.

One step is a coin rotation followed by the conditional shift: the coin-up
component moves one site counter-clockwise, the coin-down component one
site clockwise.  In the physical phase mode the shift also applies the
branch phases exp(-/+ i*dtheta*k) inherited from the lowest-weight
eigenvalue of the rotation generator; the idealized mode relabels sites
with no phase, which changes nothing for an orthonormal frame but is
measurably different through a nonorthogonal one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import observables
from .frames import TWO_PI, Frame

PHYSICAL = "physical"
PAPER_IDEALIZED = "paper-idealized"
PHASE_MODES = (PHYSICAL, PAPER_IDEALIZED)


def hadamard() -> np.ndarray:
    """The balanced coin (1/sqrt2) [[1, 1], [1, -1]]."""
    s = 1.0 / math.sqrt(2.0)
    return np.array([[s, s], [s, -s]], dtype=complex)


def su2_coin(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """General SU(2) coin from ZYZ Euler angles, Rz(alpha)@Ry(beta)@Rz(gamma)."""
    cb = math.cos(0.5 * beta)
    sb = math.sin(0.5 * beta)
    return np.array(
        [
            [cmath.exp(-0.5j * (alpha + gamma)) * cb, -cmath.exp(-0.5j * (alpha - gamma)) * sb],
            [cmath.exp(0.5j * (alpha - gamma)) * sb, cmath.exp(0.5j * (alpha + gamma)) * cb],
        ],
        dtype=complex,
    )


def _coin_array(coin) -> np.ndarray:
    c = np.asarray(coin, dtype=complex)
    if c.shape != (2, 2):
        raise ValueError(f"coin operator must be 2x2, got shape {c.shape}")
    dev = float(np.max(np.abs(c @ c.conj().T - np.eye(2))))
    if dev > 1e-12:
        raise ValueError(f"coin operator must be unitary; deviation {dev:.3e}")
    return c


def normalized_coin_amps(coin_amps) -> tuple[complex, complex]:
    a, b = (complex(x) for x in coin_amps)
    s = abs(a) ** 2 + abs(b) ** 2
    if abs(s - 1.0) > 1e-12:
        scale = math.sqrt(s) if s > 0.0 else 1.0
        raise ValueError(
            f"coin state must be normalized: |a|^2 + |b|^2 = {s!r}; "
            f"closest normalized pair is ({a / scale!r}, {b / scale!r})"
        )
    return a, b


@dataclass(frozen=True, eq=False)
class WalkState:
    """Amplitudes over (site, coin) plus the frame and phase-mode context.

    amps has shape (L, 2); row i holds the up/down amplitudes of site
    n = site_labels(L)[i].
    """

    amps: np.ndarray
    frame: Frame
    phase_mode: str
    step_count: int = 0

    def __post_init__(self):
        arr = np.array(self.amps, dtype=complex)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError(f"amplitudes must have shape (L, 2), got {arr.shape}")
        if self.phase_mode not in PHASE_MODES:
            raise ValueError(f"phase mode must be one of {PHASE_MODES}, got {self.phase_mode!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    @property
    def n_sites(self) -> int:
        return self.amps.shape[0]

    @property
    def delta_theta(self) -> float:
        return TWO_PI / self.n_sites


def initial_state(
    n_sites: int,
    start: int,
    coin_amps,
    frame: Frame,
    phase_mode: str = PHYSICAL,
) -> WalkState:
    """Walker localized on one site with the given coin amplitudes."""
    if n_sites < 2:
        raise ValueError(f"need at least two sites, got {n_sites}")
    if not -(n_sites // 2) <= start <= (n_sites - 1) // 2:
        raise ValueError(f"start site {start} outside [-L/2, L/2) for L = {n_sites}")
    a, b = normalized_coin_amps(coin_amps)
    amps = np.zeros((n_sites, 2), dtype=complex)
    amps[start % n_sites, 0] = a
    amps[start % n_sites, 1] = b
    return WalkState(amps=amps, frame=frame, phase_mode=phase_mode, step_count=0)


def coin_flip(state: WalkState, coin) -> WalkState:
    """Apply a unitary coin to every site; the step counter is unchanged."""
    c = _coin_array(coin)
    return WalkState(
        amps=state.amps @ c.T,
        frame=state.frame,
        phase_mode=state.phase_mode,
        step_count=state.step_count,
    )


def shift(state: WalkState, direction: int = 1, k: float | None = None) -> WalkState:
    """Conditional move: coin-up by +direction sites, coin-down by -direction.

    In the physical phase mode the branches also acquire
    exp(-i*direction*dtheta*k) and its conjugate.  k defaults to the
    frame's branch phase rate; passing it explicitly evolves the
    amplitudes under a different generator offset than the frame used for
    measurement.
    """
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    rate = state.frame.branch_phase_rate if k is None else float(k)
    up = np.roll(state.amps[:, 0], direction)
    down = np.roll(state.amps[:, 1], -direction)
    if state.phase_mode == PHYSICAL and rate != 0.0:
        phase = cmath.exp(-1j * direction * state.delta_theta * rate)
        up = up * phase
        down = down * np.conj(phase)
    return WalkState(
        amps=np.column_stack([up, down]),
        frame=state.frame,
        phase_mode=state.phase_mode,
        step_count=state.step_count,
    )


def step(state: WalkState, coin, k: float | None = None) -> WalkState:
    """One walk step: coin rotation, then the conditional shift."""
    moved = shift(coin_flip(state, coin), 1, k)
    return WalkState(
        amps=moved.amps,
        frame=state.frame,
        phase_mode=state.phase_mode,
        step_count=state.step_count + 1,
    )


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States and per-step observables of a walk of l = 0..steps."""

    frame: Frame
    phase_mode: str
    states: tuple[WalkState, ...]
    probabilities: np.ndarray  # (steps+1, L), storage order matching amps
    sigma: np.ndarray
    bloch: np.ndarray  # (steps+1, 3)
    entropy: np.ndarray
    norms: np.ndarray
    gram: observables.GramMatrix

    @property
    def steps(self) -> int:
        return len(self.states) - 1


def run(
    frame: Frame,
    n_sites: int,
    steps: int,
    start: int = 0,
    coin_amps=(1.0, 0.0),
    phase_mode: str = PHYSICAL,
    coin=None,
) -> Trajectory:
    """Evolve a localized start for the given number of steps.

    Returns the full state sequence together with P_n, the angular spread,
    the coin Bloch vector, the entanglement entropy and the state norm at
    every step.  The coin defaults to the balanced one.
    """
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    c = hadamard() if coin is None else _coin_array(coin)
    state = initial_state(n_sites, start, coin_amps, frame, phase_mode)
    states = [state]
    for _ in range(steps):
        state = step(state, c)
        states.append(state)

    g = observables.gram(frame, n_sites)
    n_records = steps + 1
    probs = np.zeros((n_records, n_sites))
    sigma = np.zeros(n_records)
    bloch = np.zeros((n_records, 3))
    entropy = np.zeros(n_records)
    norms = np.zeros(n_records)
    for l, s in enumerate(states):
        dist = observables.probabilities(s, g)
        probs[l] = dist.p
        sigma[l] = observables.std_dev(dist, n_sites)
        b = observables.bloch_vector(s, g)
        bloch[l] = (b.mx, b.my, b.mz)
        entropy[l] = observables.entanglement_entropy(b)
        norms[l] = observables.state_norm(s, g)
    for arr in (probs, sigma, bloch, entropy, norms):
        arr.setflags(write=False)
    return Trajectory(
        frame=frame,
        phase_mode=phase_mode,
        states=tuple(states),
        probabilities=probs,
        sigma=sigma,
        bloch=bloch,
        entropy=entropy,
        norms=norms,
        gram=g,
    )
