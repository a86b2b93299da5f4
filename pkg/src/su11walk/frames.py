"""Coherent-state frames on a circle of sites.

A frame assigns a normalized state to every site n of a cyclic lattice,
with phase label theta_n = n * (2*pi/L).  Three frames are provided: an
orthonormal reference basis, oscillator coherent states of fixed
magnitude, and squeezed (su(1,1)) coherent states of fixed radial
parameter.  This module holds the pairwise overlap kernels, the
phase-space geometry of the squeezed frame (hyperboloid and unit disk),
the ladder-basis expansion used by the exact simulator, and the index
maps onto physical Fock occupancies for the one- and two-mode
realizations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

TWO_PI = 2.0 * math.pi

# Bargmann indices realizable with a single bosonic mode (even/odd Fock sectors).
ONE_MODE_INDICES = (0.25, 0.75)


class TruncationError(RuntimeError):
    """A ladder cutoff cannot meet the requested tail bound."""

    def __init__(self, message: str, achieved_tail: float, required_cutoff: int | None = None):
        super().__init__(message)
        self.achieved_tail = achieved_tail
        self.required_cutoff = required_cutoff


def wrap_angle(theta: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    w = math.fmod(theta, TWO_PI)
    if w <= -math.pi:
        w += TWO_PI
    elif w > math.pi:
        w -= TWO_PI
    return w


def site_labels(n_sites: int) -> np.ndarray:
    """Integer site labels in storage order.

    Index i of an amplitude array corresponds to site n = labels[i], with
    n running over [-L/2, L/2) and stored at i = n mod L.
    """
    if n_sites < 1:
        raise ValueError(f"need at least one site, got {n_sites}")
    half = n_sites // 2
    return (np.arange(n_sites) + half) % n_sites - half


def site_angles(n_sites: int) -> np.ndarray:
    """Phase labels theta_n = n * (2*pi/L) in storage order."""
    return site_labels(n_sites) * (TWO_PI / n_sites)


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")


def su11_overlap(k: float, r: float, dtheta: float) -> complex:
    """Overlap of two squeezed coherent states with equal k and r.

    dtheta is theta_m - theta_n for bra m and ket n.  Evaluates
    [cosh^2(r) - exp(i*dtheta)*sinh^2(r)]^(-2k) on the principal branch,
    which is single-valued here because the base has real part >= 1.
    """
    _require_finite(k=k, r=r, dtheta=dtheta)
    if k <= 0.0:
        raise ValueError(f"Bargmann index must be positive, got {k}")
    if r < 0.0:
        raise ValueError(f"radial parameter must be non-negative, got {r}")
    s = math.sinh(r) ** 2
    # cosh^2 r - e^{i dtheta} sinh^2 r, written so Re(base) >= 1 exactly
    base = 1.0 + s * (1.0 - cmath.exp(1j * dtheta))
    return cmath.exp(-2.0 * k * cmath.log(base))


def hw_overlap(alpha_mag: float, dtheta: float) -> complex:
    """Overlap of two oscillator coherent states of equal magnitude.

    Returns exp[-|alpha|^2 (1 - exp(i*dtheta))] for phase labels that
    differ by dtheta = (n - m) * delta_theta between ket n and bra m.
    """
    _require_finite(alpha_mag=alpha_mag, dtheta=dtheta)
    if alpha_mag < 0.0:
        raise ValueError(f"coherent magnitude must be non-negative, got {alpha_mag}")
    a2 = alpha_mag * alpha_mag
    return cmath.exp(-a2 * (1.0 - cmath.exp(1j * dtheta)))


@dataclass(frozen=True)
class SU11Params:
    """Label of a squeezed frame state: Bargmann index k, radius r, phase theta."""

    k: float
    r: float
    theta: float = 0.0

    def __post_init__(self):
        _require_finite(k=self.k, r=self.r, theta=self.theta)
        if self.k <= 0.0:
            raise ValueError(f"Bargmann index must be positive, got {self.k}")
        if self.r < 0.0:
            raise ValueError(f"radial parameter must be non-negative, got {self.r}")
        object.__setattr__(self, "theta", wrap_angle(self.theta))


@dataclass(frozen=True)
class HWParams:
    """Label of an oscillator coherent state: magnitude and phase."""

    alpha_mag: float
    theta: float = 0.0

    def __post_init__(self):
        _require_finite(alpha_mag=self.alpha_mag, theta=self.theta)
        if self.alpha_mag < 0.0:
            raise ValueError(f"coherent magnitude must be non-negative, got {self.alpha_mag}")
        object.__setattr__(self, "theta", wrap_angle(self.theta))


@dataclass(frozen=True)
class HyperboloidPoint:
    """Expectation triple (K1, K2, K0) of the su(1,1) generators."""

    k1: float
    k2: float
    k0: float


def hyperboloid_point(p: SU11Params) -> HyperboloidPoint:
    """Generator expectations of a squeezed coherent state.

    The point k*(sinh 2r cos theta, sinh 2r sin theta, cosh 2r) lies on the
    upper sheet of K0^2 - K1^2 - K2^2 = k^2.
    """
    sh = math.sinh(2.0 * p.r)
    return HyperboloidPoint(
        k1=p.k * sh * math.cos(p.theta),
        k2=p.k * sh * math.sin(p.theta),
        k0=p.k * math.cosh(2.0 * p.r),
    )


def disk_point(p: SU11Params) -> complex:
    """Unit-disk image tanh(r) * exp(i*theta) of a squeezed state label.

    Equals the stereographic projection (K1 + i*K2)/(k + K0) of the
    hyperboloid point.
    """
    return math.tanh(p.r) * cmath.exp(1j * p.theta)


def hw_center(p: HWParams) -> tuple[float, float]:
    """Phase-plane center (x, p) = sqrt(2)*|alpha|*(cos theta, sin theta)."""
    c = math.sqrt(2.0) * p.alpha_mag
    return (c * math.cos(p.theta), c * math.sin(p.theta))


@dataclass(frozen=True)
class LadderCoefficients:
    """Expansion of a squeezed coherent state over ladder levels 0..cutoff."""

    k: float
    cutoff: int
    c: np.ndarray
    tail_bound: float

    def __post_init__(self):
        arr = np.asarray(self.c, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "c", arr)


def disk_coefficients(p: SU11Params, cutoff: int, tail_tol: float | None = None) -> LadderCoefficients:
    """Ladder-basis coefficients c_m of the squeezed coherent state p.

    c_m = (1 - t^2)^k * sqrt(Gamma(2k+m) / (m! Gamma(2k))) * tau^m with
    t = tanh(r) and tau = t * exp(-i*theta); the phase convention is pinned
    by the generator-exponential self-test in the oracle module.  The
    gamma ratio is evaluated in log space, so large k and deep levels do
    not overflow.  When tail_tol is given, the discarded weight
    1 - sum |c_m|^2 must not exceed it.
    """
    if cutoff < 0:
        raise ValueError(f"cutoff must be non-negative, got {cutoff}")
    t = math.tanh(p.r)
    if t == 0.0:
        c = np.zeros(cutoff + 1, dtype=complex)
        c[0] = 1.0
        tail = 0.0
    else:
        m = np.arange(cutoff + 1)
        log_mag = (
            p.k * math.log1p(-t * t)
            + 0.5 * (gammaln(2.0 * p.k + m) - gammaln(m + 1.0) - gammaln(2.0 * p.k))
            + m * math.log(t)
        )
        c = np.exp(log_mag - 1j * m * p.theta)
        tail = max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))
    if tail_tol is not None and tail > tail_tol:
        raise TruncationError(
            f"cutoff {cutoff} leaves tail {tail:.3e} > {tail_tol:.3e} for k={p.k}, r={p.r}",
            achieved_tail=tail,
            required_cutoff=estimate_cutoff(p.k, p.r, tail_tol),
        )
    return LadderCoefficients(k=p.k, cutoff=cutoff, c=c, tail_bound=tail)


def estimate_cutoff(k: float, r: float, tol: float = 1e-12, max_cutoff: int = 200_000) -> int:
    """Smallest cutoff M whose discarded ladder weight is provably below tol.

    The level weights |c_m|^2 decay geometrically with asymptotic ratio
    tanh^2(r); past the cutoff the remaining tail is bounded by the next
    weight times a geometric series in the local ratio bound.
    """
    _require_finite(k=k, r=r, tol=tol)
    if k <= 0.0:
        raise ValueError(f"Bargmann index must be positive, got {k}")
    if r < 0.0:
        raise ValueError(f"radial parameter must be non-negative, got {r}")
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tolerance must be in (0, 1), got {tol}")
    t2 = math.tanh(r) ** 2
    if t2 == 0.0:
        return 0
    log_tol = math.log(tol)
    lw = 2.0 * k * math.log1p(-t2)  # log |c_0|^2
    for m in range(max_cutoff):
        lw_next = lw + math.log(t2 * (2.0 * k + m) / (m + 1.0))
        # all weight ratios beyond level m+1 are bounded by q
        q = t2 * max(1.0, (2.0 * k + m + 1.0) / (m + 2.0))
        if q < 1.0 and lw_next - math.log1p(-q) < log_tol:
            return m
        lw = lw_next
    raise TruncationError(
        f"no cutoff below {max_cutoff} reaches tail {tol:.3e} for k={k}, r={r}",
        achieved_tail=math.exp(min(lw, 0.0)),
    )


def _check_level(m: int) -> int:
    if m != int(m) or m < 0:
        raise ValueError(f"ladder level must be a non-negative integer, got {m}")
    return int(m)


def map_one_mode(k: float, m: int) -> int:
    """Fock occupancy of ladder level m in the single-mode realization.

    Level m sits at photon number 2*(m + k - 1/4): the even sector for
    k = 1/4, the odd sector for k = 3/4.
    """
    if not any(math.isclose(k, allowed, rel_tol=0.0, abs_tol=1e-12) for allowed in ONE_MODE_INDICES):
        raise ValueError(f"one-mode realization requires k in {{1/4, 3/4}}, got {k}")
    m = _check_level(m)
    return int(round(2.0 * (m + k - 0.25)))


def map_two_mode(k: float, m: int) -> tuple[int, int]:
    """Fock occupancies (n_a, n_b) of ladder level m in the two-mode realization.

    Level m maps to (m + 2k - 1, m); the occupancy difference n_a - n_b is
    the conserved value 2k - 1.
    """
    two_k = 2.0 * k
    if not (math.isfinite(two_k) and math.isclose(two_k, round(two_k), rel_tol=0.0, abs_tol=1e-12)):
        raise ValueError(f"two-mode realization requires half-integer k, got {k}")
    if round(two_k) < 1:
        raise ValueError(f"two-mode realization requires k >= 1/2, got {k}")
    m = _check_level(m)
    return (m + int(round(two_k)) - 1, m)


@dataclass(frozen=True)
class IdealFrame:
    """Orthonormal site basis: the reference walk with no site overlap."""

    def overlap(self, dtheta: float) -> complex:
        return 1.0 + 0.0j if abs(wrap_angle(dtheta)) < 1e-12 else 0.0j

    @property
    def branch_phase_rate(self) -> float:
        return 0.0

    @property
    def label(self) -> str:
        return "ideal"


@dataclass(frozen=True)
class HWFrame:
    """Oscillator coherent states of fixed magnitude on a phase-plane circle."""

    alpha_mag: float

    def __post_init__(self):
        _require_finite(alpha_mag=self.alpha_mag)
        if self.alpha_mag < 0.0:
            raise ValueError(f"coherent magnitude must be non-negative, got {self.alpha_mag}")

    def overlap(self, dtheta: float) -> complex:
        # <site_m|site_n> at dtheta = theta_m - theta_n; the bra carries the
        # conjugated phase, so the kernel is evaluated at the reversed angle.
        return hw_overlap(self.alpha_mag, -dtheta)

    @property
    def branch_phase_rate(self) -> float:
        # the number operator annihilates the vacuum, so the conditional
        # rotation adds no phase on top of the site relabeling
        return 0.0

    @property
    def label(self) -> str:
        return f"hw:{self.alpha_mag:g}"


@dataclass(frozen=True)
class SU11Frame:
    """Squeezed coherent states of fixed k and r on a circle in the disk."""

    k: float
    r: float

    def __post_init__(self):
        _require_finite(k=self.k, r=self.r)
        if self.k <= 0.0:
            raise ValueError(f"Bargmann index must be positive, got {self.k}")
        if self.r < 0.0:
            raise ValueError(f"radial parameter must be non-negative, got {self.r}")

    def overlap(self, dtheta: float) -> complex:
        return su11_overlap(self.k, self.r, dtheta)

    @property
    def branch_phase_rate(self) -> float:
        # lowest-weight eigenvalue of the rotation generator
        return self.k

    @property
    def label(self) -> str:
        return f"su11:{self.k:g},{self.r:g}"


Frame = IdealFrame | HWFrame | SU11Frame
