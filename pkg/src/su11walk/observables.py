"""Measurement layer for walks over nonorthogonal site frames.

Site-resolved probabilities, angular spread, the coin Bloch vector and
the coin-walker entanglement entropy are all evaluated through the Gram
matrix of the active frame; for the orthonormal frame every formula
reduces to the textbook expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .frames import TWO_PI, site_angles

# Gram matrices of valid frames are positive semidefinite up to roundoff.
PSD_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Circulant matrix of pairwise site overlaps.

    Only the length-L generator g is stored, with
    G[m][n] = g[(m - n) mod L]; the dense matrix is expanded on first use.
    """

    generator: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.generator, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "generator", arr)

    @property
    def n_sites(self) -> int:
        return len(self.generator)

    @cached_property
    def matrix(self) -> np.ndarray:
        L = self.n_sites
        idx = (np.arange(L)[:, None] - np.arange(L)[None, :]) % L
        full = self.generator[idx]
        full.setflags(write=False)
        return full

    def spectrum(self) -> np.ndarray:
        """Eigenvalues of the circulant, via the discrete Fourier transform."""
        return np.fft.fft(self.generator).real


def gram(frame, n_sites: int) -> GramMatrix:
    """Build the overlap Gram matrix of a frame on an L-site circle."""
    if n_sites < 1:
        raise ValueError(f"need at least one site, got {n_sites}")
    L = n_sites
    dtheta = TWO_PI / L
    g = np.zeros(L, dtype=complex)
    for d in range(L // 2 + 1):
        g[d] = frame.overlap(dtheta * d)
    for d in range(1, (L + 1) // 2):
        g[L - d] = np.conj(g[d])  # Hermitian circulant by construction
    if L % 2 == 0 and L > 1:
        g[L // 2] = complex(g[L // 2].real, 0.0)  # antipodal overlap is real
    if abs(g[0] - 1.0) > 1e-12:
        raise RuntimeError(f"overlap kernel is not normalized at zero separation: {g[0]!r}")
    lam_min = float(np.min(np.fft.fft(g).real))
    if lam_min < -PSD_TOLERANCE:
        raise RuntimeError(
            f"overlap kernel is not positive semidefinite (min eigenvalue {lam_min:.3e}); "
            "this signals a kernel implementation bug"
        )
    return GramMatrix(generator=g)


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Normalized site distribution and the normalizer it was divided by."""

    p: np.ndarray
    normalizer: float

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)


def probabilities(state, gram_matrix: GramMatrix) -> ProbabilityDistribution:
    """Site-resolved distribution P_n of a walk state.

    P_n is the squared projection of the walker onto the site-n frame
    state, summed over the coin and divided by the total projected weight
    N = sum_n sum_s |sum_m c_{m,s} G[n][m]|^2.  Nonorthogonal frames make
    N differ from 1 even for a normalized state.
    """
    proj = gram_matrix.matrix @ state.amps
    raw = np.sum(np.abs(proj) ** 2, axis=1)
    normalizer = float(raw.sum())
    if normalizer <= 0.0:
        raise RuntimeError("projected weight vanished; state is orthogonal to every site")
    return ProbabilityDistribution(p=raw / normalizer, normalizer=normalizer)


def state_norm(state, gram_matrix: GramMatrix) -> float:
    """Physical norm sqrt(sum_{m,n,s} c*_{m,s} c_{n,s} G[m][n]) of a walk state."""
    val = np.vdot(state.amps, gram_matrix.matrix @ state.amps)
    if abs(val.imag) > 1e-10:
        raise RuntimeError(f"norm radicand has imaginary part {val.imag:.3e}")
    if val.real < -PSD_TOLERANCE:
        raise RuntimeError(f"norm radicand is negative ({val.real:.3e}); Gram matrix is not PSD")
    return math.sqrt(max(val.real, 0.0))


def std_dev(dist: ProbabilityDistribution, n_sites: int) -> float:
    """Angular standard deviation of P_n over unwrapped labels theta_n = n*dtheta.

    Meaningful while the walk has not wrapped the circle, i.e. for step
    counts below L/2.
    """
    theta = site_angles(n_sites)
    m1 = float(np.dot(dist.p, theta))
    m2 = float(np.dot(dist.p, theta * theta))
    return math.sqrt(max(m2 - m1 * m1, 0.0))


@dataclass(frozen=True)
class BlochVector:
    """Coin Bloch vector and the eigenvalue pair of the coin density matrix."""

    mx: float
    my: float
    mz: float
    p_plus: float
    p_minus: float

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.mx**2 + self.my**2 + self.mz**2)


def _bloch_from_moment(moment: np.ndarray) -> BlochVector:
    """Bloch vector from the 2x2 coin moment matrix V[s,s'] = <psi_s|psi_s'>-type sums."""
    trace = moment[0, 0] + moment[1, 1]
    if abs(trace.imag) > 1e-10:
        raise RuntimeError(f"coin moment trace has imaginary part {trace.imag:.3e}")
    if trace.real <= 0.0:
        raise RuntimeError("coin moment matrix has non-positive trace")
    mx_c = (moment[0, 1] + moment[1, 0]) / trace.real
    my_c = 1j * (moment[1, 0] - moment[0, 1]) / trace.real
    mz_c = (moment[0, 0] - moment[1, 1]) / trace.real
    for name, value in (("mx", mx_c), ("my", my_c), ("mz", mz_c)):
        if abs(value.imag) > 1e-10:
            raise RuntimeError(f"Bloch component {name} has imaginary part {value.imag:.3e}")
    mx, my, mz = mx_c.real, my_c.real, mz_c.real
    m = math.sqrt(mx * mx + my * my + mz * mz)
    if m > 1.0 + 1e-8:
        raise RuntimeError(f"Bloch vector length {m} exceeds 1; Gram or normalization bug")
    m = min(m, 1.0)
    return BlochVector(mx=mx, my=my, mz=mz, p_plus=0.5 * (1.0 + m), p_minus=0.5 * (1.0 - m))


def bloch_vector(state, gram_matrix: GramMatrix) -> BlochVector:
    """Coin Bloch vector M_i = sum c*_{m,s} (sigma_i)_{ss'} c_{n,s'} G[m][n].

    The moment matrix is normalized by its trace (the squared state norm),
    which is a no-op for physically evolved states.
    """
    moment = state.amps.conj().T @ (gram_matrix.matrix @ state.amps)
    return _bloch_from_moment(moment)


def _h2(p: float) -> float:
    if p <= 0.0:
        return 0.0
    return -p * math.log2(p)


def entanglement_entropy(b: BlochVector) -> float:
    """Binary entropy of the coin eigenvalue pair, in bits."""
    return _h2(b.p_plus) + _h2(b.p_minus)
