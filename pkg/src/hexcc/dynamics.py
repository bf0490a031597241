"""Time-domain observables: X(t) = e^(tL) X within one coset block,
autocorrelation functions and exponential decay-rate fits.

Within a block the generalized eigensystem of -L gives the exact spectral
form <X, X(t)> = sum_k w_k e^(-lambda_k t) with w_k >= 0, so the series is
monotone non-increasing and bounded by the envelope of its slowest
contributing mode plus the kernel offset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .davies import LindbladBlock


@dataclass(frozen=True)
class AutocorrelationSeries:
    """<X, X(t)> on a time grid, with the t = 0 normalization <X, X>."""

    label: str
    times: np.ndarray
    values: np.ndarray
    normalization: float


@dataclass(frozen=True)
class SpectralWeights:
    """Decay rates and their weights in the spectral form of <X, X(t)>."""

    rates: np.ndarray
    weights: np.ndarray
    kernel_tol: float = 1e-9

    @property
    def kernel_offset(self) -> float:
        return float(self.weights[self.rates < self.kernel_tol].sum())

    def min_contributing(self, weight_tol=1e-12):
        live = (self.rates >= self.kernel_tol) & (self.weights > weight_tol)
        return float(self.rates[live].min()) if live.any() else None


def default_grid(j: float = 1.0, n_points: int = 40) -> np.ndarray:
    """Logarithmic grid over t in [1e-2, 1e2] / J, spanning every Bohr-rate
    scale at moderate beta."""
    return np.logspace(-2, 2, n_points) / j


def coefficients(block: LindbladBlock, op) -> np.ndarray:
    """Coefficient vector of a Pauli in the block basis {P g_v}."""
    for v in range(block.dim):
        if block.basis_element(v) == op:
            c = np.zeros(block.dim)
            c[v] = 1.0
            return c
    raise ValueError("operator is not a basis element of this block")


def spectral_weights(block: LindbladBlock, coeffs, kernel_tol=1e-9) -> SpectralWeights:
    lam, phi = block.eigensystem()
    overlap = phi.T @ block.gram @ np.asarray(coeffs, dtype=float)
    return SpectralWeights(rates=lam, weights=overlap**2, kernel_tol=kernel_tol)


def evolve(block: LindbladBlock, coeffs, t: float) -> np.ndarray:
    """Coefficients of e^(tL) X in the block basis."""
    if t < 0:
        raise ValueError("negative time")
    lam, phi = block.eigensystem()
    c = np.asarray(coeffs, dtype=float)
    return phi @ (np.exp(-lam * t) * (phi.T @ block.gram @ c))


def autocorrelation(block: LindbladBlock, coeffs, grid, label="X") -> AutocorrelationSeries:
    """<X, X(t)>_beta on the grid via the spectral decomposition."""
    sw = spectral_weights(block, coeffs)
    grid = np.asarray(grid, dtype=float)
    if (grid < 0).any():
        raise ValueError("negative time")
    values = np.array([float(np.sum(sw.weights * np.exp(-sw.rates * t))) for t in grid])
    return AutocorrelationSeries(
        label=label, times=grid, values=values, normalization=float(np.sum(sw.weights))
    )


def envelope(series: AutocorrelationSeries, sw: SpectralWeights) -> np.ndarray:
    """Exponential envelope offset + (norm - offset) e^(-eps_min t); the
    series never exceeds it since every contributing rate is >= eps_min."""
    eps_min = sw.min_contributing()
    off = sw.kernel_offset
    if eps_min is None:
        return np.full_like(series.times, series.normalization)
    return off + (series.normalization - off) * np.exp(-eps_min * series.times)


@dataclass(frozen=True)
class DecayFit:
    """Least-squares exponential fit of an autocorrelation tail."""

    epsilon: float | None
    residual: float | None
    offset: float
    n_points: int

    @property
    def no_decay(self) -> bool:
        return self.epsilon is None


def fit_decay_rate(series: AutocorrelationSeries, offset: float = 0.0,
                   head_fraction: float = 0.2, floor: float = 1e-13) -> DecayFit:
    """Fit epsilon in value(t) ~ offset + A e^(-epsilon t).

    The kernel offset is subtracted first (pass the exact one from
    spectral_weights; it is not estimated from the tail).  The fit uses the
    asymptotic window: points after the signal has dropped below
    head_fraction of its initial value, and above the floor; needs at least
    three usable points, otherwise reports no decay.
    """
    signal = series.values - offset
    v0 = signal[0] if signal.size else 0.0
    if v0 <= floor:
        return DecayFit(epsilon=None, residual=None, offset=offset, n_points=0)
    usable = signal > max(floor * v0, 1e-300)
    tail = usable & (signal <= head_fraction * v0)
    if tail.sum() < 3:
        tail = usable
    if tail.sum() < 3:
        return DecayFit(epsilon=None, residual=None, offset=offset, n_points=int(tail.sum()))
    t = series.times[tail]
    y = np.log(signal[tail])
    slope, intercept = np.polyfit(t, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * t + intercept)) ** 2)))
    return DecayFit(epsilon=float(-slope), residual=resid, offset=offset, n_points=int(tail.sum()))
