"""Time evolution within blocks, autocorrelation series and decay fits."""

import numpy as np
import pytest
import scipy.sparse.linalg

from hexcc import dense, dynamics
from hexcc.pauli import PauliOperator


def z1_block(minimal_code, generator_beta1):
    z1 = minimal_code.logical_z[0]
    block = generator_beta1.block(z1)
    return block, dynamics.coefficients(block, z1)


def test_time_zero_is_identity(minimal_code, generator_beta1):
    block, c0 = z1_block(minimal_code, generator_beta1)
    assert np.allclose(dynamics.evolve(block, c0, 0.0), c0, atol=1e-12)


def test_negative_time_rejected(minimal_code, generator_beta1):
    block, c0 = z1_block(minimal_code, generator_beta1)
    with pytest.raises(ValueError):
        dynamics.evolve(block, c0, -1.0)
    with pytest.raises(ValueError):
        dynamics.autocorrelation(block, c0, [-0.5, 1.0])


def test_identity_is_stationary(generator_beta1):
    one = PauliOperator.identity(6)
    block = generator_beta1.block(one)
    c0 = dynamics.coefficients(block, one)
    assert np.allclose(dynamics.evolve(block, c0, 7.3), c0, atol=1e-10)
    series = dynamics.autocorrelation(block, c0, dynamics.default_grid(), "I")
    sw = dynamics.spectral_weights(block, c0)
    fit = dynamics.fit_decay_rate(series, offset=sw.kernel_offset)
    assert fit.no_decay


def test_evolution_matches_dense_exponential(minimal_code, generator_beta1, oracle_beta1):
    block, c0 = z1_block(minimal_code, generator_beta1)
    lmat = oracle_beta1.matrix()
    x0 = minimal_code.logical_z[0].dense().real.flatten(order="F")
    basis = [b.dense().real.flatten(order="F") for b in block.basis()]
    for t in (0.3, 1.0, 4.0):
        ct = dynamics.evolve(block, c0, t)
        xt = scipy.sparse.linalg.expm_multiply(lmat * t, x0)
        ct_dense = np.array([bv @ xt / 64.0 for bv in basis])
        assert np.max(np.abs(ct - ct_dense)) < 1e-8


def test_series_properties(minimal_code, generator_beta1):
    block, c0 = z1_block(minimal_code, generator_beta1)
    grid = dynamics.default_grid()
    series = dynamics.autocorrelation(block, c0, grid, "Z1")
    sw = dynamics.spectral_weights(block, c0)
    assert series.normalization == pytest.approx(1.0)  # <Z1, Z1> = 1
    assert np.all(np.diff(series.values) <= 1e-12)
    env = dynamics.envelope(series, sw)
    assert np.all(series.values <= env + 1e-12)
    # traceless logical: no kernel overlap, long-time limit is zero
    assert sw.kernel_offset == pytest.approx(0.0, abs=1e-12)
    tail = dynamics.autocorrelation(block, c0, np.array([1e4]), "Z1")
    assert tail.values[0] == pytest.approx(0.0, abs=1e-10)


def test_kernel_offset_is_squared_identity_overlap(minimal_code, generator_beta1):
    # for a plaquette operator the conserved part is <B, I>^2 = tanh(3 beta)^2
    bz = minimal_code.bz_ops[0]
    block = generator_beta1.block(bz)
    c0 = dynamics.coefficients(block, bz)
    sw = dynamics.spectral_weights(block, c0)
    assert sw.kernel_offset == pytest.approx(np.tanh(3.0) ** 2, abs=1e-12)
    series = dynamics.autocorrelation(block, c0, np.array([1e3]), "B")
    assert series.values[0] == pytest.approx(sw.kernel_offset, abs=1e-10)


def test_synthetic_single_exponential_fit():
    t = np.linspace(0.01, 10, 60)
    series = dynamics.AutocorrelationSeries("syn", t, np.exp(-0.7 * t), 1.0)
    fit = dynamics.fit_decay_rate(series)
    assert fit.epsilon == pytest.approx(0.7, abs=1e-6)
    assert fit.residual < 1e-10


def test_two_exponential_fit_finds_slow_rate():
    # the fit window drops the fast transient and recovers the slow rate
    t = np.logspace(-1, 2, 80)
    values = 0.5 * np.exp(-0.1 * t) + 0.5 * np.exp(-5.0 * t)
    series = dynamics.AutocorrelationSeries("two", t, values, 1.0)
    fit = dynamics.fit_decay_rate(series)
    assert fit.epsilon == pytest.approx(0.1, rel=0.05)


def test_fit_with_offset_subtraction():
    t = np.logspace(-1, 2, 60)
    values = 0.3 + 0.7 * np.exp(-0.4 * t)
    series = dynamics.AutocorrelationSeries("off", t, values, 1.0)
    fit = dynamics.fit_decay_rate(series, offset=0.3)
    assert fit.offset == 0.3
    assert fit.epsilon == pytest.approx(0.4, rel=0.02)


def test_fit_against_spectral_rate(minimal_code, generator_beta1):
    block, c0 = z1_block(minimal_code, generator_beta1)
    sw = dynamics.spectral_weights(block, c0)
    series = dynamics.autocorrelation(block, c0, dynamics.default_grid(), "Z1")
    fit = dynamics.fit_decay_rate(series, offset=sw.kernel_offset)
    rate = sw.min_contributing()
    assert abs(fit.epsilon - rate) / rate < 0.01


def test_sector_representatives_beat_the_bound(minimal_code, generator_beta1, flat_density):
    # the instability bound restated in the time domain: every fitted sector
    # decay rate exceeds e^(-6 beta J) h(6J) Gap_Ising
    from hexcc import ising
    from hexcc.pauli import product

    rhs = np.exp(-6.0) * flat_density.h(6.0) * ising.davies_gap(
        ising.build_inhomogeneous(2), 1.0, flat_density
    )
    reps = {
        "G1": minimal_code.logical_z[0],
        "G2": minimal_code.bz_ops[0],
        "G3": minimal_code.logical_z[2],
        "G4": product([minimal_code.logical_z[0], minimal_code.logical_z[2]]),
    }
    for name, op in reps.items():
        block = generator_beta1.block(op)
        c0 = dynamics.coefficients(block, op)
        sw = dynamics.spectral_weights(block, c0)
        series = dynamics.autocorrelation(block, c0, dynamics.default_grid(), name)
        fit = dynamics.fit_decay_rate(series, offset=sw.kernel_offset)
        assert fit.epsilon >= rhs - 1e-10
