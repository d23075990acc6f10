import math

import numpy as np
import pytest

import magnobattery as mb


def rabi_params(lam=1.0):
    p = mb.SystemParams()
    p.lambda_ = lam
    p.detunings = mb.Detunings(0.0, 0.0, 0.0)
    return p


def baseline_params():
    p = mb.SystemParams()
    p.g_a = p.g_b = p.lambda_ = 1.0
    p.detunings = mb.Detunings(1.0, 1.0, 1.0)
    return p


def test_frame_shifts():
    f = mb.derive_frame_shifts(mb.Detunings(1.0, 2.0, 3.0))
    np.testing.assert_allclose(f.as_vector(), [4.0, 2.0, 1.0, 1.0])


def test_evolution_matrix_shape():
    a = mb.evolution_matrix(baseline_params())
    assert a.shape == (4, 4)
    assert a[0, 3] == pytest.approx(2.0)
    assert a[3, 0] == pytest.approx(1.0)


def test_rabi_closed_form():
    grid = mb.make_time_grid(5.0, 0.01)
    cols = mb.time_series(rabi_params(), grid)
    expected = np.sin(math.sqrt(2.0) * cols["t"]) ** 2
    np.testing.assert_allclose(cols["energy"], expected, atol=1e-8)
    np.testing.assert_allclose(cols["norm"], 1.0, atol=1e-9)


def test_propagator_matches_oracle():
    grid = list(np.linspace(0.0, 3.0, 31))
    p = baseline_params()
    p.kappa_a = 0.2
    fast = mb.evolve(p, grid)
    slow = mb.oracle_integrate(p, grid)
    worst = max(np.abs(a.c - b.c).max() for a, b in zip(fast, slow))
    assert worst < 1e-6


def test_states_and_metrics_at_rabi_peak():
    t_peak = math.pi / (2.0 * math.sqrt(2.0))
    state = mb.evolve(rabi_params(), [t_peak])[0]
    rho = mb.battery_density(state)
    assert rho.basis_labels == ["gg", "eg", "ge", "ee"]
    assert mb.ergotropy(rho) == pytest.approx(1.0, abs=1e-10)
    assert mb.purity(rho) == pytest.approx(1.0, abs=1e-10)
    assert mb.stored_energy(state) == pytest.approx(1.0, abs=1e-10)


def test_ergotropy_of_diagonal_state():
    rho = mb.density_matrix(np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex))
    assert mb.ergotropy(rho) == pytest.approx(0.6)
    with pytest.raises(ValueError):
        bad = np.diag([1.0, 0, 0, 0]).astype(complex)
        bad[0, 1] = 1e-6
        mb.ergotropy(mb.density_matrix(bad))


def test_sweeps():
    grid = mb.make_time_grid(5.0, 0.01)
    vary = mb.VarySpec(mb.SweepParameter.lambda_, [0.5, 1.0, 2.0])
    pts = mb.optimal_time_sweep(rabi_params(), vary, grid, threads=2)
    np.testing.assert_allclose([q.tau for q in pts], [2.221, 1.111, 0.555], atol=0.01)

    curves = mb.panel_sweep(baseline_params(), vary, grid)
    assert [v for v, _ in curves] == [0.5, 1.0, 2.0]
    assert curves[0][1]["energy"].shape == (len(grid),)

    gx = mb.VarySpec.linear(mb.SweepParameter.g_a, 0.1, 3.0, 3)
    gy = mb.VarySpec.linear(mb.SweepParameter.g_b, 0.1, 3.0, 2)
    one = mb.max_ergotropy_grid(baseline_params(), gx, gy, grid, threads=1)
    many = mb.max_ergotropy_grid(baseline_params(), gx, gy, grid, threads=3)
    assert one.z.shape == (2, 3)
    assert np.array_equal(one.z, many.z)


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        mb.make_time_grid(1.0, 0.0)
    p = mb.SystemParams()
    p.g_a = -1.0
    with pytest.raises(ValueError):
        mb.validate(p)
