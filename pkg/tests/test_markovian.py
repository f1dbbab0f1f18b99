import math

import mpmath
import numpy as np
import pytest

import anyondec as ad


def make_rates(gamma, splitting, temperature, shift=0.0):
    tanh = 1.0 if temperature == 0.0 else math.tanh(splitting / (2 * temperature))
    return ad.RateSet(relaxation=gamma, pump=gamma * tanh, shift=shift)


@pytest.fixture()
def model():
    return ad.ModelParams(splitting=1.0, temperature=1.0, cutoff=5.0,
                          coupling=0.0, shorttime_amplitude=0.0)


class TestDerivative:
    def test_fixed_point(self, model):
        r = make_rates(0.02, 1.0, 1.0)
        s = ad.BlochState(math.tanh(0.5), 0.0, 0.0)
        assert ad.bloch_derivative(s, r, model) == pytest.approx((0.0, 0.0, 0.0), abs=1e-18)

    def test_north_pole(self, model):
        r = ad.RateSet(relaxation=0.3, pump=0.1, shift=0.05)
        s = ad.BlochState(0.0, 0.0, 1.0)
        dx, dy, dz = ad.bloch_derivative(s, r, model)
        assert (dx, dy, dz) == (0.1, 1.05, 0.0)

    def test_free_precession(self, model):
        r = ad.RateSet(relaxation=0.0, pump=0.0, shift=0.0)
        s = ad.BlochState(0.0, 1.0, 0.0)
        assert ad.bloch_derivative(s, r, model) == (0.0, 0.0, -1.0)


class TestClosedForm:
    def test_identity_at_zero_elapsed_time(self, model):
        r = make_rates(0.05, 1.0, 1.0, shift=0.02)
        s0 = ad.BlochState(0.1, -0.2, 0.7)
        s = ad.closed_form(s0, r, model, 0.0)
        assert (s.x, s.y, s.z) == (s0.x, s0.y, s0.z)

    def test_overdamped_against_fine_fixed_step(self, model):
        # real distinct eigenvalues; the fixed-step classical rule serves
        # as the independent oracle at a one-microstep resolution
        r = ad.RateSet(relaxation=3.0, pump=0.0, shift=0.0)
        s0 = ad.BlochState(0.0, 0.6, 0.8)
        grid = np.array([0.0, 1.0, 2.5])
        out = ad.get_kernels().rk4_grid((s0.x, s0.y, s0.z), r.relaxation,
                                        r.pump, r.shift, model.splitting,
                                        grid, 1e-6)
        for i, t in enumerate(grid[1:], start=1):
            ref = ad.closed_form(s0, r, model, float(t))
            assert out[i][1] == pytest.approx(ref.y, abs=1e-12)
            assert out[i][2] == pytest.approx(ref.z, abs=1e-12)
        # overdamped y decay is monotone in magnitude after the initial kick
        ts = np.linspace(0.5, 8.0, 30)
        ys = [abs(ad.closed_form(s0, r, model, float(t)).y) for t in ts]
        assert all(a >= b - 1e-15 for a, b in zip(ys, ys[1:]))

    def test_critically_damped_case(self, model):
        # discriminant exactly zero: gamma = 2 sqrt(om (om + shift))
        r = ad.RateSet(relaxation=2.0, pump=0.0, shift=0.0)
        s0 = ad.BlochState(0.0, 0.5, -0.5)
        out = ad.get_kernels().rk4_grid((s0.x, s0.y, s0.z), r.relaxation,
                                        r.pump, r.shift, model.splitting,
                                        np.array([0.0, 2.0]), 1e-6)
        ref = ad.closed_form(s0, r, model, 2.0)
        assert out[1][1] == pytest.approx(ref.y, abs=1e-12)
        assert out[1][2] == pytest.approx(ref.z, abs=1e-12)

    def test_pure_decay_bound_is_exact(self, model):
        r = make_rates(0.1, 1.0, 1.0)
        xinf = r.pump / r.relaxation
        for x0 in (-0.8, 0.0, 0.9):
            s0 = ad.BlochState(x0, 0.0, 0.0)
            for t in (0.0, 3.0, 30.0, 300.0):
                s = ad.closed_form(s0, r, model, t)
                assert abs(s.x - xinf) <= abs(x0 - xinf) * math.exp(-r.relaxation * t) + 1e-15
                assert s.y == 0.0 and s.z == 0.0


class TestEvolve:
    def test_zero_rates_full_period_returns(self, model):
        r = ad.RateSet(relaxation=0.0, pump=0.0, shift=0.0)
        s0 = ad.BlochState(0.0, 0.0, 1.0)
        period = 2 * math.pi / model.splitting
        grid = np.linspace(0.0, period, 9)
        traj = ad.evolve(s0, r, model, grid)
        last = traj.states[-1]
        assert (last.x, last.y, last.z) == pytest.approx((0.0, 0.0, 1.0), abs=1e-8)

    def test_x_axis_subspace_invariant(self, model):
        r = make_rates(0.05, 1.0, 1.0, shift=0.1)
        s0 = ad.BlochState(0.4, 0.0, 0.0)
        traj = ad.evolve(s0, r, model, np.linspace(0.0, 50.0, 11))
        for s in traj.states:
            assert s.y == 0.0
            assert s.z == 0.0

    def test_generic_against_closed_form(self, model):
        gamma = 0.01
        r = make_rates(gamma, 1.0, 1.0, shift=0.03)
        s0 = ad.BlochState(0.0, 0.0, 1.0)
        grid = np.linspace(0.0, 5.0 / gamma, 26)
        traj = ad.evolve(s0, r, model, grid,
                         ad.IntegratorSettings(rel_tol=1e-12, abs_tol=1e-14))
        for s in traj.states:
            ref = ad.closed_form(s0, r, model, s.t)
            assert abs(s.x - ref.x) <= 1e-8
            assert abs(s.y - ref.y) <= 1e-8
            assert abs(s.z - ref.z) <= 1e-8

    def test_grid_validation(self, model):
        r = make_rates(0.05, 1.0, 1.0)
        s0 = ad.BlochState(0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            ad.evolve(s0, r, model, np.array([0.0, 1.0, 1.0]))
        with pytest.raises(ValueError):
            ad.evolve(s0, r, model, np.array([0.5, 1.0]))  # must start at s0.t

    def test_step_budget_error(self, model):
        r = make_rates(0.05, 1.0, 1.0)
        s0 = ad.BlochState(0.0, 0.0, 1.0)
        cfg = ad.IntegratorSettings(max_steps=3)
        with pytest.raises(ad.ConvergenceError):
            ad.evolve(s0, r, model, np.linspace(0.0, 1000.0, 5), cfg)

    def test_rk4_mode_matches_closed_form(self, model):
        r = make_rates(0.05, 1.0, 1.0, shift=0.01)
        s0 = ad.BlochState(0.0, 0.0, 1.0)
        cfg = ad.IntegratorSettings(method="rk4", step=1e-3)
        traj = ad.evolve(s0, r, model, np.linspace(0.0, 10.0, 6), cfg)
        for s in traj.states:
            ref = ad.closed_form(s0, r, model, s.t)
            assert abs(s.y - ref.y) <= 1e-10


class TestPurityAndSteadyState:
    def test_purity_extremes(self):
        assert ad.purity(ad.BlochState(0.0, 0.0, 0.0)) == 0.5
        assert ad.purity(ad.BlochState(1.0, 0.0, 0.0)) == 1.0

    def test_purity_at_fixed_point(self, model):
        x = math.tanh(0.5)
        assert ad.purity(ad.BlochState(x, 0.0, 0.0)) == pytest.approx(
            0.5 * (1 + x * x), rel=1e-15)

    def test_steady_state_values(self, model):
        cold = make_rates(0.1, 1.0, 0.0)
        assert ad.steady_state(cold, model).x == 1.0
        hot = ad.RateSet(relaxation=0.1, pump=0.1 * math.tanh(1.0 / 2e6), shift=0.0)
        assert ad.steady_state(hot, model).x == pytest.approx(0.0, abs=1e-6)
        half = make_rates(0.1, 1.0, 0.5)  # splitting/(2T) = 1
        assert ad.steady_state(half, model).x == pytest.approx(
            float(mpmath.tanh(1)), rel=1e-12)

    def test_steady_state_requires_relaxation(self, model):
        with pytest.raises(ValueError):
            ad.steady_state(ad.RateSet(relaxation=0.0, pump=0.0, shift=0.0), model)

    def test_purity_constant_without_coupling(self, model):
        r = ad.RateSet(relaxation=0.0, pump=0.0, shift=0.0)
        s0 = ad.BlochState(0.3, 0.0, 0.8)
        p0 = ad.purity(s0)
        period = 2 * math.pi / model.splitting
        traj = ad.evolve(s0, r, model, np.linspace(0.0, 10 * period, 64),
                         ad.IntegratorSettings(rel_tol=1e-12, abs_tol=1e-14))
        for s in traj.states:
            assert abs(ad.purity(s) - p0) <= 1e-10

    def test_longtime_purity_reaches_steady_value(self, model):
        gamma = 0.02
        for t_ratio in (0.1, 1.0, 10.0):
            r = make_rates(gamma, 1.0, t_ratio)
            tanh = math.tanh(1.0 / (2 * t_ratio))
            for s0 in (ad.BlochState(0.0, 0.0, 1.0), ad.BlochState(-0.5, 0.5, 0.5)):
                s = ad.closed_form(s0, r, model, 30.0 / gamma)
                assert ad.purity(s) == pytest.approx(0.5 * (1 + tanh * tanh), abs=1e-6)


class TestDecayAmplitude:
    def test_steady_start_gives_zero(self, model):
        r = make_rates(0.1, 1.0, 1.0)
        s0 = ad.BlochState(r.pump / r.relaxation, 0.0, 0.0)
        amp, residual = ad.purity_decay_amplitude(s0, model, r)
        assert amp == pytest.approx(0.0, abs=1e-15)
        assert residual == pytest.approx(0.0, abs=1e-15)

    def test_intercept_identity_for_pure_start(self, model):
        # at t = 0 the purity is exactly 1, so the deviation from the
        # steady value is 1 - tanh^2 = sech^2
        r = make_rates(0.1, 1.0, 1.0)
        s0 = ad.BlochState(1.0, 0.0, 0.0)
        xinf = r.pump / r.relaxation
        p0 = ad.purity(ad.closed_form(s0, r, model, 0.0))
        pinf = 0.5 * (1 + xinf * xinf)
        assert 2 * (p0 - pinf) == pytest.approx(1.0 / math.cosh(0.5) ** 2, rel=1e-12)

    def test_amplitude_below_one_and_vanishing_cold(self, model):
        amps = []
        for t_ratio in (1.0, 0.1, 0.01, 0.001):
            r = make_rates(0.1, 1.0, t_ratio)
            amp, _ = ad.purity_decay_amplitude(ad.BlochState(1.0, 0.0, 0.0), model, r)
            assert abs(amp) < 1.0
            amps.append(amp)
        # decreasing toward zero; the thermal tanh saturates to exactly 1
        # in doubles below T/splitting ~ 0.01, pinning the tail at zero
        assert all(a >= b for a, b in zip(amps, amps[1:]))
        assert all(a > b for a, b in zip(amps, amps[1:]) if a != 0.0)
        assert amps[0] > amps[-1]
        assert amps[-1] == pytest.approx(0.0, abs=1e-12)

    def test_requires_x_axis_start_and_relaxation(self, model):
        r = make_rates(0.1, 1.0, 1.0)
        with pytest.raises(ValueError):
            ad.purity_decay_amplitude(ad.BlochState(0.0, 0.0, 1.0), model, r)
        with pytest.raises(ValueError):
            ad.purity_decay_amplitude(ad.BlochState(1.0, 0.0, 0.0), model,
                                      ad.RateSet(relaxation=0.0, pump=0.0, shift=0.0))


class TestStateAndTrajectoryTypes:
    def test_norm_invariant(self):
        ad.BlochState(0.6, 0.0, 0.8)  # norm exactly 1 passes
        with pytest.raises(ValueError):
            ad.BlochState(1.0, 0.5, 0.0)

    def test_trajectory_ordering(self, model):
        r = make_rates(0.1, 1.0, 1.0)
        good = (ad.BlochState(0.0, 0.0, 1.0, t=0.0),
                ad.BlochState(0.0, 0.0, 1.0, t=1.0))
        ad.Trajectory(states=good, rates=r, model=model)
        bad = (ad.BlochState(0.0, 0.0, 1.0, t=1.0),
               ad.BlochState(0.0, 0.0, 1.0, t=0.0))
        with pytest.raises(ValueError):
            ad.Trajectory(states=bad, rates=r, model=model)

    def test_integrator_settings_validation(self):
        with pytest.raises(ValueError):
            ad.IntegratorSettings(method="euler")
        with pytest.raises(ValueError):
            ad.IntegratorSettings(method="rk4")  # needs a step
        with pytest.raises(ValueError):
            ad.IntegratorSettings(rel_tol=0.0)
