import math

import numpy as np
import pytest

import anyondec as ad

QUARTER_LOG5 = 0.40235947810852509


class TestExponent:
    def test_zero_time(self, unit_model):
        assert ad.decoherence_exponent(0.0, unit_model(amplitude=0.3)) == 0.0

    def test_zero_amplitude(self, unit_model):
        m = unit_model(amplitude=0.0)
        for t in (0.1, 1.0, 100.0):
            assert ad.decoherence_exponent(t, m) == 0.0

    def test_amplitude_scales_integral(self, unit_model):
        m = unit_model(amplitude=0.1)
        got = ad.decoherence_exponent(1.0, m)
        assert got == pytest.approx(0.1 * QUARTER_LOG5, rel=1e-10)


class TestExactPurity:
    def test_starts_at_one(self, unit_model):
        assert ad.purity_exact(0.0, unit_model(amplitude=0.2)) == 1.0

    def test_pinned_point(self, unit_model):
        m = unit_model(amplitude=0.1)
        assert ad.purity_exact(1.0, m) == pytest.approx(0.96134041729529416, rel=1e-10)

    def test_floor_is_one_half(self, unit_model):
        # deep in the linear regime the exponent is huge and the purity
        # reaches the floor from above
        m = unit_model(temperature=0.05, amplitude=5.0)
        p = ad.purity_exact(2e4, m)
        assert p == 0.5

    @pytest.mark.parametrize("t", [0.01, 1.0, 30.0])
    def test_bounds_and_method_tag(self, unit_model, t):
        m = unit_model(temperature=0.1, amplitude=0.7)
        point = ad.point_exact(t, m)
        assert 0.5 <= point.purity <= 1.0
        assert point.purity > 0.5  # finite exponent here
        assert point.method == "exact-quadrature"
        assert point.exponent >= 0.0

    def test_monotone_in_amplitude(self, unit_model):
        t = 2.0
        purities = [ad.purity_exact(t, unit_model(amplitude=a))
                    for a in (0.1, 0.5, 1.0, 3.0)]
        assert all(a > b for a, b in zip(purities, purities[1:]))

    def test_nonincreasing_in_temperature(self, unit_model):
        t = 2.0
        purities = [ad.purity_exact(t, unit_model(temperature=T, amplitude=0.5))
                    for T in (0.0, 0.01, 0.1, 0.5)]
        assert all(b <= a + 1e-12 for a, b in zip(purities, purities[1:]))


class TestAsymptoticPurity:
    def test_short_branch(self, unit_model):
        m = unit_model(amplitude=1.0)
        point = ad.purity_asymptotic(1e-3, m)
        assert point.regime is ad.Regime.SHORT
        assert point.purity == pytest.approx(0.5 * (1 + math.exp(-2e-6)), rel=1e-14)

    def test_intermediate_branch_is_power_law(self, unit_model):
        m = unit_model(amplitude=1.0)
        point = ad.purity_asymptotic(1e3, m)
        assert point.regime is ad.Regime.INTERMEDIATE
        assert point.purity == pytest.approx(0.5 * (1 + 1e-3), rel=1e-12)

    def test_long_branch(self, unit_model):
        m = unit_model(temperature=1e-2, amplitude=0.4)
        t = 250.0
        point = ad.purity_asymptotic(t, m)
        assert point.regime is ad.Regime.LONG
        assert point.purity == pytest.approx(
            0.5 * (1 + math.exp(-2 * 0.4 * 1e-2 * t)), rel=1e-12)

    def test_long_unreachable_cold(self, unit_model):
        m = unit_model(temperature=0.0)
        for t in (1.0, 1e5):
            assert ad.purity_asymptotic(t, m).regime is ad.Regime.INTERMEDIATE

    def test_negative_time_rejected(self, unit_model):
        with pytest.raises(ValueError):
            ad.purity_asymptotic(-1.0, unit_model())


class TestCrossoverTimes:
    def test_reciprocal_cutoff(self, unit_model):
        t1, _ = ad.crossover_times(unit_model(cutoff=1e12))
        assert t1 == 1e-12

    def test_cold_bath_has_no_thermal_boundary(self, unit_model):
        _, t2 = ad.crossover_times(unit_model(temperature=0.0))
        assert t2 is None

    def test_boundary_ratio(self, unit_model):
        t1, t2 = ad.crossover_times(unit_model(temperature=1e-3))
        assert t2 / t1 == pytest.approx(1e3, rel=1e-12)


class TestExactVersusAsymptotic:
    """Deep inside each regime the two purity routes agree on purity-1/2;
    the test amplitude is the laboratory-scale one (small)."""

    AMP = 1.575635578882733e-3

    def deviation(self, point_exact, point_asym):
        return abs((point_exact - 0.5) / (point_asym - 0.5) - 1.0)

    def test_short_regime(self, unit_model):
        m = unit_model(amplitude=self.AMP)
        for u in (1e-3, 5e-3, 1e-2):
            exact = ad.purity_exact(u, m)
            asym = ad.purity_asymptotic(u, m).purity
            assert self.deviation(exact, asym) < 0.05

    def test_intermediate_regime(self, unit_model):
        m = unit_model(temperature=1e-6, amplitude=self.AMP)
        for u in (1e2, 1e3, 1e4):
            exact = ad.purity_exact(u, m)
            asym = ad.purity_asymptotic(u, m).purity
            assert self.deviation(exact, asym) < 0.05

    def test_long_regime_with_measured_coefficient(self, unit_model):
        m = unit_model(temperature=1e-2, amplitude=self.AMP)
        ts = np.array([100.0, 200.0, 400.0]) / m.temperature
        # measure the linear-growth coefficient from the quadrature itself
        integrals = [ad.decoherence_integral(float(t), m) for t in ts]
        coeff = np.polyfit(ts, integrals, 1)[0] / m.temperature
        for t, integral in zip(ts, integrals):
            exact = 0.5 * (1 + math.exp(-2 * self.AMP * integral))
            rescaled = 0.5 * (1 + math.exp(-2 * self.AMP * coeff * m.temperature * t))
            assert self.deviation(exact, rescaled) < 0.05


def test_point_validation():
    with pytest.raises(ValueError):
        ad.ShortTimePoint(t=1.0, exponent=-0.1, purity=0.9,
                          regime=ad.Regime.SHORT, method="asymptotic")
    with pytest.raises(ValueError):
        ad.ShortTimePoint(t=1.0, exponent=0.1, purity=0.4,
                          regime=ad.Regime.SHORT, method="asymptotic")
    with pytest.raises(ValueError):
        ad.ShortTimePoint(t=1.0, exponent=0.1, purity=0.9,
                          regime=ad.Regime.SHORT, method="guess")
