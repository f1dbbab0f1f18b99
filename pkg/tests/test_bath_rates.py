import math

import mpmath
import numpy as np
import pytest

import anyondec as ad


class TestSpectralDensity:
    def test_zero_at_origin(self):
        c = ad.SpectralCoupling(strength=0.7, cutoff=2.0)
        assert ad.spectral_density(0.0, c) == 0.0

    def test_value_at_cutoff(self):
        c = ad.SpectralCoupling(strength=1.0, cutoff=3.0)
        assert ad.spectral_density(3.0, c) == pytest.approx(3.0 / math.e, rel=1e-15)

    def test_peak_sits_at_cutoff(self):
        c = ad.SpectralCoupling(strength=1.0, cutoff=2.0)
        xs = np.linspace(0.0, 20.0, 4001)
        values = [ad.spectral_density(float(x), c) for x in xs]
        assert xs[int(np.argmax(values))] == pytest.approx(2.0, abs=0.01)

    def test_negative_argument_rejected(self):
        c = ad.SpectralCoupling(strength=1.0, cutoff=1.0)
        with pytest.raises(ValueError):
            ad.spectral_density(-0.1, c)

    def test_invalid_coupling_rejected(self):
        with pytest.raises(ValueError):
            ad.SpectralCoupling(strength=-1.0, cutoff=1.0)
        with pytest.raises(ValueError):
            ad.SpectralCoupling(strength=1.0, cutoff=0.0)


class TestRates:
    def test_zero_coupling(self, unit_model):
        m = unit_model(coupling=0.0, amplitude=0.0)
        assert ad.pump_rate(m) == 0.0
        assert ad.relaxation_rate(m) == 0.0

    def test_pump_rate_temperature_independent(self, unit_model):
        values = {ad.pump_rate(unit_model(temperature=T)) for T in (0.0, 0.3, 2.0, 50.0)}
        assert len(values) == 1

    def test_relaxation_equals_pump_at_zero_temperature(self, unit_model):
        m = unit_model(temperature=0.0)
        assert ad.relaxation_rate(m) == ad.pump_rate(m)

    def test_coth_ratio_pinned(self, unit_model):
        # T = splitting/2 makes the thermal factor coth(1); high-precision
        # independent evaluation via mpmath
        m = unit_model(temperature=0.5)
        want = float(mpmath.coth(1))
        assert ad.relaxation_rate(m) / ad.pump_rate(m) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("ratio", [0.1, 0.5, 1.0, 4.0, 40.0])
    def test_coth_identity_across_temperatures(self, unit_model, ratio):
        m = unit_model(temperature=ratio)
        got = ad.relaxation_rate(m) / ad.pump_rate(m)
        want = 1.0 / math.tanh(1.0 / (2.0 * ratio))
        assert got == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("ratio", [0.2, 1.0, 5.0])
    def test_pump_over_relaxation_is_tanh(self, unit_model, ratio):
        m = unit_model(temperature=ratio)
        got = ad.pump_rate(m) / ad.relaxation_rate(m)
        assert got == pytest.approx(math.tanh(1.0 / (2.0 * ratio)), rel=1e-12)

    @pytest.mark.parametrize("temperature", [0.0, 0.3, 2.0])
    def test_pump_never_exceeds_relaxation(self, unit_model, temperature):
        m = unit_model(temperature=temperature)
        assert ad.pump_rate(m) <= ad.relaxation_rate(m) * (1 + 1e-15)


class TestRateSet:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            ad.RateSet(relaxation=-1.0, pump=0.0, shift=0.0)
        with pytest.raises(ValueError):
            ad.RateSet(relaxation=1.0, pump=2.0, shift=0.0)
        with pytest.raises(ValueError):
            ad.RateSet(relaxation=1.0, pump=0.5, shift=float("inf"))

    def test_bundle_from_model(self, unit_model):
        m = unit_model(temperature=0.5)
        rates = ad.rates_from_model(m)
        assert rates.relaxation == ad.relaxation_rate(m)
        assert rates.pump == ad.pump_rate(m)
        assert rates.shift == pytest.approx(ad.frequency_shift(m), rel=1e-12)
