import numpy as np
import pytest

import anyondec as ad


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timed tests measure numerics only."""
    m = ad.ModelParams(splitting=1.0, temperature=0.1, cutoff=1.0,
                       coupling=1.0, shorttime_amplitude=1.0)
    ad.decoherence_integral(0.5, m)
    ad.decoherence_integral(50.0, m)         # panel path
    ad.decoherence_integral(200.0, m)        # contour path
    ad.frequency_shift(m)
    r = ad.RateSet(relaxation=0.01, pump=0.005, shift=0.0)
    grid = np.linspace(0.0, 1.0, 3)
    ad.evolve(ad.BlochState(0.0, 0.0, 1.0), r, m, grid)
    ad.evolve(ad.BlochState(0.0, 0.0, 1.0), r, m, grid,
              ad.IntegratorSettings(method="rk4", step=0.01))


@pytest.fixture()
def paper_phys():
    """The experimental parameter point quoted with the closed-form rate."""
    return ad.PhysicalParams(
        dielectric_constant=10.0,
        edge_velocity=1e5,
        splitting=0.1,
        temperature=0.0,
        antidot_separation=100e-9,
        qubit_edge_distance=3e-6,
        filling_denominator=3,
    )


@pytest.fixture()
def paper_phys_warm(paper_phys):
    """Same point at 0.1 K, used where thermal machinery must engage."""
    return ad.PhysicalParams(
        dielectric_constant=paper_phys.dielectric_constant,
        edge_velocity=paper_phys.edge_velocity,
        splitting=paper_phys.splitting,
        temperature=0.1,
        antidot_separation=paper_phys.antidot_separation,
        qubit_edge_distance=paper_phys.qubit_edge_distance,
        filling_denominator=paper_phys.filling_denominator,
    )


@pytest.fixture()
def unit_model():
    """Convenience model with unit cutoff and unit coupling."""
    def make(splitting=1.0, temperature=0.0, cutoff=1.0, coupling=1.0,
             amplitude=1.0):
        return ad.ModelParams(splitting=splitting, temperature=temperature,
                              cutoff=cutoff, coupling=coupling,
                              shorttime_amplitude=amplitude)
    return make
