import numpy as np
import pytest

from orbitkit import DomainError
from orbitkit.charts import make_chart
from orbitkit.coupling import (MinimalCouplingState, kinetic_momentum, minimal_coupling_integrate,
                               picture_compare)

GM = dict(m=1.0, kappa=0.5, beta=1.0, C1=0.3, C2=0.4)


def test_free_motion():
    st = MinimalCouplingState(pi=(1.0, -0.5), r=(0.2, 0.1), m=2.0)
    t = np.linspace(0, 10, 6)
    run = minimal_coupling_integrate(st, t_eval=t)
    assert np.allclose(run.trajectory.y[:, 2:], np.array(st.r) + np.outer(t, st.pi) / 2.0, atol=1e-9)


def test_cyclotron_circle():
    st = MinimalCouplingState(pi=(0.7, 0.0), r=(0.0, 0.0), beta=1.5, m=1.0)
    run = minimal_coupling_integrate(st, t_eval=np.linspace(0, 10, 101))
    y = run.trajectory.y
    speed = np.linalg.norm(kinetic_momentum(y[:, :2].T, y[:, 2:].T, 1.5), axis=0)
    assert np.ptp(speed) < 1e-9
    # u rotates at beta/m, so r circles r0 + perp(u0)/beta with radius |u0|/beta
    u0 = np.array([0.7, 0.0])
    centre = np.array([-u0[1], u0[0]]) / 1.5
    assert np.allclose(np.linalg.norm(y[:, 2:] - centre, axis=1), np.linalg.norm(u0) / 1.5, atol=1e-9)


def test_integrals_in_crossed_fields():
    st = MinimalCouplingState(pi=(0.3, -0.2), r=(0.5, 0.1), e=(1.0, 0.0), beta=1.0, m=1.0)
    run = minimal_coupling_integrate(st, t_span=(0, 10), rtol=1e-10)
    assert set(run.drift) == {"H", "C1", "C2"}
    assert max(run.drift.values()) <= 1e-8


def test_relativistic_integrals():
    st = MinimalCouplingState(pi=(0.3, -0.2), r=(0.5, 0.1), e=(1.0, 0.0), beta=1.0, m=1.0)
    run = minimal_coupling_integrate(st, relativistic=True)
    assert set(run.drift) == {"H", "C1"}
    assert max(run.drift.values()) <= 1e-8


def test_splitting_agrees_with_rk():
    st = MinimalCouplingState(pi=(0.3, -0.2), r=(0.5, 0.1), e=(0.2, 0.1), beta=1.0, m=1.0)
    t = np.linspace(0, 2, 5)
    rk = minimal_coupling_integrate(st, t_span=(0, 2), t_eval=t)
    sp = minimal_coupling_integrate(st, t_span=(0, 2), t_eval=t, method="splitting", dt=1e-3)
    assert np.allclose(sp.trajectory.y, rk.trajectory.y, atol=1e-5)
    assert max(sp.drift.values()) < 1e-6


@pytest.mark.parametrize("kw", [dict(method="splitting"), dict(method="splitting", dt=0.3),
                                dict(method="leapfrog")])
def test_bad_integration_options(kw):
    st = MinimalCouplingState(pi=(1, 0), r=(0, 0), beta=1.0)
    with pytest.raises(DomainError):
        minimal_coupling_integrate(st, t_span=(0, 1), **kw)


def test_mass_must_be_positive():
    with pytest.raises(DomainError):
        minimal_coupling_integrate(MinimalCouplingState(pi=(1, 0), r=(0, 0), m=0.0))


def test_picture_compare_without_electric_field():
    st = MinimalCouplingState(pi=(0.5, 0.2), r=(0.3, -0.1), beta=1.0, m=1.0)
    rep = picture_compare(make_chart("galilei_maxwell_ext", GM), st)
    assert rep["group"]["momentum_change"] < 1e-12
    assert rep["minimal"]["momentum_change"] > 0.1
    assert rep["structural"] == {"magnetic_field_enters_group_motion": False,
                                 "magnetic_field_enters_minimal_motion": True}


def test_picture_compare_conservation():
    st = MinimalCouplingState(pi=(0.5, 0.2), r=(0.3, -0.1), e=(0.1, 0.0), beta=1.0, m=1.0)
    rep = picture_compare(make_chart("galilei_maxwell_ext", GM), st)
    assert max(rep["group"]["label_drift"].values()) <= 1e-8
    assert max(rep["minimal"]["integral_drift"].values()) <= 1e-8


def test_picture_compare_requires_matching_fields():
    st = MinimalCouplingState(pi=(0.5, 0.2), r=(0.3, -0.1), beta=2.0, m=1.0)
    with pytest.raises(DomainError):
        picture_compare(make_chart("galilei_maxwell_ext", GM), st)
