import numpy as np
import pytest

from orbitkit import DomainError
from orbitkit.reps import (WaveFunction, apply_generator, casimir_residual, commutator_residual, fit_lambda,
                           galilei_casimir_residual, galilei_realization, lorentz_boost, lorentz_rotation,
                           poincare_realization, random_lorentz, sample_momenta, standard_boost, wave_suite,
                           wigner_angle)

SUITE = wave_suite(5, seed=1)
POINTS = sample_momenta(50, seed=2)


def test_h_at_origin_is_mass():
    psi = SUITE[0]
    real = poincare_realization(1.0, 0.3)
    assert apply_generator(real, "H", psi, (0, 0)) == pytest.approx(complex(psi(0, 0)))


def test_galilei_p1():
    psi = SUITE[2]
    real = galilei_realization(1.0, 0.5, 0.2, 0.3)
    assert apply_generator(real, "P1", psi, (2, 3)) == pytest.approx(2 * complex(psi(2, 3)))


def test_rotation_on_monomial(rng):
    psi = WaveFunction(lambda p1, p2: p1 + 1j * p2, "p1 + i p2")
    real = poincare_realization(1.0, 0.0)
    for p in rng.uniform(-2, 2, size=(10, 2)):
        # i (p2 d1 - p1 d2)(p1 + i p2) = i p2 + p1
        assert apply_generator(real, "J", psi, p) == pytest.approx(p[0] + 1j * p[1], abs=1e-9)


@pytest.mark.parametrize("real", [poincare_realization(1.3, 0.7), galilei_realization(1.3, 0.4, 0.2, 0.7)],
                         ids=["poincare", "galilei"])
def test_all_commutators(real):
    lam, res = fit_lambda(real, SUITE, POINTS)
    assert lam == 1j
    assert max(res.values()) <= 1e-6


def test_galilei_boost_commutator_and_momenta():
    real = galilei_realization(1.3, 0.4, 0.2, 0.7)
    assert commutator_residual(real, "K1", "K2", SUITE, POINTS) <= 1e-6
    assert commutator_residual(real, "P1", "P2", SUITE, POINTS, lam=1j) <= 1e-10


def test_poincare_rotation_of_momentum():
    real = poincare_realization(1.0, 0.5)
    assert commutator_residual(real, "P1", "J", SUITE, POINTS) <= 1e-6


def test_empty_suite_rejected():
    with pytest.raises(DomainError):
        commutator_residual(poincare_realization(1.0, 0.5), "H", "J", [], POINTS)


def test_pauli_lubanski():
    real = poincare_realization(1.3, 0.7)
    for psi in SUITE:
        shell, pl = casimir_residual(real, psi, POINTS)
        assert shell <= 1e-12
        assert pl <= 1e-6


def test_pauli_lubanski_is_linear_in_spin():
    m, s, s2 = 1.3, 0.7, 0.2
    real = poincare_realization(m, s)
    psi = SUITE[3]
    _, pl = casimir_residual(real, psi, POINTS, s_prime=s2)
    expect = abs(m * (s - s2)) * np.max(np.abs(psi(POINTS[:, 0], POINTS[:, 1])))
    assert pl == pytest.approx(expect, abs=1e-6)


def test_galilei_spin_casimir():
    real = galilei_realization(1.3, 0.4, 0.2, 0.7)
    assert max(galilei_casimir_residual(real, psi, POINTS) for psi in SUITE) <= 1e-8


def test_wigner_angle_of_rotation_at_rest():
    assert wigner_angle([1.0, 0, 0], lorentz_rotation(0.3)) == pytest.approx(0.3)


def test_collinear_boost_has_no_rotation():
    p = np.array([np.sqrt(1 + 0.5**2), 0.5, 0.0])
    th = wigner_angle(p, lorentz_boost(1.2, (1.0, 0.0)))
    assert min(th, 2 * np.pi - th) < 1e-12


def test_noncollinear_boosts_match_matrix_oracle():
    m = 1.0
    p = np.array([np.sqrt(m * m + 0.8**2), 0.8, 0.0])
    lam = lorentz_boost(0.9, (0.0, 1.0))
    q = lam @ p
    W = np.linalg.inv(standard_boost(q, m)) @ lam @ standard_boost(p, m)
    assert np.allclose(W[0], [1, 0, 0], atol=1e-12)
    assert wigner_angle(p, lam) == pytest.approx(np.arctan2(W[2, 1], W[1, 1]) % (2 * np.pi))
    assert wigner_angle(p, lam) > 1e-3


def test_cocycle(rng):
    for _ in range(20):
        L1, L2 = random_lorentz(rng), random_lorentz(rng)
        q = rng.normal(size=2)
        p = np.array([np.sqrt(q @ q + 1.0), *q])
        d = (wigner_angle(p, L1 @ L2) - wigner_angle(L2 @ p, L1) - wigner_angle(p, L2)) % (2 * np.pi)
        assert min(d, 2 * np.pi - d) <= 1e-9


@pytest.mark.parametrize("p,lam", [([0.5, 1.0, 0.0], np.eye(3)), ([1.0, 0, 0], np.diag([1.0, 2.0, 1.0])),
                                   ([1.0, 0, 0], np.diag([-1.0, -1.0, 1.0]))])
def test_wigner_angle_domain(p, lam):
    with pytest.raises(DomainError):
        wigner_angle(p, lam)
