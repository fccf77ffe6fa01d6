import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitkit import StructureError, make_algebra
from orbitkit.lie import (LieAlgebra, ScalarField, antisymmetry_residual, bracket, coadjoint_flow_one_param,
                          hamiltonian_flow, jacobi_residual, lie_poisson_bracket)
from orbitkit.groups import GROUPS

finite = st.floats(-10, 10, allow_nan=False)


def test_poincare_h_k1_bracket():
    alg = make_algebra("poincare")
    out = bracket(alg.basis("H"), alg.basis("K1"))
    assert out.as_dict() == {"P1": -1.0}


def test_galilei_maxwell_k1_k2_is_kappa():
    alg = make_algebra("galilei_maxwell_ext")
    assert bracket(alg.basis("K1"), alg.basis("K2")).as_dict() == {"Kappa": 1.0}


@pytest.mark.parametrize("name", GROUPS)
def test_self_bracket_vanishes(name, rng):
    alg = make_algebra(name)
    a = alg.element(rng.normal(size=alg.dim))
    assert np.max(np.abs(bracket(a, a).coeffs)) < 1e-14


def test_mismatched_algebras_rejected():
    a = make_algebra("poincare").basis("H")
    b = make_algebra("galilei_ext").basis("H")
    with pytest.raises(StructureError):
        bracket(a, b)


@pytest.mark.parametrize("name", GROUPS)
def test_catalog_is_lie_algebra(name):
    alg = make_algebra(name)
    assert jacobi_residual(alg) <= 1e-12
    assert antisymmetry_residual(alg) == 0.0


def test_corrupted_tensor_breaks_jacobi():
    c = make_algebra("poincare").c.copy()
    c[0, 1, 3] *= -1
    c[0, 3, 1] *= -1
    assert jacobi_residual(c) > 0.5


def test_coordinate_bracket_h_k1_on_poincare(rng):
    alg = make_algebra("poincare")
    x = alg.point(rng.normal(size=6))
    val = lie_poisson_bracket(alg.coordinate("h"), alg.coordinate("k1"), x)
    assert val == pytest.approx(-x["p1"], abs=1e-15)


def test_p1_p2_bracket_on_poincare_maxwell():
    alg = make_algebra("poincare_maxwell")
    x = alg.point({"beta": 3.0, "h": 0.7, "p1": 0.2})
    assert lie_poisson_bracket(alg.coordinate("p1"), alg.coordinate("p2"), x) == pytest.approx(-3.0)


@settings(max_examples=30, deadline=None)
@given(st.lists(finite, min_size=11, max_size=11))
def test_bracket_of_field_with_itself_vanishes(vals):
    alg = make_algebra("galilei_maxwell_ext")
    x = alg.point(vals)
    f = ScalarField(lambda y: y[3] * y[5] + 0.3 * y[8] ** 2)
    assert abs(lie_poisson_bracket(f, f, x)) <= 1e-6 * max(1.0, float(np.max(np.abs(vals)))) ** 3


def test_scalar_field_product_gradient():
    f = ScalarField(lambda y: y[0], lambda y: np.array([1.0, 0.0]))
    g = ScalarField(lambda y: y[1], lambda y: np.array([0.0, 1.0]))
    fg = f * g
    assert np.allclose(fg.gradient(np.array([2.0, 3.0])), [3.0, 2.0])


def test_hamiltonian_flow_of_h_on_galilei_maxwell():
    alg = make_algebra("galilei_maxwell_ext")
    x0 = alg.point({"p1": 1.0, "e1": 0.5, "m": 1.0, "beta": 1.0})
    t = np.linspace(0, 2, 5)
    tr = hamiltonian_flow(alg.coordinate("h"), x0, (0, 2), t_eval=t)
    assert np.allclose(tr.column("p1"), 1 - 0.5 * t, atol=1e-9)
    assert np.allclose(tr.column("h"), tr.column("h")[0], atol=1e-12)


def test_flow_at_zero_time_is_identity(rng):
    alg = make_algebra("poincare_maxwell")
    x = alg.point(rng.normal(size=alg.dim))
    assert np.array_equal(coadjoint_flow_one_param(alg.basis("J"), x, 0.0).xi, x.xi)


def test_full_turn_returns_planar_vectors(rng):
    alg = make_algebra("poincare")
    x = alg.point(rng.normal(size=6))
    y = coadjoint_flow_one_param(alg.basis("J"), x, 2 * np.pi)
    assert np.allclose(y.xi, x.xi, atol=1e-12)


def test_json_round_trip():
    alg = make_algebra("galilei_maxwell_ext")
    back = LieAlgebra.from_json(alg.to_json())
    assert np.array_equal(back.c, alg.c)
    assert back.basis_labels == alg.basis_labels


def test_json_rejects_bad_dimension():
    with pytest.raises(StructureError):
        LieAlgebra.from_json({"name": "x", "dim": 3, "basis": ["A", "B"], "c": []})
