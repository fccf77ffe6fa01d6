import numpy as np
import pytest

from orbitkit import kernels, make_algebra
from orbitkit.groups import GROUPS

py = kernels.backend("python")
try:
    cy = kernels.backend("cython")
except ImportError:  # pragma: no cover - extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


@needs_ext
@pytest.mark.parametrize("name", GROUPS)
def test_tensor_parity(name, rng):
    c = np.ascontiguousarray(make_algebra(name).c)
    xi = rng.normal(size=c.shape[0])
    g = rng.normal(size=c.shape[0])
    xs = rng.normal(size=(7, c.shape[0]))
    assert np.allclose(py.poisson_tensor(c, xi), cy.poisson_tensor(c, xi), atol=1e-14)
    assert np.allclose(py.poisson_tensor_batch(c, xs), cy.poisson_tensor_batch(c, xs), atol=1e-14)
    assert np.allclose(py.lie_poisson_field(c, xi, g), cy.lie_poisson_field(c, xi, g), atol=1e-14)
    assert np.allclose(py.bracket(c, xi, g), cy.bracket(c, xi, g), atol=1e-14)
    assert py.jacobi_residual(c) == cy.jacobi_residual(c)


@needs_ext
def test_boris_parity():
    args = (np.array([0.5, 0.1]), np.array([0.3, -0.1]), np.array([1.0, 0.2]), 1.0, 1.3, 1e-3, 2000, 100)
    assert np.allclose(py.boris_push(*args), cy.boris_push(*args), atol=1e-12)


def test_read_only_inputs_are_accepted():
    c = make_algebra("poincare").c  # stored read-only
    assert kernels.jacobi_residual(c) == 0.0


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")
    with pytest.raises(ValueError):
        kernels.backend("fortran")


def test_pure_python_switch():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-c", "from orbitkit import kernels; print(kernels.BACKEND)"],
                         env={"ORBITKIT_PURE_PYTHON": "1", "PATH": ""}, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
