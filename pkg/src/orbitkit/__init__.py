"""Lie-algebraic toolkit for planar relativistic and Galilean particles.

Structure constants and Lie-Poisson dynamics (:mod:`orbitkit.lie`), the
group catalog and its contraction (:mod:`orbitkit.groups`), finite
coadjoint actions and orbit labels (:mod:`orbitkit.coadjoint`), orbit charts
and minimal coupling (:mod:`orbitkit.charts`, :mod:`orbitkit.coupling`) and
generator realizations (:mod:`orbitkit.reps`).
"""

__version__ = "0.1.0"

from .errors import (DomainError, DomainExitError, IntegrationError, NumericalError, OrbitkitError,
                     StructureError, UnsupportedError)
from .lie import (AlgebraElement, DualPoint, LieAlgebra, ScalarField, bracket, coadjoint_flow_one_param,
                  hamiltonian_flow, hamiltonian_vector_field, jacobi_residual, lie_poisson_bracket)
from .groups import (GROUPS, catalog, contracted_structure_constants, contraction_family, convergence_slope,
                     effective_basis_change, make_algebra)
from .coadjoint import (GroupElement, OrbitLabel, classify_orbit, coadjoint_act, consistency_vs_flow, invariants,
                        one_parameter_element, verify_invariance)
from .charts import OrbitChart, angular_momentum, canonical_brackets, integrate, make_chart, to_canonical
from .coupling import MinimalCouplingState, minimal_coupling_integrate, picture_compare
from .reps import (commutator_residual, galilei_realization, poincare_realization, wigner_angle)
