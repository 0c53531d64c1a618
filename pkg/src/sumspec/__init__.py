"""Spectra and ranges of sums of self-adjoint operators with compact products.

Diagonal model operators are built from strand sequences, so essential
spectra, epsilon-cores and range closedness are decided exactly; a Jacobi
based numeric core handles the finite-dimensional statements.
"""
from .criteria import (check_grouped_closed, check_hypotheses, check_projection_product_compact,
                       check_range_closed_single, check_sum_ranges_closed, check_theorem_a,
                       check_zero_essential, build_singular_schedule, coercivity_constant,
                       corollary_ranges_eq, gram_gap, transfer_singular, verify_inequality_41)
from .errors import SumSpecError
from .linalg import (DEFAULT_TOLERANCES, HermitianMatrix, QComplex, Subspace, Tolerances, eigh,
                     principal_angles, spectral_projection, subspace_intersection, svd)
from .operators import (ModelOperator, epsilon_core, essential_spectrum, kernel_core, op_sum,
                        truncate)
from .runner import AnalysisReport, emit, run
from .scenario import ScenarioSpec, parse_scenario, serialize_scenario
from .sequences import IndexSet, StrandExpr, SymbolicSequence
from .truncation import (numeric_epsilon_core, truncation_spectrum_convergence,
                         weyl_experiment)

__version__ = "0.1.0"
