"""Projection-type Radon transforms of co-real-dimension 2: harmonic and
holomorphic functions on the unit ball, entire functions against a Gaussian,
square-integrable functions through the oscillator basis, and the
Hermitian-monogenic refinement — each with its dual transform, inversion
operators, and an exact verification suite.
"""

__version__ = "0.1.0"

from .exact import QC
from .core import (DimensionError, StiefelTuple, axis_tuple, bilinear_pair,
                   dim_H, gamma_pq, herm, lambda_pq, lambda_tilde_pq,
                   pochhammer, rational_stiefel, sample_stiefel)
from .bipoly import (BiPoly, dz, dzbar, euler_z, euler_zbar, fischer,
                     fischer_decompose, harmonic_basis, laplace_z,
                     sphere_inner, sphere_integral)
from .results import (CheckResult, ContractViolation, MonteCarloEstimate,
                      ProjectionResult, SingularKernelError, TruncatedSum)
from .ball import (BRANCH_GE, BRANCH_LT, branch_restrict, dual_exact,
                   dual_monte_carlo, holo_kernel_closed, horn_h3, hyp2f1,
                   invert_general, invert_holomorphic, plane_wave,
                   plane_wave_norm_check, split_kernel, split_kernel_closed,
                   szego_kernel_closed, szego_kernel_series, szego_radon,
                   szego_radon_split)
from .fock import (bargmann_kernel, bargmann_radon, entire_wave,
                   fock_dual_exact, fock_dual_monte_carlo, fock_inner,
                   fock_invert, mu_p)
from .realspace import (HermiteExpansion, fit_hermite, hermite, l2_dual_exact,
                        l2_inner, l2_invert, l2_kernel_closed,
                        l2_kernel_series, l2_radon, mehler_closed,
                        mehler_series, segal_bargmann, segal_bargmann_inv,
                        tuple_wave)
from .clifford import (CliffordElement, dirac_z, dirac_zdag, grade_project,
                       herm_dual_exact, herm_dual_monte_carlo, herm_inner,
                       herm_invert, herm_radon, herm_vector, hmono_wave,
                       idempotent, null_tau, spin_euler, spinor_basis, witt)
from .verify import SPACES, run_verify
