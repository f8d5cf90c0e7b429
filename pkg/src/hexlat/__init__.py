"""Hard-hexagon lattice gas at complex fugacity: exact polynomials, zeros,
transfer-matrix eigenvalue crossings, and the exact per-site functions."""

from .states import (RingState, StateIndex, SymmetryClasses, enumerate_states,
                     lucas, symmetry_classes, translate)
from .transfer import (ExactPolynomial, ModPolynomial, partition_cylindrical,
                       partition_exact, partition_toroidal, sweep_complex)
from .modular import crt_reconstruct, prime_pool, reconstruct_partition
from .roots import ZeroSet, classify_zeros, find_zeros
from .exact import (baxter_equimodular_curve, eval_products, f_minus, f_plus,
                    hauptmodul, hauptmodul_point, kappa_minus, kappa_plus,
                    negative_axis_crossing, rho_minus, w_relation_residual)
from .puiseux import sigma_series, solve_density_expansion
from .eigen import (EigenSet, MatrixAction, apply_transfer, arc_endpoint,
                    axis_endpoint, collision_refine, curve_report,
                    leading_eigenvalues, momentum_label, necklace_endpoint,
                    trace_equimodular)
from .analysis import (CardioidFit, DensityProfile, FitResult, cardioid_fit,
                       density_profile, fss_amplitudes, fss_local_slopes)

__version__ = "0.1.0"
