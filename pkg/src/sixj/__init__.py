"""Exact Wigner 6j symbols, the tetrahedron geometry of their saddle points,
and their large-spin asymptotics."""

from .asymptotics import (AsymptoticEstimate, DecayEstimate, PrefactorTerms,
                          SaddleDecomposition, decay_rate, exact_log_slope,
                          integral_estimate, ponzano_regge, prefactor_terms,
                          saddle_contribution, saddle_decomposition)
from .errors import (DegenerateError, DomainError, InternalError,
                     MinkowskianError, ParseError, SixJError)
from .exact import (ExactSixJ, FactoredFactorial, factorial_factored,
                    orthogonality_residual, racah_alternating_sum,
                    sixj_decimal, sixj_exact, triangle_coefficient)
from .geometry import (QuadraticCoefficients, SaddlePair, TetraKind,
                       cayley_menger_volume_sq, classify, discriminant,
                       exterior_dihedral_angles, quadratic_coefficients,
                       saddle_points, volume)
from .spins import (HalfInt, SpinSextet, TriadSums, is_admissible_triple,
                    parse_spin, triad_sums)

__version__ = "0.1.0"
