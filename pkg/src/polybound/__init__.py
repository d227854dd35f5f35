"""polybound: measure-based upper bounds for polynomial minimization.

Exact moment and localizing matrices over a catalog of simple reference
measures, reduced to symmetric (generalized) eigenvalue problems in exact
rational arithmetic; plus nonnegativity certification with verifiable
counterexamples and a copositivity test.
"""

from .cone import (Certificate, CopositivityReport, certify_nonnegativity,
                   cone_membership, copositivity_test, quadratic_form_poly)
from .eigen import (ConvergenceError, EigenResult, LdltFactorization,
                    NotPositiveSemidefiniteError, PsdVerdict, gen_eig_smallest,
                    is_psd, ldlt, sym_eig_smallest)
from .hierarchy import (BoundReport, CandidatePoint, SosDensity, density_profile,
                        dual_density, exact_level0, extract_candidate,
                        reports_to_csv, run_hierarchy, upper_bound)
from .matrices import SymMatrix, localizing_matrix, moment_matrix, quadratic_form
from .measures import MeasureSpec, MomentSequence
from .oracle import grid_minimize, mc_moment
from .poly import MonomialBasis, Polynomial, enumerate_basis
from .problems import (MaxCutInstance, brute_force_hypercube, maxcut_equal,
                       maxcut_random, motzkin_like, two_well_quartic,
                       unattained_infimum)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "CandidatePoint", "Certificate", "ConvergenceError",
    "CopositivityReport", "EigenResult", "LdltFactorization", "MaxCutInstance",
    "MeasureSpec", "MomentSequence", "MonomialBasis",
    "NotPositiveSemidefiniteError", "Polynomial", "PsdVerdict", "SosDensity",
    "SymMatrix", "brute_force_hypercube", "certify_nonnegativity",
    "cone_membership", "copositivity_test", "density_profile", "dual_density",
    "enumerate_basis", "exact_level0", "extract_candidate", "gen_eig_smallest",
    "grid_minimize", "is_psd", "ldlt", "localizing_matrix", "maxcut_equal",
    "maxcut_random", "mc_moment", "moment_matrix", "motzkin_like",
    "quadratic_form", "quadratic_form_poly", "reports_to_csv", "run_hierarchy",
    "sym_eig_smallest", "two_well_quartic", "unattained_infimum",
    "upper_bound",
]
