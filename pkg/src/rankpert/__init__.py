"""Exact rank-bounded perturbations with a prescribed characteristic polynomial."""

from .algebra import GF, Q, Factorization, Field, Poly, Scalar, factor_irreducible, poly_divmod, poly_gcd, root_multiplicity
from .canonical import (
    InvariantFactors,
    JordanData,
    RcfDecomposition,
    jordan_data,
    jordan_from_invariants,
    jordan_from_ranks,
    rcf_transform,
    smith_invariant_factors,
)
from .errors import InfeasibleError, VerificationError
from .matrix import Mat, charpoly, companion, mat_inverse, principal_minor_sum, rank
from .perturb import (
    FeasibilityCertificate,
    Perturbation,
    check_feasible,
    check_jordan_condition,
    construct,
    construct_in_rcf,
    rank_bound_check,
    required_divisor,
    telescoping_check,
    verify,
)

__version__ = "0.1.0"
