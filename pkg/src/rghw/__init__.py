"""Relative generalized Hamming weights of nested linear codes.

Exact RGHW computation, a subspace-counting existence certificate, asymptotic
bound curves, and exhaustive leakage checks for linear ramp secret sharing.
"""

from .asymptotics import (
    alpha_value,
    corollary1_value,
    eq102_bound,
    eq103_bound,
    fig1_table,
    pi_q,
    proof_maximizer_audit,
    qary_entropy,
    thm3_certifies,
)
from .codes import (
    CoordSet,
    LinearCode,
    NestedPair,
    dual,
    dual_pair,
    lemma3_construct,
    load_pair,
    make_code,
    rghw,
    rghw_profile,
    sample_nested_pair,
    theorem2_construct,
)
from .counting import GvParams, gv_certify, gv_max_d, n1, n2, n3
from .errors import BudgetExceeded, PreconditionViolated, RghwError
from .field import FieldSpec, field_new
from .linalg import MatrixFq, kernel_basis, rank, rref, solve_affine
from .ramp import RampScheme, adversary_threshold, deal, leakage_dim, leakage_mi, reconstruct, scheme_from_pair

__version__ = "0.1.0"
