"""Non-congruent number criteria with second-minimal 2-primary Sha.

Classifies square-free integers whose odd prime factors are +-1 mod 8, via
F2 descent matrices, Redei 4-ranks, a closed-form Cassels pairing, and tame
kernel 4-ranks, all backed by independent brute-force oracles.
"""

from .arith import (
    Place,
    QuadExpr,
    REAL_PLACE,
    SquareFreeN,
    additive_jacobi,
    factor_squarefree,
    hilbert,
    is_norm,
    jacobi,
    legendre,
    quad_jacobi,
    sqrt_mod,
)
from .criteria import Verdict, VerdictKind, classify, distinguished_divisor
from .f2linalg import F2Matrix, F2Vector
from .matrices import (
    SelmerTriple,
    build_A,
    build_b,
    build_D,
    h2,
    h4,
    monsky_matrix,
    prime_discriminants,
    redei_matrix,
    s2,
    selmer_elements,
)
from .oracles import (
    BQForm,
    ClassGroupReport,
    CongruentCurve,
    class_group,
    h4_oracle,
    h8_oracle,
    point_search,
    selmer_oracle,
)
from .reps import rep_2mu2_tau2, rep_a2_8b2, rep_neg, rep_u2_2w2
from .tame import TameKernelReport, r2_tame, r4_tame, tame_report, v_sets

__version__ = "0.1.0"

__all__ = [
    "Place",
    "QuadExpr",
    "REAL_PLACE",
    "SquareFreeN",
    "additive_jacobi",
    "factor_squarefree",
    "hilbert",
    "is_norm",
    "jacobi",
    "legendre",
    "quad_jacobi",
    "sqrt_mod",
    "Verdict",
    "VerdictKind",
    "classify",
    "distinguished_divisor",
    "F2Matrix",
    "F2Vector",
    "SelmerTriple",
    "build_A",
    "build_b",
    "build_D",
    "h2",
    "h4",
    "monsky_matrix",
    "prime_discriminants",
    "redei_matrix",
    "s2",
    "selmer_elements",
    "BQForm",
    "ClassGroupReport",
    "CongruentCurve",
    "class_group",
    "h4_oracle",
    "h8_oracle",
    "point_search",
    "selmer_oracle",
    "rep_2mu2_tau2",
    "rep_a2_8b2",
    "rep_neg",
    "rep_u2_2w2",
    "TameKernelReport",
    "r2_tame",
    "r4_tame",
    "tame_report",
    "v_sets",
]
