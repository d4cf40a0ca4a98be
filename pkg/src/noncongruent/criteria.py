"""Classification of square-free n as non-congruent with Sha[2^oo] = (Z/2)^2.

The sufficient-and-necessary criterion in the rank-two regime combines three
ingredients: the Redei 4-ranks of the attached quadratic fields, the
distinguished divisor d (the unique nontrivial divisor with all Hilbert
symbols (d, n)_v trivial), and one Jacobi-type symbol built from a Pell
representation of n.  ``classify`` never claims congruence: a failed
criterion only means the sufficient condition does not hold.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import f2linalg, matrices
from .arith import (
    Place,
    QuadExpr,
    REAL_PLACE,
    SquareFreeN,
    factor_squarefree,
    hilbert,
    jacobi,
    quad_jacobi,
)
from .errors import (
    NotRankTwo,
    NotSquareFree,
    PreconditionFailed,
    VerificationFailed,
)
from .reps import fundamental_2mu2_tau2, rep_2mu2_tau2, rep_a2_8b2, rep_u2_2w2


class VerdictKind(enum.Enum):
    NON_CONGRUENT_SHA22 = "NonCongruentSha22"
    CRITERION_FAILS = "CriterionFails"
    S2_NOT_TWO = "S2NotTwo"
    NOT_ELIGIBLE = "NotEligible"


@dataclass
class Verdict:
    """Full classification record with per-field provenance trace."""

    n: int
    verdict: VerdictKind
    s2: int | None = None
    h4_minus: int | None = None
    h4_plus: int | None = None
    d: int | None = None
    mu: int | None = None
    pairing_symbol: int | None = None
    trace: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "verdict": self.verdict.value,
            "s2": self.s2,
            "h4_minus": self.h4_minus,
            "h4_plus": self.h4_plus,
            "d": self.d,
            "mu": self.mu,
            "pairing_symbol": self.pairing_symbol,
            "trace": [list(t) for t in self.trace],
        }


def distinguished_divisor(sf: SquareFreeN) -> int:
    """The unique divisor d != 1 of n with (d, n)_v = +1 at every place.

    Odd n: d is the positive divisor read off the one-dimensional kernel of
    A + D_(-1).  Even n: |d| comes from the kernel of A^T and the sign is
    fixed by d = 1 mod 8.  The Hilbert conditions are re-verified before
    returning.
    """
    a = matrices.build_A(sf)
    if not sf.is_even:
        ker = f2linalg.kernel(a + matrices.build_D(-1, sf))
    else:
        ker = f2linalg.kernel(a.transpose())
    if len(ker) != 2:
        raise NotRankTwo(f"kernel size {len(ker)} != 2 for n = {sf.n}")
    d = matrices.psi(ker[1], sf.primes)
    if sf.is_even:
        if d % 8 == 7:
            d = -d
        elif d % 8 != 1:
            raise VerificationFailed(f"|d| = {d} is not +-1 mod 8")
    places = [REAL_PLACE, Place(2)] + [Place(p) for p in sf.primes]
    if any(hilbert(d, sf.n, v) != 1 for v in places):
        raise VerificationFailed(f"(d, n)_v != 1 for d = {d}, n = {sf.n}")
    return d


def thm_main1_lhs(sf: SquareFreeN) -> tuple[bool, list[tuple[str, str]]]:
    """Odd-case criterion: h4(-n) = 1, h4(n) = 0 and (-mu/d) = -1."""
    if sf.is_even or sf.n % 8 != 1 or not sf.eligibility:
        raise PreconditionFailed(f"n = {sf.n} is not odd eligible 1 mod 8")
    trace: list[tuple[str, str]] = []
    h4m = matrices.h4(-sf.n)
    trace.append(("h4_minus", "redei_rank"))
    h4p = matrices.h4(sf.n)
    trace.append(("h4_plus", "redei_rank"))
    if h4m != 1 or h4p != 0:
        return False, trace
    d = distinguished_divisor(sf)
    trace.append(("d", "kernel_psi"))
    mu = rep_2mu2_tau2(sf.n, d).mu
    trace.append(("mu", "pell_window"))
    symbol = jacobi(-mu, d)
    trace.append(("pairing_symbol", "jacobi_closed_form"))
    return symbol == -1, trace


def thm_main2_lhs(sf: SquareFreeN) -> tuple[bool, list[tuple[str, str]]]:
    """Even-case criterion: h4(-n/2) = 1 and ((2 - sqrt(2)) / |d|) = -1."""
    if not sf.is_even or sf.n % 8 != 2 or not sf.eligibility:
        raise PreconditionFailed(f"n = {sf.n} is not even eligible 2 mod 8")
    trace: list[tuple[str, str]] = []
    h4m = matrices.h4(-sf.odd_part)
    trace.append(("h4_minus", "redei_rank"))
    if h4m != 1:
        return False, trace
    d = distinguished_divisor(sf)
    trace.append(("d", "kernel_psi"))
    symbol = quad_jacobi(QuadExpr(2, -1, 2), abs(d))
    trace.append(("pairing_symbol", "quad_jacobi_closed_form"))
    return symbol == -1, trace


def classify(n: int) -> Verdict:
    """Classify n; all failure modes become verdict values, never errors."""
    try:
        sf = factor_squarefree(n)
    except NotSquareFree:
        return Verdict(n=n, verdict=VerdictKind.NOT_ELIGIBLE, trace=[("n", "not_squarefree")])
    if not sf.eligibility or n % 8 not in (1, 2):
        return Verdict(n=n, verdict=VerdictKind.NOT_ELIGIBLE, trace=[("n", "eligibility_sieve")])
    if sf.k == 0:
        # n = 1 or 2: the pure Selmer group is trivial.
        return Verdict(n=n, verdict=VerdictKind.S2_NOT_TWO, s2=0, trace=[("s2", "trivial_case")])
    v = Verdict(n=n, verdict=VerdictKind.S2_NOT_TWO)
    v.s2 = matrices.s2(sf)
    v.trace.append(("s2", "monsky_rank"))
    if v.s2 != 2:
        return v
    if not sf.is_even:
        holds, trace = thm_main1_lhs(sf)
        v.trace.extend(trace)
        v.h4_minus = matrices.h4(-n)
        v.h4_plus = matrices.h4(n)
        v.d = distinguished_divisor(sf)
        v.mu = rep_2mu2_tau2(n, v.d).mu
        v.pairing_symbol = jacobi(-v.mu, v.d)
    else:
        holds, trace = thm_main2_lhs(sf)
        v.trace.extend(trace)
        v.h4_minus = matrices.h4(-sf.odd_part)
        v.d = distinguished_divisor(sf)
        v.pairing_symbol = quad_jacobi(QuadExpr(2, -1, 2), abs(v.d))
    v.verdict = (
        VerdictKind.NON_CONGRUENT_SHA22 if holds else VerdictKind.CRITERION_FAILS
    )
    return v


_PROP_LABELS = (
    "b_even",
    "one_plus_sqrt2",
    "one_plus_i",
    "sqrt2_vs_n",
    "u_mod4",
    "mu_mod4",
    "h8_minus_zero",
    "mu_symbol",
)


def proposition_conditions(sf: SquareFreeN) -> dict[str, bool]:
    """The eight equivalent conditions, as labeled booleans.

    Preconditions: n odd with every prime factor 1 mod 8 and h4(-n) = 0.
    Note the h4(-n) = 0 requirement is unsatisfiable in this family (the
    Redei matrix of -n contains the row-sum-zero block A, forcing
    h4(-n) >= 1), so no n ever reaches the condition evaluation; the check
    is kept exactly as stated and PreconditionFailed reports the value.
    """
    if sf.is_even or not sf.strict_eligibility or sf.k == 0:
        raise PreconditionFailed(f"n = {sf.n} is not odd with all factors 1 mod 8")
    h4m = matrices.h4(-sf.n)
    if h4m != 0:
        raise PreconditionFailed(f"h4(-{sf.n}) = {h4m} != 0")
    return _proposition_booleans(sf)


def _proposition_booleans(sf: SquareFreeN) -> dict[str, bool]:
    """Evaluate the eight booleans (no precondition; used by verify sweeps)."""
    from . import oracles  # local import: oracles depends on cassels -> criteria

    n = sf.n
    rep_ab = rep_a2_8b2(n)
    mu = fundamental_2mu2_tau2(n)[0]
    u = rep_u2_2w2(n).u
    return {
        "b_even": rep_ab.b % 2 == 0,
        "one_plus_sqrt2": quad_jacobi(QuadExpr(1, 1, 2), n) == 1,
        "one_plus_i": quad_jacobi(QuadExpr(1, 1, -1), n) == 1,
        "sqrt2_vs_n": quad_jacobi(QuadExpr(0, 1, 2), n) == (-1) ** ((n - 1) // 8),
        "u_mod4": abs(u) % 4 == 1,
        "mu_mod4": abs(mu) % 4 == 1,
        "h8_minus_zero": oracles.h8_oracle(-n) == 0,
        "mu_symbol": jacobi(mu, n) == 1,
    }
