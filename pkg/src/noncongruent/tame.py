"""2-rank and 4-rank of the tame kernel K2 of quadratic integer rings.

The 2-rank comes from counting which of +-1, +-2 are norms; the 4-rank comes
from the divisor-counting sets V1 and V2, realized two independent ways: as
solution sets of F2 linear systems attached to the symbol matrix B, and (for
cross-checking) by testing the defining Hilbert-symbol conditions divisor by
divisor.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import f2linalg, matrices
from .arith import (
    Place,
    divisors_of,
    factor_squarefree,
    hilbert,
    is_norm,
    legendre,
    squarefree_part,
)
from .errors import CountNotPowerOfTwo, OutOfRange
from .f2linalg import F2Vector
from .reps import fundamental_2mu2_tau2, rep_neg


@dataclass(frozen=True)
class TameKernelReport:
    """Ranks of the 2-primary part of the tame kernel of Q(sqrt(m))."""

    m: int
    r2: int
    r4: int
    v1: frozenset[int]
    v2: frozenset[int]
    mu_used: int | None


def _check_range(m: int) -> None:
    if abs(m) <= 2:
        raise OutOfRange(f"|m| must exceed 2, got {m}")
    if squarefree_part(m) != m:
        raise ValueError(f"{m} is not square-free")


def r2_tame(m: int) -> int:
    """2-rank of the tame kernel of Q(sqrt(m))."""
    _check_range(m)
    k = len(factor_squarefree(abs(m)).primes)
    if m > 2:
        norms = sum(1 for e in (1, -1, 2, -2) if is_norm(e, m))
        return k + norms.bit_length() - 1
    norms = sum(1 for e in (1, 2) if is_norm(e, m))
    return k - 1 + norms.bit_length() - 1


def _solution_values(b_target: F2Vector, bmat, primes) -> set[int]:
    return {matrices.psi(x, primes) for x in f2linalg.solution_set(bmat, b_target)}


def v_sets(m: int) -> tuple[frozenset[int], frozenset[int]]:
    """The divisor sets V1 and V2 via F2 solves against B = A + D_(m/m').

    For m > 0 both sets consist of positive divisors of the odd part m'; for
    m < 0 they are signed, with solutions of the targets b_(-eps) contributing
    negative divisors.  V2 is empty when 2 is not a norm from Q(sqrt(m)).
    """
    _check_range(m)
    sf = factor_squarefree(abs(m) // (2 if m % 2 == 0 else 1))
    bmat = matrices.build_A(sf) + matrices.build_D(m // sf.n, sf)
    primes = sf.primes

    def solutions(eps: int) -> set[int]:
        return _solution_values(matrices.build_b(eps, sf), bmat, primes)

    two_is_norm = is_norm(2, m)
    if m > 0:
        v1 = set()
        for eps in (1, -1, 2, -2):
            v1 |= solutions(eps)
        v2: set[int] = set()
        mu = None
        if two_is_norm:
            mu, _ = fundamental_2mu2_tau2(m)
            v2 = solutions(mu) | solutions(-mu)
        return frozenset(v1), frozenset(v2)

    v1 = solutions(1) | solutions(2)
    v1 |= {-d for d in solutions(-1) | solutions(-2)}
    v2 = set()
    if two_is_norm:
        mu = rep_neg(m).mu
        v2 = solutions(mu) | {-d for d in solutions(-mu)}
    return frozenset(v1), frozenset(v2)


def v_sets_direct(m: int) -> tuple[frozenset[int], frozenset[int]]:
    """V1 and V2 by brute per-divisor Hilbert-symbol checks (dual route).

    Tests the defining condition (d, -m)_p = (eps/p) for all p | m' directly,
    without any linear algebra; used to cross-check v_sets.
    """
    _check_range(m)
    m_odd = abs(m) // (2 if m % 2 == 0 else 1)
    primes = factor_squarefree(m_odd).primes
    candidates = divisors_of(m_odd)
    if m < 0:
        candidates = candidates + [-d for d in candidates]

    def matches(d: int, eps: int) -> bool:
        return all(
            hilbert(d, -m, Place(p)) == legendre(eps, p) for p in primes
        )

    eps1 = (1, -1, 2, -2) if m > 0 else (1, 2)
    v1 = frozenset(d for d in candidates if any(matches(d, e) for e in eps1))
    if not is_norm(2, m):
        return v1, frozenset()
    if m > 0:
        mu, _ = fundamental_2mu2_tau2(m)
        v2 = frozenset(
            d for d in candidates if any(matches(d, e * mu) for e in (1, -1))
        )
    else:
        mu = rep_neg(m).mu
        v2 = frozenset(d for d in candidates if matches(d, mu))
    return v1, v2


def r4_tame(m: int) -> int:
    """4-rank of the tame kernel from the V-set counts."""
    v1, v2 = v_sets(m)
    count = len(v1) + len(v2)
    if count & (count - 1):
        raise CountNotPowerOfTwo(f"|V1|+|V2| = {count} for m = {m}")
    log = count.bit_length() - 1
    r4 = log - 1 if m > 0 else log - 2
    if r4 < 0:
        raise CountNotPowerOfTwo(f"|V1|+|V2| = {count} too small for m = {m}")
    return r4


def tame_report(m: int) -> TameKernelReport:
    """Full report: r2, r4, the V sets and the mu that was used (if any)."""
    v1, v2 = v_sets(m)
    mu: int | None = None
    if is_norm(2, m):
        mu = fundamental_2mu2_tau2(m)[0] if m > 0 else rep_neg(m).mu
    count = len(v1) + len(v2)
    if count & (count - 1):
        raise CountNotPowerOfTwo(f"|V1|+|V2| = {count} for m = {m}")
    log = count.bit_length() - 1
    return TameKernelReport(
        m=m,
        r2=r2_tame(m),
        r4=log - 1 if m > 0 else log - 2,
        v1=v1,
        v2=v2,
        mu_used=mu,
    )
