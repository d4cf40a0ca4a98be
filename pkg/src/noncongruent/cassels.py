"""Cassels pairing on the pure 2-Selmer group in the rank-two regime.

The pairing is computed two ways: a closed-form Jacobi symbol, and a product
of local factors evaluated at explicit local points on the genus-one torsor
attached to the Selmer basis.  The module also houses a search-based local
solvability decider (with multivariate Hensel certificates) used by the
descent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from . import criteria, f2linalg, matrices
from .arith import (
    Place,
    QuadExpr,
    REAL_PLACE,
    SquareFreeN,
    hilbert2_from_parts,
    jacobi,
    legendre,
    quad_jacobi,
    sqrt_mod,
)
from .errors import NotRankTwo, PrecisionExhausted
from .matrices import SelmerTriple
from .reps import linked_u2w, rep_2mu2_tau2


@dataclass(frozen=True)
class TorsorSystem:
    """Three diagonal quadrics in (t, u1, u2, u3) cutting out the torsor.

    Stored as coefficient 4-tuples over (t, u1, u2, u3):
        H1: -n t^2            + d2 u2^2 - d3 u3^2
        H2: -n t^2 - d1 u1^2            + d3 u3^2
        H3: 2n t^2 + d1 u1^2 - d2 u2^2
    H1 + H2 + H3 = 0, so the torsor is the intersection of any two.
    """

    lam: SelmerTriple
    n: int

    @property
    def h1(self) -> tuple[int, int, int, int]:
        return (-self.n, 0, self.lam.d2, -self.lam.d3)

    @property
    def h2(self) -> tuple[int, int, int, int]:
        return (-self.n, -self.lam.d1, 0, self.lam.d3)

    @property
    def h3(self) -> tuple[int, int, int, int]:
        return (2 * self.n, self.lam.d1, -self.lam.d2, 0)

    def forms(self) -> tuple[tuple[int, int, int, int], ...]:
        return (self.h1, self.h2, self.h3)


@dataclass(frozen=True)
class TangentData:
    """A rational point on one quadric plus the tangent plane there.

    ``point`` lists the nonzero coordinates of Q in the quadric's three
    active variables; ``linear`` holds the tangent-form coefficients over
    (t, u1, u2, u3).
    """

    form: tuple[int, int, int, int]
    point: tuple[int, int, int, int]
    linear: tuple[int, int, int, int]

    def __post_init__(self):
        value = sum(c * x * x for c, x in zip(self.form, self.point))
        if value != 0:
            raise ValueError("point does not lie on the quadric")
        if sum(c * x for c, x in zip(self.linear, self.point)) != 0:
            raise ValueError("linear form does not vanish at the point")


@dataclass(frozen=True)
class LocalPoint:
    """A certified local point on a torsor (or a real-solvability witness).

    For a finite place the coordinates are integers modulo p^precision with
    residuals of both forms vanishing there and some 2x2 Jacobian minor of
    valuation minor_val <= (precision - 1) / 2, which guarantees a lift.
    """

    place: Place
    coords: tuple[int, int, int, int] | None
    precision: int
    minor_val: int


def torsor(lam: SelmerTriple, n: int) -> TorsorSystem:
    """Coefficient-exact torsor system for a Selmer representative."""
    return TorsorSystem(lam, n)


# ---------------------------------------------------------------------------
# the rank-two pairing basis and its tangent data
# ---------------------------------------------------------------------------


def tangent_data(sf: SquareFreeN) -> tuple[TangentData, TangentData]:
    """The tangent pairs (Q1, L1), (Q3, L3) for the basis element (1, n', n').

    The middle form never enters the pairing because its partner divisor is
    trivial, so only the first and third tangents are materialized.
    """
    if not sf.is_even:
        d = criteria.distinguished_divisor(sf)
        u2w = linked_u2w(rep_2mu2_tau2(sf.n, d))
        u, w, n = u2w.u, u2w.w, sf.n
        t1 = TangentData(
            form=(-1, 0, 1, -1), point=(0, 0, 1, 1), linear=(0, 0, 1, -1)
        )
        t3 = TangentData(
            form=(2 * n, 1, -n, 0),
            point=(w, n, u, 0),
            linear=(2 * w, 1, -u, 0),
        )
        return t1, t3
    np_ = sf.odd_part
    t1 = TangentData(form=(-2, 0, 1, -1), point=(0, 0, 1, 1), linear=(0, 0, 1, -1))
    t3 = TangentData(
        form=(4 * np_, 1, -np_, 0),
        point=(np_ - 1, 4 * np_, 2 * np_ + 2, 0),
        linear=(2 * (np_ - 1), 2, -(np_ + 1), 0),
    )
    return t1, t3


def closed_form_pairing(sf: SquareFreeN, d: int, mu: int | None) -> int:
    """Closed form of the pairing of the two pure Selmer generators.

    Odd n: the Jacobi symbol (-mu / d).  Even n: the quadratic-field symbol
    ((2 - sqrt(2)) / |d|).
    """
    if not sf.is_even:
        if mu is None:
            raise ValueError("odd case needs mu")
        return jacobi(-mu, d)
    return quad_jacobi(QuadExpr(2, -1, 2), abs(d))


def pairing_matrix(sf: SquareFreeN) -> tuple[tuple[tuple[int, int], tuple[int, int]], bool]:
    """2x2 Gram matrix of the pairing (multiplicative) and non-degeneracy.

    The diagonal is trivial and the pairing is symmetric, so the matrix is
    [[+1, c], [c, +1]] with c the closed-form value; on a two-dimensional
    space this is non-degenerate exactly when c = -1.
    """
    if matrices.s2(sf) != 2:
        raise NotRankTwo(f"s2({sf.n}) != 2")
    d = criteria.distinguished_divisor(sf)
    mu = rep_2mu2_tau2(sf.n, d).mu if not sf.is_even else None
    c = closed_form_pairing(sf, d, mu)
    return ((1, c), (c, 1)), c == -1


# ---------------------------------------------------------------------------
# local pairing factors at the explicit points of the proofs
# ---------------------------------------------------------------------------

_MAX_RETRIES = 4


def _symbol_2adic(x_val: int, x_unit: int, d: int) -> int:
    return hilbert2_from_parts(x_val, x_unit, d)


def _two_adic_parts(x: int, precision_bits: int) -> tuple[int, int] | None:
    """(valuation, unit mod 8) of x known modulo 2^precision_bits.

    None when the valuation eats too much precision to pin the unit mod 8.
    """
    if x % (1 << precision_bits) == 0:
        return None
    val = 0
    while x % 2 == 0:
        x //= 2
        val += 1
    if precision_bits - val < 3:
        return None
    return val, x % 8


def local_pairing(sf: SquareFreeN, v: Place) -> int:
    """Local Cassels factor of the generator pair at a place v | 2n or oo.

    Evaluated at the explicit local points: for odd n these are
    (1, 0, sqrt(2), 1) at p | n with sqrt(2) = -u/w, and (0, sqrt(n), 1, -1)
    at p = 2 and the real place; the even case uses (1, 0, 2, sqrt(2)) and
    (0, sqrt(n'), 1, -1).
    """
    if matrices.s2(sf) != 2:
        raise NotRankTwo(f"s2({sf.n}) != 2")
    d = criteria.distinguished_divisor(sf)
    n = sf.n

    if v.is_real:
        if not sf.is_even:
            # L1*L3 = 2*(sqrt(n) - u); sign checked exactly, d > 0 kills it.
            u = linked_u2w(rep_2mu2_tau2(n, d)).u
            positive = u < 0 or u * u < n
            return 1 if (positive or d > 0) else -1
        # L1*L3 = -2*(sqrt(n') - 1)^2 < 0: nontrivial exactly when d < 0.
        return -1 if d < 0 else 1

    p = v.p
    if p != 2 and n % p != 0:
        raise ValueError(f"place {p} does not divide 2n")

    if not sf.is_even:
        rep = rep_2mu2_tau2(n, d)
        u2w = linked_u2w(rep)
        u, w, mu = u2w.u, u2w.w, rep.mu
        if p == 2:
            return _local2_odd(n, u, d)
        # sqrt(2) mod p chosen so that it equals -u/w, making L3 a unit.
        s = sqrt_mod(2, p, 1)
        if (w * s + u) % p != 0:
            s = p - s
        if (w * s + u) % p != 0:
            raise ArithmeticError("no square root of 2 matches -u/w")  # pragma: no cover
        value = (s - 1) * (2 * w - u * s) % p
        if value == 0:
            raise ArithmeticError("tangent product vanished mod p")  # pragma: no cover
        if abs(d) % p == 0:
            return legendre(value, p)
        return 1

    np_ = sf.odd_part
    if p == 2:
        return _local2_even(np_, d)
    s = sqrt_mod(2, p, 1)
    # L1*L3 = -4*(2 - sqrt(2)); both roots give the same factor.
    value = -4 * (2 - s) % p
    if abs(d) % p == 0:
        return legendre(value, p)
    return 1


def _local2_odd(n: int, u: int, d: int) -> int:
    """(2*(sqrt(n) - u), d)_2 with retry-on-ambiguity precision control."""
    e = 12
    for _ in range(_MAX_RETRIES):
        s = sqrt_mod(n, 2, e)
        parts = _two_adic_parts((s - u) % (1 << (e - 1)), e - 1)
        if parts is not None:
            val, unit = parts
            return _symbol_2adic(val + 1, unit, d)
        e *= 2
    raise PrecisionExhausted(f"2-adic symbol for n = {n} stayed ambiguous")


def _local2_even(np_: int, d: int) -> int:
    """(-2*(sqrt(n') - 1)^2, d)_2 with retry-on-ambiguity precision control."""
    e = 12
    for _ in range(_MAX_RETRIES):
        s = sqrt_mod(np_, 2, e)
        x = 2 * (2 * s - np_ - 1) % (1 << e)
        parts = _two_adic_parts(x, e)
        if parts is not None:
            val, unit = parts
            return _symbol_2adic(val, unit, d)
        e *= 2
    raise PrecisionExhausted(f"2-adic symbol for n' = {np_} stayed ambiguous")


def two_symbol_check(n: int, u: int, mu: int, e: int = 12) -> tuple[list[int], int]:
    """Both symbols (-u +- sqrt(n), -1)_2 and the target (-mu, -1)_2.

    The 2-adic root is taken at precision 2^e (retried with doubled
    precision while -u +- sqrt(n) is too close to zero to pin its unit).
    """
    rhs = hilbert2_from_parts(0, (-mu) % 8, -1)
    for _ in range(_MAX_RETRIES):
        s = sqrt_mod(n, 2, e)
        lhs = []
        for x in ((-u + s) % (1 << (e - 1)), (-u - s) % (1 << (e - 1))):
            parts = _two_adic_parts(x, e - 1)
            if parts is None:
                break
            lhs.append(hilbert2_from_parts(parts[0], parts[1], -1))
        if len(lhs) == 2:
            return lhs, rhs
        e *= 2
    raise PrecisionExhausted(f"2-adic symbols for n = {n} stayed ambiguous")


def pairing_places(sf: SquareFreeN) -> list[Place]:
    """All places where the pairing can have a nontrivial local factor."""
    return [REAL_PLACE, Place(2)] + [Place(p) for p in sf.primes]


def pairing_product(sf: SquareFreeN) -> int:
    """Product of all local factors; must agree with the closed form."""
    out = 1
    for v in pairing_places(sf):
        out *= local_pairing(sf, v)
    return out


# ---------------------------------------------------------------------------
# search-based local solvability with Hensel certificates
# ---------------------------------------------------------------------------


def _eval_form(coeffs, x) -> int:
    return (
        coeffs[0] * x[0] * x[0]
        + coeffs[1] * x[1] * x[1]
        + coeffs[2] * x[2] * x[2]
        + coeffs[3] * x[3] * x[3]
    )


def _jacobian_minor_val(h1, h3, x, p: int, cap: int) -> int:
    """Min p-valuation over the 2x2 minors of the Jacobian at x, capped."""
    g1 = [2 * c * xi for c, xi in zip(h1, x)]
    g3 = [2 * c * xi for c, xi in zip(h3, x)]
    best = cap
    for i in range(4):
        for j in range(i + 1, 4):
            det = g1[i] * g3[j] - g1[j] * g3[i]
            if det == 0:
                continue
            val = 0
            while det % p == 0 and val < best:
                det //= p
                val += 1
            best = min(best, val)
    return best


def _certified(h1, h3, x, p: int, m: int) -> int | None:
    """Hensel certificate: minor valuation e with m >= 2e + 1, else None."""
    e = _jacobian_minor_val(h1, h3, x, p, (m + 1) // 2)
    return e if m >= 2 * e + 1 else None


def _real_point(ts: TorsorSystem) -> LocalPoint | None:
    """Real solvability by sign analysis: solvable exactly when d2 > 0.

    With n > 0 and d1*d2*d3 a square, d2 < 0 forces one of the three forms
    to be definite, and d2 > 0 admits the witness t = 0 (all d_i > 0) or
    t = 1, u3 = 0 (d1, d3 < 0).
    """
    if ts.lam.d2 > 0:
        if ts.lam == SelmerTriple(1, 1, 1):
            return LocalPoint(REAL_PLACE, (0, 1, 1, 1), 0, 0)
        return LocalPoint(REAL_PLACE, None, 0, 0)
    return None


_FRONTIER_CAP = 500_000


def _primitivize(form: list[int], p: int) -> list[int]:
    """Divide out the largest power of p dividing every coefficient."""
    if all(c == 0 for c in form):
        raise ValueError("zero form")  # pragma: no cover
    while all(c % p == 0 for c in form):
        form = [c // p for c in form]
    return form


def _minimize_at_p(ts: TorsorSystem, p: int) -> tuple[list[list[int]], list[int]]:
    """p-minimal model of the torsor: forms with unit content and no variable
    forced to vanish mod p.

    When a form reduces mod p to a unit times a single square c*x_i^2, every
    local solution has p | x_i, so substituting x_i -> p*x_i (and stripping
    contents again) preserves solvability while making the reduction less
    degenerate.  Returns the transformed forms and the per-variable scaling
    exponents mapping new coordinates back to original ones.
    """
    forms = [list(ts.h1), list(ts.h2), list(ts.h3)]
    scales = [0, 0, 0, 0]
    for _ in range(4):
        forms = [_primitivize(f, p) for f in forms]
        forced = None
        for f in forms:
            nonzero = [i for i in range(4) if f[i] % p != 0]
            if len(nonzero) == 1:
                forced = nonzero[0]
                break
        if forced is None:
            break
        for f in forms:
            f[forced] *= p * p
        scales[forced] += 1
    return [_primitivize(f, p) for f in forms], scales


def _choose_pair(forms: list[list[int]], p: int) -> tuple[list[int], list[int]]:
    """Two forms whose reductions mod p are linearly independent, if any."""
    reductions = [[c % p for c in f] for f in forms]
    for i, j in ((0, 2), (0, 1), (1, 2)):
        u, w = reductions[i], reductions[j]
        independent = any(
            (u[a] * w[b] - u[b] * w[a]) % p for a in range(4) for b in range(4)
        )
        if independent:
            return forms[i], forms[j]
    return forms[0], forms[2]


def local_point_search(
    ts: TorsorSystem, v: Place, e: int | None = None
) -> LocalPoint | None:
    """Search for a certified local point on the torsor at the place v.

    Finite places run a breadth-first lift over residues modulo p^m on a
    p-minimized model: level one is enumerated exhaustively (vectorized),
    later levels lift solutions while checking the Hensel certificate.
    Returns None only when some level has no solutions at all, which soundly
    certifies insolvability.  ``e`` caps the certificate depth; the default
    is the sufficient bound 2*v_p(4n^2) + 1 plus slack.
    """
    if v.is_real:
        return _real_point(ts)
    p = v.p
    n = ts.n
    if p == 2:
        h1, h3 = list(ts.h1), list(ts.h3)
        scales = [0, 0, 0, 0]
    else:
        forms, scales = _minimize_at_p(ts, p)
        h1, h3 = _choose_pair(forms, p)
    vp4n2 = (2 + 2 * _valuation(n, 2)) if p == 2 else 2 * _valuation(n, p)
    depth = e if e is not None else 2 * vp4n2 + 1 + 4

    def report(x, m, cert_val):
        coords = tuple(
            (x[i] * p ** scales[i]) % p**m for i in range(4)
        )
        return LocalPoint(v, coords, m, cert_val)

    frontier = _level_one(h1, h3, p)
    if not frontier:
        return None
    cert = _scan_certificates(h1, h3, frontier, p, 1)
    if cert is not None:
        return report(cert[0], 1, cert[1])

    mod = p
    for m in range(1, depth + 1):
        nxt: list[tuple[int, int, int, int]] = []
        for x in frontier:
            nxt.extend(_lift_children(h1, h3, x, p, mod))
            if len(nxt) > _FRONTIER_CAP:
                raise PrecisionExhausted(
                    f"frontier blow-up at p = {p}, level {m + 1}"
                )
        frontier = list(dict.fromkeys(nxt))
        if not frontier:
            return None
        cert = _scan_certificates(h1, h3, frontier, p, m + 1)
        if cert is not None:
            return report(cert[0], m + 1, cert[1])
        mod *= p
    raise PrecisionExhausted(
        f"no certificate and live frontier at p = {p}, depth {depth}"
    )


def _valuation(n: int, p: int) -> int:
    val = 0
    while n % p == 0:
        n //= p
        val += 1
    return val


def _level_one(h1, h3, p: int) -> list[tuple[int, int, int, int]]:
    """All projective solutions mod p, one affine patch per unit coordinate."""
    sols: list[tuple[int, int, int, int]] = []
    if p == 2:
        for x in range(2):
            for y in range(2):
                for z in range(2):
                    for w in range(2):
                        pt = (x, y, z, w)
                        if pt == (0, 0, 0, 0):
                            continue
                        if _eval_form(h1, pt) % 2 == 0 and _eval_form(h3, pt) % 2 == 0:
                            sols.append(pt)
        return sols
    rng = np.arange(p, dtype=np.int64)
    squares = (rng * rng) % p
    for patch in range(4):
        # Coordinates before `patch` are zero and coordinate `patch` is 1,
        # which picks a unique representative of every projective point.
        free = list(range(patch + 1, 4))
        shape = [1] * len(free)
        vals1 = np.int64(h1[patch] % p)
        vals3 = np.int64(h3[patch] % p)
        for axis, coord in enumerate(free):
            axis_shape = shape.copy()
            axis_shape[axis] = p
            sq = squares.reshape(axis_shape)
            vals1 = vals1 + (h1[coord] % p) * sq
            vals3 = vals3 + (h3[coord] % p) * sq
        mask = ((vals1 % p) == 0) & ((vals3 % p) == 0)
        for multi in np.argwhere(np.atleast_1d(mask)):
            pt = [0, 0, 0, 0]
            pt[patch] = 1
            for axis, coord in enumerate(free):
                pt[coord] = int(multi[axis])
            sols.append(tuple(pt))
    return sols


def _scan_certificates(h1, h3, frontier, p, m):
    for x in frontier:
        if _eval_form(h1, x) % p**m or _eval_form(h3, x) % p**m:
            continue  # pragma: no cover - frontier invariant
        cert = _certified(h1, h3, x, p, m)
        if cert is not None:
            return x, cert
    return None


def _lift_children(h1, h3, x, p: int, mod: int):
    """Solutions mod p*mod lying over x (all coordinates shifted by mod*y).

    For odd p the conditions are linear in the shift y; for p = 2 the eight
    shifts are checked directly.
    """
    new_mod = mod * p
    # The patch coordinate is the first one equal to 1 with only multiples
    # of p before it; it was frozen at level one and never shifts.
    patch = next(i for i in range(4) if x[i] == 1 and all(x[j] % p == 0 for j in range(i)))
    free = [i for i in range(4) if i != patch]

    if p == 2:
        out = []
        for bits in range(8):
            y = [0, 0, 0, 0]
            for axis, coord in enumerate(free):
                y[coord] = (bits >> axis) & 1
            cand = tuple((x[i] + mod * y[i]) % new_mod for i in range(4))
            if _eval_form(h1, cand) % new_mod == 0 and _eval_form(h3, cand) % new_mod == 0:
                out.append(cand)
        return out

    r1 = (_eval_form(h1, x) // mod) % p
    r3 = (_eval_form(h3, x) // mod) % p
    g1 = [(2 * c * xi) % p for c, xi in zip(h1, x)]
    g3 = [(2 * c * xi) % p for c, xi in zip(h3, x)]
    rows = [
        [g1[free[0]], g1[free[1]], g1[free[2]], (-r1) % p],
        [g3[free[0]], g3[free[1]], g3[free[2]], (-r3) % p],
    ]
    sols = _solve_mod_p(rows, p)
    out = []
    for y in sols:
        cand = list(x)
        for axis, coord in enumerate(free):
            cand[coord] = (cand[coord] + mod * y[axis]) % new_mod
        out.append(tuple(cand))
    return out


def _solve_mod_p(rows, p: int):
    """All solutions of a 2x3 affine system over F_p (may be empty or large)."""
    # Gaussian elimination on the 2x4 augmented matrix.
    mat = [row[:] for row in rows]
    pivots = []
    rank = 0
    for col in range(3):
        piv = None
        for r in range(rank, 2):
            if mat[r][col] % p:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(v * inv) % p for v in mat[rank]]
        for r in range(2):
            if r != rank and mat[r][col] % p:
                factor = mat[r][col]
                mat[r] = [(a - factor * b) % p for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, 2):
        if mat[r][3] % p:
            return []
    free_cols = [c for c in range(3) if c not in pivots]
    sols = []

    def emit(assignment):
        y = [0, 0, 0]
        for c, val in assignment.items():
            y[c] = val
        for r, pc in enumerate(pivots):
            val = mat[r][3]
            for c in free_cols:
                val -= mat[r][c] * y[c]
            y[pc] = val % p
        sols.append(tuple(y))

    def rec(idx, assignment):
        if idx == len(free_cols):
            emit(assignment)
            return
        for val in range(p):
            assignment[free_cols[idx]] = val
            rec(idx + 1, assignment)
        del assignment[free_cols[idx]]

    rec(0, {})
    return sols
