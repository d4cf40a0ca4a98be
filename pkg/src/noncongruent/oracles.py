"""Independent brute-force ground truth.

Narrow class groups are realized concretely as form class groups of binary
quadratic forms: reduced positive-definite forms for negative discriminants,
reduction cycles of indefinite forms for positive ones (proper equivalence,
which matches the narrow group canonically).  2-power ranks come from
counting images of iterated squaring, never from Redei theory, so they can
cross-check it.  The Selmer oracle re-derives the pure 2-Selmer set from
local solvability searches alone, never from the Monsky kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import cassels
from .arith import Place, REAL_PLACE, SquareFreeN, divisors_of, squarefree_part
from .errors import NotFundamental, TooLarge
from .matrices import SelmerTriple, field_discriminant

_DISC_CAP = 10**6


@dataclass(frozen=True)
class BQForm:
    """Primitive integral binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class ClassGroupReport:
    """Order, cyclic structure and 2-power ranks of a form class group."""

    disc: int
    order: int
    invariant_factors: tuple[int, ...]
    r2: int
    r4: int
    r8: int


@dataclass(frozen=True)
class CongruentCurve:
    """The curve y^2 = x^3 - n^2 x attached to n."""

    n: int

    def rhs(self, x: Fraction) -> Fraction:
        return x * x * x - Fraction(self.n * self.n) * x


def is_fundamental(disc: int) -> bool:
    """Field discriminants: squarefree 1 mod 4, or 4m with m squarefree 2,3 mod 4."""
    if disc in (0, 1):
        return False
    if disc % 4 == 1:
        return squarefree_part(disc) == disc
    if disc % 4 != 0:
        return False
    m = disc // 4
    return m % 4 in (2, 3) and squarefree_part(m) == m


# ---------------------------------------------------------------------------
# composition and reduction
# ---------------------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(x, y, g) with a x + b y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -x0, -y0, -a
    return x0, y0, a


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """Chinese remainder for possibly non-coprime moduli (must be consistent)."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        raise ArithmeticError("inconsistent congruences")
    lcm = m1 // g * m2
    x, _, _ = _xgcd(m1 // g, m2 // g)
    return (r1 + m1 * ((r2 - r1) // g) * x) % lcm


def _transform_to_coprime(g: BQForm, other_a: int) -> BQForm:
    """Equivalent form whose leading coefficient is coprime to other_a.

    Walks primitive vectors (x, y) in an expanding box until g(x, y) is
    nonzero and coprime to other_a, then changes basis by an SL2 matrix
    sending (1, 0) to (x, y).
    """
    a, b, c = g.a, g.b, g.c
    for bound in range(1, 64):
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if gcd(x, y) != 1:
                    continue
                m = a * x * x + b * x * y + c * y * y
                if m == 0 or gcd(m, other_a) != 1:
                    continue
                r, s, _ = _xgcd(x, y)
                # Basis matrix [[x, r'], [y, s']] with det x*s' - y*r' = 1.
                rp, sp = -s, r
                b2 = 2 * (a * x * rp + c * y * sp) + b * (x * sp + y * rp)
                c2 = a * rp * rp + b * rp * sp + c * sp * sp
                return BQForm(m, b2, c2)
    raise ArithmeticError("no coprime representative found")  # pragma: no cover


def compose(f: BQForm, g: BQForm) -> BQForm:
    """Dirichlet composition of primitive forms of one discriminant.

    g is first replaced by an equivalent form whose leading coefficient is
    coprime to f's, after which both are brought to a common middle
    coefficient and multiplied.  Sign-agnostic in the discriminant; the
    result is generally unreduced.
    """
    disc = f.disc
    if disc != g.disc:
        raise ValueError("discriminants differ")
    if gcd(f.a, g.a) != 1:
        g = _transform_to_coprime(g, f.a)
    a1, b1 = f.a, f.b
    a2, b2 = g.a, g.b
    b = _crt(b1, 2 * a1, b2, 2 * a2)
    a = a1 * a2
    return BQForm(a, b, (b * b - disc) // (4 * a))


def reduce_definite(f: BQForm) -> BQForm:
    """Canonical reduced form in the class of a positive-definite form."""
    a, b, c = f.a, f.b, f.c
    while True:
        if c < a:
            a, b, c = c, -b, a
        if -a < b <= a:
            break
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
    if a == c and b < 0:
        b = -b
    return BQForm(a, b, c)


def indef_is_reduced(f: BQForm, sq: int) -> bool:
    """|sqrt(D) - 2|a|| < b < sqrt(D), as exact integer inequalities."""
    return 0 < f.b <= sq and 2 * abs(f.a) - f.b <= sq < 2 * abs(f.a) + f.b


def indef_rho(f: BQForm, sq: int) -> BQForm:
    """One reduction / cycle step (c, b', c') for indefinite forms."""
    c = f.c
    ac = abs(c)
    if ac > sq:
        r = (-f.b) % (2 * ac)
        if r > ac:
            r -= 2 * ac
    else:
        r = sq - (sq + f.b) % (2 * ac)
    return BQForm(c, r, (r * r - f.disc) // (4 * c))


def indef_reduce(f: BQForm, sq: int) -> BQForm:
    """Apply rho until the form is reduced."""
    steps = 0
    while not indef_is_reduced(f, sq):
        f = indef_rho(f, sq)
        steps += 1
        if steps > 10_000:
            raise ArithmeticError(f"reduction did not converge for {f}")
    return f


# ---------------------------------------------------------------------------
# class groups
# ---------------------------------------------------------------------------


def _reduced_definite_forms(disc: int) -> list[BQForm]:
    out = []
    for a in range(1, isqrt(-disc // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c or -b == a):
                continue
            form = BQForm(a, b, c)
            if form.is_primitive():
                out.append(form)
    return out


def _reduced_indefinite_forms(disc: int) -> list[BQForm]:
    sq = isqrt(disc)
    out = []
    for b in range(1, sq + 1):
        if (disc - b * b) % 4:
            continue
        n4 = (disc - b * b) // 4
        for a_abs in divisors_of(n4):
            # Reduced window: (sq - b)/2 < |a| <= (sq + b)/2.
            if 2 * a_abs - b > sq or 2 * a_abs + b <= sq:
                continue
            c_abs = n4 // a_abs
            for a in (a_abs, -a_abs):
                form = BQForm(a, b, -c_abs if a > 0 else c_abs)
                if form.is_primitive():
                    out.append(form)
    return out


class _FormGroup:
    """Finite abelian group of form classes with canonical representatives."""

    def __init__(self, disc: int):
        self.disc = disc
        if disc < 0:
            self.elements = sorted(_reduced_definite_forms(disc), key=BQForm.key)
            self._rep = None
            b0 = disc % 2
            self.identity = BQForm(1, b0, (b0 * b0 - disc) // 4)
        else:
            self.sq = isqrt(disc)
            reduced = _reduced_indefinite_forms(disc)
            rep: dict[tuple[int, int, int], BQForm] = {}
            for f in reduced:
                if f.key() in rep:
                    continue
                cycle = [f]
                g = indef_rho(f, self.sq)
                guard = 0
                while g != f:
                    cycle.append(g)
                    g = indef_rho(g, self.sq)
                    guard += 1
                    if guard > 100_000:
                        raise ArithmeticError("cycle did not close")
                best = min(cycle, key=BQForm.key)
                for h in cycle:
                    rep[h.key()] = best
            self._rep = rep
            self.elements = sorted(set(rep.values()), key=BQForm.key)
            b0 = self.sq if (self.sq - disc) % 2 == 0 else self.sq - 1
            self.identity = self.canon(BQForm(1, b0, (b0 * b0 - disc) // 4))

    def canon(self, f: BQForm) -> BQForm:
        if self.disc < 0:
            return reduce_definite(f)
        g = indef_reduce(f, self.sq)
        return self._rep[g.key()]

    def mul(self, f: BQForm, g: BQForm) -> BQForm:
        return self.canon(compose(f, g))

    def power(self, f: BQForm, e: int) -> BQForm:
        out = self.identity
        base = f
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    @property
    def order(self) -> int:
        return len(self.elements)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _q_rank_chain(group: _FormGroup, q: int) -> list[int]:
    """r_{q^a} for a = 1, 2, ... : log_q of successive image-size ratios.

    Stops once the image stabilizes (the q-part is exhausted; what remains
    is the prime-to-q part, on which q-th powering is a bijection).
    """
    current = set(group.elements)
    ranks = []
    while True:
        nxt = {group.power(f, q) for f in current}
        if len(nxt) == len(current):
            break
        ratio = len(current) // len(nxt)
        rank = 0
        while ratio > 1:
            ratio //= q
            rank += 1
        ranks.append(rank)
        current = nxt
    return ranks


def class_group(disc: int) -> ClassGroupReport:
    """Narrow class group of the fundamental discriminant via form classes."""
    if not is_fundamental(disc):
        raise NotFundamental(f"{disc} is not a fundamental discriminant")
    if abs(disc) > _DISC_CAP:
        raise TooLarge(f"|disc| = {abs(disc)} exceeds {_DISC_CAP}")
    group = _FormGroup(disc)
    h = group.order
    two_chain = _q_rank_chain(group, 2) if h % 2 == 0 else []
    r2 = two_chain[0] if len(two_chain) > 0 else 0
    r4 = two_chain[1] if len(two_chain) > 1 else 0
    r8 = two_chain[2] if len(two_chain) > 2 else 0
    # Invariant factors, assembled prime by prime from the rank chains.
    per_prime: dict[int, list[int]] = {}
    for q in _prime_factors(h):
        chain = _q_rank_chain(group, q)
        count = chain[0] if chain else 0
        exps = [sum(1 for r in chain if r > i) for i in range(count)]
        per_prime[q] = exps
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for q, exps in per_prime.items():
            if i < len(exps):
                d *= q ** exps[i]
        factors.append(d)
    return ClassGroupReport(
        disc=disc,
        order=h,
        invariant_factors=tuple(sorted(factors)),
        r2=r2,
        r4=r4,
        r8=r8,
    )


def h4_oracle(m: int) -> int:
    """4-rank of the narrow class group of Q(sqrt(m)), by composition."""
    return class_group(field_discriminant(m)).r4


def h8_oracle(m: int) -> int:
    """8-rank of the narrow class group of Q(sqrt(m)), by composition."""
    return class_group(field_discriminant(m)).r8


# ---------------------------------------------------------------------------
# descent oracle: local solvability over the representative grid
# ---------------------------------------------------------------------------


def _candidate_triples(sf: SquareFreeN) -> list[SelmerTriple]:
    if not sf.is_even:
        divs = divisors_of(sf.n)
        return [
            SelmerTriple(d1, d2, squarefree_part(d1 * d2))
            for d1 in divs
            for d2 in divs
        ]
    divs = divisors_of(sf.odd_part)
    out = []
    for d2 in divs:
        for d3_abs in divs:
            d3 = d3_abs if d3_abs % 4 == 1 else -d3_abs
            sign = 1 if d3 > 0 else -1
            out.append(SelmerTriple(sign * squarefree_part(d2 * d3_abs), d2, d3))
    return out


def selmer_oracle(sf: SquareFreeN) -> set[SelmerTriple]:
    """Pure 2-Selmer set from torsor local solvability at every v | 2n oo.

    Enumerates the representative grid of square-class triples and keeps
    those whose torsor admits a certified local point at the real place, at
    2 and at every odd prime dividing n.  Good places are skipped (smooth
    reduction plus the Hasse bound guarantees points there).
    """
    if sf.n > 500:
        raise TooLarge("descent oracle is desk-scale: n <= 500")
    places = [REAL_PLACE, Place(2)] + [Place(p) for p in sf.primes]
    out = set()
    for lam in _candidate_triples(sf):
        ts = cassels.torsor(lam, sf.n)
        if all(cassels.local_point_search(ts, v) is not None for v in places):
            out.add(lam)
    return out


# ---------------------------------------------------------------------------
# rational point search
# ---------------------------------------------------------------------------


def point_search(curve: CongruentCurve, height: int) -> list[tuple[Fraction, Fraction]]:
    """All nontrivial points with x = u/v^2, |u| <= height, v <= sqrt(height).

    Exact integer arithmetic throughout; 2-torsion is excluded and the
    representative with y > 0 is reported for each x.
    """
    if height > 10**6:
        raise TooLarge("height bound above 10^6")
    n2 = curve.n * curve.n
    found = []
    for v in range(1, isqrt(height) + 1):
        v4 = v * v * v * v
        n2v4 = n2 * v4
        for u in range(-height, height + 1):
            if u == 0 or gcd(u, v) != 1:
                continue
            rhs = u * (u * u - n2v4)
            if rhs <= 0:
                continue  # rhs = 0 is 2-torsion
            s = isqrt(rhs)
            if s * s == rhs:
                found.append((Fraction(u, v * v), Fraction(s, v * v * v)))
    found.sort(key=lambda pt: (pt[0], pt[1]))
    return found


def triangle_from_point(n: int, x: Fraction, y: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Rational right triangle with area n from a non-torsion point."""
    n_ = Fraction(n)
    legs = (abs((x * x - n_ * n_) / y), abs(2 * n_ * x / y))
    hyp = abs((x * x + n_ * n_) / y)
    return (legs[0], legs[1], hyp)
