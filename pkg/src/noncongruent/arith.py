"""Exact integer, modular and p-adic primitives.

Everything here is pure integer arithmetic: factorization, Legendre / Jacobi /
Hilbert symbols, square roots modulo prime powers (including 2-adic roots),
Jacobi symbols of quadratic-field expressions x + y*sqrt(r), and norm-group
membership for quadratic fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    IllDefined,
    NoRoot,
    NotCoprime,
    NotSquareFree,
    ZeroOrNegative,
)

# ---------------------------------------------------------------------------
# primality and factorization
# ---------------------------------------------------------------------------

_TRIAL_BOUND = 10**6

# Witnesses making Miller-Rabin deterministic below 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for all inputs we ever factor)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent-cycle rho; returns a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def factorize(n: int) -> list[tuple[int, int]]:
    """Sorted (prime, exponent) pairs; trial division then rho for the rest."""
    if n < 1:
        raise ZeroOrNegative(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    while d * d <= n and d < _TRIAL_BOUND:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        g = _pollard_rho(m)
        stack.extend((g, m // g))
    return sorted(out.items())


def squarefree_part(n: int) -> int:
    """Square-free part of a nonzero integer, keeping the sign."""
    if n == 0:
        raise ZeroOrNegative("0 has no square-free part")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(abs(n)):
        if e % 2 == 1:
            out *= p
    return out


def divisors_of(n: int) -> list[int]:
    """Sorted positive divisors of a positive integer."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareFreeN:
    """A validated positive square-free integer with its odd prime data.

    ``primes`` is the strictly increasing tuple of odd prime factors,
    ``odd_part`` is n with the factor 2 removed, and the eligibility flags
    record whether every odd prime factor is +-1 (resp. +1) modulo 8.
    """

    n: int
    odd_part: int
    primes: tuple[int, ...]
    is_even: bool
    eligibility: bool
    strict_eligibility: bool

    @property
    def k(self) -> int:
        return len(self.primes)


def factor_squarefree(n: int) -> SquareFreeN:
    """Validate and factor a positive square-free integer."""
    if n < 1:
        raise ZeroOrNegative(f"n must be >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        raise NotSquareFree(f"{n} is divisible by a square")
    primes = tuple(p for p, _ in fac if p != 2)
    is_even = n % 2 == 0
    return SquareFreeN(
        n=n,
        odd_part=n // 2 if is_even else n,
        primes=primes,
        is_even=is_even,
        eligibility=all(p % 8 in (1, 7) for p in primes),
        strict_eligibility=all(p % 8 == 1 for p in primes),
    )


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime p >= 2 or the real place (p is None)."""

    p: int | None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or not is_prime(self.p)):
            raise ValueError(f"finite place must carry a prime, got {self.p}")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "oo" if self.p is None else str(self.p)


REAL_PLACE = Place(None)


@dataclass(frozen=True)
class QuadExpr:
    """x + y*sqrt(r) with radicand r in {2, -1} and nonzero norm x^2 - r y^2."""

    x: int
    y: int
    r: int

    def __post_init__(self):
        if self.r not in (2, -1):
            raise ValueError(f"radicand must be 2 or -1, got {self.r}")
        if self.norm == 0:
            raise ValueError("norm x^2 - r*y^2 must be nonzero")

    @property
    def norm(self) -> int:
        return self.x * self.x - self.r * self.y * self.y

    def __str__(self) -> str:
        rad = "sqrt(2)" if self.r == 2 else "sqrt(-1)"
        return f"{self.x}+{self.y}*{rad}"


# ---------------------------------------------------------------------------
# Legendre / Jacobi symbols
# ---------------------------------------------------------------------------


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, p not dividing a."""
    a %= p
    if a == 0:
        raise NotCoprime(f"{p} divides the argument")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, b: int) -> int:
    """Jacobi symbol (a/b) for positive odd b with gcd(a, b) = 1."""
    if b <= 0 or b % 2 == 0:
        raise ValueError(f"lower argument must be positive odd, got {b}")
    if gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) > 1")
    a %= b
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result


def additive_jacobi(a: int, b: int) -> int:
    """Image of the Jacobi symbol in F2 (0 for +1, 1 for -1)."""
    return 0 if jacobi(a, b) == 1 else 1


# ---------------------------------------------------------------------------
# Hilbert symbols
# ---------------------------------------------------------------------------


def _eps(u: int) -> int:
    """(u - 1)/2 mod 2 for an odd integer (class of u mod 4)."""
    return 0 if u % 4 == 1 else 1


def _omega(u: int) -> int:
    """(u^2 - 1)/8 mod 2 for an odd integer (class of u mod 8)."""
    return 0 if u % 8 in (1, 7) else 1


def _as_square_class(a) -> int:
    """Reduce a nonzero rational to an integer in the same square class."""
    if isinstance(a, Fraction):
        return a.numerator * a.denominator
    return int(a)


def hilbert(a, b, v: Place) -> int:
    """Hilbert symbol (a, b)_v for nonzero rationals a, b."""
    a = _as_square_class(a)
    b = _as_square_class(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol requires nonzero arguments")
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha = 0
    while a % p == 0:
        a //= p
        alpha += 1
    beta = 0
    while b % p == 0:
        b //= p
        beta += 1
    if p == 2:
        exponent = _eps(a) * _eps(b) + alpha * _omega(b) + beta * _omega(a)
        return 1 if exponent % 2 == 0 else -1
    result = 1
    if alpha * beta % 2 == 1 and p % 4 == 3:
        result = -result
    if beta % 2 == 1:
        result *= legendre(a, p)
    if alpha % 2 == 1:
        result *= legendre(b, p)
    return result


def additive_hilbert(a, b, v: Place) -> int:
    """Image of the Hilbert symbol in F2."""
    return 0 if hilbert(a, b, v) == 1 else 1


def hilbert2_from_parts(val: int, unit: int, b: int) -> int:
    """(2^val * u, b)_2 from the 2-adic valuation and unit of the left side.

    b must be odd; unit only matters mod 8.
    """
    exponent = _eps(unit) * _eps(b) + val * _omega(b)
    return 1 if exponent % 2 == 0 else -1


# ---------------------------------------------------------------------------
# square roots modulo p^e
# ---------------------------------------------------------------------------


def _tonelli_shanks(a: int, p: int) -> int:
    """A square root of a mod odd prime p; assumes (a/p) = 1."""
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, sq = 0, t
        while sq != 1:
            sq = sq * sq % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def sqrt_mod(a: int, p: int, e: int = 1) -> int:
    """Square root of a modulo p^e.

    Odd p: requires p not dividing a; Tonelli-Shanks at e = 1 followed by
    Hensel lifting; the smaller of the two roots is returned.

    p = 2: requires a = 1 mod 8 and e >= 3; the root is only determined mod
    2^(e-1) up to sign, and the representative in [1, 2^(e-1)] with the
    smaller residue class is returned.

    Raises NoRoot when a is not a square at the requested modulus.
    """
    if e < 1:
        raise ValueError("precision exponent must be >= 1")
    if p == 2:
        if e < 3:
            raise ValueError("2-adic roots need precision e >= 3")
        if a % 2 == 0:
            raise ValueError("2-adic argument must be odd")
        if a % 8 != 1:
            raise NoRoot(f"{a} is not a square in Z_2")
        mod = 1 << e
        s = 1
        for j in range(3, e):
            if (s * s - a) % (1 << (j + 1)):
                s += 1 << (j - 1)
        s %= mod >> 1
        return min(s, (mod >> 1) - s)
    if a % p == 0:
        raise ValueError(f"argument must be a unit mod {p}")
    if legendre(a, p) != 1:
        raise NoRoot(f"{a} is not a quadratic residue mod {p}")
    s = _tonelli_shanks(a % p, p)
    mod = p
    while mod < p**e:
        mod *= p
        # Newton step doubles the precision at each iteration.
        inv = pow(2 * s, -1, mod)
        s = (s - (s * s - a) * inv) % mod
    mod = p**e
    s %= mod
    return min(s, mod - s)


# ---------------------------------------------------------------------------
# quadratic-field Jacobi symbols and norm membership
# ---------------------------------------------------------------------------


def quad_jacobi(q: QuadExpr, m: int) -> int:
    """Jacobi-style symbol of x + y*sqrt(r) over the odd modulus m > 0.

    For every prime p | m both r and the norm x^2 - r y^2 must be quadratic
    residues mod p; the per-prime Legendre value is then independent of which
    square root of r is used, and the result is the product over p | m with
    multiplicity.
    """
    if m <= 0 or m % 2 == 0:
        raise ValueError(f"modulus must be positive odd, got {m}")
    result = 1
    for p, mult in factorize(m):
        if legendre(q.r % p, p) != 1:
            raise IllDefined(f"radicand {q.r} is a non-residue mod {p}")
        if legendre(q.norm % p, p) != 1:
            raise IllDefined(f"norm {q.norm} is a non-residue mod {p}")
        s = sqrt_mod(q.r % p, p, 1)
        result *= legendre((q.x + q.y * s) % p, p) ** mult
    return result


def is_norm(e: int, m: int) -> bool:
    """True iff e is a norm from Q(sqrt(m)), i.e. (e, m)_v = +1 everywhere.

    Only places dividing 2, infinity, e and m can carry a nontrivial symbol,
    so the check is finite.
    """
    if e == 0 or m == 0:
        raise ValueError("arguments must be nonzero")
    places = [REAL_PLACE, Place(2)]
    odd_primes = set()
    for x in (e, m):
        for p, _ in factorize(abs(x)):
            if p != 2:
                odd_primes.add(p)
    places.extend(Place(p) for p in sorted(odd_primes))
    return all(hilbert(e, m, v) == 1 for v in places)
