"""Dense linear algebra over F2 with int bitsets as rows.

Row i of a matrix is a Python int whose bit j is the entry in column j, so
row addition is a single XOR regardless of width.  Elimination pivots on the
first nonzero column with the lowest available row, which makes ranks,
kernel bases and particular solutions reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch


@dataclass(frozen=True)
class F2Vector:
    """Fixed-length bit vector; addition is XOR, dot is parity of AND."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits exceed the declared length")

    @classmethod
    def from_bits(cls, entries: Iterable[int]) -> "F2Vector":
        bits = 0
        n = 0
        for e in entries:
            if e & 1:
                bits |= 1 << n
            n += 1
        return cls(bits, n)

    @classmethod
    def zero(cls, n: int) -> "F2Vector":
        return cls(0, n)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.n != other.n:
            raise DimensionMismatch(f"lengths {self.n} != {other.n}")
        return F2Vector(self.bits ^ other.bits, self.n)

    def dot(self, other: "F2Vector") -> int:
        if self.n != other.n:
            raise DimensionMismatch(f"lengths {self.n} != {other.n}")
        return (self.bits & other.bits).bit_count() & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.to_tuple()) + ")"


@dataclass(frozen=True)
class F2Matrix:
    """Immutable rectangular matrix over F2."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if any(r < 0 or r >> self.ncols for r in self.rows):
            raise ValueError("row bits exceed the declared width")

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence[int]]) -> "F2Matrix":
        ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            bits = 0
            for j, e in enumerate(row):
                if e & 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(tuple(rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "F2Matrix":
        n = len(entries)
        return cls(tuple((e & 1) << i for i, e in enumerate(entries)), n)

    @classmethod
    def block(cls, grid: Sequence[Sequence["F2Matrix"]]) -> "F2Matrix":
        """Assemble a block matrix from a 2D grid of compatible blocks."""
        rows: list[int] = []
        ncols = sum(b.ncols for b in grid[0])
        for band in grid:
            if sum(b.ncols for b in band) != ncols:
                raise DimensionMismatch("block widths disagree")
            height = band[0].nrows
            if any(b.nrows != height for b in band):
                raise DimensionMismatch("block heights disagree")
            for i in range(height):
                bits = 0
                shift = 0
                for b in band:
                    bits |= b.rows[i] << shift
                    shift += b.ncols
                rows.append(bits)
        return cls(tuple(rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.rows[i], self.ncols)

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch("shape mismatch")
        return F2Matrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)

    def transpose(self) -> "F2Matrix":
        cols = []
        for j in range(self.ncols):
            bits = 0
            for i, r in enumerate(self.rows):
                bits |= ((r >> j) & 1) << i
            cols.append(bits)
        return F2Matrix(tuple(cols), self.nrows)

    def mul_vec(self, v: F2Vector) -> F2Vector:
        if v.n != self.ncols:
            raise DimensionMismatch(f"vector length {v.n} != ncols {self.ncols}")
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= ((r & v.bits).bit_count() & 1) << i
        return F2Vector(bits, self.nrows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __str__(self) -> str:
        return "\n".join("".join(str(b) for b in row) for row in self.to_lists())


def _echelon(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """In-place reduced echelon form; returns (rows, pivot column list)."""
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if (rows[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and (rows[r] >> col) & 1:
                rows[r] ^= rows[rank]
        pivots.append(col)
        rank += 1
    return rows, pivots


def rank(m: F2Matrix) -> int:
    """Rank over F2 by Gaussian elimination."""
    _, pivots = _echelon(list(m.rows), m.ncols)
    return len(pivots)


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Basis of the right null space, ordered by increasing free column."""
    rows, pivots = _echelon(list(m.rows), m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for r, pc in enumerate(pivots):
            if (rows[r] >> free) & 1:
                bits |= 1 << pc
        basis.append(F2Vector(bits, m.ncols))
    return basis


def kernel(m: F2Matrix) -> list[F2Vector]:
    """All kernel vectors (size 2^dim), zero vector first, reproducible order."""
    basis = kernel_basis(m)
    out = [F2Vector.zero(m.ncols)]
    for b in basis:
        out.extend(v + b for v in list(out))
    return out


def solve(m: F2Matrix, b: F2Vector) -> F2Vector | None:
    """A particular solution of M x = b, or None when b is not in the image.

    The full solution set is the returned vector plus the kernel span; free
    variables are set to zero for reproducibility.
    """
    if b.n != m.nrows:
        raise DimensionMismatch(f"rhs length {b.n} != nrows {m.nrows}")
    aug = [r | (((b.bits >> i) & 1) << m.ncols) for i, r in enumerate(m.rows)]
    rows, pivots = _echelon(aug, m.ncols + 1)
    if m.ncols in pivots:
        return None
    bits = 0
    for r, pc in enumerate(pivots):
        if (rows[r] >> m.ncols) & 1:
            bits |= 1 << pc
    return F2Vector(bits, m.ncols)


def solution_set(m: F2Matrix, b: F2Vector) -> list[F2Vector]:
    """All solutions of M x = b (empty list when inconsistent)."""
    part = solve(m, b)
    if part is None:
        return []
    return [part + v for v in kernel(m)]
