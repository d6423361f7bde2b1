"""Exact integer linear algebra and torsion arithmetic.

Everything here works on Python ints; no floating point is involved at any
stage.  Matrices are small (the abelian surfaces live on rank-4 lattices),
so clarity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "TorsionVector",
    "SNFDecomposition",
    "smith_normal_form",
    "solve_linear_mod",
    "matrix_order",
    "block_diag",
]


class IntMatrix:
    """Immutable square matrix of arbitrary-precision integers."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have positive dimension")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self._rows = rows

    @classmethod
    def identity(cls, dim: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(dim)] for i in range(dim)])

    @classmethod
    def zero(cls, dim: int) -> "IntMatrix":
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]})"

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_dim(other)
        return IntMatrix(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_dim(other)
        return IntMatrix(
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([-a for a in r] for r in self._rows)

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix([k * a for a in r] for r in self._rows)

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_dim(other)
        cols = list(zip(*other._rows))
        return IntMatrix(
            [sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows
        )

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = IntMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.dim:
            raise ValueError(f"vector of length {len(vec)} for a {self.dim}x{self.dim} matrix")
        return tuple(sum(a * x for a, x in zip(r, vec)) for r in self._rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        a = [list(r) for r in self._rows]
        n = self.dim
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_diagonal(self) -> bool:
        return all(
            self._rows[i][j] == 0 for i in range(self.dim) for j in range(self.dim) if i != j
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self._rows[i][i] for i in range(self.dim))

    def _check_dim(self, other: "IntMatrix") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    n = sum(b.dim for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.dim):
            for j in range(b.dim):
                rows[off + i][off + j] = b[i, j]
        off += b.dim
    return IntMatrix(rows)


@dataclass(frozen=True)
class TorsionVector:
    """A point of (1/N)Z^k / Z^k, stored as residues mod N.

    ``coords[i] / modulus`` is the i-th lattice coordinate of the point.
    """

    modulus: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(
            self, "coords", tuple(int(c) % self.modulus for c in self.coords)
        )

    @classmethod
    def zero(cls, length: int, modulus: int = 1) -> "TorsionVector":
        return cls(modulus, (0,) * length)

    def __len__(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        """Exact additive order of the point."""
        g = self.modulus
        for c in self.coords:
            g = gcd(g, c)
        return self.modulus // g

    def lift(self, modulus: int) -> "TorsionVector":
        """Same point written over a multiple of the current modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        k = modulus // self.modulus
        return TorsionVector(modulus, tuple(k * c for c in self.coords))

    def reduced(self) -> "TorsionVector":
        """Same point over the smallest possible modulus (its order)."""
        m = self.order()
        k = self.modulus // m
        return TorsionVector(m, tuple(c // k for c in self.coords))

    def scale(self, k: int) -> "TorsionVector":
        return TorsionVector(self.modulus, tuple(k * c for c in self.coords))

    def transform(self, m: IntMatrix) -> "TorsionVector":
        return TorsionVector(self.modulus, m.apply(self.coords))

    def __add__(self, other: "TorsionVector") -> "TorsionVector":
        if len(self) != len(other):
            raise ValueError("length mismatch")
        n = lcm(self.modulus, other.modulus)
        a, b = self.lift(n), other.lift(n)
        return TorsionVector(n, tuple(x + y for x, y in zip(a.coords, b.coords)))

    def __neg__(self) -> "TorsionVector":
        return TorsionVector(self.modulus, tuple(-c for c in self.coords))

    def __sub__(self, other: "TorsionVector") -> "TorsionVector":
        return self + (-other)

    def same_point(self, other: "TorsionVector") -> bool:
        return (self - other).is_zero()

    def fractions(self) -> tuple[tuple[int, int], ...]:
        """Coordinates as reduced (numerator, denominator) pairs."""
        out = []
        for c in self.coords:
            g = gcd(c, self.modulus)
            out.append((c // g, self.modulus // g))
        return tuple(out)


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> tuple[int, ...]:
        return self.D.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d != 0)

    def largest_divisor(self) -> int:
        """Largest nonzero elementary divisor, 1 for the zero matrix."""
        nz = [d for d in self.divisors if d]
        return max(nz) if nz else 1


def _pick_pivot(a: list[list[int]], t: int) -> Optional[tuple[int, int]]:
    # smallest |entry| in a[t:, t:], ties broken row-major
    best = None
    n = len(a)
    for i in range(t, n):
        for j in range(t, n):
            v = a[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(m: IntMatrix) -> SNFDecomposition:
    """Smith normal form with transformation matrices.

    Returns ``(U, D, V)`` with ``U @ m @ V == D``, nonnegative diagonal and
    ``D[i,i] | D[i+1,i+1]``.  Pivots are the entry of smallest absolute
    value, ties broken in row-major order, so the output is deterministic.
    """
    n = m.dim
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(n):
        while True:
            piv = _pick_pivot(a, t)
            if piv is None:
                break
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for r in range(t + 1, n):
                if a[r][t]:
                    add_row(r, t, -(a[r][t] // p))
                    clean = clean and a[r][t] == 0
            for c in range(t + 1, n):
                if a[t][c]:
                    add_col(c, t, -(a[t][c] // p))
                    clean = clean and a[t][c] == 0
            if not clean:
                continue
            bad = next(
                (r for r in range(t + 1, n) for c in range(t + 1, n) if a[r][c] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if piv is None:
            break

    for i in range(n):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

    return SNFDecomposition(IntMatrix(u), IntMatrix(a), IntMatrix(v))


def _solve_scalar(d: int, c: int, n: int) -> Optional[int]:
    """Some y with d*y == c (mod n), or None."""
    g = gcd(d, n)
    if c % g:
        return None
    if g == n:
        return 0
    nn = n // g
    return (c // g) * pow(d // g, -1, nn) % nn


def solve_linear_mod(m: IntMatrix, t: TorsionVector) -> Optional[TorsionVector]:
    """Solve ``m @ x == t`` over Z/N, N = ``t.modulus``.

    Returns one solution or None when the system is inconsistent.
    """
    if len(t) != m.dim:
        raise ValueError(f"matrix has dimension {m.dim} but vector has length {len(t)}")
    n = t.modulus
    snf = smith_normal_form(m)
    c = snf.U.apply(t.coords)
    y = []
    for d, ci in zip(snf.divisors, c):
        yi = _solve_scalar(d, ci, n)
        if yi is None:
            return None
        y.append(yi)
    return TorsionVector(n, snf.V.apply(y))


def matrix_order(m: IntMatrix, cap: int) -> Optional[int]:
    """Smallest k <= cap with m**k == I, else None."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    ident = IntMatrix.identity(m.dim)
    p = m
    for k in range(1, cap + 1):
        if p == ident:
            return k
        p = p @ m
    return None
