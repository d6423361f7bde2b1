"""Canonical index of cyclic quotients of symplectic varieties.

Let Y be a 2n-dimensional symplectic variety and phi an automorphism of
order d acting on the symplectic form by a primitive d-th root of unity.
The canonical divisor of X = Y/<phi> is either trivial (d | n) or torsion of
order r, the least r with r | d and d | r*n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Optional

__all__ = [
    "CoverKind",
    "QuotientScenario",
    "IndexResult",
    "NotPurelyNonsymplectic",
    "ClassGroupTorsionReport",
    "CYTypeResult",
    "canonical_index",
    "index_table",
    "is_purely_nonsymplectic",
    "require_purely_nonsymplectic",
    "etale_chi_constraint",
    "symplectic_etale_obstruction",
    "cy_type_constraints",
    "class_group_torsion",
    "divisors",
]


class CoverKind(enum.Enum):
    ETALE = "etale"
    QUASI_ETALE = "quasi-etale"


class NotPurelyNonsymplectic(ValueError):
    """The generator has a nontrivial symplectic power."""

    def __init__(self, d: int, k: int):
        g = gcd(k, d)
        self.d, self.k, self.symplectic_power = d, k, d // g
        if k % d == 0:
            msg = f"multiplier exponent k={k} is 0 mod d={d}: the generator is symplectic"
        else:
            msg = (
                f"multiplier exponent k={k} is not prime to d={d} (gcd {g}); "
                f"phi^{d // g} acts symplectically, so the quotient factors through "
                f"Y/<phi^{d // g}>, which need not be of the same type"
            )
        super().__init__(msg)


@dataclass(frozen=True)
class IndexResult:
    """K-trivial quotient, or log-Enriques with canonical index ``index``."""

    index: Optional[int] = None

    @property
    def k_trivial(self) -> bool:
        return self.index is None

    @classmethod
    def trivial(cls) -> "IndexResult":
        return cls(None)

    def label(self) -> str:
        return "K-trivial" if self.index is None else f"log-Enriques(index {self.index})"

    def to_dict(self) -> dict:
        if self.index is None:
            return {"variant": "KTrivial"}
        return {"variant": "LogEnriques", "index": self.index}


def divisors(d: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= d:
        if d % i == 0:
            small.append(i)
            if i * i != d:
                large.append(d // i)
        i += 1
    return small + large[::-1]


def _check_nd(n: int, d: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")


def canonical_index(n: int, d: int) -> IndexResult:
    """Index of K_X for X = Y/<phi>, dim Y = 2n, phi purely nonsymplectic of order d.

    >>> canonical_index(2, 3)
    IndexResult(index=3)
    >>> canonical_index(6, 6).k_trivial
    True
    """
    _check_nd(n, d)
    if n % d == 0:
        return IndexResult.trivial()
    for r in divisors(d):
        if (r * n) % d == 0:
            return IndexResult(r)
    raise AssertionError("unreachable: r = d always works")


def index_table(d: int, n_lo: int, n_hi: int) -> list[tuple[int, IndexResult]]:
    """Rows ``(n, canonical_index(n, d))`` for n in [n_lo, n_hi].

    Rows in the same residue class mod d are checked to agree.
    """
    if n_lo > n_hi:
        raise ValueError(f"empty range {n_lo}..{n_hi}")
    rows = [(n, canonical_index(n, d)) for n in range(n_lo, n_hi + 1)]
    seen: dict[int, IndexResult] = {}
    for n, res in rows:
        prev = seen.setdefault(n % d, res)
        if prev != res:
            raise AssertionError(f"index table not periodic mod {d} at n={n}")
    return rows


def is_purely_nonsymplectic(d: int, k: int) -> bool:
    """phi* sigma = xi_d^k sigma with xi_d^k primitive."""
    return gcd(k % d, d) == 1


def require_purely_nonsymplectic(d: int, k: int) -> None:
    if not is_purely_nonsymplectic(d, k):
        raise NotPurelyNonsymplectic(d, k)


@dataclass(frozen=True)
class QuotientScenario:
    """Cyclic quotient of a 2n-dimensional symplectic variety."""

    n: int
    d: int
    k: int = 1
    cover_kind: CoverKind = CoverKind.QUASI_ETALE

    def __post_init__(self):
        _check_nd(self.n, self.d)
        if not 0 <= self.k < self.d:
            raise ValueError(f"k must lie in [0, {self.d}), got {self.k}")

    @property
    def purely_nonsymplectic(self) -> bool:
        return is_purely_nonsymplectic(self.d, self.k)

    @property
    def symplectic(self) -> bool:
        return self.k == 0

    def classify(self) -> IndexResult:
        """Canonical index; raises for a symplectic or non-primitive generator.

        An étale cover additionally has to satisfy the Euler characteristic
        constraint d | n+1.
        """
        require_purely_nonsymplectic(self.d, self.k)
        if self.cover_kind is CoverKind.ETALE and not etale_chi_constraint(self.n, self.d):
            raise ValueError(
                f"no etale cyclic quotient of order {self.d} exists: "
                f"{self.d} does not divide n+1 = {self.n + 1}"
            )
        return canonical_index(self.n, self.d)


def etale_chi_constraint(n: int, d: int) -> bool:
    """An étale order-d quotient of a 2n-dim IHS manifold needs d | n+1."""
    _check_nd(n, d)
    return (n + 1) % d == 0


def symplectic_etale_obstruction(n: int, d: int) -> tuple[int, int]:
    """The two incompatible values of chi(O_Y) for a symplectic étale quotient.

    Invariance of the forms gives chi(O_Y) = chi(O_X) = n+1, while the étale
    cover gives chi(O_Y) = d * chi(O_X) = d(n+1).
    """
    _check_nd(n, d)
    pair = (n + 1, d * (n + 1))
    assert pair[0] != pair[1]
    return pair


@dataclass(frozen=True)
class CYTypeResult:
    possible: bool
    cover_degree: Optional[int] = None
    index: Optional[int] = None
    reason: str = ""


def cy_type_constraints(dim: int) -> CYTypeResult:
    """Degree and index forced on an Enriques manifold of CY type of dimension ``dim``."""
    if dim < 2:
        raise ValueError("dim must be >= 2")
    if dim % 2:
        return CYTypeResult(False, reason="chi(Y)=0 contradicts chi(X)=1")
    # chi(O_Y) = 2 = d * chi(O_X) with chi(O_X) = 1
    chi_y, chi_x = 2, 1
    d = chi_y // chi_x
    return CYTypeResult(True, cover_degree=d, index=d)


@dataclass(frozen=True)
class ClassGroupTorsionReport:
    cover_group_order: int
    cl_Y_torsion_free: bool
    torsion_order: int
    torsion_exact: bool
    canonical_cover_identified: bool

    def describe(self) -> str:
        rel = "=" if self.torsion_exact else "contains"
        return f"Tors Cl(X) {rel} Z/{self.torsion_order}"


def class_group_torsion(d: int, cl_Y_torsion_free: bool) -> ClassGroupTorsionReport:
    """Torsion of Cl(X) from 0 -> mu_d -> Cl(X) -> Cl(Y)^{mu_d} -> 0."""
    if d < 2:
        raise ValueError("d must be >= 2")
    return ClassGroupTorsionReport(
        cover_group_order=d,
        cl_Y_torsion_free=cl_Y_torsion_free,
        torsion_order=d,
        torsion_exact=cl_Y_torsion_free,
        canonical_cover_identified=cl_Y_torsion_free,
    )

