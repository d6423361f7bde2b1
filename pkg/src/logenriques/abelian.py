"""Affine automorphisms of products of CM elliptic curves.

A = E1 x E2 is modelled as R^4 / Z^4 in lattice coordinates: each curve is
C / (Z + tau Z) with basis (1, tau), tau in {generic, i, omega}.  A unit acts
on a curve through its integer 2x2 matrix in that basis, so an automorphism
f(x, y) = (mult1 * x + u, mult2 * y + v) is a pair (4x4 integer matrix,
torsion translation) and every question below is integer arithmetic mod N.

Units are stored as exponents of a fixed generator of the unit group:
-1 for a generic curve, i for the Gaussian curve and zeta_6 = 1 + omega
(= -omega^2) for the Eisenstein curve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Optional

import numpy as np

from .arith import (
    IntMatrix,
    TorsionVector,
    block_diag,
    smith_normal_form,
    solve_linear_mod,
)
from .index import IndexResult, NotPurelyNonsymplectic, canonical_index

__all__ = [
    "CMType",
    "W_I",
    "W_OMEGA",
    "SurfaceAffineAuto",
    "KummerScenario",
    "FixedPointReport",
    "Multiplier",
    "FreenessResult",
    "Template",
    "FixedConfiguration",
    "OracleResult",
    "KummerReport",
    "UnsupportedConstruction",
    "BudgetExceeded",
    "parse_unit",
    "auto_order",
    "fixed_points_exist_on_surface",
    "has_unit_eigenvalue",
    "preserves_kummer_fiber",
    "symplectic_multiplier",
    "freeness_predicate",
    "brute_force_fixed_configurations",
    "kummer_quotient_classification",
    "DEFAULT_BUDGET",
]

W_I = IntMatrix([[0, -1], [1, 0]])
W_OMEGA = IntMatrix([[0, -1], [1, -1]])
_I2 = IntMatrix.identity(2)

DEFAULT_BUDGET = 5 * 10**7


class UnsupportedConstruction(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, size: int, budget: int):
        self.size, self.budget = size, budget
        super().__init__(f"enumeration size {size} exceeds budget {budget}")


class CMType(enum.Enum):
    GENERIC = "generic"
    GAUSS = "gauss"
    EISENSTEIN = "eisenstein"

    @property
    def unit_order(self) -> int:
        """Order of the (cyclic) unit group."""
        return {"generic": 2, "gauss": 4, "eisenstein": 6}[self.value]

    @property
    def generator(self) -> IntMatrix:
        if self is CMType.GENERIC:
            return -_I2
        if self is CMType.GAUSS:
            return W_I
        return _I2 + W_OMEGA  # 1 + omega = -omega^2, a primitive 6th root

    def multiplier_matrix(self, exp: int) -> IntMatrix:
        return self.generator ** (exp % self.unit_order)

    def angle(self, exp: int) -> Fraction:
        """The unit as an element of Q/Z (unit = exp(2 pi i * angle))."""
        a = Fraction(exp, self.unit_order)
        return a - (a.numerator // a.denominator)

    @classmethod
    def parse(cls, text: str) -> "CMType":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown curve type {text!r} (expected generic, gauss or eisenstein)"
            ) from None


_UNIT_ANGLES = {
    "1": Fraction(0), "+1": Fraction(0),
    "-1": Fraction(1, 2),
    "i": Fraction(1, 4), "-i": Fraction(3, 4),
    "w": Fraction(1, 3), "w2": Fraction(2, 3),
    "-w": Fraction(5, 6), "-w2": Fraction(1, 6),
}


def parse_unit(curve: CMType, text: str) -> int:
    """Exponent (w.r.t. the curve's generator) of a unit written as 1, -1, i, w, -w^2, ..."""
    key = text.strip().lower().replace(" ", "").replace("omega", "w").replace("^", "")
    if key not in _UNIT_ANGLES:
        raise ValueError(f"unknown unit {text!r}")
    exp = _UNIT_ANGLES[key] * curve.unit_order
    if exp.denominator != 1:
        raise ValueError(f"unit {text!r} does not act on a {curve.value} curve")
    return int(exp)


def _translation(u, v) -> TorsionVector:
    """Pack two points given as pairs of rationals into one TorsionVector."""
    coords = [Fraction(c) for c in (*u, *v)]
    n = lcm(*(c.denominator for c in coords))
    return TorsionVector(n, tuple(int(c * n) for c in coords))


@dataclass(frozen=True)
class SurfaceAffineAuto:
    """f(x, y) = (mult1 * x + u, mult2 * y + v) on E1 x E2."""

    curve1: CMType
    curve2: CMType
    mult1: int
    mult2: int
    translation: TorsionVector = field(default_factory=lambda: TorsionVector.zero(4))

    def __post_init__(self):
        if len(self.translation) != 4:
            raise ValueError("translation must have 4 coordinates")
        object.__setattr__(self, "mult1", self.mult1 % self.curve1.unit_order)
        object.__setattr__(self, "mult2", self.mult2 % self.curve2.unit_order)

    @classmethod
    def make(cls, curve1, curve2, mult1: str, mult2: str, u=(0, 0), v=(0, 0)) -> "SurfaceAffineAuto":
        """Build from names, e.g. ``make("generic", "eisenstein", "1", "w", u=(Fraction(1, 3), 0))``."""
        c1 = curve1 if isinstance(curve1, CMType) else CMType.parse(curve1)
        c2 = curve2 if isinstance(curve2, CMType) else CMType.parse(curve2)
        return cls(c1, c2, parse_unit(c1, mult1), parse_unit(c2, mult2), _translation(u, v))

    @property
    def linear(self) -> IntMatrix:
        return block_diag(
            self.curve1.multiplier_matrix(self.mult1),
            self.curve2.multiplier_matrix(self.mult2),
        )

    @property
    def u(self) -> TorsionVector:
        return TorsionVector(self.translation.modulus, self.translation.coords[:2])

    @property
    def v(self) -> TorsionVector:
        return TorsionVector(self.translation.modulus, self.translation.coords[2:])

    @property
    def angles(self) -> tuple[Fraction, Fraction]:
        return self.curve1.angle(self.mult1), self.curve2.angle(self.mult2)

    def after(self, other: "SurfaceAffineAuto") -> "SurfaceAffineAuto":
        """self o other: x -> M_s (M_o x + t_o) + t_s."""
        if (self.curve1, self.curve2) != (other.curve1, other.curve2):
            raise ValueError("automorphisms live on different surfaces")
        n = lcm(self.translation.modulus, other.translation.modulus)
        t = other.translation.lift(n).transform(self.linear) + self.translation.lift(n)
        return SurfaceAffineAuto(
            self.curve1, self.curve2, self.mult1 + other.mult1, self.mult2 + other.mult2, t
        )

    def power(self, k: int) -> "SurfaceAffineAuto":
        if k < 0:
            raise ValueError("negative powers are not supported")
        g = SurfaceAffineAuto(self.curve1, self.curve2, 0, 0)
        for _ in range(k):
            g = self.after(g)
        return g

    def is_identity(self) -> bool:
        return self.mult1 == 0 and self.mult2 == 0 and self.translation.is_zero()

    def __call__(self, point: TorsionVector) -> TorsionVector:
        n = lcm(point.modulus, self.translation.modulus)
        return point.lift(n).transform(self.linear) + self.translation.lift(n)

    def describe(self) -> str:
        names = {Fraction(0): "", Fraction(1, 2): "-", Fraction(1, 4): "i",
                 Fraction(3, 4): "-i", Fraction(1, 3): "w", Fraction(2, 3): "w^2",
                 Fraction(5, 6): "-w", Fraction(1, 6): "-w^2"}
        a1, a2 = self.angles

        def term(a, var, pt):
            fr = ",".join(f"{p}/{q}" if p else "0" for p, q in pt.fractions())
            return f"{names[a]}{var}+({fr})"

        return f"({term(a1, 'x', self.u)}, {term(a2, 'y', self.v)})"


def auto_order(f: SurfaceAffineAuto, cap: Optional[int] = None) -> Optional[int]:
    """Smallest k <= cap with f^k = id, or None.

    The linear part has order dividing 12, after which only a translation of
    order dividing N remains, so 12*N is always a sufficient default cap.
    """
    if cap is None:
        cap = 12 * f.translation.modulus
    g = f
    for k in range(1, cap + 1):
        if g.is_identity():
            return k
        g = f.after(g)
    return None


@dataclass(frozen=True)
class FixedPointReport:
    exists: bool
    witness: Optional[TorsionVector]
    elementary_divisors: tuple[int, ...]
    level: int  # torsion level N*c at which witnesses are searched


def fixed_points_exist_on_surface(f: SurfaceAffineAuto) -> FixedPointReport:
    """Decide whether f has a fixed point on the real torus R^4/Z^4.

    x is fixed iff (L - I) x = -b mod Z^4.  With U (L - I) V = D this reads
    D y = -U b mod Z^4 for y = V^-1 x: rows with d_i != 0 are always solvable
    over R, rows with d_i = 0 need (U b)_i to be integral.  Whenever a fixed
    point exists there is one with denominator N * max(d_i).
    """
    a = f.linear - IntMatrix.identity(4)
    snf = smith_normal_form(a)
    b = f.translation
    n = b.modulus
    ub = snf.U.apply(b.coords)
    exists = all(ci % n == 0 for d, ci in zip(snf.divisors, ub) if d == 0)
    c = snf.largest_divisor()
    level = n * c
    witness = solve_linear_mod(a, TorsionVector(level, tuple(-c * x for x in b.coords)))
    # the two routes must agree; a mismatch would be a bug in the SNF
    assert (witness is not None) == exists, "SNF decision and modular solve disagree"
    return FixedPointReport(exists, witness, snf.divisors, level)


def has_unit_eigenvalue(f: SurfaceAffineAuto) -> bool:
    return (f.linear - IntMatrix.identity(4)).det() == 0


def preserves_kummer_fiber(f: SurfaceAffineAuto, n: int) -> bool:
    """Hilb^{n+1}(f) maps Kum_n to itself iff (n+1) * translation = 0."""
    return f.translation.scale(n + 1).is_zero()


@dataclass(frozen=True)
class Multiplier:
    """f^* sigma = exp(2 pi i k / d) sigma, k/d in lowest terms."""

    k: int
    d: int

    def relative_to(self, order: int) -> int:
        """Exponent with respect to a primitive root of the given order."""
        if order % self.d:
            raise ValueError(f"multiplier order {self.d} does not divide {order}")
        return self.k * (order // self.d)


def symplectic_multiplier(f: SurfaceAffineAuto) -> Multiplier:
    """Action on dx ^ dy: the product of the two units."""
    a1, a2 = f.angles
    total = (a1 + a2) % 1
    return Multiplier(total.numerator, total.denominator)


class Template(enum.Enum):
    INVOLUTION = "involution"  # (-x+u, y+v)
    ORDER3 = "order3"  # (x+u, w y+v) on E x E_w
    ORDER4 = "order4"  # (x+u, i y+v) on E x E_i


@dataclass(frozen=True)
class FreenessResult:
    applicable_case: Template
    free: bool
    m: Optional[int] = None
    detail: str = ""


def _match_template(f: SurfaceAffineAuto) -> Optional[Template]:
    a1, a2 = f.angles
    if (a1, a2) == (Fraction(1, 2), 0):
        return Template.INVOLUTION
    if a1 == 0 and a2 == Fraction(1, 3) and f.curve2 is CMType.EISENSTEIN:
        return Template.ORDER3
    if a1 == 0 and a2 == Fraction(1, 4) and f.curve2 is CMType.GAUSS:
        return Template.ORDER4
    return None


def freeness_predicate(f: SurfaceAffineAuto, n: int) -> FreenessResult:
    """Sufficient condition for Kum_n(f) to act freely, for the three templates.

    * involution (-x+u, y+v), n odd, 2v = 0: free if ((n+1)/2) u != 0
    * (x+u, w y+v), 3u = 0, n+1 = 3m: free if m (2+w) v != 0
    * (x+u, i y+v), 4u = 0, n+1 = 4m: free if 2m u != 0 or 2m (1+i) v != 0
    """
    tpl = _match_template(f)
    if tpl is None:
        raise UnsupportedConstruction(f"unsupported construction {f.describe()}")
    if not preserves_kummer_fiber(f, n):
        raise UnsupportedConstruction(f"u, v are not (n+1)-torsion for n={n}")
    u, v = f.u, f.v
    if tpl is Template.INVOLUTION:
        if n % 2 == 0 or not v.scale(2).is_zero():
            raise UnsupportedConstruction("involution template needs n odd and 2v = 0")
        h = (n + 1) // 2
        return FreenessResult(tpl, not u.scale(h).is_zero(), detail=f"{h}*u != 0")
    if tpl is Template.ORDER3:
        if (n + 1) % 3 or not u.scale(3).is_zero():
            raise UnsupportedConstruction("order-3 template needs 3 | n+1 and 3u = 0")
        m = (n + 1) // 3
        w = v.transform(2 * _I2 + W_OMEGA).scale(m)
        return FreenessResult(tpl, not w.is_zero(), m, f"{m}*(2+w)*v != 0")
    if (n + 1) % 4 or not u.scale(4).is_zero():
        raise UnsupportedConstruction("order-4 template needs 4 | n+1 and 4u = 0")
    m = (n + 1) // 4
    free = not u.scale(2 * m).is_zero() or not v.transform(_I2 + W_I).scale(2 * m).is_zero()
    return FreenessResult(tpl, free, m, f"{2 * m}*u != 0 or {2 * m}*(1+i)*v != 0")


@dataclass(frozen=True)
class FixedConfiguration:
    points: tuple[TorsionVector, ...]

    @property
    def reduced(self) -> bool:
        """False when a point repeats: such a configuration is not decided."""
        return len({p.coords for p in self.points}) == len(self.points)


@dataclass(frozen=True)
class OracleResult:
    level: int
    enumerated: int
    configurations: tuple[FixedConfiguration, ...]

    @property
    def reduced(self) -> tuple[FixedConfiguration, ...]:
        return tuple(c for c in self.configurations if c.reduced)

    @property
    def nonreduced(self) -> tuple[FixedConfiguration, ...]:
        return tuple(c for c in self.configurations if not c.reduced)


def _point_tables(f: SurfaceAffineAuto, level: int):
    pts = np.array(np.meshgrid(*[np.arange(level)] * 4, indexing="ij")).reshape(4, -1).T
    # index = c0*N^3 + c1*N^2 + c2*N + c3 matches the meshgrid ordering
    weights = level ** np.arange(3, -1, -1)
    lin = np.array(f.linear.rows, dtype=np.int64)
    shift = np.array(f.translation.lift(level).coords, dtype=np.int64)
    images = (pts @ lin.T + shift) % level
    f_idx = images @ weights
    neg_idx = ((-pts) % level) @ weights
    return pts, weights, f_idx, neg_idx


def brute_force_fixed_configurations(
    f: SurfaceAffineAuto, n: int, level: int, budget: int = DEFAULT_BUDGET
) -> OracleResult:
    """All multisets of n+1 points of A[level] summing to 0 that f maps to themselves.

    The last point of a multiset is forced by the sum condition, so the
    enumeration runs over multisets of n points; that count is what the
    budget bounds.  A nonempty reduced result rules out freeness of Kum_n(f);
    an empty result is only a necessary condition for it.
    """
    if level % f.translation.modulus:
        raise ValueError(
            f"level {level} is not a multiple of the translation modulus {f.translation.modulus}"
        )
    if not preserves_kummer_fiber(f, n):
        raise ValueError(f"f does not preserve Kum_{n}")
    npts = level**4
    size = comb(npts + n - 1, n)
    if size > budget:
        raise BudgetExceeded(size, budget)

    pts, weights, f_idx, neg_idx = _point_tables(f, level)
    found: list[tuple[int, ...]] = []

    def rec(prefix: list[int], total: np.ndarray):
        start = prefix[-1] if prefix else 0
        if len(prefix) == n - 1:
            js = np.arange(start, npts)
            s = (total + pts[js]) % level
            last = ((-s) % level) @ weights
            ok = last >= js
            js, last = js[ok], last[ok]
            if not len(js):
                return
            head = np.tile(np.array(prefix, dtype=np.int64), (len(js), 1))
            configs = np.column_stack([head, js, last])
            imgs = np.sort(f_idx[configs], axis=1)
            hit = np.all(imgs == configs, axis=1)
            for row in configs[hit]:
                found.append(tuple(int(x) for x in row))
            return
        for i in range(start, npts):
            rec(prefix + [i], (total + pts[i]) % level)

    rec([], np.zeros(4, dtype=np.int64))
    found.sort()
    configs = tuple(
        FixedConfiguration(tuple(TorsionVector(level, tuple(int(c) for c in pts[i])) for i in cfg))
        for cfg in found
    )
    return OracleResult(level, size, configs)


@dataclass(frozen=True)
class KummerScenario:
    f: SurfaceAffineAuto
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not preserves_kummer_fiber(self.f, self.n):
            raise ValueError(
                f"translation is not ({self.n + 1})-torsion: Kum_{self.n} is not preserved"
            )


@dataclass(frozen=True)
class KummerReport:
    n: int
    order: int
    multiplier_exponent: int
    index: IndexResult
    freeness: Optional[FreenessResult]
    oracle: Optional[OracleResult] = None
    notes: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return 2 * self.n


def kummer_quotient_classification(
    sc: KummerScenario,
    oracle_level: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> KummerReport:
    f, n = sc.f, sc.n
    d = auto_order(f)
    if d is None:  # pragma: no cover - the default cap always suffices
        raise RuntimeError("order not found")
    mult = symplectic_multiplier(f)
    k = mult.relative_to(d) % d
    if gcd(k, d) != 1:
        raise NotPurelyNonsymplectic(d, k)
    notes = [
        f"Kum_{n}(f) is assigned the order of f ({d}); a drop of order on the fiber is not checked"
    ]
    try:
        free = freeness_predicate(f, n)
    except UnsupportedConstruction as exc:
        free = None
        notes.append(f"no freeness criterion: {exc}")
    oracle = None
    if oracle_level is not None:
        oracle = brute_force_fixed_configurations(f, n, oracle_level, budget)
    return KummerReport(n, d, k, canonical_index(n, d), free, oracle, tuple(notes))

