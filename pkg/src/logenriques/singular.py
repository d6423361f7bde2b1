"""Reid-Shepherd-Barron-Tai classification of prime-order quotient singularities.

A nonsymplectic automorphism of prime order p of a 2n-dimensional IHS
manifold linearizes near a point of a fixed component Z (dim s) as a diagonal
matrix of p-th roots of unity.  The exponents are

    0 (s times), 1 (s times), (a_j, p+1-a_j) for j = 1..t,
    (p+1)/2 (2n-2s-2t times)

and the image of Z is canonical/terminal iff the age is >= 1 / > 1.
"""

from __future__ import annotations

import enum
from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache, partial
from fractions import Fraction
from itertools import chain, combinations_with_replacement, repeat
from typing import Optional

__all__ = [
    "FixedComponentModel",
    "LocalWeights",
    "SingularityClass",
    "DeformationKind",
    "DeformationType",
    "PowersReport",
    "is_prime",
    "weights_from_model",
    "age",
    "symbolic_age",
    "class_from_age",
    "classify_generator",
    "paper_terminality_conditions",
    "classify_all_powers",
    "admissible_b2",
    "admissible_prime_orders",
    "enumerate_models",
]


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class SingularityClass(enum.Enum):
    TERMINAL = "terminal"
    CANONICAL_NOT_TERMINAL = "canonical, not terminal"
    NOT_CANONICAL = "not canonical"


# Models and weights are tuple-backed: exhaustive sweeps build millions of
# them, and a namedtuple is both immutable and cheap to construct.
_ModelFields = namedtuple("_ModelFields", "p n s t a_list")


class FixedComponentModel(_ModelFields):
    """Linearization data of a prime-order automorphism along a fixed component."""

    __slots__ = ()

    def __new__(cls, p: int, n: int, s: int, t: int = 0, a_list=()):
        a_list = tuple(a_list)
        # one combined test on the hot path; the message is built only on failure
        if not (
            is_prime(p) and n >= 1 and 0 <= s <= n and 0 <= t <= n - s and len(a_list) == t
            and (not t or (min(a_list) > 1 and max(a_list) < p))
            and (p != 2 or (s == n and t == 0))
        ):
            raise ValueError(_violation(p, n, s, t, a_list))
        return tuple.__new__(cls, (p, n, s, t, a_list))

    @property
    def residual(self) -> int:
        """Number of (p+1)/2 eigenvalues."""
        return 2 * (self.n - self.s - self.t)


def _violation(p, n, s, t, a_list) -> str:
    if not is_prime(p):
        return f"p={p} is not prime"
    if n < 1:
        return f"n={n} must be >= 1"
    if not 0 <= s <= n:
        return (f"fixed component dimension must satisfy 0 <= s <= n (s={s}, n={n}); "
                "the fixed locus is isotropic")
    if t < 0 or len(a_list) != t:
        return f"a_list must have exactly t={t} entries, got {len(a_list)}"
    if any(not 1 < a < p for a in a_list):
        return f"every a_j must satisfy 1 < a_j < p={p}, got {list(a_list)}"
    if s + t > n:
        return f"2n-2s-2t must be >= 0 (n={n}, s={s}, t={t})"
    return f"p=2 forces s=n and t=0 (got s={s}, t={t})"


class LocalWeights(namedtuple("_WeightFields", "d exps")):
    __slots__ = ()

    def __new__(cls, d: int, exps):
        if d < 2:
            raise ValueError("order must be >= 2")
        exps = tuple(e % d for e in exps)
        return tuple.__new__(cls, (d, exps))

    def power(self, k: int) -> "LocalWeights":
        return LocalWeights(self.d, [k * e for e in self.exps])


class DeformationKind(enum.Enum):
    K3N = "K3n"
    KUM = "Kum"
    OG6 = "OG6"
    OG10 = "OG10"

    @classmethod
    def parse(cls, text: str) -> "DeformationKind":
        key = text.strip().lower().replace("^", "").replace("[", "").replace("]", "").replace("_", "")
        aliases = {"k3n": cls.K3N, "k3": cls.K3N, "kum": cls.KUM, "kumn": cls.KUM,
                   "og6": cls.OG6, "og10": cls.OG10}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown deformation type {text!r}") from None


@dataclass(frozen=True)
class DeformationType:
    """Deformation family of an IHS manifold; ``b2`` comes from configuration."""

    kind: DeformationKind
    n: int
    b2: int

    def __post_init__(self):
        fixed_n = {DeformationKind.OG6: 3, DeformationKind.OG10: 5}
        if self.kind in fixed_n and self.n != fixed_n[self.kind]:
            raise ValueError(f"{self.kind.value} has n={fixed_n[self.kind]}")
        if self.n < 1 or self.b2 < 1:
            raise ValueError("n and b2 must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def chi(self) -> int:
        # chi(O_Y) = dim/2 + 1 for an IHS manifold
        return self.dim // 2 + 1


_CHUNK = 6  # pair blocks are cached for a_list pieces of at most this length
_FRAMES: dict = {}  # (p, n, s, t) -> (head, tail, pair-block cache for p)
_BLOCKS: dict = {}  # p -> {chunk: pair block}


def _frame(p: int, n: int, s: int, t: int):
    frame = (0,) * s + (1,) * s, ((p + 1) // 2,) * (2 * (n - s - t)), _BLOCKS.setdefault(p, {})
    _FRAMES[p, n, s, t] = frame
    return frame


def _pairs(p: int, chunk: tuple[int, ...], cache: dict) -> tuple[int, ...]:
    try:
        return cache[chunk]
    except KeyError:
        block = cache[chunk] = tuple(chain.from_iterable((a, p + 1 - a) for a in chunk))
        return block


def weights_from_model(m: FixedComponentModel) -> LocalWeights:
    p, n, s, t, a_list = m
    try:
        head, tail, cache = _FRAMES[p, n, s, t]
    except KeyError:
        head, tail, cache = _frame(p, n, s, t)
    if t <= _CHUNK:
        try:
            body = cache[a_list]
        except KeyError:
            body = _pairs(p, a_list, cache)
    else:
        # at most C(r + 6, 6) distinct chunks per p, so the cache stays small
        body = _pairs(p, a_list[:_CHUNK], cache) + _pairs(p, a_list[_CHUNK:], cache)
    # every entry already lies in [0, p), so the reduction in __new__ is skipped
    return tuple.__new__(LocalWeights, (p, head + body + tail))


@lru_cache(maxsize=65536)
def _ratio(num: int, den: int) -> Fraction:
    return Fraction(num, den)


def age(w: LocalWeights) -> Fraction:
    return _ratio(sum(w.exps), w.d)


@lru_cache(maxsize=4096)
def symbolic_age(p: int, n: int, s: int) -> Fraction:
    """Closed form of the generator's age: n/2 for p = 2, n - s + n/p otherwise."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    if p == 2:
        if s != n:
            raise ValueError("p=2 forces s=n")
        return Fraction(n, 2)
    return Fraction((n - s) * p + n, p)


def class_from_age(a: Fraction) -> SingularityClass:
    num, den = a.numerator, a.denominator
    if num > den:
        return SingularityClass.TERMINAL
    if num == den:
        return SingularityClass.CANONICAL_NOT_TERMINAL
    return SingularityClass.NOT_CANONICAL


def classify_generator(m: FixedComponentModel) -> SingularityClass:
    """Class of the image of the fixed component, judged by the generator's age."""
    p, n, s, _, _ = m
    if n % p == 0:
        raise ValueError(
            f"p={p} divides n={n}: the quotient is K-trivial, not log-Enriques"
        )
    # symbolic age as (n-s)p+n over p; for p = 2, s = n this is n/2
    num = (n - s) * p + n
    if num > p:
        return SingularityClass.TERMINAL
    if num == p:
        return SingularityClass.CANONICAL_NOT_TERMINAL
    return SingularityClass.NOT_CANONICAL


def paper_terminality_conditions(p: int, n: int, s: int) -> bool:
    """Terminality read off directly: p does not divide n, and s < n or n > p."""
    return n % p != 0 and ((s == n and n > p) or s < n)


@dataclass(frozen=True)
class PowersReport:
    generator_class: SingularityClass
    generator_age: Fraction
    ages: tuple[Fraction, ...]  # ages[k-1] is the age of phi^k
    min_age_over_powers: Fraction
    all_powers_class: SingularityClass

    @property
    def discrepancy(self) -> bool:
        return self.generator_class is not self.all_powers_class


def classify_all_powers(m: FixedComponentModel) -> PowersReport:
    """Ages of every nontrivial power phi^k, k = 1..p-1.

    The generator-only verdict and the all-powers verdict are both reported;
    ``discrepancy`` flags when they differ.
    """
    w = weights_from_model(m)
    ages = tuple(age(w.power(k)) for k in range(1, m.p))
    lo = min(ages)
    return PowersReport(
        generator_class=class_from_age(ages[0]),
        generator_age=ages[0],
        ages=ages,
        min_age_over_powers=lo,
        all_powers_class=class_from_age(lo),
    )


def admissible_b2(b2_y: int, p: int) -> list[int]:
    """Possible b2(X): 1 <= b <= b2(Y) - 2 and b = b2(Y) mod p-1."""
    if b2_y < 3:
        return []
    step = p - 1
    return [b for b in range(1, b2_y - 1) if (b - b2_y) % step == 0]


_PRIME_BOUND = {
    DeformationKind.KUM: 7,
    DeformationKind.OG6: 7,
    DeformationKind.K3N: 23,
    DeformationKind.OG10: 23,
}


def admissible_prime_orders(kind: DeformationKind | str) -> list[int]:
    if isinstance(kind, str):
        kind = DeformationKind.parse(kind)
    return [p for p in range(2, _PRIME_BOUND[kind] + 1) if is_prime(p)]


# skips validation; only for parameters valid by construction
_trusted_model = partial(tuple.__new__, FixedComponentModel)


def enumerate_models(p: int, n: int, s: Optional[int] = None):
    """All valid models for (p, n), with a_list taken up to reordering.

    Each pair (a, p+1-a) is the same block as (p+1-a, a), so a_list entries
    are drawn from a <= (p+1)/2 as nondecreasing sequences.
    """
    FixedComponentModel(p, n, n)  # validates p and n
    if p == 2:
        if s is None or s == n:
            yield FixedComponentModel(2, n, n)
        return
    if s is not None and not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    reps = range(2, (p + 1) // 2 + 1)
    for ss in range(n + 1) if s is None else (s,):
        for t in range(n - ss + 1):
            fields = zip(repeat(p), repeat(n), repeat(ss), repeat(t),
                         combinations_with_replacement(reps, t))
            yield from map(_trusted_model, fields)
