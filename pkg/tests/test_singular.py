from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, strategies as st

from logenriques.singular import (
    DeformationKind,
    DeformationType,
    FixedComponentModel,
    LocalWeights,
    SingularityClass,
    admissible_b2,
    admissible_prime_orders,
    age,
    class_from_age,
    classify_all_powers,
    classify_generator,
    enumerate_models,
    is_prime,
    paper_terminality_conditions,
    symbolic_age,
    weights_from_model,
)

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23]


def slow_age(exps, d):
    return Fraction(sum(e % d for e in exps), d)


@st.composite
def models(draw, max_p=23, max_n=12):
    p = draw(st.sampled_from([q for q in PRIMES if q <= max_p]))
    n = draw(st.integers(1, max_n))
    if p == 2:
        return FixedComponentModel(2, n, n)
    s = draw(st.integers(0, n))
    t = draw(st.integers(0, n - s))
    a = draw(st.lists(st.integers(2, p - 1), min_size=t, max_size=t))
    return FixedComponentModel(p, n, s, t, a)


def test_is_prime():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


# -- model validation ----------------------------------------------------------


@pytest.mark.parametrize(
    "args, fragment",
    [
        ((4, 2, 1), "not prime"),
        ((3, 0, 0), "n=0"),
        ((3, 2, 3), "isotropic"),
        ((3, 2, 0, 1, ()), "exactly t=1"),
        ((5, 2, 0, 1, (5,)), "1 < a_j < p"),
        ((5, 2, 0, 1, (1,)), "1 < a_j < p"),
        ((5, 2, 1, 2, (2, 2)), "2n-2s-2t"),
        ((2, 2, 1), "p=2 forces"),
        ((2, 2, 0, 1, (2,)), None),
    ],
)
def test_model_validation_names_the_constraint(args, fragment):
    with pytest.raises(ValueError) as exc:
        FixedComponentModel(*args)
    if fragment:
        assert fragment in str(exc.value)


def test_model_accepts_lists_and_is_hashable():
    m = FixedComponentModel(5, 3, 1, 1, [2])
    assert m.a_list == (2,)
    assert hash(m) == hash(FixedComponentModel(5, 3, 1, 1, (2,)))
    assert m.residual == 2


def test_local_weights_reduce_mod_d():
    w = LocalWeights(3, [0, 4, -1])
    assert w.exps == (0, 1, 2)
    with pytest.raises(ValueError):
        LocalWeights(1, [0])


# -- weights and ages ----------------------------------------------------------


@pytest.mark.parametrize(
    "args, exps",
    [
        ((2, 2, 2), (0, 0, 1, 1)),
        ((5, 3, 1, 1, (2,)), (0, 1, 2, 4, 3, 3)),
        ((3, 2, 2), (0, 0, 1, 1)),
        ((7, 2, 0, 1, (3,)), (3, 5, 4, 4)),
    ],
)
def test_weights_from_model(args, exps):
    w = weights_from_model(FixedComponentModel(*args))
    assert w.exps == exps and w.d == args[0]


@pytest.mark.parametrize(
    "d, exps, expected",
    [(2, (0, 0, 1, 1), Fraction(1)), (5, (0, 1, 2, 4, 3, 3), Fraction(13, 5)), (3, (0, 0, 0, 0), Fraction(0))],
)
def test_age(d, exps, expected):
    assert age(LocalWeights(d, exps)) == expected


@pytest.mark.parametrize(
    "p, n, s, expected",
    [(2, 2, 2, Fraction(1)), (3, 2, 2, Fraction(2, 3)), (5, 3, 1, Fraction(13, 5)), (2, 4, 4, Fraction(2))],
)
def test_symbolic_age(p, n, s, expected):
    assert symbolic_age(p, n, s) == expected


@pytest.mark.parametrize("args", [(4, 2, 2), (3, 2, 3), (3, 2, -1), (2, 3, 1)])
def test_symbolic_age_preconditions(args):
    with pytest.raises(ValueError):
        symbolic_age(*args)


@given(models())
def test_age_matches_closed_form(m):
    w = weights_from_model(m)
    assert len(w.exps) == 2 * m.n
    assert age(w) == symbolic_age(m.p, m.n, m.s) == slow_age(w.exps, w.d)
    if m.p > 2:
        assert sum(w.exps) == m.s + (m.n - m.s) * (m.p + 1)


# -- classification ------------------------------------------------------------


def test_class_from_age_thresholds():
    assert class_from_age(Fraction(4, 3)) is SingularityClass.TERMINAL
    assert class_from_age(Fraction(1)) is SingularityClass.CANONICAL_NOT_TERMINAL
    assert class_from_age(Fraction(2, 3)) is SingularityClass.NOT_CANONICAL


@pytest.mark.parametrize(
    "args, expected",
    [
        ((3, 2, 2), SingularityClass.NOT_CANONICAL),
        ((3, 4, 4), SingularityClass.TERMINAL),
        ((5, 3, 1, 1, (2,)), SingularityClass.TERMINAL),
        ((2, 3, 3), SingularityClass.TERMINAL),
        ((2, 1, 1), SingularityClass.NOT_CANONICAL),
    ],
)
def test_classify_generator(args, expected):
    assert classify_generator(FixedComponentModel(*args)) is expected


def test_classify_generator_rejects_k_trivial_case():
    with pytest.raises(ValueError, match="K-trivial"):
        classify_generator(FixedComponentModel(3, 3, 3))
    with pytest.raises(ValueError, match="K-trivial"):
        classify_generator(FixedComponentModel(2, 4, 4))


@pytest.mark.parametrize(
    "p, n, s, expected",
    [
        (3, 4, 4, True),
        (3, 2, 2, False),
        (5, 3, 1, True),
        # p = 2 divides n = 4: the quotient is K-trivial, so the terminality
        # conditions (which require p not dividing n) do not apply
        (2, 4, 4, False),
        (2, 3, 3, True),
        (7, 14, 3, False),
    ],
)
def test_direct_terminality_conditions(p, n, s, expected):
    assert paper_terminality_conditions(p, n, s) is expected


@given(models())
def test_terminality_conditions_agree_with_generator_age(m):
    assume(m.n % m.p)
    cls = classify_generator(m)
    assert (cls is SingularityClass.TERMINAL) == paper_terminality_conditions(m.p, m.n, m.s)
    assert cls is not SingularityClass.CANONICAL_NOT_TERMINAL


# -- all powers ----------------------------------------------------------------


def test_all_powers_involution():
    r = classify_all_powers(FixedComponentModel(2, 2, 2))
    assert r.min_age_over_powers == 1
    assert r.generator_class is r.all_powers_class is SingularityClass.CANONICAL_NOT_TERMINAL
    assert not r.discrepancy


def test_all_powers_order_three():
    r = classify_all_powers(FixedComponentModel(3, 2, 2))
    assert r.ages == (Fraction(2, 3), Fraction(4, 3))
    assert r.min_age_over_powers == Fraction(2, 3)
    assert r.all_powers_class is SingularityClass.NOT_CANONICAL


def test_all_powers_order_five():
    r = classify_all_powers(FixedComponentModel(5, 3, 1, 1, (2,)))
    assert r.ages == tuple(Fraction(x, 5) for x in (13, 11, 14, 12))
    assert r.min_age_over_powers == Fraction(11, 5)
    assert not r.discrepancy


def test_all_powers_can_disagree_with_generator():
    # exponents (2, 4): the generator has age 6/5, its cube has exponents (1, 2)
    r = classify_all_powers(FixedComponentModel(5, 1, 0, 1, (2,)))
    assert r.generator_class is SingularityClass.TERMINAL
    assert r.ages[2] == Fraction(3, 5)
    assert r.all_powers_class is SingularityClass.NOT_CANONICAL
    assert r.discrepancy


@given(models(max_p=13, max_n=6))
def test_all_powers_matches_direct_scan(m):
    w = weights_from_model(m)
    direct = [slow_age([k * e for e in w.exps], m.p) for k in range(1, m.p)]
    r = classify_all_powers(m)
    assert list(r.ages) == direct
    assert r.min_age_over_powers == min(direct)
    assert r.generator_age == age(w)


# -- Betti numbers and prime orders ---------------------------------------------


@pytest.mark.parametrize(
    "b2, p, expected",
    [(7, 2, [1, 2, 3, 4, 5]), (7, 3, [1, 3, 5]), (23, 23, [1]), (2, 2, []), (24, 5, [4, 8, 12, 16, 20])],
)
def test_admissible_b2(b2, p, expected):
    assert admissible_b2(b2, p) == expected


@given(st.integers(3, 200), st.sampled_from(PRIMES))
def test_admissible_b2_properties(b2, p):
    out = admissible_b2(b2, p)
    assert out == sorted(out)
    assert all(1 <= b <= b2 - 2 and (b - b2) % (p - 1) == 0 for b in out)
    assert len(out) == sum(1 for b in range(1, b2 - 1) if (b - b2) % (p - 1) == 0)
    if p == 2:
        assert out


def test_admissible_prime_orders():
    assert admissible_prime_orders(DeformationKind.KUM) == [2, 3, 5, 7]
    assert admissible_prime_orders("OG10") == [2, 3, 5, 7, 11, 13, 17, 19, 23]
    assert admissible_prime_orders("OG6") == [2, 3, 5, 7]
    assert admissible_prime_orders("K3^[n]") == admissible_prime_orders("OG10")
    with pytest.raises(ValueError):
        admissible_prime_orders("K4")


def test_deformation_type():
    t = DeformationType(DeformationKind.K3N, 4, 23)
    assert t.dim == 8 and t.chi == 5
    assert DeformationType(DeformationKind.OG6, 3, 8).chi == 4
    with pytest.raises(ValueError):
        DeformationType(DeformationKind.OG10, 3, 24)


# -- enumeration ---------------------------------------------------------------


def test_enumerate_models_counts():
    # p = 5: pair representatives 2 and 3; n = 2 gives
    # s=0: t=0 (1), t=1 (2), t=2 (3); s=1: t=0 (1), t=1 (2); s=2: 1
    assert len(list(enumerate_models(5, 2))) == 10
    assert list(enumerate_models(2, 3)) == [FixedComponentModel(2, 3, 3)]
    assert list(enumerate_models(2, 3, s=1)) == []


def test_enumerate_models_are_valid_and_distinct():
    ms = list(enumerate_models(7, 4))
    assert len(set(ms)) == len(ms)
    for m in ms:
        assert FixedComponentModel(m.p, m.n, m.s, m.t, m.a_list) == m


def test_enumerate_models_covers_every_unordered_choice():
    # every valid (s, t, a_list) is equivalent to an enumerated model after
    # sorting and replacing a by min(a, p+1-a)
    p, n = 7, 3
    seen = {(m.s, m.a_list) for m in enumerate_models(p, n)}
    for s in range(n + 1):
        for t in range(n - s + 1):
            for a in product(range(2, p), repeat=t):
                key = (s, tuple(sorted(min(x, p + 1 - x) for x in a)))
                assert key in seen
