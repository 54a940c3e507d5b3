import random
import pytest
from hypothesis import given, strategies as st

from gapvira.lie import GapVirasoro, Np, element
from gapvira.pbw import (LEX, REVLEX, Cmp, ExponentVector, PbwMonomial, UeaElement, compare,
                         compare_bruteforce, leftmost, multiply, normal_form, principal_compare,
                         random_schedule, rightmost, weight)

G3 = GapVirasoro(3)
Z = ExponentVector()
e = ExponentVector.unit


def uea(alg, *terms):
    """Build a U(g) element from (coeff, word) pairs by normal ordering each word."""
    out = UeaElement(alg)
    for c, word in terms:
        out = out + c * normal_form(word, alg)
    return out


def test_weight():
    assert weight(Z) == 0
    assert weight(e(-2) + e(1, 3)) == 5
    assert weight(e(-3, 2)) == 6


def test_compare_examples():
    assert compare(e(-2), e(-1), LEX) is Cmp.GT
    assert compare(e(-1), e(-2), REVLEX) is Cmp.GT
    a = e(-3) + e(2, 4)
    assert compare(a, a, LEX) is Cmp.EQ and compare(a, a, REVLEX) is Cmp.EQ
    with pytest.raises(ValueError):
        compare(a, a, "deglex")


def test_principal_examples():
    assert principal_compare((Z, e(-3)), (e(-1), Z), p=3) is Cmp.GT
    j = e(-3) + e(-6)
    assert principal_compare((Z, j), (Z, j), p=3) is Cmp.EQ
    assert principal_compare((e(-1), e(-3)), (e(-2), e(-3)), p=3) is Cmp.LT


def test_principal_rejects_bad_split():
    with pytest.raises(ValueError):
        principal_compare((e(-3), Z), (Z, Z), p=3)
    with pytest.raises(ValueError):
        principal_compare((Z, e(-1)), (Z, Z), p=3)
    with pytest.raises(ValueError):
        principal_compare((Z, e(3)), (Z, Z), p=3)


def test_exponent_vector_basics():
    v = ExponentVector.from_word([-3, -1, -1, 2])
    assert v.as_dict() == {-3: 1, -1: 2, 2: 1}
    assert v.word() == (-3, -1, -1, 2)
    assert v - e(-1) == ExponentVector({-3: 1, -1: 1, 2: 1})
    assert not Z and v.total() == 4
    with pytest.raises(ValueError):
        e(-1) - e(-2)


def test_normal_form_examples():
    L = G3.L
    assert normal_form([L(1), L(-1)], G3) == uea(G3, (1, [L(-1), L(1)]), (1, [G3.C(1)]))
    assert normal_form([L(3), L(-3)], G3) == uea(G3, (1, [L(-3), L(3)]), (-6, [L(0)]))
    assert normal_form([L(0), L(0)], G3) == UeaElement(G3, {PbwMonomial((L(0), L(0)), (0, 0)): 1})


def test_multiply_examples():
    L = G3.L
    a, b = normal_form([L(1)], G3), normal_form([L(-1)], G3)
    assert multiply(a, b) - multiply(b, a) == normal_form([G3.C(1)], G3)
    one = UeaElement.one(G3)
    assert multiply(one, a) == a and multiply(a, one) == a
    x, y, z = normal_form([L(2)], G3), normal_form([L(1)], G3), normal_form([L(-3)], G3)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


def test_commutator_matches_bracket():
    alg = Np(3)
    x, y = alg.N(1, 2), alg.N(2, -2)
    comm = normal_form([x, y], alg) - normal_form([y, x], alg)
    assert comm == UeaElement.from_lie(element(alg, (2, alg.K(1))))


def test_schedules_agree_on_a_long_word():
    L = G3.L
    word = [L(4), L(2), L(-1), L(3), L(-5), L(0), L(-2)]
    ref = normal_form(word, G3)
    assert normal_form(word, G3, leftmost) == ref
    assert normal_form(word, G3, rightmost) == ref
    assert normal_form(word, G3, random_schedule(random.Random(5))) == ref


# property tests --------------------------------------------------------------

def words(alg, window=4, max_size=5):
    gens = [g for g in alg.basis(window) if not g.is_central] + [alg.C(0) if alg.family == "gap" else alg.K(0)]
    return st.lists(st.sampled_from(gens), max_size=max_size)


exps = st.dictionaries(st.integers(-5, 5), st.integers(1, 3), max_size=4).map(ExponentVector)


@given(exps, exps)
def test_compare_matches_bruteforce(a, b):
    for kind in (LEX, REVLEX):
        assert compare(a, b, kind) is compare_bruteforce(a, b, kind)
        assert compare(a, b, kind) is Cmp(-compare(b, a, kind))


@given(exps, exps, exps)
def test_orders_are_transitive(a, b, c):
    for kind in (LEX, REVLEX):
        if compare(a, b, kind) is Cmp.GT and compare(b, c, kind) is Cmp.GT:
            assert compare(a, c, kind) is Cmp.GT


@pytest.mark.parametrize("alg", [GapVirasoro(2), GapVirasoro(3), Np(3)], ids=str)
@given(data=st.data())
def test_normal_form_is_confluent(alg, data):
    w = data.draw(words(alg))
    seed = data.draw(st.integers(0, 10 ** 6))
    ref = normal_form(w, alg)
    assert normal_form(w, alg, random_schedule(random.Random(seed))) == ref


@pytest.mark.parametrize("alg", [GapVirasoro(3), Np(2)], ids=str)
@given(data=st.data())
def test_multiplication_is_associative(alg, data):
    a, b, c = (normal_form(data.draw(words(alg, 3, 3)), alg) for _ in range(3))
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@given(data=st.data())
def test_normal_form_preserves_grade(data):
    from gapvira.pbw import word_grade
    w = data.draw(words(G3))
    target = word_grade(G3, w)
    for m, c in normal_form(w, G3).items():
        assert word_grade(G3, m.word) == target
