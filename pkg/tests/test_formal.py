from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gapvira.formal import (GAP_SIDE, NP_SIDE, Relation, delta_coefficient, level_vector, relations,
                            verify_commutator_identity, verify_exponent_window, verify_mode_dictionary)


@pytest.mark.parametrize("n", [-4, -1, 0, 2, 7])
def test_delta_coefficient_plain(n):
    assert delta_coefficient(0, 0, -n - 1, n) == 1


def test_delta_coefficient_examples():
    assert delta_coefficient(1, 0, -1, -1) == 0
    assert delta_coefficient(1, Fraction(1, 3), Fraction(-7, 3), Fraction(1, 3)) == Fraction(4, 3)
    # off the lattice s + Z
    assert delta_coefficient(0, Fraction(1, 3), Fraction(-1), Fraction(0)) == 0
    # a + b must equal -k-1
    assert delta_coefficient(2, 0, 1, 1) == 0


@given(st.integers(0, 4), st.integers(-6, 6))
def test_delta_coefficient_is_falling_factorial(k, b):
    """d^k/dx2^k of x2^(b+k) is (b+k)(b+k-1)...(b+1) x2^b."""
    expected = 1
    for t in range(1, k + 1):
        expected *= b + t
    assert delta_coefficient(k, 0, -b - k - 1, b) == expected


def test_identity_examples():
    r = verify_commutator_identity(3, Relation("LL"), 1, -1)
    assert r.holds and r.lhs == {"Lhat[0]": 2} == r.rhs
    r = verify_commutator_identity(3, Relation("II", 1, 2), 0, -1)
    assert r.holds and r.lhs == {"Cbar[1]": Fraction(1, 3)}
    r = verify_commutator_identity(3, Relation("NN", 1, 1), 2, -2)
    assert r.holds and r.lhs == {} == r.rhs


def test_level_substitution_kills_higher_centrals():
    r = verify_commutator_identity(3, Relation("II", 1, 2), 0, -1, level_vector(3, 2))
    assert r.holds and r.lhs == {}


def test_non_integer_modes_rejected():
    with pytest.raises(ValueError):
        verify_commutator_identity(3, Relation("LL"), Fraction(1, 3), 0)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("side", [GAP_SIDE, NP_SIDE])
@pytest.mark.parametrize("l0", [None, Fraction(0), Fraction(7, 2)])
def test_exponent_windows(p, side, l0):
    level = None if l0 is None else level_vector(p, l0)
    for rel in relations(p, side):
        assert verify_exponent_window(p, rel, 3, level) == []


def test_unpaired_families_vanish():
    p = 4
    for rel in relations(p, GAP_SIDE):
        if rel.name == "II" and rel.i + rel.j != p:
            for m in range(-3, 4):
                for n in range(-3, 4):
                    r = verify_commutator_identity(p, rel, m, n)
                    assert r.lhs == {} and r.rhs == {}


@pytest.mark.parametrize("p", [2, 3])
def test_mode_dictionary(p):
    rep = verify_mode_dictionary(p, Fraction(5, 2), 5)
    assert rep.holds
    assert set(rep.checked) == {"LL", "LI", "II"}
    assert rep.checked["LL"] == 11 * 11
