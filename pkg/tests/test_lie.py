from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gapvira.cyclo import field
from gapvira.lie import (AlgebraError, Cbar, GapVirasoro, Gen, Ihat, LieElement, Lhat, Np, RescaledElement,
                         bracket, element, from_rescaled, grade, jacobi_residual, rescaled_bracket,
                         sigma, sigma_mode_twisted, to_rescaled)

G3, N3 = GapVirasoro(3), Np(3)


def E(alg, *pairs):
    return element(alg, *pairs)


def L(m, c=1):
    return E(G3, (c, G3.L(m)))


def test_bracket_examples():
    assert bracket(L(3), L(-3)) == E(G3, (-6, G3.L(0)))
    assert bracket(L(6), L(-6)) == E(G3, (-12, G3.L(0)), (Fraction(1, 2), G3.C(0)))
    assert bracket(L(2), L(-2)) == E(G3, (2, G3.C(1)))
    assert not bracket(L(1), L(2))
    n = bracket(E(N3, (1, N3.N(1, 2))), E(N3, (1, N3.N(2, -2))))
    assert n == E(N3, (2, N3.K(1)))
    for p in (2, 3, 5):
        alg = GapVirasoro(p)
        c0 = E(alg, (1, alg.C(0)))
        assert all(not bracket(c0, E(alg, (1, alg.L(m)))) for m in range(-6, 7))


def test_hand_computed_brackets():
    # [L_m, L_r] = r L_{m+r} for m in pZ, r off pZ
    assert bracket(L(3), L(-1)) == L(2, -1)
    assert bracket(L(-1), L(3)) == L(2)
    # [L_r, L_s] = r delta C_{rt}; r = 4 -> 4 mod 3 = 1 -> C_1
    assert bracket(L(4), L(-4)) == E(G3, (4, G3.C(1)))
    # N_p Virasoro central term at m = 2: (1/12)(8 - 2) = 1/2
    t = bracket(E(N3, (1, N3.T(2))), E(N3, (1, N3.T(-2))))
    assert t == E(N3, (4, N3.T(0)), (Fraction(1, 2), N3.K(0)))
    assert bracket(E(N3, (1, N3.T(1))), E(N3, (1, N3.N(2, 3)))) == E(N3, (-3, N3.N(2, 4)))


def test_central_canonicalization():
    alg = GapVirasoro(5)
    assert alg.C(3) == alg.C(2)
    assert alg.C(4) == alg.C(1)
    with pytest.raises(AlgebraError):
        alg.C(5)
    with pytest.raises(AlgebraError):
        alg.check(Gen("C", 0, 4))
    with pytest.raises(AlgebraError):
        Np(3).N(3, 0)
    with pytest.raises(AlgebraError):
        GapVirasoro(1)


def test_algebra_mismatch():
    with pytest.raises(AlgebraError):
        bracket(L(1), E(GapVirasoro(2), (1, Gen("L", 1))))
    with pytest.raises(AlgebraError):
        G3.T(1)


def test_rescaled_examples():
    assert to_rescaled(L(-1)) == RescaledElement(3, {Ihat(2, -1): -3})
    x = from_rescaled(RescaledElement(3, {Lhat(1): 1}))
    y = from_rescaled(RescaledElement(3, {Ihat(2, -1): 1}))
    assert bracket(x, y) == L(2, Fraction(-1, 9))
    direct = rescaled_bracket(RescaledElement(3, {Lhat(1): 1}), RescaledElement(3, {Ihat(2, -1): 1}))
    assert direct == RescaledElement(3, {Ihat(2, 0): Fraction(1, 3)})
    assert to_rescaled(bracket(x, y)) == direct
    G2 = GapVirasoro(2)
    assert from_rescaled(RescaledElement(2, {Cbar(0): 1})) == E(G2, (Fraction(1, 4), G2.C(0)))


def test_rescaled_roundtrip():
    for m in range(-7, 8):
        x = L(m, 5)
        assert from_rescaled(to_rescaled(x)) == x


def test_sigma_examples():
    xi = field(3).xi
    assert sigma(E(N3, (1, N3.N(1, 2)))) == E(N3, (xi, N3.N(1, 2)))
    assert sigma(E(N3, (1, N3.T(-5)))) == E(N3, (1, N3.T(-5)))
    k1 = E(N3, (1, N3.K(1)))
    assert sigma(k1) == E(N3, (xi * xi, N3.K(1)))
    assert sigma(k1, 3) == k1
    with pytest.raises(AlgebraError):
        sigma(L(1))


def test_mode_twisted_variant_breaks_bracket():
    x, y = E(N3, (1, N3.N(1, 1))), E(N3, (1, N3.N(2, -1)))
    lhs = sigma_mode_twisted(bracket(x, y))
    rhs = bracket(sigma_mode_twisted(x), sigma_mode_twisted(y))
    # xi^1 * xi^-1 = 1 on the right, xi^2 on the left
    assert lhs != rhs


def test_grade():
    assert grade(L(-4)) == Fraction(-4, 3)
    assert grade(E(G3, (1, G3.C(1)))) == 0
    assert grade(L(1) + L(2)) is None
    assert grade(E(N3, (1, N3.N(1, -2)))) == -2


def test_jacobi_examples():
    assert not jacobi_residual(L(3), L(-3), L(1))
    N4 = Np(4)
    assert not jacobi_residual(E(N4, (1, N4.T(2))), E(N4, (1, N4.N(1, -1))), E(N4, (1, N4.N(3, -1))))
    G5 = GapVirasoro(5)
    assert not jacobi_residual(E(G5, (1, G5.L(5))), E(G5, (1, G5.L(-5))), E(G5, (1, G5.L(0))))


def test_jacobi_detects_broken_constants():
    """A perturbed structure constant must show up as a nonzero residual."""
    alg = GapVirasoro(3)

    def fake(a: Gen, b: Gen):
        if a.is_central or b.is_central:
            return {}
        out = {}
        for g, c in bracket(E(alg, (1, a)), E(alg, (1, b))).items():
            out[g] = c
        if (a.m, b.m) == (3, -1):
            out[Gen("L", 2)] = out.get(Gen("L", 2), 0) + 1
        elif (a.m, b.m) == (-1, 3):
            out[Gen("L", 2)] = out.get(Gen("L", 2), 0) - 1
        return out

    def fb(x, y):
        acc = {}
        for g, c in fake(x, y).items():
            acc[g] = acc.get(g, 0) + c
        return acc

    def br(u: dict, v: dict) -> dict:
        acc = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for g, c in fb(a, b).items():
                    acc[g] = acc.get(g, 0) + ca * cb * c
        return {g: c for g, c in acc.items() if c}

    def add(*ds):
        acc = {}
        for d in ds:
            for g, c in d.items():
                acc[g] = acc.get(g, 0) + c
        return {g: c for g, c in acc.items() if c}

    a, b, c = {Gen("L", 3): 1}, {Gen("L", -1): 1}, {Gen("L", -2): 1}
    res = add(br(a, br(b, c)), br(b, br(c, a)), br(c, br(a, b)))
    assert res


# property tests --------------------------------------------------------------

def lie_elements(alg, window=4):
    gens = alg.basis(window)
    coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.dictionaries(st.sampled_from(gens), coeffs, max_size=4).map(lambda t: LieElement(alg, t))


ALGS = [GapVirasoro(2), GapVirasoro(3), Np(3), Np(4)]


@pytest.mark.parametrize("alg", ALGS, ids=str)
@given(data=st.data())
def test_bracket_bilinear_antisymmetric_jacobi(alg, data):
    x, y, z = (data.draw(lie_elements(alg)) for _ in range(3))
    assert bracket(x, y) == -bracket(y, x)
    assert bracket(x + y, z) == bracket(x, z) + bracket(y, z)
    assert bracket(x * 3, y) == bracket(x, y) * 3
    assert not jacobi_residual(x, y, z)


@pytest.mark.parametrize("p", [2, 3, 4])
@given(data=st.data())
def test_sigma_is_automorphism(p, data):
    alg = Np(p)
    x, y = data.draw(lie_elements(alg)), data.draw(lie_elements(alg))
    assert sigma(bracket(x, y)) == bracket(sigma(x), sigma(y))
    assert sigma(x, p) == x


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_rescaling_is_compatible_with_brackets(p, data):
    alg = GapVirasoro(p)
    x, y = data.draw(lie_elements(alg)), data.draw(lie_elements(alg))
    assert to_rescaled(bracket(x, y)) == rescaled_bracket(to_rescaled(x), to_rescaled(y))
