import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gapvira.lie import Gen, GapVirasoro, Np, element
from gapvira.modules import ModuleError, ModuleVector
from gapvira.modules.ind import ReductionError, degree, reduce_once, reduce_to_base
from gapvira.modules.truncation import (extract_category_N, module_axiom_residual, random_generator,
                                        random_vector, restricted_witness)
from gapvira.modules.verma import (VacuumNpModule, VermaModule, graded_dim_enumeration,
                                   graded_dim_generating, singular_vectors, vacuum_graded_dims)
from gapvira.constructions.rmod import RSpec, induced_r
from gapvira.pbw import ExponentVector

L = lambda m: Gen("L", m)
e = ExponentVector.unit
Z = ExponentVector()
ONE = ((), ())


def test_verma_action_examples():
    l0, h = Fraction(1, 2), Fraction(5, 7)
    M = VermaModule(2, l0, h)
    # Lhat(1) = -(1/2) L_2, Lhat(-1) = -(1/2) L_{-2}; both factors cancel to 1/4
    v = M.vector([L(-2)])
    assert M.act_gen(L(2), v) * Fraction(1, 4) == ModuleVector({ONE: 2 * h})
    v = M.vector([L(-4)])
    assert M.act_gen(L(4), v) * Fraction(1, 4) == ModuleVector({ONE: 4 * h + l0 / 2})
    G2 = GapVirasoro(2)
    assert not M.act(element(G2, (1, G2.C(1))), v)
    assert M.act(element(G2, (1, G2.C(0))), v) == v * (4 * l0)


def test_verma_zero_mode_is_the_weight():
    M = VermaModule(3, 2, Fraction(1, 3))
    assert M.act_gen(L(0), M.cyclic()) * Fraction(-1, 3) == M.cyclic() * Fraction(1, 3)
    # positive modes kill the highest-weight vector
    assert all(not M.act_gen(L(m), M.cyclic()) for m in range(1, 10))


def test_graded_dim_examples():
    two = graded_dim_enumeration(2, 2)
    assert [two[Fraction(n, 2)] for n in range(5)] == [1, 1, 2, 3, 5]
    three = graded_dim_generating(3, 1)
    assert [three[Fraction(n, 3)] for n in range(4)] == [1, 1, 2, 3]
    for p in (2, 3, 4, 5):
        assert graded_dim_enumeration(p, 0) == {Fraction(0): 1}


@pytest.mark.parametrize("p", [2, 3, 4])
def test_graded_dims_are_partition_numbers(p):
    """Every positive multiple of 1/p is the grade of exactly one rescaled lowering generator,
    so the dimension at grade n/p is the number of partitions of n."""
    enum, gen = graded_dim_enumeration(p, 4), graded_dim_generating(p, 4)
    assert enum == gen
    for q, dim in enum.items():
        n = int(q * p)
        assert dim == int(sympy.partition(n))
    M = VermaModule(p, 0, 0)
    for n in range(0, 9):
        assert len(M.graded_basis(n)) == int(sympy.partition(n))


def test_singular_vector_examples():
    for p, l0, h in ((2, 0, 0), (2, Fraction(1, 2), 3), (3, 1, Fraction(-2, 5)), (4, Fraction(7, 2), 1)):
        M = VermaModule(p, l0, h)
        sols = singular_vectors(M, Fraction(1, p))
        assert len(sols) == 1
        assert set(sols[0].keys()) == {((L(-1),), ())}
    with pytest.raises(ValueError):
        singular_vectors(VermaModule(2, 0, 0), 0)
    with pytest.raises(ValueError):
        singular_vectors(VermaModule(2, 0, 0), Fraction(1, 3))


def test_every_first_level_twisted_mode_is_singular():
    # brackets of Ihat^i(-1) with raising modes are central C_i (i >= 1), which act by 0
    M = VermaModule(3, Fraction(1, 3), Fraction(2, 9))
    sols = singular_vectors(M, Fraction(2, 3))
    keys = {k for v in sols for k in v.keys()}
    assert len(sols) == 2 and keys == {((L(-2),), ()), ((L(-1), L(-1)), ())}
    sols = singular_vectors(VermaModule(2, Fraction(1, 3), Fraction(2, 9)), 1)
    assert [set(v.keys()) for v in sols] == [{((L(-1), L(-1)), ())}]


def vacuum_oracle(p: int, upto: int) -> dict:
    q = sympy.Symbol("q")
    prod = 1
    for m in range(2, upto + 1):
        prod *= 1 / (1 - q ** m)
    for k in range(1, upto + 1):
        prod *= (1 / (1 - q ** k)) ** (p - 1)
    ser = sympy.series(prod, q, 0, upto + 1).removeO()
    return {n: int(ser.coeff(q, n)) for n in range(upto + 1)}


@pytest.mark.parametrize("p", [2, 3])
def test_vacuum_graded_dims(p):
    V = VacuumNpModule(p, Fraction(3, 2))
    dims = vacuum_graded_dims(V, 4)
    assert dims == vacuum_oracle(p, 4)
    assert dims[1] == p - 1


def test_vacuum_examples():
    l0 = Fraction(3, 2)
    V = VacuumNpModule(2, l0)
    assert vacuum_graded_dims(V, 2) == {0: 1, 1: 1, 2: 3}
    v = V.vector([Gen("T", -2)])
    assert V.act_gen(Gen("T", 2), v) == V.cyclic() * (l0 / 2)
    assert not V.act_gen(Gen("T", 1), V.cyclic())
    assert not V.act_gen(Gen("N", 0, 1), V.cyclic())
    assert not V.act_gen(Gen("T", -1), V.cyclic())


R_SPEC = RSpec(3, (0, -1), {1: 2, 2: 3}, {})


@pytest.fixture(scope="module")
def ind_r():
    return induced_r(R_SPEC)


def test_degree_examples(ind_r):
    assert degree(ind_r, ind_r.cyclic()) == (Z, Z)
    v = ind_r.vector([L(-1)]) + ind_r.vector([L(-3)])
    assert degree(ind_r, v) == (Z, e(-3))
    v = ind_r.vector([L(-1), L(-3)]) + ind_r.vector([L(-2), L(-3)])
    assert degree(ind_r, v) == (e(-2), e(-3))
    with pytest.raises(ModuleError):
        degree(ind_r, ModuleVector())


def test_reduction_examples(ind_r):
    op, w, step = reduce_once(ind_r, ind_r.vector([L(-3)]))
    assert (op, step.case) == (L(4), 1)
    assert w == ModuleVector({((), 0): Fraction(-8)})
    op, w, step = reduce_once(ind_r, ind_r.vector([L(-1)]))
    assert (op, step.case) == (L(6), 2)
    assert w == ModuleVector({((), 0): Fraction(-3)})
    with pytest.raises(ModuleError):
        reduce_once(ind_r, ind_r.cyclic())


def test_reduce_to_base_examples(ind_r):
    t = reduce_to_base(ind_r, ind_r.cyclic() * 5)
    assert t.result == ModuleVector({0: Fraction(5)}) and t.step_count == 0
    t = reduce_to_base(ind_r, ind_r.vector([L(-3)]))
    assert t.step_count == 1 and t.result
    v = ind_r.vector([L(-1), L(-3)])
    t = reduce_to_base(ind_r, v, strict=True)
    assert t.result and t.step_count == 2
    with pytest.raises(ModuleError):
        reduce_to_base(ind_r, ModuleVector())


def test_extraction_of_induced_r(ind_r):
    ex = extract_category_N(ind_r, 3, 12)
    assert ex.found and ex.r == (0, 0, 1)
    assert ex.minimal_checked and all(ex.injective.values())
    # 1 (x) R sits inside the extracted space
    from gapvira.linalg import rank
    span = [dict(v.items()) for v in ex.basis]
    for n in range(4):
        assert rank(span + [{((), n): 1}]) == rank(span)


def test_extraction_of_verma_contains_vacuum():
    M = VermaModule(2, Fraction(1, 2), 3)
    ex = extract_category_N(M, 3, 8)
    assert ex.found
    from gapvira.linalg import rank
    span = [dict(v.items()) for v in ex.basis]
    assert rank(span + [{ONE: 1}]) == rank(span)


def test_extraction_of_empty_truncation(ind_r):
    ex = extract_category_N(ind_r, -1, 6)
    assert not ex.found and ex.r is None


@pytest.mark.parametrize("module", [VermaModule(2, Fraction(1, 2), 3), VermaModule(3, 1, Fraction(1, 5)),
                                    induced_r(R_SPEC), VacuumNpModule(3, 2)], ids=lambda m: m.name)
@settings(max_examples=40)
@given(seed=st.integers(0, 10 ** 6))
def test_module_axiom(module, seed):
    rng = random.Random(seed)
    v = random_vector(module, rng, 3)
    x, y = random_generator(module, rng), random_generator(module, rng)
    assert not module_axiom_residual(module, x, y, v)


@pytest.mark.parametrize("module", [VermaModule(2, 0, 1), induced_r(R_SPEC), VacuumNpModule(2, 1)],
                         ids=lambda m: m.name)
def test_restrictedness_witness(module):
    rng = random.Random(3)
    for _ in range(10):
        v = random_vector(module, rng, 3)
        if not v:
            continue
        w = restricted_witness(module, v, window=8)
        assert w.ok and w.minimal <= w.bound
