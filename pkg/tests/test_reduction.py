"""Degree-reduction steps on induced modules.

The predicted-degree rule is exact when the top term has a multiple-of-p
part, and for p = 2.  For p >= 3 the rule for the remaining case can miss the
prediction (a cross term from another support element survives); the
reduction still strictly lowers the degree, which is what termination and
nonvanishing need.
"""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gapvira.constructions.rmod import RSpec, induced_r
from gapvira.lie import Gen
from gapvira.modules.ind import ReductionError, degree, reduce_once, reduce_step, reduce_to_base, reduction_operator
from gapvira.modules.truncation import random_vector
from gapvira.pbw import ExponentVector, principal_key
from gapvira.suites import reduction_modules

L = lambda m: Gen("L", m)
MODULES = reduction_modules((2, 3))
IDS = [m.name for _, _, m in MODULES]


def _sample(module, seed, deg=4):
    rng = random.Random(seed)
    return random_vector(module, rng, deg, terms=rng.randint(1, 4))


@pytest.mark.parametrize("entry", MODULES, ids=IDS)
@settings(max_examples=40)
@given(seed=st.integers(0, 10 ** 6))
def test_multiple_of_p_case_lands_on_prediction(entry, seed):
    _, _, M = entry
    v = _sample(M, seed)
    if not v or M.base_part(v) is not None:
        return
    case, _, predicted = reduction_operator(M, degree(M, v))
    if case == 1:
        _, w, step = reduce_once(M, v)
        assert w and step.degree_after == predicted


@pytest.mark.parametrize("entry", [m for m in MODULES if m[1].p == 2], ids=lambda e: e[2].name)
@settings(max_examples=40)
@given(seed=st.integers(0, 10 ** 6))
def test_p2_reduction_is_exact(entry, seed):
    _, _, M = entry
    v = _sample(M, seed)
    if not v:
        return
    trace = reduce_to_base(M, v, strict=True)
    assert trace.result


@pytest.mark.parametrize("entry", MODULES, ids=IDS)
@settings(max_examples=40)
@given(seed=st.integers(0, 10 ** 6))
def test_reduction_reaches_nonzero_base_vector(entry, seed):
    _, _, M = entry
    v = _sample(M, seed)
    if not v:
        return
    trace = reduce_to_base(M, v)
    assert trace.result
    assert trace.fallbacks == 0
    keys = [principal_key(s.degree_before) for s in trace.steps]
    assert keys == sorted(keys, reverse=True) and len(set(keys)) == len(keys)


@pytest.fixture(scope="module")
def counterexample():
    M = induced_r(RSpec(3, (0, 0), {1: 2, 2: 3}, {}))
    v = (M.vector([L(-1), L(-1)], 0, 4) + M.vector([L(-2)], 2, -5)
         + M.vector([], 1, 5) + M.vector([], 4, 1))
    return M, v


def test_off_prediction_counterexample(counterexample):
    M, v = counterexample
    e = ExponentVector.unit
    assert degree(M, v) == (e(-2), ExponentVector())
    case, op, predicted = reduction_operator(M, degree(M, v))
    assert (case, op, predicted) == (2, L(3), (ExponentVector(), ExponentVector()))
    # L_3 L_{-1}^2 (x) 1 = -6 L_{-1} (x) 1, so the image keeps an L_{-1}
    w = M.act_gen(L(3), v)
    assert w.coeff(((L(-1),), 0)) == Fraction(-24)
    assert degree(M, w) == (e(-1), ExponentVector())
    with pytest.raises(ReductionError):
        reduce_once(M, v)


def test_counterexample_still_reduces(counterexample):
    M, v = counterexample
    op, w, step, exact = reduce_step(M, v)
    assert op == L(3) and not exact
    assert principal_key(step.degree_after) < principal_key(step.degree_before)
    trace = reduce_to_base(M, v)
    assert trace.result and trace.off_prediction == 1 and trace.step_count == 2
    with pytest.raises(ReductionError):
        reduce_to_base(M, v, strict=True)
