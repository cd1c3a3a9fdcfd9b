"""Property suites: MAffine laws and per-iteration trace invariants."""

from hypothesis import given, settings
from hypothesis import strategies as st

import laws
from laws import maffines, positive, rationals
from leontief import build_hypergraph, normalize, solve_traced, verify_outcome
from leontief.dual import check_trace_invariants
from leontief.generators import gen_random_gainfree
from sweep import sweep

LAWS = settings(max_examples=300, deadline=None)


@given(maffines, maffines, maffines)
@LAWS
def test_total_order(a, b, c):
    laws.check_total_order(a, b, c)


@given(maffines, maffines)
@LAWS
def test_lexicographic(a, b):
    laws.check_lexicographic(a, b)


@given(maffines, maffines, maffines)
@LAWS
def test_group_laws(a, b, c):
    laws.check_group(a, b, c)


@given(maffines, maffines, maffines, positive)
@LAWS
def test_order_compatibility(a, b, c, g):
    laws.check_order_compatibility(a, b, c, g)


@given(maffines, maffines, positive, positive)
@LAWS
def test_scaling(a, b, g, h):
    laws.check_scaling(a, b, g, h)


@given(maffines, maffines, rationals)
@LAWS
def test_evaluation(a, b, lam):
    laws.check_evaluation(a, b, lam)


@given(maffines, st.integers(-(10**12), 10**12))
@LAWS
def test_big_m(a, k):
    laws.check_big_m_dominates(a, k)


def test_trace_invariants_on_sweep():
    for seed, inst in sweep():
        res = solve_traced(inst)
        check_trace_invariants(res.hypergraph, res.trace)


@given(st.integers(1, 6), st.integers(1, 12), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_random_instances_verify(m, n, seed):
    inst = gen_random_gainfree(m, n, seed)
    res = solve_traced(inst)
    assert verify_outcome(inst, res.outcome)
    check_trace_invariants(res.hypergraph, res.trace)


@given(st.integers(1, 5), st.integers(1, 8), st.integers(0, 10**6), st.integers(1, 4))
@settings(max_examples=80, deadline=None)
def test_nontriv_ignores_lengths(m, n, seed, shift):
    # which vertices become nontrivial depends only on the matrix
    inst = gen_random_gainfree(m, n, seed)
    h = build_hypergraph(normalize(inst)[0])
    base = solve_traced(inst).trace.nontriv
    from leontief.dual import dual_feasibility

    assert dual_feasibility(h.with_lengths(shift)).nontriv == base
