from fractions import Fraction as F

import pytest

from cases import GOLDEN_TRACES, chain, cycle4, fr, ma, tri_bad, tri_ok, vec
from leontief import Instance, build_hypergraph, normalize
from leontief.dual import (
    check_trace_invariants,
    dual_feasibility,
    dual_solution,
    farkas_dual,
    find_cycle,
    improvable_vertices,
    violated_headless_arcs,
)


def trace_of(inst):
    h = build_hypergraph(normalize(inst)[0])
    return h, dual_feasibility(h)


@pytest.mark.parametrize("name", sorted(GOLDEN_TRACES))
def test_golden_iterates(name):
    factory, ys, rs = GOLDEN_TRACES[name]
    h, t = trace_of(factory())
    for k, expected in ys.items():
        assert t.y[k] == expected, f"y^({k})"
    for (k, v), expected in rs.items():
        assert t.r_dense(k, v) == expected, f"r^({k})_v{v + 1}"
    check_trace_invariants(h, t)


def test_value_flags():
    assert not trace_of(cycle4())[1].value
    assert not trace_of(chain())[1].value
    assert not trace_of(tri_bad())[1].value
    assert trace_of(tri_ok())[1].value


def test_feasible_fixed_point_and_solution():
    h, t = trace_of(tri_ok())
    assert t.y[3] == t.y[2]
    assert dual_solution(h, t.y_final) == fr(0, -3, 0)


def test_dual_solution_refuses_infeasible_trace():
    h, t = trace_of(chain())
    with pytest.raises(ValueError):
        dual_solution(h, t.y_final)


def test_cycle_walk_closes_where_expected():
    h, t = trace_of(cycle4())
    (v, j), *_ = improvable_vertices(h, t.y_final)
    cyc, _ = find_cycle(h, t, v, j)
    # r* = r^(5)_{v2} - r^(2)_{v2}
    assert (cyc.t, cyc.s) == (5, 2)
    assert cyc.w[5] == cyc.w[2] == 1


def test_cycle_walk_three_vertex():
    h, t = trace_of(tri_bad())
    v, j = improvable_vertices(h, t.y_final)[0]
    cyc, _ = find_cycle(h, t, v, j)
    assert (cyc.t, cyc.s) == (4, 1) and cyc.w[1] == 1


@pytest.mark.parametrize(
    "factory, expected, cost",
    [
        (cycle4, vec(7, e1=1, e2=1, e3=1, e7=3), -1),
        (chain, fr(1, 2, 9, 23), -3),
        (tri_bad, fr(1, 3, F(1, 2)), -1),
    ],
)
def test_farkas_dual_golden(factory, expected, cost):
    inst = factory()
    h, t = trace_of(inst)
    r = farkas_dual(h, t)
    assert r == expected
    assert inst.matvec(r) == [0] * inst.m
    assert sum(c * x for c, x in zip(inst.c, r)) == cost


def test_chain_uses_headless_branch_not_cycle():
    h, t = trace_of(chain())
    assert improvable_vertices(h, t.y_final) == []
    assert h.arcs[0].head is None
    assert violated_headless_arcs(h, t.y_final) == [0]


def test_farkas_dual_refuses_feasible_trace():
    h, t = trace_of(tri_ok())
    with pytest.raises(ValueError):
        farkas_dual(h, t)


def test_lambda_is_rounded_up_to_keep_integrality():
    # single headless column: -2y <= -1, so y = M survives and any M >= 1/2 is
    # feasible; the smallest choice would give the fractional y* = 1/2
    inst = Instance.from_dense([[-2]], [0], [-1])
    h, t = trace_of(inst)
    assert t.value and t.y_final == (ma(1),)
    assert dual_solution(h, t.y_final) == (F(1),)


def test_lambda_zero_for_nonnegative_m_coefficients():
    # y1 <= 5 evaluated at y_m = (M): slack M - 5 has a positive M-coefficient
    h = build_hypergraph(Instance.from_dense([[1]], [0], [5]))
    with pytest.raises(ValueError):
        dual_solution(h, (ma(1),))
    assert dual_solution(h, (ma(1),), check=False) == (F(0),)


def test_lambda_zero_without_symbolic_slack():
    h, t = trace_of(Instance.from_dense([[1]], [0], [3]))
    assert dual_solution(h, t.y_final) == (F(3),)


def test_trivial_vertex_keeps_m():
    # vertex 2 has no incoming arc
    inst = Instance.from_dense([[1], [0]], [0, 0], [3])
    h, t = trace_of(inst)
    assert t.y_final == (ma(0, 3), ma(1))
    assert t.nontriv_final == (True, False)
    assert t.q == (1, 0)


def test_no_arcs_keeps_every_bound_symbolic():
    h, t = trace_of(Instance(2, 0, {}, (0, 0), ()))
    assert t.y_final == (ma(1), ma(1)) and t.value
    assert dual_solution(h, t.y_final) == (F(0), F(0))
