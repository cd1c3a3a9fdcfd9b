from fractions import Fraction as F

import pytest

from cases import chain, cycle4, fr, half_cycle, tri_bad, tri_ok, vec
from leontief import (
    BothInfeasible,
    DualInfeasible,
    Instance,
    NegativeB,
    NotGainfree,
    NotLeontief,
    Optimal,
    PrimalInfeasible,
    solve,
    verify_outcome,
)
from leontief.certify import (
    farkas_dual_violations,
    farkas_primal_violations,
    objective,
    outcome_violations,
    primal_feasible_violations,
    verify_dual_feasible,
    verify_farkas_dual,
    verify_farkas_primal,
    verify_primal_feasible,
)


def test_four_outcomes():
    assert solve(cycle4()) == DualInfeasible(fr(0, 0, 0, 1, 1, 1, 1), vec(7, e1=1, e2=1, e3=1, e7=3))
    assert solve(chain()) == DualInfeasible(fr(0, 1, 3, 8), fr(1, 2, 9, 23))
    assert solve(tri_bad()) == BothInfeasible(fr(1, F(1, 2), F(1, 6)), fr(1, 3, F(1, 2)))
    assert solve(tri_ok()) == PrimalInfeasible(fr(1, F(1, 2), F(1, 6)), fr(0, -3, 0))
    assert solve(tri_ok((0, 0, 0))) == Optimal(fr(0, 0, 0), fr(0, -3, 0))


def test_optimal_objectives_match():
    inst = Instance.from_dense([[1, 1, -1], [0, -1, 1]], [2, 1], [3, 1, 1])
    out = solve(inst)
    assert isinstance(out, Optimal)
    assert objective(inst, out) == sum(b * y for b, y in zip(inst.b, out.y))


def test_scaled_columns_round_trip():
    # same as tri_ok but first column doubled
    inst = Instance.from_dense([[-1, 0, 1], [2, F(-1, 3), 0], [0, 1, -6]], [0, 2, 0], [-6, 1, 2])
    out = solve(inst)
    assert verify_outcome(inst, out)


def test_empty_problem():
    inst = Instance(1, 0, {}, (0,), ())
    out = solve(inst)
    assert out == Optimal((), (F(0),))
    assert objective(inst, out) == 0


def test_input_errors():
    with pytest.raises(NotLeontief):
        solve(Instance.from_dense([[1], [1]], [0, 0], [0]))
    with pytest.raises(NegativeB):
        solve(Instance.from_dense([[1]], [-1], [0]))
    with pytest.raises(NotGainfree) as info:
        solve(half_cycle())
    assert info.value.witness.gain == 4


def test_verifiers_catch_tampering():
    inst = chain()
    r = list(fr(1, 2, 9, 23))
    assert verify_farkas_dual(inst, r)
    r[-1] = F(24)
    problems = farkas_dual_violations(inst, r)
    assert problems and problems[0].startswith("A r ≠ 0")
    assert not verify_primal_feasible(inst, fr(0, 1, 3, 9))
    assert primal_feasible_violations(inst, fr(-1, 0, 0, 0))[0].startswith("x has a negative entry")


def test_verifier_on_farkas_primal():
    inst = tri_ok()
    assert verify_farkas_primal(inst, fr(1, F(1, 2), F(1, 6)))
    assert farkas_primal_violations(inst, fr(0, 0, 0)) == ["z^T b = 0 is not positive"]
    assert verify_dual_feasible(inst, fr(0, -3, 0))
    assert not verify_dual_feasible(inst, fr(0, 0, 0))


def test_objective_mismatch_is_reported():
    inst = tri_ok((0, 0, 0))
    bad = Optimal(fr(0, 0, 0), fr(0, -3, 0))
    assert outcome_violations(inst, bad) == []
    inst2 = Instance.from_dense([[1]], [1], [2])
    assert outcome_violations(inst2, Optimal(fr(1), fr(1))) == ["objectives differ: c^T x = 2, b^T y = 1"]


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        verify_primal_feasible(chain(), fr(0, 1))


def test_more_verifier_cases():
    assert not verify_primal_feasible(chain(), fr(0, 0, 0, 0))
    assert verify_dual_feasible(Instance.from_dense([[1, -1]], [0], [2, 0]), fr(0))
    assert not verify_farkas_primal(tri_ok((0, 0, 0)), fr(1, F(1, 2), F(1, 6)))
    assert not verify_farkas_dual(chain(), fr(0, 0, 0, 0))
    assert verify_farkas_dual(tri_bad(), fr(1, 3, F(1, 2)))
    assert not verify_outcome(chain(), DualInfeasible(fr(0, 1, 3, 8), fr(1, 2, 9, 24)))


def test_gain_cycle_dual_is_infeasible_on_samples():
    import itertools

    inst = tri_bad()
    grid = [F(k, 2) for k in range(-8, 9)]
    assert not any(verify_dual_feasible(inst, y) for y in itertools.product(grid, repeat=3))


@pytest.mark.parametrize("factory", [cycle4, chain])
def test_unbounded_direction(factory):
    inst = factory()
    out = solve(inst)
    cx = sum(c * x for c, x in zip(inst.c, out.x))
    cr = sum(c * r for c, r in zip(inst.c, out.r))
    for lam in (0, 1, 10):
        point = tuple(x + lam * r for x, r in zip(out.x, out.r))
        assert verify_primal_feasible(inst, point)
        assert sum(c * p for c, p in zip(inst.c, point)) == cx + lam * cr
    assert cr < 0


def test_zero_rhs_objectives():
    inst = tri_ok((0, 0, 0))
    out = solve(inst)
    assert objective(inst, out) == 0 == sum(b * y for b, y in zip(inst.b, out.y))
