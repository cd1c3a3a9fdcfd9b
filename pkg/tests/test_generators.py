from fractions import Fraction as F

import pytest

from leontief import build_hypergraph, check_gainfree, normalize, solve, validate
from leontief.formats import emit_instance
from leontief.generators import gen_dc, gen_expfamily, gen_integral_horn, gen_random_gainfree


def gainfree(inst):
    return check_gainfree(build_hypergraph(normalize(inst)[0])) is None


def test_dc_is_deterministic_and_unit_gain():
    a = emit_instance(gen_dc(5, 9, (-3, 7), seed=11))
    assert a == emit_instance(gen_dc(5, 9, (-3, 7), seed=11))
    inst = gen_dc(5, 9, (-3, 7), seed=11)
    assert validate(inst) == [] and gainfree(inst)
    assert all(abs(v) == 1 for v in inst.entries.values())


def test_expfamily_shape():
    inst = gen_expfamily(1)
    assert inst.dense() == [[-2, 1, 1, 0], [1, F(-1, 2), 0, 1]]
    assert inst.c == (1, F(-1, 2), 0, 0)
    assert gainfree(inst)


@pytest.mark.parametrize("a", [1, 7, 10**6])
def test_expfamily_solution(a):
    out = solve(gen_expfamily(a))
    assert out.tag == "optimal"
    assert out.y == (F(-a, a + 1), 0)


def test_random_gainfree_contract():
    for seed in range(40):
        inst = gen_random_gainfree(5, 9, seed)
        assert validate(inst) == [] and gainfree(inst)
        assert all(abs(v.numerator) <= 9 and v.denominator <= 9 for v in inst.entries.values())
    assert gen_random_gainfree(4, 6, seed=3) == gen_random_gainfree(4, 6, seed=3)


def test_integral_horn_contract():
    inst = gen_integral_horn(4, 10, seed=2)
    assert all(v.denominator == 1 for v in inst.entries.values())
    assert all(v.denominator == 1 for v in inst.c)
    assert validate(inst) == [] and gainfree(inst)


def test_bad_sizes():
    with pytest.raises(ValueError):
        gen_expfamily(0)
    with pytest.raises(ValueError):
        gen_random_gainfree(0, 3)
