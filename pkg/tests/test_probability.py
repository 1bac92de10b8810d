import math
from fractions import Fraction

import numpy as np
import pytest

from boxapprox.probability import (
    METHOD_MC,
    ProbabilityEstimate,
    _mc_flags_numpy,
    _mc_flags_python,
    exhaustive_dependent_subsets,
    f2_implies_real_check,
    prob_f2_exact,
    prob_real_exhaustive,
    prob_real_montecarlo,
    qpochhammer_half,
)


def test_prob_f2_exact_small_values():
    assert prob_f2_exact(1) == 1
    assert prob_f2_exact(2) == 1
    assert prob_f2_exact(3) == Fraction(4, 5)
    assert prob_f2_exact(3) == Fraction(1344, 1680)
    with pytest.raises(ValueError):
        prob_f2_exact(0)


def test_prob_f2_monotone_decreasing():
    values = [prob_f2_exact(n) for n in range(2, 16)]
    for a, b in zip(values, values[1:]):
        assert a > b


def test_prob_f2_limit():
    assert abs(prob_f2_exact(25) - Fraction(288, 1000)) < Fraction(1, 1000)


def test_qpochhammer_values():
    assert qpochhammer_half(1).value == Fraction(1, 2)
    assert qpochhammer_half(2).value == Fraction(3, 8)
    q40 = qpochhammer_half(40).value
    assert abs(float(q40) - 0.2887880951) < 1e-9
    with pytest.raises(ValueError):
        qpochhammer_half(0)


def test_qpochhammer_monotone_and_bounded():
    prev = None
    for terms in range(1, 50):
        val = qpochhammer_half(terms).value
        if prev is not None:
            assert val < prev
        assert val > Fraction(288, 1000)
        prev = val


def test_prob_real_exhaustive_small():
    assert prob_real_exhaustive(1) == 1
    assert prob_real_exhaustive(2) == 1
    assert prob_real_exhaustive(3) == Fraction(29, 35)
    assert prob_real_exhaustive(3) == Fraction(58, 70)
    with pytest.raises(ValueError):
        prob_real_exhaustive(0)
    with pytest.raises(ValueError):
        prob_real_exhaustive(6)


def test_n3_dependent_quadruples_structure():
    # 70 quadruples in total; exactly 12 are coplanar: 6 axis faces plus
    # 6 diagonal rectangles
    dependent = exhaustive_dependent_subsets(3)
    assert len(dependent) == 12
    axis_faces = 0
    for quad in dependent:
        coords = [v.coords() for v in quad]
        for axis in range(3):
            if len({c[axis] for c in coords}) == 1:
                axis_faces += 1
                break
    assert axis_faces == 6


def test_f2_bound_below_real():
    for n, real in [(1, prob_real_exhaustive(1)), (2, prob_real_exhaustive(2)),
                    (3, prob_real_exhaustive(3)), (4, prob_real_exhaustive(4))]:
        assert prob_f2_exact(n) <= real
    assert prob_f2_exact(3) < prob_real_exhaustive(3)


def test_f2_implies_real_exhaustive():
    assert f2_implies_real_check(1, "exhaustive") == 0
    assert f2_implies_real_check(2, "exhaustive") == 0
    assert f2_implies_real_check(3, "exhaustive") == 0
    with pytest.raises(ValueError):
        f2_implies_real_check(5, "exhaustive")
    with pytest.raises(ValueError):
        f2_implies_real_check(3, "bogus")
    with pytest.raises(ValueError):
        f2_implies_real_check(3, "sampled")


def test_f2_implies_real_sampled():
    assert f2_implies_real_check(8, "sampled", budget=2000, seed=5) == 0


def test_mc_engines_agree_per_trial():
    for n in [3, 4, 6]:
        np_flags = _mc_flags_numpy(n, 1500, 42)
        py_flags = _mc_flags_python(n, 1500, 42)
        assert (np_flags == np.array(py_flags)).all()


def test_mc_two_prime_branch_agrees():
    # n=16 exceeds the single-prime certification bound
    np_flags = _mc_flags_numpy(16, 300, 9)
    py_flags = _mc_flags_python(16, 300, 9)
    assert (np_flags == np.array(py_flags)).all()


def test_mc_engines_agree_for_negative_seed():
    np_flags = _mc_flags_numpy(5, 400, -7)
    py_flags = _mc_flags_python(5, 400, -7)
    assert (np_flags == np.array(py_flags)).all()


def test_mc_estimate_fields_and_determinism():
    est = prob_real_montecarlo(3, 4000, 11)
    assert isinstance(est, ProbabilityEstimate)
    assert est.method == METHOD_MC
    assert est.n == 3 and est.trials == 4000 and est.seed == 11
    assert 0.0 <= est.value <= 1.0
    assert est.std_error == pytest.approx(
        math.sqrt(est.value * (1 - est.value) / est.trials)
    )
    again = prob_real_montecarlo(3, 4000, 11)
    assert again.value == est.value
    assert prob_real_montecarlo(3, 4000, 11, engine="python").value == est.value


def test_mc_degenerate_dimensions():
    # n=1: the only 2-subset {0,1} is always affinely independent
    est = prob_real_montecarlo(1, 200, 3)
    assert est.value == 1.0
    # n=2: every 3 distinct square vertices are affinely independent
    est = prob_real_montecarlo(2, 200, 3)
    assert est.value == 1.0


def test_mc_validation():
    with pytest.raises(ValueError):
        prob_real_montecarlo(0, 10, 1)
    with pytest.raises(ValueError):
        prob_real_montecarlo(25, 10, 1)
    with pytest.raises(ValueError):
        prob_real_montecarlo(3, 0, 1)
    with pytest.raises(ValueError):
        prob_real_montecarlo(2, 10, 1, engine="numpy")
    with pytest.raises(ValueError):
        prob_real_montecarlo(3, 10, 1, engine="fancy")


def test_mc_close_to_exhaustive():
    est = prob_real_montecarlo(3, 20000, 1)
    truth = float(prob_real_exhaustive(3))
    assert abs(est.value - truth) <= 3 * est.std_error
