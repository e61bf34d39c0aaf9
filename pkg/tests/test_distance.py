import random

import pytest

from skorodist.cadlag import ValueSpaceMismatch, compose_time_change, make_step
from skorodist.distance import (
    CertificateError,
    OracleInstance,
    OracleTooLarge,
    TimeChange,
    bisect_distance,
    candidate_thresholds,
    check_certificate,
    feasible,
    oracle_distance,
    oracle_feasible,
    skorohod_distance,
    uniform_distance,
)
from skorodist.pseudometric import Euclidean, coordinate_family
from skorodist.sampling import (
    random_step_function,
    random_time_change,
    scalar_level_value,
    unit_square_value,
)

ABS = Euclidean()  # |a - b| on scalars
MAXC = coordinate_family(2).metric({1, 2})

IND_05 = make_step([0.0, 0.5], [0.0, 1.0])
IND_06 = make_step([0.0, 0.6], [0.0, 1.0])
ZERO = make_step([0.0], [0.0])
ONE = make_step([0.0], [1.0])


def sampler_for(case):
    return (scalar_level_value, ABS) if case % 2 == 0 else (unit_square_value, MAXC)


# --- TimeChange -------------------------------------------------------------


def test_warp_deviation_examples():
    assert TimeChange.identity().warp_deviation() == 0.0
    lam = TimeChange(((0.0, 0.0), (0.6, 0.5), (1.0, 1.0)))
    assert lam.warp_deviation() == pytest.approx(0.1, abs=1e-12)
    lam2 = TimeChange(((0.0, 0.0), (0.25, 0.5), (1.0, 1.0)))
    assert lam2.warp_deviation() == 0.25


def test_time_change_validation():
    with pytest.raises(CertificateError):
        TimeChange(((0.0, 0.0), (0.5, 0.5)))  # does not end at (1,1)
    with pytest.raises(CertificateError):
        TimeChange(((0.0, 0.0), (0.6, 0.5), (0.4, 0.7), (1.0, 1.0)))
    with pytest.raises(CertificateError):
        TimeChange(((0.0, 0.0), (0.5, 0.5), (0.5, 0.6), (1.0, 1.0)))


def test_time_change_inverse_and_compose():
    rng = random.Random(0)
    for _ in range(20):
        lam = random_time_change(rng)
        inv = lam.inverse()
        for t in (0.0, 0.2, 0.5, 0.83, 1.0):
            assert inv(lam(t)) == pytest.approx(t, abs=1e-12)
            assert lam.inverse_at(lam(t)) == pytest.approx(t, abs=1e-12)
        other = random_time_change(rng)
        comp = lam.compose(other)
        for t in (0.0, 0.31, 0.77, 1.0):
            assert comp(t) == pytest.approx(lam(other(t)), abs=1e-12)


# --- feasibility ------------------------------------------------------------


def test_feasible_trivial_identity():
    ok, cert = feasible(IND_05, IND_05, 0.0, ABS)
    assert ok
    assert cert.warp_deviation() <= 1e-9


def test_feasible_indicator_threshold():
    # independent confirmation by the brute-force oracle first
    assert oracle_feasible(IND_05, IND_06, 0.09, ABS) is False
    assert oracle_feasible(IND_05, IND_06, 0.1, ABS) is True
    ok, _ = feasible(IND_05, IND_06, 0.09, ABS)
    assert not ok
    ok, cert = feasible(IND_05, IND_06, 0.1, ABS)
    assert ok
    assert cert.warp_deviation() <= 0.1 + 1e-9


def test_feasible_constants_are_lambda_invariant():
    ok, _ = feasible(ZERO, ONE, 0.5, ABS)
    assert not ok
    ok, _ = feasible(ZERO, ONE, 1.0, ABS)
    assert ok


def test_feasible_monotone_in_eps():
    rng = random.Random(1)
    for case in range(30):
        vs, d = sampler_for(case)
        x = random_step_function(rng, 4, vs)
        y = random_step_function(rng, 4, vs)
        prev = False
        for eps in candidate_thresholds(x, y, d):
            now, _ = feasible(x, y, eps, d)
            assert now or not prev  # once true, stays true
            prev = prev or now


def test_feasible_rejects_mismatched_spaces():
    with pytest.raises(ValueSpaceMismatch):
        feasible(ZERO, make_step([0.0], [[1.0, 2.0]]), 0.1, ABS)
    with pytest.raises(ValueError):
        feasible(ZERO, ONE, -0.1, ABS)


# --- skorohod_distance ------------------------------------------------------


def test_distance_to_self_is_zero_with_identity_certificate():
    rng = random.Random(2)
    for case in range(20):
        vs, d = sampler_for(case)
        x = random_step_function(rng, 4, vs)
        res = skorohod_distance(x, x, d)
        assert res.value == 0.0
        assert res.time_sup == 0.0
        assert res.value_sup == 0.0


def test_distance_indicator_shift_example():
    res = skorohod_distance(IND_05, IND_06, ABS)
    assert res.value == pytest.approx(0.1, abs=1e-9)
    assert res.certificate.knots == ((0.0, 0.0), (0.6, 0.5), (1.0, 1.0))
    assert res.time_sup == pytest.approx(0.1, abs=1e-9)
    assert res.value_sup == 0.0
    # independently by the oracle
    assert oracle_distance(IND_05, IND_06, ABS) == pytest.approx(0.1, abs=1e-9)


def test_distance_equal_jump_different_heights():
    x = make_step([0.0, 0.5], [0.0, 1.0])
    y = make_step([0.0, 0.5], [0.0, 0.8])
    res = skorohod_distance(x, y, ABS)
    assert res.value == abs(1.0 - 0.8)
    assert res.time_sup == 0.0  # identity alignment
    assert oracle_distance(x, y, ABS) == pytest.approx(res.value, abs=1e-9)


def test_distance_constants():
    assert skorohod_distance(ZERO, ONE, ABS).value == 1.0
    assert oracle_distance(ZERO, ONE, ABS) == pytest.approx(1.0, abs=1e-12)


def test_oracle_identical_inputs():
    assert oracle_distance(IND_05, IND_05, ABS) == 0.0
    assert oracle_distance(ZERO, ZERO, ABS) == 0.0


def test_uniform_distance_examples():
    assert uniform_distance(IND_05, IND_05, ABS) == 0.0
    assert uniform_distance(IND_05, IND_06, ABS) == 1.0  # they disagree on [0.5, 0.6)
    assert uniform_distance(ZERO, ONE, ABS) == 1.0


def test_oracle_guard():
    x = make_step([0.0] + [k / 20 for k in range(1, 7)], list(range(7)))
    y = make_step([0.0] + [k / 21 for k in range(1, 6)], list(range(6)))
    with pytest.raises(OracleTooLarge):
        oracle_distance(x, y, ABS)


# --- randomized properties --------------------------------------------------


def test_oracle_equivalence_and_candidate_agreement():
    rng = random.Random(3)
    for case in range(80):
        vs, d = sampler_for(case)
        x = random_step_function(rng, 3, vs)
        y = random_step_function(rng, 3, vs)
        res = skorohod_distance(x, y, d)
        oracle = OracleInstance(x, y, d)
        assert abs(res.value - oracle.distance()) <= 1e-9
        for eps in candidate_thresholds(x, y, d):
            assert feasible(x, y, eps, d)[0] == oracle.feasible_at(eps)


def test_bisection_cross_check():
    rng = random.Random(4)
    for case in range(40):
        vs, d = sampler_for(case)
        x = random_step_function(rng, 4, vs)
        y = random_step_function(rng, 4, vs)
        assert abs(bisect_distance(x, y, d) - skorohod_distance(x, y, d).value) <= 1e-9


def test_pseudometric_axioms_of_the_distance():
    rng = random.Random(5)
    for case in range(40):
        vs, d = sampler_for(case)
        x = random_step_function(rng, 4, vs)
        y = random_step_function(rng, 4, vs)
        z = random_step_function(rng, 4, vs)
        assert skorohod_distance(x, x, d).value == 0.0
        dxy = skorohod_distance(x, y, d).value
        dyx = skorohod_distance(y, x, d).value
        assert abs(dxy - dyx) <= 1e-9
        dxz = skorohod_distance(x, z, d).value
        dyz = skorohod_distance(y, z, d).value
        assert dxz <= dxy + dyz + 1e-9


def test_certificate_soundness_random():
    rng = random.Random(6)
    for case in range(60):
        vs, d = sampler_for(case)
        x = random_step_function(rng, 5, vs)
        y = random_step_function(rng, 5, vs)
        res = skorohod_distance(x, y, d)
        assert max(res.time_sup, res.value_sup) <= res.value + 1e-9
        ok, bound = check_certificate(x, y, d, res.value, res.certificate)
        assert ok and bound <= res.value + 1e-9


def test_bound_chain():
    rng = random.Random(7)
    for case in range(40):
        vs, d = sampler_for(case)
        x = random_step_function(rng, 4, vs)
        y = random_step_function(rng, 4, vs)
        assert skorohod_distance(x, y, d).value <= uniform_distance(x, y, d) + 1e-12
        lam = random_time_change(rng)
        warped = compose_time_change(x, lam)
        assert (
            skorohod_distance(warped, x, d).value <= lam.warp_deviation() + 1e-9
        )


def test_max_family_coherence():
    # larger index metric never shrinks the distance
    rng = random.Random(8)
    fam = coordinate_family(2)
    for _ in range(25):
        x = random_step_function(rng, 4, unit_square_value)
        y = random_step_function(rng, 4, unit_square_value)
        dists = {i: skorohod_distance(x, y, fam.metric(i)).value for i in fam.indices()}
        for i in fam.indices():
            for j in fam.indices():
                if i <= j:
                    assert dists[i] <= dists[j] + 1e-12


def test_representation_independence():
    # a redundant jump (equal adjacent values) does not change the distance
    rng = random.Random(9)
    for _ in range(25):
        x = random_step_function(rng, 3, scalar_level_value)
        y = random_step_function(rng, 3, scalar_level_value)
        padded_times = sorted(set(x.times) | {0.41})
        x_padded = make_step(padded_times, [x(t) for t in padded_times])
        a = skorohod_distance(x, y, ABS).value
        b = skorohod_distance(x_padded, y, ABS).value
        assert abs(a - b) <= 1e-9
