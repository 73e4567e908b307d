import math

import mpmath
import numpy as np
import pytest

from fraclap import DomainError, PoleError, c_s, gamma, reflection_constant


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (5.0, 24.0), (0.5, math.sqrt(math.pi))])
def test_gamma_known_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)


def test_gamma_against_mpmath_on_working_range():
    for x in np.linspace(0.1, 30.0, 301):
        ref = float(mpmath.gamma(mpmath.mpf(float(x))))
        assert abs(gamma(x) / ref - 1.0) <= 1e-13, x


def test_gamma_negative_non_integer():
    assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-14)


def test_gamma_recurrence(rng):
    for x in rng.uniform(0.1, 20.0, 200):
        assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)


def test_reflection_constant_values():
    assert reflection_constant(0.5) == pytest.approx(math.pi, rel=1e-15)
    # 40-digit mpmath value of pi / sin(0.2 pi)
    assert reflection_constant(0.2) == pytest.approx(5.3447966605779753105, rel=1e-14)


def test_reflection_matches_gamma_product():
    assert gamma(0.3) * gamma(0.7) == pytest.approx(reflection_constant(0.3), rel=1e-12)
    for s in np.linspace(0.01, 0.99, 50):
        assert gamma(s) * gamma(1.0 - s) == pytest.approx(reflection_constant(s), rel=1e-12)


def test_reflection_symmetric_in_s(rng):
    for s in rng.uniform(0.001, 0.999, 100):
        assert reflection_constant(s) == pytest.approx(reflection_constant(1.0 - s), rel=1e-13)


@pytest.mark.parametrize("fn", [reflection_constant, c_s])
@pytest.mark.parametrize("s", [0.0, 1.0, -0.2, 1.5])
def test_domain_errors(fn, s):
    with pytest.raises(DomainError):
        fn(s)


def test_c_s_half_is_one_over_pi():
    # 2/sqrt(pi) * Gamma(1) / Gamma(1/2) * 1/2 = 1/pi
    assert c_s(0.5) == pytest.approx(1.0 / math.pi, rel=1e-14)


def test_c_s_against_multiprecision():
    assert c_s(0.25) == pytest.approx(0.19947114020071633897, rel=1e-12)


def test_c_s_vanishes_monotonically_at_zero():
    vals = [c_s(s) for s in (1e-2, 1e-4, 1e-6, 1e-8)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-7
