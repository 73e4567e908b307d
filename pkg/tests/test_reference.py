import math

import pytest

from fraclap import DomainError, EvalConfig, NoOracleError, Params, convergence_study, fit_rate, p2_exact, x0_exact

# 40-digit mpmath quadrature of 2/(sp) + 2 int_0^1 (1 - (1 - y^m)^s)^(p-1) / y^(1+sp) dy
MP_X0 = {
    (0.2, 3.0): 3.4253130718783748769,
    (2.0 / 15.0, 4.0): 3.7625334572369126643,
    (0.4, 3.0): 1.9910516698159225283,
    (0.5, 4.0): 1.2876110196153101423,
    (7.0 / 12.0, 3.0): 1.8890602274371832629,
}


def test_p2_exact_values():
    assert p2_exact(0.5) == pytest.approx(math.pi, rel=1e-15)
    assert p2_exact(0.2) == pytest.approx(5.3447966605779753105, rel=1e-14)
    assert p2_exact(0.4) == pytest.approx(p2_exact(0.6), rel=1e-14)
    with pytest.raises(DomainError):
        p2_exact(1.0)


@pytest.mark.parametrize("key", sorted(MP_X0))
def test_x0_exact_against_multiprecision(key):
    assert x0_exact(Params(*key), 1e-12) == pytest.approx(MP_X0[key], abs=1e-11)


def test_x0_exact_published_values():
    assert x0_exact(Params(0.2, 3.0)) == pytest.approx(3.4253, abs=1e-4)
    assert x0_exact(Params(2.0 / 15.0, 4.0)) == pytest.approx(3.7625, abs=1e-4)


@pytest.mark.parametrize("s", [0.2, 0.4, 0.5, 0.7, 7.0 / 12.0])
def test_x0_exact_agrees_with_p2_formula(s):
    assert abs(x0_exact(Params(s, 2.0), 1e-10) - p2_exact(s)) <= 1e-8


def test_x0_exact_tolerance_floor():
    with pytest.raises(DomainError):
        x0_exact(Params(0.3, 3.0), 1e-13)


def test_fit_rate_recovers_power_law():
    ns = [16, 32, 64, 128]
    assert fit_rate(ns, [3.0 * n**-1.7 for n in ns]) == pytest.approx(1.7, rel=1e-12)


def test_fit_rate_skips_noise_floor():
    assert fit_rate([8, 16, 32, 64], [1e-3, 1e-15, 1e-16, 1e-4]) is None
    assert fit_rate([8, 16, 32, 64], [8e-3, 1e-3, 1.25e-4, 1e-16]) == pytest.approx(3.0, rel=1e-12)


def test_convergence_requires_oracle():
    with pytest.raises(NoOracleError):
        convergence_study(Params(0.4, 3.0), 0.5, [16, 32])


def test_convergence_requires_sorted_orders():
    with pytest.raises(DomainError):
        convergence_study(Params(0.4, 2.0), 0.0, [32, 16])


def test_convergence_p2_decay():
    rep = convergence_study(Params(0.4, 2.0), 0.0, [16, 32, 64, 128, 256])
    errs = [e.abs_error for e in rep.entries]
    assert [e.n for e in rep.entries] == [16, 32, 64, 128, 256]
    assert errs[-1] <= 5e-6 and errs[-1] <= errs[0]
    assert rep.fitted_rate > 0.0
    assert rep.oracle_kind == "p2_exact"


def test_convergence_x0_and_x05_comparable():
    ns = [64, 128, 256]
    a = convergence_study(Params(0.5, 2.0), 0.0, ns)
    b = convergence_study(Params(0.5, 2.0), 0.5, ns)
    for ea, eb in zip(a.entries, b.entries):
        assert 0.1 <= ea.abs_error / eb.abs_error <= 10.0


def test_convergence_rate_for_regular_case():
    rep = convergence_study(Params(2.0 / 15.0, 3.0), 0.0, [16, 32, 64, 128, 256])
    assert rep.oracle_kind == "x0_exact"
    assert rep.fitted_rate >= 0.5


def test_convergence_keeps_other_config_fields():
    rep = convergence_study(Params(0.3, 2.0), 0.2, [32, 64], EvalConfig(epsilon=0.01))
    assert all(e.abs_error < 1e-3 for e in rep.entries)
