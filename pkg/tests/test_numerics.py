import math

import numpy as np
import pytest

from szegofock import (
    ConvergenceError,
    DomainError,
    QuadConfig,
    TruncationError,
    integrate_half_line,
    integrate_plane_polar,
    integrate_real_line,
    log_gamma,
    sum_series,
)

SQRT_PI = math.sqrt(math.pi)


def _check(res, expected, cfg):
    budget = max(cfg.abs_tol, cfg.rel_tol * abs(res.value))
    assert abs(res.value - expected) <= budget
    assert res.abs_err_estimate <= budget * 1.0000001
    assert res.n_evals > 0


def test_quad_config_validation():
    with pytest.raises(DomainError):
        QuadConfig(abs_tol=0.0)
    with pytest.raises(DomainError):
        QuadConfig(rel_tol=2.0)
    with pytest.raises(DomainError):
        QuadConfig(max_subdivisions=0)
    with pytest.raises(DomainError):
        QuadConfig(truncation_decay_threshold=0.0)


def test_real_line_examples(cfg):
    _check(integrate_real_line(lambda x: np.exp(-x * x), cfg), SQRT_PI, cfg)
    _check(integrate_real_line(lambda x: np.exp(-np.abs(x)), cfg), 2.0, cfg)
    _check(integrate_real_line(lambda x: np.exp(-x * x) * np.cos(x), cfg),
           SQRT_PI * math.exp(-0.25), cfg)


def test_half_line_examples(cfg):
    _check(integrate_half_line(lambda t: np.exp(-t), cfg), 1.0, cfg)
    _check(integrate_half_line(lambda t: t * np.exp(-2.0 * t), cfg), 0.25, cfg)
    _check(integrate_half_line(lambda t: np.sqrt(t) * np.exp(-t), cfg),
           SQRT_PI / 2.0, cfg)


def test_plane_polar_examples(cfg):
    _check(integrate_plane_polar(lambda r, th: np.exp(-2.0 * r * r) * np.ones_like(th), cfg),
           math.pi / 2.0, cfg)
    _check(integrate_plane_polar(lambda r, th: np.exp(-r) * np.ones_like(th), cfg),
           2.0 * math.pi, cfg)
    _check(integrate_plane_polar(lambda r, th: r * r * np.exp(-2.0 * r * r) * np.ones_like(th), cfg),
           math.pi / 4.0, cfg)


def test_plane_polar_angular_dependence(cfg):
    # int r^2 cos^2(theta) e^{-r^2} r dr dtheta = pi * Gamma(2) / 2
    res = integrate_plane_polar(
        lambda r, th: (r * np.cos(th)) ** 2 * np.exp(-r * r), cfg)
    _check(res, math.pi / 2.0, cfg)


def test_series_examples(cfg):
    _check(sum_series(lambda k: 0.5 ** k, cfg), 2.0, cfg)
    _check(sum_series(lambda k: (k + 1) * 0.5 ** k, cfg), 4.0, cfg)
    _check(sum_series(lambda k: 2.0 ** k / math.factorial(k) if k < 170 else 0.0, cfg),
           math.exp(2.0), cfg)


def test_series_all_zero_terms(cfg):
    res = sum_series(lambda k: 0.0, cfg)
    assert res.value == 0.0
    assert res.abs_err_estimate == 0.0


def test_series_divergence_detected(cfg):
    with pytest.raises(ConvergenceError):
        sum_series(lambda k: 1.0, cfg)


def test_log_gamma_examples():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(0.5) == pytest.approx(math.log(SQRT_PI), rel=1e-13)
    assert log_gamma(3.0) == pytest.approx(math.log(2.0), rel=1e-13)
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-2.5)


def test_log_gamma_functional_equation():
    for x in np.geomspace(1e-3, 1e3, 61):
        assert abs(log_gamma(x + 1.0) - log_gamma(x) - math.log(x)) < 1e-10


def test_log_gamma_against_stdlib():
    for x in np.geomspace(1e-3, 1e3, 101):
        ref = math.lgamma(x)
        assert log_gamma(x) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_monotone_refinement_on_closed_forms():
    cases = [
        (lambda x: np.exp(-x * x), SQRT_PI),
        (lambda x: np.exp(-np.abs(x)), 2.0),
        (lambda x: np.exp(-x * x) * np.cos(x), SQRT_PI * math.exp(-0.25)),
    ]
    for f, exact in cases:
        errs = []
        for tol in (1e-6, 5e-7, 2.5e-7, 1.25e-7):
            cfg = QuadConfig(abs_tol=tol, rel_tol=tol)
            errs.append(abs(integrate_real_line(f, cfg).value - exact))
        for a, b in zip(errs, errs[1:]):
            assert b <= a + 1e-15


def test_linearity(cfg):
    f = lambda x: np.exp(-x * x)
    g = lambda x: np.exp(-2.0 * x * x)
    a, b = 2.5, -1.25
    lhs = integrate_real_line(lambda x: a * f(x) + b * g(x), cfg)
    rf = integrate_real_line(f, cfg)
    rg = integrate_real_line(g, cfg)
    combined_err = (lhs.abs_err_estimate + abs(a) * rf.abs_err_estimate
                    + abs(b) * rg.abs_err_estimate)
    assert abs(lhs.value - (a * rf.value + b * rg.value)) <= combined_err + 1e-14


def test_truncation_error_on_non_decaying_integrand(cfg):
    with pytest.raises(TruncationError):
        integrate_real_line(lambda x: np.ones_like(x), cfg)


def test_convergence_error_on_subdivision_budget():
    cfg = QuadConfig(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=4)
    with pytest.raises(ConvergenceError):
        # needle too sharp for four panels at this tolerance
        integrate_real_line(lambda x: np.exp(-1e6 * x * x), cfg)


def test_complex_integrand(cfg):
    res = integrate_real_line(lambda x: np.exp(-x * x) * np.exp(1j * x), cfg)
    expected = SQRT_PI * math.exp(-0.25)
    assert abs(res.value - expected) < 1e-9
    assert abs(res.value.imag) < 1e-10
