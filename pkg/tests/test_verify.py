import math

import pytest

from szegofock import (
    QuadConfig,
    moment_closed,
    moment_oracle,
    reproducing_check,
    run_suite,
    series_coefficient,
)

PI = math.pi


def test_moment_oracle_examples(cfg):
    assert moment_oracle(2, 1, 0, cfg) == pytest.approx(PI / 2.0, rel=1e-9)
    assert moment_oracle(2, 1, 1, cfg) == pytest.approx(PI / 4.0, rel=1e-9)
    expected = (PI / 2.0) * math.sqrt(PI / 2.0)
    assert moment_oracle(4, 1, 0, cfg) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0])
def test_moment_oracle_matches_closed_gamma_form(alpha, tau, cfg):
    for k in range(5):
        m = moment_oracle(alpha, tau, k, cfg)
        closed = moment_closed(alpha, tau, k)
        assert abs(m - closed) <= max(1e-8, 1e-8 * closed)


def test_normalization_is_tau_independent(cfg):
    for tau in (0.5, 2.0):
        for k in (0, 1, 2):
            prod = series_coefficient(3.0, tau, k) * moment_oracle(3.0, tau, k, cfg)
            assert prod == pytest.approx(1.0, abs=1e-9)


def test_reproducing_check_examples(cfg):
    assert reproducing_check(2, 1, 0, 0.5, cfg) <= 1e-6
    assert reproducing_check(2, 1, 2, 0.5 + 0.25j, cfg) <= 1e-6
    assert reproducing_check(4, 0.5, 1, 1.0, cfg) <= 1e-6
    with pytest.raises(ValueError):
        reproducing_check(2, 1, 9, 0.5, cfg)


def test_run_suite_normalization(cfg):
    rep = run_suite("normalization", cfg)
    assert rep.all_passed
    assert len(rep.cases) == 36
    assert any("2pi/alpha" in note for note in rep.notes)
    # prefactor notes recorded for every alpha
    assert len(rep.notes) == 4


def test_run_suite_unknown_name(cfg):
    with pytest.raises(ValueError):
        run_suite("bogus", cfg)


def test_report_lines_schema(cfg):
    rep = run_suite("bounds", cfg)
    lines = rep.lines()
    assert lines[0].startswith("name,expected_re")
    assert len(lines) == len(rep.cases) + 1
    for line in lines[1:]:
        parts = line.split(",")
        assert len(parts) == 7
        assert parts[-1] in ("True", "False")


def test_run_suite_all_passes():
    # lighter tolerances keep the full sweep quick; the acceptance module
    # runs the same suites at their contractual settings
    cfg = QuadConfig(abs_tol=1e-10, rel_tol=1e-8)
    rep = run_suite("all", cfg)
    failed = [c.name for c in rep.cases if not c.passed]
    assert not failed, failed
    assert len(rep.cases) > 60
