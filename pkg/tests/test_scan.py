"""Trace curves, critical parameters, finite-order parameters, monotonicity."""

import csv

import numpy as np
import pytest

from chtriangle.core import ElementKind
from chtriangle.errors import NoTransition
from chtriangle.family import INF, TriangleSpec, build, gram_for, valid_t_range
from chtriangle.scan import (
    critical_interval,
    find_order_params,
    group_type,
    monotonicity_report,
    trace_curve,
    write_trace_csv,
)
from chtriangle.words import evaluate, parse_word, wa_wb

import oracles

IDEAL = TriangleSpec(INF, INF, INF)
S444 = TriangleSpec(4, 4, 4)


@pytest.fixture(scope="module")
def ideal_scan():
    return critical_interval(IDEAL, grid=512)

@pytest.fixture(scope="module")
def s444_scan():
    return critical_interval(S444, grid=512)


class TestTraceOracles:
    """The matrix pipeline must reproduce the closed-form trace functions."""

    @pytest.mark.parametrize("spec", [IDEAL, S444, TriangleSpec(5, 5, 5), TriangleSpec(4, 4, INF)])
    def test_traces_match_gram_formulas(self, spec):
        wa, wb = wa_wb(spec)
        _, t_hi = valid_t_range(spec)
        for t in np.linspace(0.0, t_hi, 9):
            f = build(spec, float(t), verify=False)
            g = gram_for(spec, float(t))
            assert abs(evaluate(f, wb).trace - oracles.trace_tripod(g)) < 1e-11
            assert abs(evaluate(f, wa).trace - oracles.trace_bent(g)) < 1e-11

    def test_ideal_tripod_trace_closed_form(self):
        for t in np.linspace(0.0, 3.0, 11):
            g = gram_for(IDEAL, float(t))
            assert abs(oracles.trace_tripod(g) - (-9.0 - 8.0 * np.exp(-1j * t))) < 1e-12


class TestTraceCurve:
    def test_ideal_tripod_starts_loxodromic(self):
        curve = trace_curve(IDEAL, (1, 2, 3), 16)
        first = curve.points[0]
        assert first.cls.kind is ElementKind.LOXODROMIC
        assert first.cls.length > 0

    def test_empty_word_constant_identity(self):
        curve = trace_curve(S444, (), 8)
        assert all(abs(p.trace - 3.0) < 1e-12 for p in curve.points)
        assert all(p.cls.kind is ElementKind.IDENTITY for p in curve.points)

    def test_discriminant_continuity(self):
        curve = trace_curve(IDEAL, (1, 2, 3), 512)
        fs = np.array([p.disc for p in curve.points])
        jumps = np.abs(np.diff(fs))
        scale = fs.max() - fs.min()
        assert jumps.max() < 0.02 * scale

    def test_truncation_flag(self):
        curve = trace_curve(S444, (1, 2), 8, t_hi=3.0)
        assert curve.truncated
        _, t_hi = valid_t_range(S444)
        assert curve.t_hi == t_hi


class TestCriticalInterval:
    def test_ideal(self, ideal_scan):
        res = ideal_scan
        assert res.transition
        assert res.degenerate_word == "B"
        assert abs(res.critical_t - oracles.IDEAL_CRITICAL_T) < 1e-9
        assert res.critical_class.kind is ElementKind.PARABOLIC
        m = evaluate(build(IDEAL, res.critical_t, verify=False), (1, 2, 3))
        assert abs(oracles.goldman_disc(m.trace)) < 1e-9

    def test_ideal_grid_stability(self, ideal_scan):
        res2 = critical_interval(IDEAL, grid=1024)
        assert abs(res2.critical_t - ideal_scan.critical_t) < 1e-9

    def test_444_type_a(self, s444_scan):
        res = s444_scan
        assert res.degenerate_word == "A"
        assert group_type(res) == "A"
        assert abs(res.critical_t - oracles.T444_CRITICAL_A) < 1e-9
        assert res.critical_class.kind is ElementKind.PARABOLIC
        # the other word crosses strictly later
        assert res.crossings["B"] is not None
        assert abs(res.crossings["B"] - oracles.T444_CRITICAL_B) < 1e-9
        assert res.crossings["B"] > res.critical_t

    def test_right_angle_family_has_no_transition(self):
        res = critical_interval(TriangleSpec(2, 3, 7), grid=256)
        assert not res.transition
        with pytest.raises(NoTransition):
            group_type(res)

    def test_large_orders_type_b(self):
        # conjectured type B regime; recorded as a numerical observation
        res = critical_interval(TriangleSpec(18, 18, 18), grid=512)
        assert group_type(res) == "B"

    def test_invariant_not_elliptic_below_critical(self, ideal_scan):
        for label in ("A", "B"):
            for p in ideal_scan.samples[label]:
                if p.t < ideal_scan.critical_t - 1e-6:
                    assert p.cls.kind is not ElementKind.ELLIPTIC

    def test_root_bracketing(self, ideal_scan, s444_scan):
        # the refined function changes sign across the reported root.  The
        # bent word's trace is real with a simple zero of (trace - 3), testable
        # at 1e-12 offsets; the tripod word's discriminant slope makes its
        # sign flip measurable just above the roundoff floor.
        t = s444_scan.critical_t
        tr = lambda tt: evaluate(build(S444, tt, verify=False), (1, 3, 2, 3)).trace.real
        assert (tr(t - 1e-12) - 3.0) * (tr(t + 1e-12) - 3.0) < 0
        t = ideal_scan.critical_t
        f = lambda tt: oracles.goldman_disc(
            evaluate(build(IDEAL, tt, verify=False), (1, 2, 3)).trace
        )
        assert f(t - 1e-9) > 0 > f(t + 1e-9)


@pytest.fixture(scope="module")
def params(s444_scan):
    return find_order_params(S444, parse_word("1213"), 5, 12, scan=s444_scan)


class TestOrderParams:
    def test_all_found_with_exact_orders(self, params):
        assert [p.j for p in params] == list(range(5, 13))
        assert all(p.order_verified for p in params)

    def test_against_closed_form(self, params):
        for p in params:
            assert abs(p.t - oracles.t444_order_param(p.j)) < 1e-9

    def test_monotone_towards_critical(self, params, s444_scan):
        ts = [p.t for p in params]
        assert all(a > b for a, b in zip(ts, ts[1:]))
        assert all(t > s444_scan.critical_t for t in ts)

    def test_tripod_state_recorded(self, params):
        # the tripod word is loxodromic at every order parameter except the
        # first one, where it has already turned elliptic (of finite order)
        by_j = {p.j: p for p in params}
        assert not by_j[5].wb_loxodromic
        assert by_j[5].wb_kind == "elliptic"
        for j in range(6, 13):
            assert by_j[j].wb_loxodromic

    def test_grid_consistency(self, params, s444_scan):
        dense = find_order_params(S444, parse_word("1213"), 7, 8, scan=s444_scan, grid=1024)
        by_j = {p.j: p for p in params}
        for p in dense:
            assert abs(p.t - by_j[p.j].t) < 1e-9

    def test_power_is_projective_identity(self, params):
        from chtriangle.core import proj_order

        p7 = next(p for p in params if p.j == 7)
        m = evaluate(build(S444, p7.t, verify=False), parse_word("1213"))
        assert proj_order(m, 7) == 7

    def test_jmin_validation(self, s444_scan):
        with pytest.raises(ValueError):
            find_order_params(S444, parse_word("1213"), 2, 5, scan=s444_scan)


class TestMonotonicity:
    def test_ideal_tripod_decreases_to_zero(self, ideal_scan):
        rep = monotonicity_report(IDEAL, 4, 64, scan=ideal_scan)
        assert rep.violations == []
        lam = rep.lambda_curves["B"]
        assert lam[0] > 5.0
        assert lam[-1] < 0.05
        assert all(a >= b - 1e-9 for a, b in zip(lam, lam[1:]))

    def test_parabolic_words_excluded(self, ideal_scan):
        rep = monotonicity_report(IDEAL, 4, 32, scan=ideal_scan)
        excluded_words = {w for w, _ in rep.excluded}
        assert "12" in excluded_words  # asymptotic mirrors: parabolic at every t
        assert "1" in excluded_words  # generators are elliptic

    def test_deterministic(self, ideal_scan):
        a = monotonicity_report(IDEAL, 3, 16, scan=ideal_scan)
        b = monotonicity_report(IDEAL, 3, 16, scan=ideal_scan)
        assert a.checked == b.checked and a.violations == b.violations


class TestCsv:
    def test_single_curve_columns(self, tmp_path):
        path = tmp_path / "curve.csv"
        write_trace_csv(trace_curve(S444, (1, 3, 2, 3), 16), str(path))
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["t", "re(trace)", "im(trace)", "discriminant", "class", "lambda_or_angle"]
        assert len(rows) == 17
        floats = [float(rows[1][k]) for k in (0, 1, 2, 3, 5)]
        assert floats[0] == 0.0

    def test_multi_curve_word_column(self, tmp_path):
        path = tmp_path / "curves.csv"
        wa, wb = wa_wb(S444)
        write_trace_csv(
            {"A": trace_curve(S444, wa, 8), "B": trace_curve(S444, wb, 8)}, str(path)
        )
        with open(path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0][0] == "word"
        assert {r[0] for r in rows[1:]} == {"1323", "123"}
