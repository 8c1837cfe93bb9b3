"""Parameter sweeps and root-finding along the deformation family.

Everything here reduces to one scalar function per word: the trace
discriminant as a function of the deformation parameter.  A coarse grid
brackets its sign changes and Brent's method sharpens them; loxodromic
stretches carry translation-length curves, elliptic stretches rotation-angle
curves whose rational values locate the finite-order parameters.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .config import DEFAULT, Config
from .core import (
    ElementKind,
    Isometry,
    IsometryClass,
    classify,
    discriminant,
    proj_order,
)
from .errors import Ambiguous, NoTransition
from .family import TriangleSpec, build, valid_t_range
from .words import (
    Word,
    conjugacy_key,
    enumerate_words,
    evaluate,
    wa_wb,
    word_str,
)

# two zero-crossings closer than this in t are reported as a tie
TIE_TOL = 1e-9
# width of the refined bracket around every reported root
ROOT_XTOL = 1e-13


def word_matrix(spec: TriangleSpec, t: float, w: Word, cfg: Config = DEFAULT) -> Isometry:
    return evaluate(build(spec, t, cfg, verify=False), w)


def _disc_at(spec: TriangleSpec, w: Word, cfg: Config):
    def f(t: float) -> float:
        return float(discriminant(word_matrix(spec, t, w, cfg).trace))

    return f


@dataclass(frozen=True)
class TracePoint:
    t: float
    trace: complex
    disc: float
    cls: IsometryClass

    def lambda_or_angle(self) -> float:
        if self.cls.kind is ElementKind.LOXODROMIC:
            return float(self.cls.length)
        if self.cls.kind is ElementKind.ELLIPTIC:
            return abs(self.cls.theta1)
        return 0.0

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "trace": [self.trace.real, self.trace.imag],
            "discriminant": self.disc,
            "class": self.cls.as_dict(),
            "lambda_or_angle": self.lambda_or_angle(),
        }


@dataclass(frozen=True)
class TraceCurve:
    spec: TriangleSpec
    word: Word
    points: list[TracePoint]
    t_lo: float
    t_hi: float
    truncated: bool

    def as_dict(self) -> dict:
        return {
            "spec": self.spec.label(),
            "word": word_str(self.word),
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "truncated": self.truncated,
            "points": [p.as_dict() for p in self.points],
        }


def trace_curve(
    spec: TriangleSpec,
    w: Word,
    grid: int,
    cfg: Config = DEFAULT,
    t_lo: float = 0.0,
    t_hi: float | None = None,
) -> TraceCurve:
    """Sample trace, discriminant and class of a word over the parameter range.

    A requested range reaching past the geometric one is truncated to it and
    flagged on the returned curve.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    _, hi_safe = valid_t_range(spec, cfg)
    truncated = t_hi is not None and t_hi > hi_safe
    hi = hi_safe if t_hi is None or truncated else t_hi
    pts = []
    for t in np.linspace(t_lo, hi, grid):
        m = word_matrix(spec, float(t), w, cfg)
        pts.append(
            TracePoint(
                t=float(t),
                trace=m.trace,
                disc=float(discriminant(m.trace)),
                cls=classify(m, cfg, validate=False),
            )
        )
    return TraceCurve(spec=spec, word=w, points=pts, t_lo=t_lo, t_hi=hi, truncated=truncated)


def _refine_crossing(spec: TriangleSpec, w: Word, a: float, b: float, cfg: Config) -> float:
    """Sharpen a bracketed positive-to-negative discriminant crossing.

    For words with real trace along the family (products of two complex
    reflections) the discriminant factors as (tau-3)^3 (tau+1), so its zero
    is a triple root and bisecting it directly drowns in roundoff; the
    simple-zero factor is bisected instead.  Complex-trace words cross with
    a simple zero and take the discriminant route.
    """
    ta = word_matrix(spec, a, w, cfg).trace
    tb = word_matrix(spec, b, w, cfg).trace
    if max(abs(ta.imag), abs(tb.imag)) < 1e-9:

        def real_trace(t: float) -> float:
            return word_matrix(spec, t, w, cfg).trace.real

        for shift in (-3.0, 1.0):
            fa, fb = ta.real + shift, tb.real + shift
            if fa == 0.0:
                return a
            if fa * fb < 0.0:
                return float(brentq(lambda t: real_trace(t) + shift, a, b, xtol=ROOT_XTOL))
    return float(brentq(_disc_at(spec, w, cfg), a, b, xtol=ROOT_XTOL))


def _first_crossing(
    spec: TriangleSpec, w: Word, ts: np.ndarray, fs: np.ndarray, cfg: Config
) -> float | None:
    """Smallest t where the discriminant passes from positive to negative.

    Straight sign flips are bracketed directly; a positive local minimum
    close to zero is refined by minimization in case the true curve dips
    below zero between grid points (a near-tangential crossing).
    """
    f = _disc_at(spec, w, cfg)
    for i in range(len(ts) - 1):
        if fs[i] > 0.0 and fs[i + 1] <= 0.0:
            if fs[i + 1] == 0.0:
                return float(ts[i + 1])
            return _refine_crossing(spec, w, float(ts[i]), float(ts[i + 1]), cfg)
        if (
            0 < i
            and fs[i] > 0.0
            and fs[i] < fs[i - 1]
            and fs[i] < fs[i + 1]
            and fs[i] < 1e-3 * max(1.0, abs(fs[0]))
        ):
            res = minimize_scalar(f, bounds=(float(ts[i - 1]), float(ts[i + 1])), method="bounded")
            if res.fun < -cfg.tol.cls:
                return _refine_crossing(spec, w, float(ts[i - 1]), float(res.x), cfg)
    return None


@dataclass(frozen=True)
class ScanResult:
    spec: TriangleSpec
    transition: bool
    critical_t: float | None
    degenerate_word: str | None  # "A" or "B"
    valid_range_end: float
    crossings: dict = field(default_factory=dict)  # word label -> t or None
    ambiguous: bool = False
    critical_class: IsometryClass | None = None
    samples: dict = field(default_factory=dict)  # word label -> list[TracePoint]

    @property
    def group_type(self) -> str | None:
        return self.degenerate_word if self.transition and not self.ambiguous else None

    def as_dict(self, with_samples: bool = True) -> dict:
        out = {
            "spec": self.spec.label(),
            "transition": self.transition,
            "critical_t": self.critical_t,
            "degenerate_word": self.degenerate_word,
            "group_type": self.group_type,
            "valid_range_end": self.valid_range_end,
            "crossings": self.crossings,
            "ambiguous": self.ambiguous,
            "critical_class": self.critical_class.as_dict() if self.critical_class else None,
        }
        if with_samples:
            out["samples"] = {k: [p.as_dict() for p in v] for k, v in self.samples.items()}
        return out


def critical_interval(spec: TriangleSpec, cfg: Config = DEFAULT, grid: int | None = None) -> ScanResult:
    """Locate the first parameter where one of the two governing words degenerates.

    Sweeps the discriminants of both distinguished words over the geometric
    range, brackets the first positive-to-negative crossing of each, and
    bisects to machine-level width.  The word with the smaller crossing names
    the endpoint; simultaneous crossings within tolerance are flagged
    ambiguous.  Returns a no-transition result when neither word ever turns
    elliptic.
    """
    grid = grid or cfg.grid
    wa, wb = wa_wb(spec)
    t_max, t_hi = valid_t_range(spec, cfg)
    ts = np.linspace(0.0, t_hi, grid)
    curves: dict[str, TraceCurve] = {}
    roots: dict[str, float | None] = {}
    for label, w in (("A", wa), ("B", wb)):
        curve = trace_curve(spec, w, grid, cfg, 0.0, t_hi)
        fs = np.array([p.disc for p in curve.points])
        roots[label] = _first_crossing(spec, w, ts, fs, cfg)
        curves[label] = curve

    found = {k: v for k, v in roots.items() if v is not None}
    if not found:
        return ScanResult(
            spec=spec,
            transition=False,
            critical_t=None,
            degenerate_word=None,
            valid_range_end=t_max,
            crossings=roots,
            samples={k: c.points for k, c in curves.items()},
        )
    label = min(found, key=found.get)
    t_star = found[label]
    ambiguous = len(found) == 2 and abs(found["A"] - found["B"]) < TIE_TOL
    w_star = wa if label == "A" else wb
    crit_cls = classify(word_matrix(spec, t_star, w_star, cfg), cfg, validate=False)
    return ScanResult(
        spec=spec,
        transition=True,
        critical_t=t_star,
        degenerate_word=label,
        valid_range_end=t_max,
        crossings=roots,
        ambiguous=ambiguous,
        critical_class=crit_cls,
        samples={k: c.points for k, c in curves.items()},
    )


def group_type(result: ScanResult) -> str:
    """Type A when the four-letter word degenerates first, B for the tripod word."""
    if not result.transition:
        raise NoTransition(f"{result.spec}: neither word degenerates in the valid range")
    if result.ambiguous:
        raise Ambiguous(
            f"{result.spec}: crossings {result.crossings} coincide within {TIE_TOL}"
        )
    return result.degenerate_word


@dataclass(frozen=True)
class OrderParam:
    j: int
    t: float
    word: Word
    k: int  # numerator of the rotation angle 2*pi*k/j that was hit
    order_verified: bool
    wb_kind: str
    wb_loxodromic: bool
    wb_length_or_order: float | int | None

    def as_dict(self) -> dict:
        return {
            "j": self.j,
            "t": self.t,
            "word": word_str(self.word),
            "k": self.k,
            "order_verified": self.order_verified,
            "wb_kind": self.wb_kind,
            "wb_loxodromic": self.wb_loxodromic,
            "wb_length_or_order": self.wb_length_or_order,
        }


def _rotation_angle(spec: TriangleSpec, w: Word, cfg: Config):
    """max |rotation angle| of the word where it is elliptic, else nan."""

    def theta(t: float) -> float:
        cls = classify(word_matrix(spec, t, w, cfg), cfg, validate=False)
        if cls.kind is not ElementKind.ELLIPTIC:
            return math.nan
        return max(abs(cls.theta1), abs(cls.theta2))

    return theta


def find_order_params(
    spec: TriangleSpec,
    w: Word,
    j_min: int,
    j_max: int,
    cfg: Config = DEFAULT,
    scan: ScanResult | None = None,
    grid: int = 512,
) -> list[OrderParam]:
    """Parameters past the critical point where a word has finite order j.

    Past the critical endpoint the word is elliptic; its rotation angle is a
    continuous function of the parameter, and order j is hit where the angle
    equals 2*pi*k/j with k coprime to j (smallest k first).  Each candidate
    root is confirmed by computing the projective order of the actual matrix;
    the state of the tripod word is recorded alongside.  Orders with no root
    in the geometric range are simply absent from the result.
    """
    if j_min < 3:
        raise ValueError("j_min must be >= 3")
    if scan is None:
        scan = critical_interval(spec, cfg)
    if not scan.transition:
        raise NoTransition(f"{spec}: no critical point, so no post-critical orders")
    _, t_hi = valid_t_range(spec, cfg)
    t_star = scan.critical_t
    theta = _rotation_angle(spec, w, cfg)
    ts = np.linspace(t_star + 1e-9, t_hi, grid)
    th = np.array([theta(float(t)) for t in ts])
    wb = wa_wb(spec)[1]

    out: list[OrderParam] = []
    for j in range(j_min, j_max + 1):
        for k in range(1, j // 2 + 1):
            if math.gcd(k, j) != 1:
                continue
            target = 2.0 * math.pi * k / j
            if target > math.pi:
                break
            t_j = _angle_root(theta, ts, th, target)
            if t_j is None:
                continue
            m = word_matrix(spec, t_j, w, cfg)
            got = proj_order(m, j + 1, cfg)
            if got != j:
                continue
            mb = classify(word_matrix(spec, t_j, wb, cfg), cfg, validate=False)
            out.append(
                OrderParam(
                    j=j,
                    t=t_j,
                    word=w,
                    k=k,
                    order_verified=True,
                    wb_kind=mb.kind.value,
                    wb_loxodromic=mb.kind is ElementKind.LOXODROMIC,
                    wb_length_or_order=mb.length
                    if mb.kind is ElementKind.LOXODROMIC
                    else mb.finite_order,
                )
            )
            break
    return sorted(out, key=lambda p: p.j)


def _angle_root(theta, ts: np.ndarray, th: np.ndarray, target: float) -> float | None:
    def h(t: float) -> float:
        return theta(t) - target

    for i in range(len(ts) - 1):
        a, b = th[i] - target, th[i + 1] - target
        if math.isnan(a) or math.isnan(b):
            continue
        if a == 0.0:
            return float(ts[i])
        if a * b < 0.0:
            return float(brentq(h, float(ts[i]), float(ts[i + 1]), xtol=ROOT_XTOL))
    return None


@dataclass(frozen=True)
class MonotonicityReport:
    spec: TriangleSpec
    max_len: int
    t_lo: float
    t_hi: float
    grid: int
    checked: list[str]  # conjugacy representatives that were loxodromic throughout
    excluded: list[tuple[str, str]]  # (word, reason)
    violations: list[dict]
    wa_wb_violations: list[dict]
    lambda_curves: dict  # word label -> list of lambda values (A/B only)

    def as_dict(self) -> dict:
        return {
            "spec": self.spec.label(),
            "max_len": self.max_len,
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "grid": self.grid,
            "checked": self.checked,
            "excluded": self.excluded,
            "violations": self.violations,
            "wa_wb_violations": self.wa_wb_violations,
            "lambda_curves": self.lambda_curves,
        }


def monotonicity_report(
    spec: TriangleSpec,
    max_len: int,
    grid: int,
    cfg: Config = DEFAULT,
    scan: ScanResult | None = None,
) -> MonotonicityReport:
    """Check that translation lengths never increase along the sub-critical range.

    Words are deduplicated up to conjugacy and inversion (the translation
    length is constant on those classes).  Words that are not loxodromic at
    every sampled parameter are excluded and listed with the offending class.
    The outcome is sampled evidence, not a proof.
    """
    if max_len < 3:
        raise ValueError("max_len must be >= 3")
    if scan is None:
        scan = critical_interval(spec, cfg)
    if scan.transition:
        end = scan.critical_t - max(1e-8, 1e-6 * scan.critical_t)
    else:
        _, end = valid_t_range(spec, cfg)
    ts = np.linspace(0.0, end, grid)

    reps: dict[Word, None] = {}
    for w in enumerate_words(max_len):
        if not w:
            continue
        key = conjugacy_key(w)
        if key:
            reps.setdefault(key, None)
    words = sorted(reps, key=lambda w: (len(w), w))
    wa, wb = wa_wb(spec)
    key_a, key_b = conjugacy_key(wa), conjugacy_key(wb)

    n_w = len(words)
    lam = np.empty((grid, n_w))
    fs = np.empty((grid, n_w))
    for i, t in enumerate(ts):
        f = build(spec, float(t), cfg, verify=False)
        mats = np.empty((n_w, 3, 3), dtype=complex)
        for jw, w in enumerate(words):
            mats[jw] = evaluate(f, w).m
        eigs = np.linalg.eigvals(mats)
        lam[i] = 2.0 * np.log(np.max(np.abs(eigs), axis=1))
        fs[i] = discriminant(np.trace(mats, axis1=1, axis2=2))

    checked: list[str] = []
    excluded: list[tuple[str, str]] = []
    violations: list[dict] = []
    wa_wb_violations: list[dict] = []
    curves: dict[str, list[float]] = {}
    for jw, w in enumerate(words):
        label = word_str(w)
        col_f = fs[:, jw]
        if not np.all(col_f > cfg.tol.cls):
            bad = int(np.argmin(col_f))
            kind = "elliptic" if col_f[bad] < -cfg.tol.cls else "non-loxodromic"
            excluded.append((label, f"{kind} at t={ts[bad]:.6g}"))
            continue
        checked.append(label)
        col = lam[:, jw]
        slack = cfg.mono_slack * np.maximum(1.0, np.abs(col[:-1]))
        increases = np.nonzero(np.diff(col) > slack)[0]
        for i in increases:
            rec = {
                "word": label,
                "t": float(ts[i + 1]),
                "lambda_before": float(col[i]),
                "lambda_after": float(col[i + 1]),
            }
            violations.append(rec)
            if w in (key_a, key_b):
                wa_wb_violations.append(rec)
        if w == key_a:
            curves["A"] = [float(x) for x in col]
        if w == key_b:
            curves["B"] = [float(x) for x in col]
    return MonotonicityReport(
        spec=spec,
        max_len=max_len,
        t_lo=0.0,
        t_hi=float(end),
        grid=grid,
        checked=checked,
        excluded=excluded,
        violations=violations,
        wa_wb_violations=wa_wb_violations,
        lambda_curves=curves,
    )


CSV_COLUMNS = ["t", "re(trace)", "im(trace)", "discriminant", "class", "lambda_or_angle"]


def write_trace_csv(curves: dict[str, TraceCurve] | TraceCurve, path: str) -> None:
    """Delimited trace-curve output.

    A single curve gets exactly the documented columns; several curves share
    one file with a leading ``word`` column.
    """
    single = isinstance(curves, TraceCurve)
    items = {"": curves} if single else curves
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS if single else ["word"] + CSV_COLUMNS)
        for label, curve in items.items():
            for p in curve.points:
                row = [
                    repr(p.t),
                    repr(p.trace.real),
                    repr(p.trace.imag),
                    repr(p.disc),
                    p.cls.kind.value,
                    repr(p.lambda_or_angle()),
                ]
                writer.writerow(row if single else [word_str(curve.word)] + row)
