"""Geometry on the ideal boundary S^3: fixed points, orbits, circles, spheres.

Point clouds are (N, 2) complex arrays of unit-sphere coordinates (z, w).
Curves carry a ``kind`` tag so renderers can style C-circles, R-circles,
foliation leaves and spinal-sphere patches differently.  A Cayley-type chart
maps the sphere minus a chosen pole onto C x R for 3-d rendering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize
from scipy.spatial import cKDTree

from .config import DEFAULT, Config
from .core import (
    BallPoint,
    ElementKind,
    Isometry,
    J,
    VectorSign,
    box,
    classify,
    herm_form,
    lift,
    null_eigenvectors,
    sign_of,
)
from .errors import (
    CoincidentPoints,
    NotPositive,
    PoleInput,
    SeedNotNull,
)
from .family import FamilyPoint
from .words import wa_wb


@dataclass(frozen=True)
class PointCloud:
    zw: np.ndarray  # (N, 2) complex, on S^3
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.zw)

    def as_dict(self) -> dict:
        return {"points": cloud_rows(self.zw), "meta": self.meta}


@dataclass(frozen=True)
class CurveSample:
    kind: str  # C-circle | R-circle | foliation-leaf | spinal-sphere-patch
    zw: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.zw)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "points": cloud_rows(self.zw), "meta": self.meta}


def cloud_rows(zw: np.ndarray) -> list[list[float]]:
    """[re z, im z, re w, im w] rows for JSON export."""
    return [
        [float(p[0].real), float(p[0].imag), float(p[1].real), float(p[1].imag)]
        for p in np.asarray(zw)
    ]


def cloud_ascii(zw: np.ndarray) -> str:
    """One point per line, four whitespace-separated floats."""
    return "\n".join(" ".join(repr(x) for x in row) for row in cloud_rows(zw)) + "\n"


def _renormalize(zw: np.ndarray) -> np.ndarray:
    n = np.sqrt(np.abs(zw[:, 0]) ** 2 + np.abs(zw[:, 1]) ** 2)
    return zw / n[:, None]


def null_fixed_points(m: Isometry, cfg: Config = DEFAULT) -> list[BallPoint]:
    """Boundary fixed points: two for loxodromic (attracting first), one for parabolic."""
    pts = []
    for v in null_eigenvectors(m, cfg):
        zw = np.array([v[0] / v[2], v[1] / v[2]])
        zw = zw / math.sqrt(abs(zw[0]) ** 2 + abs(zw[1]) ** 2)
        pts.append(BallPoint(complex(zw[0]), complex(zw[1])))
    return pts


def default_seed(f: FamilyPoint, cfg: Config = DEFAULT) -> BallPoint:
    """Fixed point of the tripod word, the natural orbit seed."""
    from .words import evaluate

    for w in (wa_wb(f.spec)[1], wa_wb(f.spec)[0]):
        m = evaluate(f, w)
        if classify(m, cfg, validate=False).kind in (
            ElementKind.LOXODROMIC,
            ElementKind.PARABOLIC,
        ):
            return null_fixed_points(m, cfg)[0]
    raise SeedNotNull("both distinguished words are elliptic; supply a seed explicitly")


def limit_set(
    f: FamilyPoint,
    max_len: int,
    seed: BallPoint | None = None,
    cfg: Config = DEFAULT,
) -> PointCloud:
    """Orbit of a boundary seed under all reduced words up to a given length.

    Points are deduplicated by spatial hashing on the four real coordinates.
    Every output is renormalized onto S^3.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if seed is None:
        seed = default_seed(f, cfg)
    if abs(seed.norm_sq() - 1.0) > 1e-7:
        raise SeedNotNull(f"seed norm^2 = {seed.norm_sq()} is off the unit sphere")
    x0 = lift(seed)
    h = cfg.hash_resolution
    seen: dict[tuple, None] = {}
    out: list[np.ndarray] = []

    def visit(vec: np.ndarray) -> None:
        z, w = vec[0] / vec[2], vec[1] / vec[2]
        n = math.sqrt(abs(z) ** 2 + abs(w) ** 2)
        z, w = z / n, w / n
        key = (round(z.real / h), round(z.imag / h), round(w.real / h), round(w.imag / h))
        if key not in seen:
            seen[key] = None
            out.append(np.array([z, w]))

    visit(x0)
    gens = [g.m for g in f.gens]
    level: list[tuple[np.ndarray, int]] = [(np.eye(3, dtype=complex), 0)]
    for _ in range(max_len):
        nxt = []
        for mat, last in level:
            for letter in (1, 2, 3):
                if letter == last:
                    continue
                prod = mat @ gens[letter - 1]
                visit(prod @ x0)
                nxt.append((prod, letter))
        level = nxt
    zw = np.array(out)
    meta = {
        "spec": f.spec.label(),
        "t": f.t,
        "max_len": max_len,
        "seed": [seed.z.real, seed.z.imag, seed.w.real, seed.w.imag],
        "count": len(zw),
    }
    return PointCloud(zw=zw, meta=meta)


def _orthobasis_of_polar(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Basis (B1, B2) of the orthogonal complement of a positive vector,
    with <B1,B1> = 1, <B2,B2> = -1, <B1,B2> = 0.

    Candidates come from the box product, which lands in the complement by
    construction; the two most independent ones are then diagonalized
    against the restricted form, whose signature is (1, 1).
    """
    c = np.asarray(c, dtype=complex)
    cands = []
    for k in range(3):
        e = np.zeros(3, dtype=complex)
        e[k] = 1.0
        w = box(c, e)
        cands.append((float(np.linalg.norm(w)), k, w))
    cands.sort(key=lambda x: -x[0])
    w1 = cands[0][2]
    w1n = w1 / np.linalg.norm(w1)
    best = None
    for _, _, w in cands[1:]:
        resid = w - w1n * np.vdot(w1n, w)
        if best is None or np.linalg.norm(resid) > np.linalg.norm(best):
            best = resid
    w2 = best
    basis = [w1, w2 / np.linalg.norm(w2)]
    # 2x2 form Gram of the span; H[i][j] = <W_j, W_i> so x^H H x = <Wx, Wx>
    h = np.array(
        [[herm_form(basis[j], basis[i]) for j in range(2)] for i in range(2)]
    )
    vals, vecs = np.linalg.eigh(h)
    # signature (1, -1): ascending order gives the negative direction first
    bneg = basis[0] * vecs[0, 0] + basis[1] * vecs[1, 0]
    bpos = basis[0] * vecs[0, 1] + basis[1] * vecs[1, 1]
    bneg = bneg / math.sqrt(-herm_form(bneg, bneg).real)
    bpos = bpos / math.sqrt(herm_form(bpos, bpos).real)
    return bpos, bneg


def ccircle(c, n: int, cfg: Config = DEFAULT) -> CurveSample:
    """The boundary circle of the complex slice polar to a positive vector.

    Solutions of <X,C> = 0, <X,X> = 0 parameterized by one angle.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    c = np.asarray(c, dtype=complex)
    if sign_of(c, cfg) is not VectorSign.POSITIVE:
        raise NotPositive("a C-circle needs a positive polar vector")
    bpos, bneg = _orthobasis_of_polar(c)
    phis = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    lifts = np.exp(1j * phis)[:, None] * bpos[None, :] + bneg[None, :]
    zw = _renormalize(np.stack([lifts[:, 0] / lifts[:, 2], lifts[:, 1] / lifts[:, 2]], axis=1))
    return CurveSample(kind="C-circle", zw=zw, meta={"n": n})


def rcircle_standard(n: int, m: Isometry | None = None) -> CurveSample:
    """Boundary of the standard real slice, optionally transported by an isometry."""
    if n < 3:
        raise ValueError("n must be >= 3")
    phis = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    lifts = np.stack([np.cos(phis), np.sin(phis), np.ones_like(phis)], axis=1).astype(complex)
    if m is not None:
        lifts = lifts @ m.m.T
    zw = _renormalize(np.stack([lifts[:, 0] / lifts[:, 2], lifts[:, 1] / lifts[:, 2]], axis=1))
    return CurveSample(kind="R-circle", zw=zw, meta={"n": n, "transported": m is not None})


def clifford_torus(n_u: int, n_v: int) -> list[CurveSample]:
    """Leaves of the three C-circle foliations of the torus |z| = |w| = 1/sqrt(2).

    The horizontal leaves double as a grid covering of the torus itself.
    """
    if n_u < 3 or n_v < 3:
        raise ValueError("n_u and n_v must be >= 3")
    s = 1.0 / math.sqrt(2.0)
    alphas = np.linspace(0.0, 2.0 * math.pi, n_u, endpoint=False)
    betas = np.linspace(0.0, 2.0 * math.pi, n_v, endpoint=False)
    leaves: list[CurveSample] = []
    for a in alphas:
        zw = np.stack([np.full(n_v, s * np.exp(1j * a)), s * np.exp(1j * betas)], axis=1)
        leaves.append(
            CurveSample("foliation-leaf", zw, {"foliation": "horizontal", "z0": [s * math.cos(a), s * math.sin(a)]})
        )
    for b in betas:
        zw = np.stack([s * np.exp(1j * alphas), np.full(n_u, s * np.exp(1j * b))], axis=1)
        leaves.append(
            CurveSample("foliation-leaf", zw, {"foliation": "vertical", "w0": [s * math.cos(b), s * math.sin(b)]})
        )
    for a in alphas:
        lam = np.exp(1j * a)
        zw = np.stack([s * lam * np.exp(1j * betas), s * np.exp(1j * betas)], axis=1)
        leaves.append(
            CurveSample("foliation-leaf", zw, {"foliation": "diagonal", "lambda0": [math.cos(a), math.sin(a)]})
        )
    return leaves


def spinal_residual(p_zw, p_lift_a: np.ndarray, p_lift_b: np.ndarray) -> float:
    """Equidistance function whose zero set on S^3 is the spinal sphere."""
    x = lift(p_zw) if not isinstance(p_zw, np.ndarray) or p_zw.shape != (3,) else p_zw
    fa = abs(herm_form(x, p_lift_a)) ** 2 * herm_form(p_lift_b, p_lift_b).real
    fb = abs(herm_form(x, p_lift_b)) ** 2 * herm_form(p_lift_a, p_lift_a).real
    return fa - fb


def spinal_sphere(p, q, n: int, cfg: Config = DEFAULT) -> CurveSample:
    """Ideal boundary of the hypersurface equidistant from two interior points.

    The surface fibers into C-circles over the geodesic equidistant from the
    two points inside their common complex slice; sampling those fibers plus
    the two geodesic endpoints yields an on-sphere 2-sphere point set with the
    equidistance function vanishing identically.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    if sign_of(p, cfg) is not VectorSign.NEGATIVE or sign_of(q, cfg) is not VectorSign.NEGATIVE:
        raise CoincidentPoints("spinal sphere needs two negative (interior) vectors")
    p = p / math.sqrt(-herm_form(p, p).real)
    q = q / math.sqrt(-herm_form(q, q).real)
    g = herm_form(p, q)
    r = abs(g)
    if r <= 1.0 + 1e-12:
        raise CoincidentPoints("the two points coincide projectively")
    qp = -q * (g / r)  # align so <p, qp> = -r: then p + qp is the interior midpoint
    mid = (p + qp) / math.sqrt(2.0 * r + 2.0)
    vel = (p - qp) / math.sqrt(2.0 * r - 2.0)
    u = np.linspace(-1.0, 1.0, n) * 0.995
    ss = np.arctanh(u)
    rows = []
    for s in ss:
        pol = math.sinh(s) * mid + 1j * math.cosh(s) * vel
        rows.append(ccircle(pol, n, cfg).zw)
    for sgn in (1.0, -1.0):
        pole = mid + sgn * 1j * vel
        zw = np.array([[pole[0] / pole[2], pole[1] / pole[2]]])
        rows.append(_renormalize(zw))
    zw = np.concatenate(rows, axis=0)
    return CurveSample(
        kind="spinal-sphere-patch",
        zw=zw,
        meta={"n": n, "count": len(zw)},
    )


@dataclass(frozen=True)
class SeparationReport:
    labels: list[str]
    distances: np.ndarray  # (k, k) min pairwise chordal distances
    densities: np.ndarray  # (k,) median nearest-neighbor spacing per cloud
    verdicts: list[list[str]]

    def as_dict(self) -> dict:
        return {
            "labels": self.labels,
            "distances": [[float(x) for x in row] for row in self.distances],
            "densities": [float(x) for x in self.densities],
            "verdicts": self.verdicts,
        }


def separation_report(clouds: list, labels: list[str] | None = None) -> SeparationReport:
    """Pairwise minimum chordal distances between sampled boundary sets.

    The verdict compares each distance with the samples' own spacing; it is a
    heuristic indicator, never a proof of disjointness.
    """
    if len(clouds) < 2:
        raise ValueError("need at least two clouds")
    pts = []
    for c in clouds:
        zw = c.zw if hasattr(c, "zw") else np.asarray(c)
        pts.append(
            np.stack([zw[:, 0].real, zw[:, 0].imag, zw[:, 1].real, zw[:, 1].imag], axis=1)
        )
    labels = labels or [f"cloud{k}" for k in range(len(pts))]
    trees = [cKDTree(x) for x in pts]
    k = len(pts)
    dens = np.zeros(k)
    for i in range(k):
        if len(pts[i]) > 1:
            d, _ = trees[i].query(pts[i], k=2)
            dens[i] = float(np.median(d[:, 1]))
    dist = np.zeros((k, k))
    verdicts = [["self"] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            d, _ = trees[j].query(pts[i], k=1)
            dmin = float(np.min(d))
            dist[i, j] = dist[j, i] = dmin
            gap = 2.0 * max(dens[i], dens[j])
            v = "disjoint" if dmin > gap else "possible tangency"
            verdicts[i][j] = verdicts[j][i] = v
    return SeparationReport(labels=labels, distances=dist, densities=dens, verdicts=verdicts)


# ---------------------------------------------------------------------------
# Cayley-type chart onto C x R


def _pole_rotation(pole: BallPoint) -> np.ndarray:
    """SU(2) block rotation of the ball taking the pole to (1, 0)."""
    a = np.array(
        [[np.conj(pole.z), np.conj(pole.w)], [-pole.w, pole.z]], dtype=complex
    )
    m = np.eye(3, dtype=complex)
    m[:2, :2] = a
    return m


def to_heisenberg(b: BallPoint, pole: BallPoint, cfg: Config = DEFAULT) -> tuple[complex, float]:
    """Chart sending the pole to infinity and its antipode to (0, 0).

    Convention: after rotating the pole to (1, 0), the point (z, w) maps to
    zeta = sqrt(2) w / (z - 1), v = 2 Im((z + 1)/(z - 1)).
    """
    zz, vv = heisenberg_coords(np.array([[b.z, b.w]]), pole, cfg)
    if not np.isfinite(vv[0]):
        raise PoleInput("the chart is undefined at its pole")
    return complex(zz[0]), float(vv[0])


def heisenberg_coords(
    zw: np.ndarray, pole: BallPoint, cfg: Config = DEFAULT
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized chart; points at the pole come back as (nan, inf)."""
    rot = _pole_rotation(pole)[:2, :2]
    zp = rot[0, 0] * zw[:, 0] + rot[0, 1] * zw[:, 1]
    wp = rot[1, 0] * zw[:, 0] + rot[1, 1] * zw[:, 1]
    den = zp - 1.0
    bad = np.abs(den) < 1e-12
    den = np.where(bad, 1.0, den)
    zeta = math.sqrt(2.0) * wp / den
    v = 2.0 * ((zp + 1.0) / den).imag
    zeta = np.where(bad, np.nan + 0j, zeta)
    v = np.where(bad, np.inf, v)
    return zeta, v


def from_heisenberg(zeta: complex, v: float, pole: BallPoint) -> BallPoint:
    """Inverse chart."""
    up = (-abs(zeta) ** 2 + 1j * v) / 2.0
    z = (up + 1.0) / (up - 1.0)
    w = zeta * (z - 1.0) / math.sqrt(2.0)
    rot = _pole_rotation(pole)[:2, :2]
    inv = rot.conj().T
    z2 = inv[0, 0] * z + inv[0, 1] * w
    w2 = inv[1, 0] * z + inv[1, 1] * w
    n = math.sqrt(abs(z2) ** 2 + abs(w2) ** 2)
    return BallPoint(complex(z2 / n), complex(w2 / n))


# ---------------------------------------------------------------------------
# Best-fit R-circle

# anti-Hermitian basis for building the isometry Lie algebra
_AH_BASIS: list[np.ndarray] = []
for _k in range(3):
    _m = np.zeros((3, 3), dtype=complex)
    _m[_k, _k] = 1j
    _AH_BASIS.append(_m)
for _k in range(3):
    for _l in range(_k + 1, 3):
        _m = np.zeros((3, 3), dtype=complex)
        _m[_k, _l] = 1.0
        _m[_l, _k] = -1.0
        _AH_BASIS.append(_m)
        _m = np.zeros((3, 3), dtype=complex)
        _m[_k, _l] = 1j
        _m[_l, _k] = 1j
        _AH_BASIS.append(_m)


def _lie_element(params: np.ndarray) -> np.ndarray:
    b = sum(p * m for p, m in zip(params, _AH_BASIS))
    a = J @ b
    return a - (np.trace(a) / 3.0) * np.eye(3, dtype=complex)


def rcircle_deviation(zw: np.ndarray) -> np.ndarray:
    """Chordal distance of each S^3 point to the standard R-circle."""
    r = np.sqrt(zw[:, 0].real ** 2 + zw[:, 1].real ** 2)
    return np.sqrt(np.maximum(0.0, 2.0 - 2.0 * np.minimum(r, 1.0)))


def _to_r4(zw: np.ndarray) -> np.ndarray:
    return np.stack([zw[:, 0].real, zw[:, 0].imag, zw[:, 1].real, zw[:, 1].imag], axis=1)


def _moved_circle(params: np.ndarray, n: int) -> np.ndarray:
    """The image of the standard R-circle under the parameterized isometry, in R^4."""
    phis = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    lifts = np.stack([np.cos(phis), np.sin(phis), np.ones_like(phis)], axis=1).astype(complex)
    m = expm(_lie_element(params))
    x = lifts @ m.T
    zw = _renormalize(np.stack([x[:, 0] / x[:, 2], x[:, 1] / x[:, 2]], axis=1))
    return _to_r4(zw)


def _circle_points_at(params: np.ndarray, phis: np.ndarray) -> np.ndarray:
    m = expm(_lie_element(params))
    lifts = np.stack([np.cos(phis), np.sin(phis), np.ones_like(phis)], axis=1).astype(complex)
    x = lifts @ m.T
    zw = _renormalize(np.stack([x[:, 0] / x[:, 2], x[:, 1] / x[:, 2]], axis=1))
    return _to_r4(zw)


def _min_d2_to_circle(
    params: np.ndarray, cloud4: np.ndarray, coarse: int = 256, iters: int = 48
) -> np.ndarray:
    """Exact squared chordal distance from each point to the moved circle.

    Coarse argmin over a parameter grid, then a vectorized golden-section
    refinement per point; accuracy is limited only by roundoff.
    """
    circ = _moved_circle(params, coarse)
    d2 = ((cloud4[:, None, :] - circ[None, :, :]) ** 2).sum(axis=2)
    k = d2.argmin(axis=1)
    h = 2.0 * math.pi / coarse
    a = k * h - h
    b = k * h + h

    def f(phis: np.ndarray) -> np.ndarray:
        pts = _circle_points_at(params, phis)
        return ((cloud4 - pts) ** 2).sum(axis=1)

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc < fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        # golden ratios make the surviving probe coincide with one new one,
        # so a single batched evaluation per iteration suffices
        need = np.where(left, c, d)
        fnew = f(need)
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
    return np.minimum(fc, fd)


def fit_rcircle(
    zw: np.ndarray,
    n_starts: int = 4,
    max_points: int = 250,
    seed: int = 0,
) -> tuple[float, np.ndarray]:
    """Best-fit R-circle: minimize the cloud's chordal distance to a moved circle.

    The circle ranges over images of the standard R-circle under group
    elements (exp of a 9-parameter Lie parameterization, one direction acting
    trivially).  Distances run from the fixed cloud to the moved circle in
    the ambient chordal metric, so shrinking tricks cannot fake a good fit.
    Returns (max deviation over the full cloud at the best fit found,
    parameters).  Local multi-start optimization: an upper bound for the true
    best fit, tight in practice for clouds that genuinely lie on a circle.
    """
    zw = np.asarray(zw)
    fit_zw = zw
    if len(fit_zw) > max_points:
        stride = int(math.ceil(len(fit_zw) / max_points))
        fit_zw = fit_zw[::stride]
    pts = _to_r4(fit_zw)

    def objective(params: np.ndarray) -> float:
        return float(np.mean(_min_d2_to_circle(params, pts, coarse=128, iters=36)))

    rng = np.random.default_rng(seed)
    best = None
    starts = [np.zeros(9)] + [rng.normal(0.0, 0.4, size=9) for _ in range(n_starts - 1)]
    opts = {"ftol": 1e-17, "gtol": 1e-13, "maxiter": 400}
    for x0 in starts:
        res = minimize(objective, x0, method="L-BFGS-B", options=opts)
        if best is None or res.fun < best.fun:
            best = res
    dev = float(np.sqrt(np.max(_min_d2_to_circle(best.x, _to_r4(zw), coarse=512, iters=60))))
    return dev, best.x
