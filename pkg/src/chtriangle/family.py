"""The one-parameter family of complex-reflection triangle groups.

A triple (p, q, r) of angle orders (entries >= 2 or infinity, hyperbolic
angle sum) determines a pencil of groups generated by three complex
reflections.  The pencil is encoded by a Gram matrix of the unit polar
vectors: the off-diagonal moduli are forced by the product orders, and one
residual phase t is the deformation parameter.  At t = 0 the matrix is real
and the group preserves a real slice; the family stays geometric while the
Gram matrix keeps signature (2,1).

Index convention: generator k is the reflection whose mirror is opposite
vertex k, so the products satisfy order(I1 I2) = r, order(I1 I3) = q,
order(I2 I3) = p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT, Config
from .core import Isometry, box, herm_form, reflect_matrix
from .errors import (
    BadSpec,
    DegenerateConfiguration,
    DegenerateGram,
    OutOfRange,
    WrongSignature,
)

INF = math.inf

# generic weights breaking component-permutation symmetry in the phase gauge
_GAUGE_REF = np.array([1.0, 0.731, 0.413])


def _parse_entry(x) -> float:
    if isinstance(x, str):
        x = x.strip().lower()
        if x in ("inf", "infinity", "oo"):
            return INF
        x = int(x)
    if x == INF:
        return INF
    if isinstance(x, float) and x.is_integer():
        x = int(x)
    if not isinstance(x, int):
        raise BadSpec(f"entry {x!r} is neither an integer nor inf")
    return x


@dataclass(frozen=True)
class TriangleSpec:
    """Angle orders p <= q <= r of a hyperbolic triangle, entries >= 2 or inf."""

    p: float
    q: float
    r: float

    def __post_init__(self):
        p, q, r = (_parse_entry(v) for v in (self.p, self.q, self.r))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        if not (p <= q <= r):
            raise BadSpec("entries must satisfy p <= q <= r")
        if min(p, q, r) < 2:
            raise BadSpec("entries must be at least 2")
        angle_sum = sum(
            (Fraction(0) if v == INF else Fraction(1, int(v))) for v in (p, q, r)
        )
        if angle_sum >= 1:
            raise BadSpec("angle sum must be hyperbolic: 1/p + 1/q + 1/r < 1")

    @classmethod
    def parse(cls, text: str) -> "TriangleSpec":
        parts = [s for s in text.replace(";", ",").split(",") if s.strip()]
        if len(parts) != 3:
            raise BadSpec(f"expected three comma-separated entries, got {text!r}")
        return cls(*(_parse_entry(s) for s in parts))

    @property
    def entries(self) -> tuple:
        return (self.p, self.q, self.r)

    def cosines(self) -> tuple[float, float, float]:
        """(cos pi/p, cos pi/q, cos pi/r) with the convention cos(pi/inf) = 1."""
        return tuple(1.0 if v == INF else math.cos(math.pi / v) for v in self.entries)

    def label(self) -> str:
        return ",".join("inf" if v == INF else str(int(v)) for v in self.entries)

    def __str__(self) -> str:
        return f"({self.label()})"


def gram_for(spec: TriangleSpec, t: float, cfg: Config = DEFAULT) -> np.ndarray:
    """Gram matrix of the unit polar vectors at deformation parameter t.

    Off-diagonal moduli are cos(pi/r), cos(pi/q), cos(pi/p) at positions
    (1,2), (1,3), (2,3).  All entries are real at t = 0 (the real-slice
    group), and the whole deformation phase sits on the (2,3) entry; any
    other phase distribution with the same moduli is diagonally-unitarily
    equivalent to this one.  Entries carry the sign that makes t = 0 the
    geometric real point (the all-positive choice is a degenerate Gram).
    """
    if not isinstance(spec, TriangleSpec):
        spec = TriangleSpec(*spec)
    if not (0.0 <= t <= math.pi):
        raise OutOfRange(f"t={t} outside [0, pi]")
    cp, cq, cr = spec.cosines()
    g = np.eye(3, dtype=complex)
    g[0, 1] = -cr
    g[0, 2] = -cq
    g[1, 2] = -cp * complex(math.cos(t), math.sin(t))
    g[1, 0] = np.conj(g[0, 1])
    g[2, 0] = np.conj(g[0, 2])
    g[2, 1] = np.conj(g[1, 2])
    return g


def gram_det(spec: TriangleSpec, t) -> float | np.ndarray:
    """det(gram_for(spec, t)) in closed form; negative exactly on the geometric range."""
    cp, cq, cr = spec.cosines()
    return 1.0 - (cp * cp + cq * cq + cr * cr) - 2.0 * cp * cq * cr * np.cos(t)


def valid_t_range(spec: TriangleSpec, cfg: Config = DEFAULT) -> tuple[float, float]:
    """(sup of the geometric range, largest t safe to sample).

    The Gram matrix keeps signature (2,1) exactly while its determinant is
    negative; the determinant is increasing in t, so the range is an
    interval [0, t_max).  The sampling endpoint backs off until the
    determinant clears the edge margin, which also handles endpoints where
    the determinant only touches zero quadratically.
    """
    cp, cq, cr = spec.cosines()
    prod = cp * cq * cr
    if prod <= 0.0:
        return math.pi, math.pi
    kappa = (1.0 - (cp * cp + cq * cq + cr * cr)) / (2.0 * prod)
    if kappa < -1.0:
        return math.pi, math.pi
    t_max = math.acos(max(-1.0, kappa))
    chi = min(1.0, kappa + cfg.edge_margin / (2.0 * prod))
    t_hi = math.acos(chi)
    return t_max, t_hi


def realize(g: np.ndarray, cfg: Config = DEFAULT) -> np.ndarray:
    """Vectors C1, C2, C3 (rows) whose pairwise products reproduce ``g``.

    Eigendecomposes the Hermitian matrix, scales eigenvectors by
    sqrt(|eigenvalue|), and routes the negative direction to the third
    coordinate.  Eigenvalues are taken in descending order and eigenvector
    phases are gauge-fixed, so the output is deterministic.  Real input runs
    in real arithmetic and yields real vectors.
    """
    g = np.asarray(g)
    if float(np.max(np.abs(g - g.conj().T))) > 1e-12:
        raise ValueError("gram matrix must be Hermitian")
    real_input = float(np.max(np.abs(g.imag))) < 1e-15 if np.iscomplexobj(g) else True
    work = g.real.astype(float) if real_input else g.astype(complex)
    if abs(np.linalg.det(work)) < cfg.tol.null:
        raise DegenerateGram("gram determinant below the null threshold")
    vals, vecs = np.linalg.eigh(work)
    order = np.argsort(-vals)
    vals, vecs = vals[order], vecs[:, order]
    if not (vals[0] >= vals[1] > 0.0 > vals[2]):
        raise WrongSignature(f"eigenvalue signature {tuple(np.sign(vals))} is not (+,+,-)")
    vecs = vecs.astype(complex)
    for k in range(3):
        col = vecs[:, k]
        # phase gauge against a fixed generic reference: continuous along
        # generic parameter paths, unlike a largest-component pivot
        s = _GAUGE_REF @ col
        if abs(s) < 1e-8 * float(np.linalg.norm(col)):
            piv = int(np.argmax(np.abs(col)))
            s = col[piv]
        vecs[:, k] = col * (np.conj(s) / abs(s))
    b = vecs * np.sqrt(np.abs(vals))[None, :]
    return b.astype(complex)


@dataclass(frozen=True)
class FamilyPoint:
    """A realized group of the family: parameter, polar vectors, generators."""

    spec: TriangleSpec
    t: float
    polars: np.ndarray  # rows C1, C2, C3, unit normalized
    gens: tuple[Isometry, Isometry, Isometry]
    gram: np.ndarray

    def generator(self, k: int) -> Isometry:
        """Generator by 1-based letter."""
        return self.gens[k - 1]


def build(spec: TriangleSpec, t: float, cfg: Config = DEFAULT, verify: bool = True) -> FamilyPoint:
    """Realize the family member at parameter t.

    Raises OutOfRange when t has left the geometric range (Gram signature no
    longer (2,1)).  With ``verify`` the generator product orders are checked
    against the spec entries.
    """
    if not isinstance(spec, TriangleSpec):
        spec = TriangleSpec(*spec)
    g = gram_for(spec, t, cfg)
    try:
        c = realize(g, cfg)
    except (WrongSignature, DegenerateGram) as exc:
        t_max, _ = valid_t_range(spec, cfg)
        raise OutOfRange(f"t={t} outside the geometric range [0, {t_max}): {exc}") from exc
    gens = tuple(reflect_matrix(c[k], cfg) for k in range(3))
    point = FamilyPoint(spec=spec, t=t, polars=c, gens=gens, gram=g)
    if verify:
        _verify_orders(point, cfg)
    return point


def _verify_orders(f: FamilyPoint, cfg: Config) -> None:
    from .core import ElementKind, classify, proj_order

    pairs = {(0, 1): f.spec.r, (0, 2): f.spec.q, (1, 2): f.spec.p}
    for (i, j), n in pairs.items():
        prod = f.gens[i] @ f.gens[j]
        if n == INF:
            kind = classify(prod, cfg, validate=False).kind
            if kind is not ElementKind.PARABOLIC:
                raise DegenerateConfiguration(
                    f"product of generators {i + 1},{j + 1} is {kind.value}, expected parabolic"
                )
        else:
            got = proj_order(prod, int(n) + 1, cfg)
            if got != int(n):
                raise DegenerateConfiguration(
                    f"product of generators {i + 1},{j + 1} has order {got}, expected {int(n)}"
                )


def vertices_of(f: FamilyPoint, cfg: Config = DEFAULT) -> np.ndarray:
    """Vertex lifts (rows): V_j is orthogonal to the mirrors j-1 and j+1.

    V_j = box(C_{j-1}, C_{j+1}) normalized to max-component 1.  Finite angle
    orders give negative (interior) vertices, infinite ones null vertices.
    """
    c = f.polars
    out = np.empty((3, 3), dtype=complex)
    for j in range(3):
        v = box(c[(j + 2) % 3], c[(j + 1) % 3])
        out[j] = v / np.max(np.abs(v))
    return out


def angular_invariant(vertices: np.ndarray, cfg: Config = DEFAULT) -> float:
    """Argument of the cyclic triple product of the vertex lifts, in (-pi, pi].

    Invariant under rescaling of each lift and under the isometry group.
    """
    v1, v2, v3 = vertices
    prod = herm_form(v1, v2) * herm_form(v2, v3) * herm_form(v3, v1)
    if abs(prod) < cfg.tol.null:
        raise DegenerateConfiguration("triple product of vertex lifts is numerically zero")
    return float(np.angle(prod))
