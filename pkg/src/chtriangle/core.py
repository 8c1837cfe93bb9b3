"""Primitives of the complex hyperbolic plane in homogeneous coordinates.

Vectors live in C^3 carrying the indefinite Hermitian product with signs
(+, +, -).  Projective classes of negative vectors form the complex
hyperbolic plane CH^2, the null classes its ideal boundary S^3, and the
positive classes the polar points of complex slices.  This module supplies
the product itself, the sign trichotomy, the affine-patch projection, the
invariant distance, the orthogonality ("box") product, complex reflections,
and the trace-based classification of isometries into elliptic, parabolic
and loxodromic elements.

All functions are pure; matrices and vectors are plain numpy arrays.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    AtInfinity,
    EllipticInput,
    NotFormPreserving,
    NotLoxodromic,
    NotNegative,
    NotPositive,
    NotUnimodular,
    NumericalFault,
    ZeroVector,
)

# Matrix of the Hermitian form: <U,V> = u1 conj(v1) + u2 conj(v2) - u3 conj(v3)
J = np.diag([1.0, 1.0, -1.0]).astype(complex)
J.setflags(write=False)


def cvector(u1, u2, u3) -> np.ndarray:
    """Assemble a vector of C^{2,1} from three complex scalars."""
    return np.array([u1, u2, u3], dtype=complex)


def herm_form(u, v) -> complex:
    """The signature-(2,1) Hermitian product of two vectors."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    m = np.conj(v)
    return complex(u[0] * m[0] + u[1] * m[1] - u[2] * m[2])


class VectorSign(Enum):
    NEGATIVE = "negative"
    NULL = "null"
    POSITIVE = "positive"


def sign_of(v, cfg: Config = DEFAULT) -> VectorSign:
    """Classify a vector by the sign of its self-product.

    The vector is first rescaled to max-component magnitude 1 so the null
    threshold is meaningful for homogeneous coordinates.
    """
    v = np.asarray(v, dtype=complex)
    m = float(np.max(np.abs(v)))
    if m < cfg.tol.null:
        raise ZeroVector("all components below the null threshold")
    s = herm_form(v / m, v / m).real
    if s < -cfg.tol.null:
        return VectorSign.NEGATIVE
    if s > cfg.tol.null:
        return VectorSign.POSITIVE
    return VectorSign.NULL


@dataclass(frozen=True)
class BallPoint:
    """A point of the affine patch: interior of the unit ball or its S^3 boundary."""

    z: complex
    w: complex

    def norm_sq(self) -> float:
        return abs(self.z) ** 2 + abs(self.w) ** 2

    def is_interior(self, cfg: Config = DEFAULT) -> bool:
        return self.norm_sq() < 1.0 - cfg.tol.null

    def is_boundary(self, cfg: Config = DEFAULT) -> bool:
        return abs(self.norm_sq() - 1.0) <= cfg.tol.null

    def as_array(self) -> np.ndarray:
        return np.array([self.z, self.w], dtype=complex)


def project(v, cfg: Config = DEFAULT) -> BallPoint:
    """Projectivize a vector into the affine patch (v1/v3, v2/v3)."""
    v = np.asarray(v, dtype=complex)
    m = float(np.max(np.abs(v)))
    if m < cfg.tol.null:
        raise ZeroVector("cannot project the zero vector")
    if abs(v[2]) / m <= cfg.tol.null:
        raise AtInfinity("last coordinate vanishes; point outside the affine patch")
    return BallPoint(complex(v[0] / v[2]), complex(v[1] / v[2]))


def lift(p) -> np.ndarray:
    """Right inverse of project: (z, w) -> (z, w, 1)."""
    if isinstance(p, BallPoint):
        return np.array([p.z, p.w, 1.0], dtype=complex)
    z, w = p
    return np.array([z, w, 1.0], dtype=complex)


def dist(x, y, cfg: Config = DEFAULT) -> float:
    """Invariant distance between two interior points given by negative lifts.

    Computed as 2*acosh(sqrt(delta)) where delta is the lift-independent
    ratio <X,Y><Y,X> / (<X,X><Y,Y>).  delta must be >= 1 up to roundoff;
    a value materially below 1 signals inconsistent inputs.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if sign_of(x, cfg) is not VectorSign.NEGATIVE or sign_of(y, cfg) is not VectorSign.NEGATIVE:
        raise NotNegative("dist needs negative vectors (interior points)")
    num = abs(herm_form(x, y)) ** 2
    den = herm_form(x, x).real * herm_form(y, y).real
    delta = num / den
    if delta < 1.0 - 1e-12:
        raise NumericalFault(f"distance ratio {delta} below 1")
    return 2.0 * math.acosh(math.sqrt(max(delta, 1.0)))


def box(u, v) -> np.ndarray:
    """The Hermitian cross product: orthogonal to both factors for the form."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    return np.conj(
        np.array(
            [
                u[2] * v[1] - u[1] * v[2],
                u[0] * v[2] - u[2] * v[0],
                u[0] * v[1] - u[1] * v[0],
            ]
        )
    )


class Isometry:
    """A holomorphic isometry: a 3x3 complex matrix preserving the form, det 1.

    Thin immutable wrapper around the matrix with cached trace and
    eigenvalues.  Compose with ``@``; apply to vectors with ``apply`` and to
    patch points with ``apply_point``.
    """

    __slots__ = ("m", "__dict__")

    def __init__(self, m, check: bool = False, cfg: Config = DEFAULT):
        m = np.asarray(m, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError("expected a 3x3 matrix")
        m = m.copy()
        m.setflags(write=False)
        self.m = m
        if check:
            self.check(cfg)

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3, dtype=complex))

    @cached_property
    def trace(self) -> complex:
        return complex(np.trace(self.m))

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.m)

    def eigen(self):
        return np.linalg.eig(self.m)

    def check(self, cfg: Config = DEFAULT) -> None:
        """Raise unless the matrix preserves the form and has determinant 1."""
        scale = max(1.0, float(np.max(np.abs(self.m))) ** 2)
        res = float(np.max(np.abs(self.m.conj().T @ J @ self.m - J)))
        if res > cfg.tol.form * scale:
            raise NotFormPreserving(f"form residual {res}")
        if abs(np.linalg.det(self.m) - 1.0) > cfg.tol.form * scale:
            raise NotUnimodular("determinant differs from 1")

    def inv(self) -> "Isometry":
        # form preservation gives the inverse without a linear solve
        return Isometry(J @ self.m.conj().T @ J)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.m @ other.m)

    def apply(self, v) -> np.ndarray:
        return self.m @ np.asarray(v, dtype=complex)

    def apply_point(self, p: BallPoint, cfg: Config = DEFAULT) -> BallPoint:
        return project(self.m @ lift(p), cfg)

    def __repr__(self) -> str:
        return f"Isometry(trace={self.trace:.6g})"


def reflect_matrix(c, cfg: Config = DEFAULT) -> Isometry:
    """The complex reflection with polar vector ``c`` (a positive vector).

    Acts as U -> -U + 2<U,C>/<C,C> C: an involution fixing the complex slice
    polar to C, with eigenvalues (+1, -1, -1) and determinant exactly 1.
    Rescaling ``c`` leaves the matrix unchanged.
    """
    c = np.asarray(c, dtype=complex)
    if sign_of(c, cfg) is not VectorSign.POSITIVE:
        raise NotPositive("polar vector of a complex reflection must be positive")
    s = herm_form(c, c).real
    m = -np.eye(3, dtype=complex) + (2.0 / s) * np.outer(c, np.conj(c)) @ J
    return Isometry(m)


class ElementKind(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class IsometryClass:
    """Classification verdict for one isometry.

    ``theta1 >= theta2`` are elliptic rotation angles in (-pi, pi] measured
    relative to the eigenvalue of the fixed-point (negative-type)
    eigenvector; ``length`` is the loxodromic translation length;
    ``finite_order`` the projective order when one was found.
    """

    kind: ElementKind
    theta1: float | None = None
    theta2: float | None = None
    finite_order: int | None = None
    length: float | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "theta1": self.theta1,
            "theta2": self.theta2,
            "finite_order": self.finite_order,
            "length": self.length,
        }


def discriminant(trace) -> float | np.ndarray:
    """Goldman's trace discriminant f(tau) = |t|^4 - 8 Re(t^3) + 18|t|^2 - 27.

    Positive exactly on regular loxodromic trace values, negative exactly on
    regular elliptic ones; zero on the locus of repeated eigenvalues
    (parabolics, reflections, the identity).  Accepts scalars or arrays.
    """
    tau = np.asarray(trace, dtype=complex)
    a2 = np.abs(tau) ** 2
    out = a2 * a2 - 8.0 * (tau**3).real + 18.0 * a2 - 27.0
    if out.ndim == 0:
        return float(out)
    return out


def _is_scalar_matrix(m: np.ndarray, tol: float) -> complex | None:
    mu = complex(np.trace(m)) / 3.0
    if float(np.max(np.abs(m - mu * np.eye(3)))) < tol * max(1.0, abs(mu)):
        return mu
    return None


def _lambda_from_eigs(eigs: np.ndarray) -> float:
    return 2.0 * math.log(float(np.max(np.abs(eigs))))


def proj_order(m: Isometry, n_max: int, cfg: Config = DEFAULT) -> int | None:
    """Smallest n <= n_max with m^n a unit scalar multiple of the identity.

    Returns None when no power works, in particular for parabolic and
    loxodromic elements.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    p = m.m
    for n in range(1, n_max + 1):
        mu = _is_scalar_matrix(p, cfg.tol.order)
        if mu is not None and abs(abs(mu) - 1.0) < 1e-6:
            return n
        if float(np.max(np.abs(p))) > 1e9:
            return None
        p = p @ m.m
    return None


def _negative_direction_index(vecs: np.ndarray) -> int:
    """Index of the eigenvector with the most negative self-product."""
    norms = [herm_form(vecs[:, k], vecs[:, k]).real / float(np.vdot(vecs[:, k], vecs[:, k]).real) for k in range(vecs.shape[1])]
    return int(np.argmin(norms))


def _elliptic_class(m: Isometry, ref_eig: complex, eigs: np.ndarray, cfg: Config) -> IsometryClass:
    rel = [ev / ref_eig for ev in eigs]
    angles = sorted((float(np.angle(r)) for r in rel), reverse=True)
    # the reference eigenvalue contributes angle 0; drop one zero
    for i, a in enumerate(angles):
        if abs(a) < 1e-14:
            angles.pop(i)
            break
    else:
        angles = angles[:2]
    theta1, theta2 = angles[0], angles[-1]
    order = proj_order(m, cfg.order_max, cfg)
    return IsometryClass(
        ElementKind.ELLIPTIC, theta1=theta1, theta2=theta2, finite_order=order
    )


# Absolute gap under which two eigenvalues count as one repeated root.  In the
# |f| <= cls band the true splitting is at most ~sqrt(cls), so 1e-4 always
# clusters genuine boundary cases while never merging regular spectra.
_CLUSTER_TOL = 1e-4
# rank gap separating a defective (Jordan) repeated eigenvalue from a
# genuine 2-dimensional eigenspace
_DEFECT_TOL = 1e-6


def classify(m: Isometry, cfg: Config = DEFAULT, validate: bool = True) -> IsometryClass:
    """Sort an isometry into identity / elliptic / parabolic / loxodromic.

    Fast path: the sign of the trace discriminant.  Inside its dead band the
    eigenstructure arbitrates: a repeated unit eigenvalue with a defective
    eigenspace is parabolic, a diagonalizable one is a boundary elliptic
    (complex reflections live here), a scalar matrix is the identity.
    """
    if validate:
        m.check(cfg)
    f = discriminant(m.trace)
    if f > cfg.tol.cls:
        eigs = m.eigenvalues
        return IsometryClass(ElementKind.LOXODROMIC, length=_lambda_from_eigs(eigs))
    if f < -cfg.tol.cls:
        eigs, vecs = m.eigen()
        ref = eigs[_negative_direction_index(vecs)]
        return _elliptic_class(m, ref, eigs, cfg)

    # boundary band
    if _is_scalar_matrix(m.m, cfg.tol.order) is not None:
        return IsometryClass(ElementKind.IDENTITY, finite_order=1)
    eigs, vecs = m.eigen()
    scale = max(1.0, float(np.max(np.abs(m.m))))
    pairs = [
        (i, j)
        for i in range(3)
        for j in range(i + 1, 3)
        if abs(eigs[i] - eigs[j]) < _CLUSTER_TOL * scale
    ]
    if len(pairs) >= 2:
        # triple eigenvalue but not scalar: unipotent-type parabolic
        return IsometryClass(ElementKind.PARABOLIC)
    if len(pairs) == 1:
        i, j = pairs[0]
        lam = 0.5 * (eigs[i] + eigs[j])
        sv = np.linalg.svd(m.m - lam * np.eye(3), compute_uv=False)
        if sv[1] > _DEFECT_TOL * scale:
            return IsometryClass(ElementKind.PARABOLIC)
        # repeated eigenvalue with a true 2-dim eigenspace: boundary elliptic
        k = 3 - i - j
        simple_norm = herm_form(vecs[:, k], vecs[:, k]).real
        ref = eigs[k] if simple_norm < 0 else lam
        return _elliptic_class(m, ref, eigs, cfg)
    # |f| tiny yet no eigenvalue cluster: fall back on the modulus test
    if float(np.max(np.abs(eigs))) > 1.0 + _CLUSTER_TOL:
        return IsometryClass(ElementKind.LOXODROMIC, length=_lambda_from_eigs(eigs))
    ref = eigs[_negative_direction_index(vecs)]
    return _elliptic_class(m, ref, eigs, cfg)


def translation_length(m: Isometry, cfg: Config = DEFAULT) -> float:
    """Translation length 2*ln(max |eigenvalue|) of a loxodromic element.

    The factor matches the distance normalization: the standard boost by a
    moves the ball center a distance 2a along the real axis.
    """
    cls = classify(m, cfg)
    if cls.kind is not ElementKind.LOXODROMIC:
        raise NotLoxodromic(f"element is {cls.kind.value}")
    return float(cls.length)


def proj_equal(a: Isometry, b: Isometry, tol: float = 1e-9) -> bool:
    """Equality in the projective group: equal up to a cube root of unity."""
    for k in range(3):
        w = cmath.exp(2j * math.pi * k / 3.0)
        if float(np.max(np.abs(a.m - w * b.m))) < tol:
            return True
    return False


def null_eigenvectors(m: Isometry, cfg: Config = DEFAULT) -> list[np.ndarray]:
    """Null eigenvectors of a non-elliptic isometry, attracting first.

    Loxodromic elements give their two boundary fixed points, parabolic
    elements their single one.
    """
    cls = classify(m, cfg)
    if cls.kind not in (ElementKind.LOXODROMIC, ElementKind.PARABOLIC):
        raise EllipticInput("boundary fixed points need a non-elliptic element")
    eigs, vecs = m.eigen()
    order = np.argsort(-np.abs(eigs))
    picked: list[np.ndarray] = []
    for k in order:
        v = vecs[:, k] / np.max(np.abs(vecs[:, k]))
        if abs(herm_form(v, v).real) > 1e-5:
            continue
        if any(_projectively_close(v, u) for u in picked):
            continue
        picked.append(v)
    want = 2 if cls.kind is ElementKind.LOXODROMIC else 1
    return picked[:want]


def _projectively_close(u: np.ndarray, v: np.ndarray, tol: float = 1e-6) -> bool:
    g = np.vdot(u, v)
    return float(np.linalg.norm(np.vdot(v, v) * u - np.conj(g) * v)) < tol * float(
        np.linalg.norm(u)
    ) * float(np.vdot(v, v).real)
