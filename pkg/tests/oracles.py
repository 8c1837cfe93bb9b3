"""Closed-form oracles used by the tests, independent of the library's path.

Both distinguished words reduce to hand-derivable trace formulas in the Gram
entries: writing each generator as 2P - 1 with P the rank-one form projection
onto its polar vector and expanding the product gives

    tr(I1 I2 I3)    = 8 g21 g32 g13 - 4 (|g12|^2 + |g13|^2 + |g23|^2) + 3
    tr(I1 I3 I2 I3) = -1 + 4 |2 g32 g13 - g12|^2

(unit polar vectors; the second word is a product of the two complex
reflections with polar vectors C1 and I3 C2).  With the family's Gram
entries these become one-variable trig polynomials, so critical parameters
and finite-order parameters have exact expressions; the suite checks the
scan pipeline, which only ever touches matrices, against them.
"""

import math

import numpy as np

SQRT2 = math.sqrt(2.0)

# parameter where the tripod word of the ideal family turns parabolic:
# the discriminant of -9 - 8 e^{-it} factors as 256 (c+1)^2 (64 c + 61),
# c = cos t, so the crossing sits at c = -61/64
IDEAL_CRITICAL_T = math.acos(-61.0 / 64.0)

# parameter where the bent word of the (4,4,4) family turns parabolic:
# its real trace 5 + 4 sqrt(2) cos t crosses 3
T444_CRITICAL_A = math.acos(-1.0 / (2.0 * SQRT2))

# parameter where the (4,4,4) tripod word turns parabolic: substituting
# u = sqrt(2) cos t into the discriminant of -3 - 2 sqrt(2) e^{-it} gives
# 16 (u+1)^2 (16u + 13), so the crossing sits at u = -13/16
T444_CRITICAL_B = math.acos(-13.0 / (16.0 * SQRT2))


def t444_order_param(j: int, k: int = 1) -> float:
    """(4,4,4) parameter where the bent word rotates by exactly 2 pi k / j.

    The rotation angle satisfies cos(theta) = 2 + 2 sqrt(2) cos t.
    """
    return math.acos((math.cos(2.0 * math.pi * k / j) - 2.0) / (2.0 * SQRT2))


def trace_tripod(g: np.ndarray) -> complex:
    """Trace of the product of all three reflections, from the Gram matrix."""
    off = abs(g[0, 1]) ** 2 + abs(g[0, 2]) ** 2 + abs(g[1, 2]) ** 2
    return 8.0 * g[1, 0] * g[2, 1] * g[0, 2] - 4.0 * off + 3.0


def trace_bent(g: np.ndarray) -> complex:
    """Trace of I1 I3 I2 I3, from the Gram matrix; always real."""
    return -1.0 + 4.0 * abs(2.0 * g[2, 1] * g[0, 2] - g[0, 1]) ** 2


def goldman_disc(tau: complex) -> float:
    t = complex(tau)
    a2 = abs(t) ** 2
    return a2 * a2 - 8.0 * (t**3).real + 18.0 * a2 - 27.0
