"""Gram construction, realization and the deformation family."""

import math

import numpy as np
import pytest

from chtriangle.core import (
    ElementKind,
    VectorSign,
    box,
    classify,
    herm_form,
    proj_order,
    sign_of,
)
from chtriangle.errors import BadSpec, OutOfRange, WrongSignature
from chtriangle.family import (
    INF,
    TriangleSpec,
    angular_invariant,
    build,
    gram_det,
    gram_for,
    realize,
    valid_t_range,
    vertices_of,
)
from chtriangle.words import evaluate, wa_wb

from conftest import random_su21

SPECS = [
    TriangleSpec(2, 3, 7),
    TriangleSpec(4, 4, 4),
    TriangleSpec(5, 5, 5),
    TriangleSpec(4, 4, INF),
    TriangleSpec(INF, INF, INF),
]


class TestTriangleSpec:
    def test_parse(self):
        s = TriangleSpec.parse("4,4,inf")
        assert s.entries == (4, 4, INF)
        assert s.label() == "4,4,inf"

    def test_ordering_enforced(self):
        with pytest.raises(BadSpec):
            TriangleSpec(7, 3, 2)

    def test_hyperbolicity(self):
        with pytest.raises(BadSpec):
            TriangleSpec(2, 3, 6)  # euclidean
        with pytest.raises(BadSpec):
            TriangleSpec(2, 2, 100)

    def test_minimum_entry(self):
        with pytest.raises(BadSpec):
            TriangleSpec(1, 8, 8)


class TestGram:
    def test_ideal_moduli_and_phase(self):
        g = gram_for(TriangleSpec(INF, INF, INF), 0.7)
        off = [abs(g[0, 1]), abs(g[0, 2]), abs(g[1, 2])]
        assert np.allclose(off, 1.0)
        # deformation phase sits on the (2,3) entry, measured from the real point
        assert abs(g[1, 2] / g[0, 1] / abs(g[1, 2]) - np.exp(0.7j)) < 1e-12

    def test_moduli_follow_angles(self):
        g = gram_for(TriangleSpec(4, 4, 4), 0.0)
        assert np.max(np.abs(g.imag)) == 0.0
        assert abs(abs(g[0, 1]) - math.cos(math.pi / 4)) < 1e-15

    def test_real_at_zero(self):
        for spec in SPECS:
            assert np.max(np.abs(gram_for(spec, 0.0).imag)) == 0.0

    def test_range_validation(self):
        with pytest.raises(OutOfRange):
            gram_for(TriangleSpec(4, 4, 4), -0.1)
        with pytest.raises(OutOfRange):
            gram_for(TriangleSpec(4, 4, 4), 3.5)


class TestRealize:
    def test_identity_gram_rejected(self):
        with pytest.raises(WrongSignature):
            realize(np.eye(3, dtype=complex))

    def test_round_trip_on_family(self):
        for spec in SPECS:
            _, t_hi = valid_t_range(spec)
            for t in np.linspace(0.0, t_hi, 7):
                g = gram_for(spec, float(t))
                c = realize(g)
                got = np.array(
                    [[herm_form(c[i], c[j]) for j in range(3)] for i in range(3)]
                )
                assert np.max(np.abs(got - g)) < 1e-10

    def test_round_trip_random_signature21(self, rng):
        # random spanning triples give Hermitian Gram matrices of signature (2,1)
        from conftest import random_positive

        for _ in range(25):
            c = np.stack([random_positive(rng) for _ in range(3)])
            c = c / np.sqrt([herm_form(v, v).real for v in c])[:, None]
            g = np.array([[herm_form(c[i], c[j]) for j in range(3)] for i in range(3)])
            try:
                out = realize(g)
            except WrongSignature:
                continue  # a random triple may span a (3,0) or (1,2) configuration
            got = np.array(
                [[herm_form(out[i], out[j]) for j in range(3)] for i in range(3)]
            )
            assert np.max(np.abs(got - g)) < 1e-10

    def test_real_input_gives_real_vectors(self):
        c = realize(gram_for(TriangleSpec(4, 4, 4), 0.0))
        assert np.max(np.abs(c.imag)) == 0.0


class TestBuild:
    def test_orders_444(self):
        f = build(TriangleSpec(4, 4, 4), 0.0)
        assert proj_order(f.gens[0] @ f.gens[1], 8) == 4
        for g in f.gens:
            assert np.max(np.abs(g.m.imag)) < 1e-14  # genuinely real at t = 0

    def test_orders_scalene(self):
        f = build(TriangleSpec(2, 3, 7), 0.3)
        assert proj_order(f.gens[0] @ f.gens[1], 8) == 7
        assert proj_order(f.gens[0] @ f.gens[2], 8) == 3
        assert proj_order(f.gens[1] @ f.gens[2], 8) == 2

    def test_ideal_products_parabolic(self):
        f = build(TriangleSpec(INF, INF, INF), 0.0)
        assert classify(f.gens[0] @ f.gens[1]).kind is ElementKind.PARABOLIC

    def test_small_deformation_keeps_orders(self):
        f = build(TriangleSpec(4, 4, 4), 0.05)
        assert proj_order(f.gens[0] @ f.gens[1], 8) == 4

    def test_out_of_range(self):
        t_max, _ = valid_t_range(TriangleSpec(4, 4, 4))
        with pytest.raises(OutOfRange):
            build(TriangleSpec(4, 4, 4), t_max + 1e-3)

    def test_determinant_negative_inside_range(self):
        for spec in SPECS:
            _, t_hi = valid_t_range(spec)
            assert gram_det(spec, 0.0) < 0
            assert gram_det(spec, t_hi) < 0

    def test_continuity_in_t(self):
        spec = TriangleSpec(4, 4, 4)
        base = build(spec, 0.6)
        for h in (1e-3, 1e-5, 1e-7):
            step = build(spec, 0.6 + h)
            gap = max(
                float(np.max(np.abs(a.m - b.m)))
                for a, b in zip(base.gens, step.gens)
            )
            assert gap < 50 * h


class TestVertices:
    def test_signs(self):
        v = vertices_of(build(TriangleSpec(4, 4, 4), 0.4))
        assert all(sign_of(v[j]) is VectorSign.NEGATIVE for j in range(3))
        v = vertices_of(build(TriangleSpec(INF, INF, INF), 0.4))
        assert all(sign_of(v[j]) is VectorSign.NULL for j in range(3))
        v = vertices_of(build(TriangleSpec(4, 4, INF), 0.4))
        assert [sign_of(v[j]) for j in range(3)] == [
            VectorSign.NEGATIVE,
            VectorSign.NEGATIVE,
            VectorSign.NULL,
        ]

    def test_vertex_polar_orthogonality(self):
        f = build(TriangleSpec(5, 5, 5), 0.8)
        v = vertices_of(f)
        for j in range(3):
            assert abs(herm_form(f.polars[j], v[(j + 1) % 3])) < 1e-10
            assert abs(herm_form(f.polars[j], v[(j + 2) % 3])) < 1e-10

    def test_vertex_route_reproduces_polars(self):
        # rebuilding the polar vectors from the vertices inverts the construction
        f = build(TriangleSpec(4, 4, 4), 0.9)
        v = vertices_of(f)
        for j in range(3):
            c2 = box(v[(j + 2) % 3], v[(j + 1) % 3])
            cross = box(c2, f.polars[j])
            assert np.max(np.abs(cross)) < 1e-9 * np.max(np.abs(c2))


class TestAngularInvariant:
    def test_real_point(self):
        for spec in SPECS:
            val = angular_invariant(vertices_of(build(spec, 0.0)))
            assert min(abs(val), abs(abs(val) - math.pi)) < 1e-9

    def test_isometry_invariance(self, rng):
        f = build(TriangleSpec(INF, INF, INF), 1.1)
        v = vertices_of(f)
        base = angular_invariant(v)
        for _ in range(10):
            g = random_su21(rng)
            moved = np.stack([g.apply(v[j]) for j in range(3)])
            assert abs(angular_invariant(moved) - base) < 1e-10

    def test_monotone_in_t_ideal(self):
        spec = TriangleSpec(INF, INF, INF)
        ts = np.linspace(0.15, 2.9, 40)
        vals = [angular_invariant(vertices_of(build(spec, float(t)))) for t in ts]
        diffs = np.diff(vals)
        assert np.all(diffs > 0) or np.all(diffs < 0)


class TestOneDimensionality:
    def test_diagonal_gauge_gives_conjugate_groups(self, rng):
        """Any phase redistribution with the same moduli realizes the same group."""
        spec = TriangleSpec(4, 4, 4)
        t = 0.85
        f = build(spec, t)
        wa, wb = wa_wb(spec)
        ref = [
            evaluate(f, w).trace
            for w in [(1, 2), (2, 3), (1, 3), (1, 2, 3), wa, wb]
        ]
        for _ in range(10):
            phases = np.exp(1j * rng.uniform(0, 2 * math.pi, size=3))
            d = np.diag(phases)
            g2 = d @ gram_for(spec, t) @ d.conj().T
            c = realize(g2)
            from chtriangle.core import reflect_matrix

            gens = tuple(reflect_matrix(c[k]) for k in range(3))
            f2 = type(f)(spec=spec, t=t, polars=c, gens=gens, gram=g2)
            got = [
                evaluate(f2, w).trace
                for w in [(1, 2), (2, 3), (1, 3), (1, 2, 3), wa, wb]
            ]
            assert np.max(np.abs(np.array(got) - np.array(ref))) < 1e-10
