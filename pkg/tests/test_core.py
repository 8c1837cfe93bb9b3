"""Form, projection, distance, reflections and the isometry classifier."""

import math

import numpy as np
import pytest

from chtriangle.core import (
    BallPoint,
    ElementKind,
    Isometry,
    VectorSign,
    box,
    classify,
    cvector,
    discriminant,
    dist,
    herm_form,
    lift,
    proj_equal,
    proj_order,
    project,
    reflect_matrix,
    sign_of,
    translation_length,
)
from chtriangle.errors import (
    AtInfinity,
    NotFormPreserving,
    NotLoxodromic,
    NotNegative,
    NotPositive,
    ZeroVector,
)

from conftest import (
    assert_form_preserving,
    block_rotation,
    boost,
    heisenberg_parabolic,
    random_negative,
    random_cvector,
    random_positive,
    random_su21,
)


class TestHermForm:
    def test_unit_vectors(self):
        assert herm_form((1, 0, 0), (1, 0, 0)) == 1
        assert herm_form((0, 0, 1), (0, 0, 1)) == -1
        assert herm_form((1, 0, 1), (1, 0, 1)) == 0

    def test_conjugate_symmetry(self, rng):
        for _ in range(50):
            u, v = random_cvector(rng), random_cvector(rng)
            assert abs(herm_form(u, v) - np.conj(herm_form(v, u))) < 1e-12


class TestSigns:
    def test_examples(self):
        assert sign_of((0, 0, 1)) is VectorSign.NEGATIVE
        assert sign_of((1, 0, 1)) is VectorSign.NULL
        assert sign_of((1, 0, 0)) is VectorSign.POSITIVE

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            sign_of((0, 0, 0))

    def test_scale_free(self, rng):
        # the null test runs on max-normalized lifts, so huge scales are fine
        assert sign_of((1e9, 0, 1e9)) is VectorSign.NULL


class TestProjectLift:
    def test_examples(self):
        assert project((0, 0, 1)) == BallPoint(0j, 0j)
        p = project((0.5, 0, 1))
        assert p == BallPoint(0.5 + 0j, 0j) and p.is_interior()
        q = project((1, 0, 1))
        assert q.is_boundary()

    def test_at_infinity(self):
        with pytest.raises(AtInfinity):
            project((1, 0, 0))

    def test_round_trip(self, rng):
        for _ in range(50):
            z, w = rng.normal(size=2) * 0.4
            p = BallPoint(complex(z), complex(w))
            assert project(lift(p)) == p


class TestDist:
    def test_coincident(self):
        assert dist((0, 0, 1), (0, 0, 1)) == 0.0

    def test_half_radius_value(self):
        # by hand: the ratio for (0,0,1),(s,0,1) is 1/(1-s^2)
        s = 0.5
        expect = 2.0 * math.acosh(math.sqrt(1.0 / (1.0 - s * s)))
        assert abs(dist((0, 0, 1), (s, 0, 1)) - expect) < 1e-14
        assert abs(expect - 1.0986122886681098) < 1e-12  # = log 3

    def test_lift_invariance(self, rng):
        for _ in range(50):
            x, y = random_negative(rng), random_negative(rng)
            lam = complex(*rng.normal(size=2))
            if abs(lam) < 0.1:
                continue
            assert abs(dist(x, lam * y) - dist(x, y)) < 1e-10
            assert abs(dist(x, y) - dist(y, x)) < 1e-12

    def test_not_negative(self):
        with pytest.raises(NotNegative):
            dist((1, 0, 0), (0, 0, 1))


class TestBox:
    def test_basis(self):
        assert np.allclose(box((1, 0, 0), (0, 1, 0)), [0, 0, 1])

    def test_self_annihilation(self, rng):
        for _ in range(20):
            u = random_cvector(rng)
            assert np.max(np.abs(box(u, u))) < 1e-12

    def test_orthogonality(self, rng):
        worst = 0.0
        for _ in range(1000):
            u, v = random_cvector(rng), random_cvector(rng)
            b = box(u, v)
            worst = max(worst, abs(herm_form(u, b)), abs(herm_form(v, b)))
        assert worst < 1e-10


class TestReflect:
    def test_standard_polar(self):
        m = reflect_matrix(cvector(1, 0, 0))
        assert np.allclose(m.m, np.diag([1, -1, -1]))
        p = m.apply_point(BallPoint(0.3 + 0.1j, 0.2j))
        assert abs(p.z - (-0.3 - 0.1j)) < 1e-14 and abs(p.w - 0.2j) < 1e-14

    def test_involution_and_det(self, rng):
        for _ in range(50):
            c = random_positive(rng)
            m = reflect_matrix(c)
            assert np.max(np.abs((m @ m).m - np.eye(3))) < 1e-12
            assert abs(np.linalg.det(m.m) - 1.0) < 1e-12
            assert_form_preserving(m)
            # the polar vector itself is fixed with eigenvalue +1
            assert np.max(np.abs(m.apply(c) - c)) < 1e-10 * np.max(np.abs(c))

    def test_scale_invariance(self, rng):
        for _ in range(20):
            c = random_positive(rng)
            lam = complex(*rng.normal(size=2)) + 2.0
            m1, m2 = reflect_matrix(c), reflect_matrix(lam * c)
            assert np.max(np.abs(m1.m - m2.m)) < 1e-11

    def test_not_positive(self):
        with pytest.raises(NotPositive):
            reflect_matrix(cvector(0, 0, 1))


class TestIsometryType:
    def test_check_rejects_garbage(self):
        with pytest.raises(NotFormPreserving):
            Isometry(np.eye(3) * 2.0, check=True)

    def test_inverse(self, rng):
        for _ in range(20):
            m = random_su21(rng)
            assert np.max(np.abs((m @ m.inv()).m - np.eye(3))) < 1e-9


class TestClassify:
    def test_identity(self):
        cls = classify(Isometry.identity())
        assert cls.kind is ElementKind.IDENTITY
        assert abs(discriminant(3.0)) < 1e-14

    def test_boost(self):
        cls = classify(boost(1.0))
        assert cls.kind is ElementKind.LOXODROMIC
        assert abs(cls.length - 2.0) < 1e-12

    def test_block_rotation_order_five(self):
        # eigenvalue arguments +-2pi/5 relative to the fixed point; the fifth
        # power is the identity projectively
        cls = classify(block_rotation(2 * math.pi / 5))
        assert cls.kind is ElementKind.ELLIPTIC
        assert cls.finite_order == 5
        assert abs(cls.theta1 - 2 * math.pi / 5) < 1e-12
        assert abs(cls.theta2 + 2 * math.pi / 5) < 1e-12

    def test_block_rotation_half_angle_doubles_order(self):
        # rotation by pi/5 only closes up after ten projective steps
        assert classify(block_rotation(math.pi / 5)).finite_order == 10

    def test_parabolic_models(self, rng):
        for zeta, v in [(1 + 0j, 0.0), (0j, 2.0), (0.5 - 0.3j, 1.0)]:
            m = heisenberg_parabolic(zeta, v)
            assert_form_preserving(m)
            assert classify(m).kind is ElementKind.PARABOLIC

    def test_complex_reflection_is_boundary_elliptic(self, rng):
        cls = classify(reflect_matrix(random_positive(rng)))
        assert cls.kind is ElementKind.ELLIPTIC
        assert cls.finite_order == 2
        assert abs(abs(cls.theta1) - math.pi) < 1e-9

    def test_conjugation_invariance(self, rng):
        models = [
            (boost(0.8), ElementKind.LOXODROMIC),
            (block_rotation(1.1), ElementKind.ELLIPTIC),
            (heisenberg_parabolic(1.0 + 0.2j, 0.7), ElementKind.PARABOLIC),
        ]
        for _ in range(20):
            g = random_su21(rng, scale=0.4)
            for m, kind in models:
                assert classify(g @ m @ g.inv()).kind is kind

    def test_discriminant_agrees_with_eigenvalues(self, rng):
        for _ in range(200):
            m = random_su21(rng)
            f = discriminant(m.trace)
            if abs(f) < 10 * 1e-9:
                continue
            eigs = np.abs(m.eigenvalues)
            if f > 0:
                assert eigs.max() > 1.0 + 1e-9
            else:
                assert np.all(np.abs(eigs - 1.0) < 1e-7)


class TestTranslationLength:
    def test_boost_value(self):
        assert abs(translation_length(boost(0.7)) - 1.4) < 1e-12

    def test_inverse_and_square(self):
        m = boost(0.37)
        assert abs(translation_length(m) - translation_length(m.inv())) < 1e-12
        assert abs(translation_length(m @ m) - 2 * translation_length(m)) < 1e-12

    def test_boost_matches_orbit_displacement(self):
        # cross-check the eigenvalue formula against the distance function
        a = 0.9
        m = boost(a)
        center = cvector(0, 0, 1)
        assert abs(dist(center, m.apply(center)) - 2 * a) < 1e-12

    def test_not_loxodromic(self):
        with pytest.raises(NotLoxodromic):
            translation_length(block_rotation(0.5))


class TestProjOrder:
    def test_examples(self, rng):
        assert proj_order(reflect_matrix(random_positive(rng)), 10) == 2
        assert proj_order(Isometry.identity(), 5) == 1
        assert proj_order(boost(1.0), 40) is None

    def test_omega_identity(self):
        w = np.exp(2j * math.pi / 3)
        assert proj_order(Isometry(w * np.eye(3)), 3) == 1


class TestMetricInvariance:
    def test_random_isometries(self, rng):
        for _ in range(100):
            m = random_su21(rng)
            x, y = random_negative(rng), random_negative(rng)
            assert abs(dist(m.apply(x), m.apply(y)) - dist(x, y)) < 1e-10


def test_proj_equal_up_to_cube_root(rng):
    m = random_su21(rng)
    w = np.exp(2j * math.pi / 3)
    assert proj_equal(m, Isometry(w * m.m))
    assert not proj_equal(m, boost(1.0))
