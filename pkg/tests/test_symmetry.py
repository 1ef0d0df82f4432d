from __future__ import annotations

import numpy as np
import pytest

from cubicpoints import (
    CubicForm,
    InputError,
    PointSet,
    ProjectiveTransform,
    act_on_cubic,
    act_on_point,
    chordal_distance,
    fermat_translations,
    fixed_points_on_curve,
    generate_group,
    hesse_cubic,
    lefschetz_trace,
    orbit_decomposition,
    preserves_cubic,
    random_points_on_curve,
    random_smooth_cubic,
)
from cubicpoints.symmetry import hesse_base_points, hesse_normalize

W3 = np.exp(2j * np.pi / 3)


class TestProjectiveTransform:
    def test_identity_and_inverse(self, rng):
        M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        T = ProjectiveTransform(M)
        assert (T @ T.inverse()).is_identity()
        assert abs(abs(np.linalg.det(T.matrix)) - 1.0) < 1e-10

    def test_scalar_multiples_collapse(self, rng):
        M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert ProjectiveTransform(M).pgl_equal(ProjectiveTransform(2.5j * M))

    def test_rejects_singular_and_misshapen(self):
        with pytest.raises(InputError):
            ProjectiveTransform(np.zeros((3, 3)))
        with pytest.raises(InputError):
            ProjectiveTransform(np.eye(2))

    def test_composition_acts_in_order(self, fermat, rng):
        S = ProjectiveTransform(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        T = ProjectiveTransform(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        lhs = act_on_point(S @ T, v)
        rhs = act_on_point(S, act_on_point(T, v))
        assert chordal_distance(lhs.array, rhs.array) < 1e-10


class TestActions:
    def test_coordinate_cycle_on_a_flex(self):
        a, _ = fermat_translations()
        out = act_on_point(a, np.array([-1.0, 1.0, 0.0]))
        assert chordal_distance(out.array, np.array([0.0, -1.0, 1.0])) < 1e-12

    def test_pushforward_vanishes_on_moved_points(self, fermat, rng):
        M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        T = ProjectiveTransform(M)
        g = act_on_cubic(T, fermat)
        for p in random_points_on_curve(fermat, 4, rng):
            assert g.residual_at(act_on_point(T, p.point)) < 1e-10

    def test_preserves_cubic(self, fermat):
        a, b = fermat_translations()
        assert preserves_cubic(a, fermat)
        assert preserves_cubic(b, fermat)
        assert not preserves_cubic(ProjectiveTransform(np.diag([2.0, 1.0, 1.0])), fermat)


class TestFermatTranslations:
    def test_generators_have_order_three(self):
        a, b = fermat_translations()
        assert not a.is_identity()
        assert (a @ a @ a).is_identity()
        assert not b.is_identity()
        assert (b @ b @ b).is_identity()

    def test_generators_commute_in_pgl(self):
        a, b = fermat_translations()
        assert (a @ b).pgl_equal(b @ a)

    def test_group_has_nine_elements(self):
        a, b = fermat_translations()
        K = generate_group([a, b])
        assert len(K) == 9

    def test_translations_act_without_fixed_points(self, fermat):
        a, b = fermat_translations()
        for g in generate_group([a, b]):
            if g.is_identity():
                continue
            assert len(fixed_points_on_curve(g, fermat)) == 0
            assert lefschetz_trace(g, fermat) == 2


class TestFixedPoints:
    def test_harmonic_scaling_fixes_a_line_section(self, fermat):
        T = ProjectiveTransform(np.diag([1.0, 1.0, W3]))
        assert preserves_cubic(T, fermat)
        fixed = fixed_points_on_curve(T, fermat)
        assert len(fixed) == 3
        # all fixed points lie on the pointwise-fixed line z = 0
        for p in fixed:
            assert abs(p.array[2]) < 1e-8
        assert lefschetz_trace(T, fermat) == -1

    def test_identity_is_rejected(self, fermat):
        with pytest.raises(InputError):
            fixed_points_on_curve(ProjectiveTransform.identity(), fermat)


class TestOrbits:
    def test_translations_act_freely_on_flexes(self, fermat, fermat_flexes):
        a, b = fermat_translations()
        K = generate_group([a, b])
        rep = orbit_decomposition(K, fermat_flexes)
        assert rep.free
        assert sorted(len(o) for o in rep.orbits) == [9]
        for perm in rep.permutations:
            assert sorted(perm) == list(range(9))

    def test_stabilized_points_break_freeness(self, fermat, fermat_flexes):
        T = ProjectiveTransform(np.diag([1.0, 1.0, W3]))
        # z-scaling fixes the three flexes on z = 0, so the action is not free
        rep = orbit_decomposition([ProjectiveTransform.identity(), T], fermat_flexes)
        assert not rep.free


class TestHesse:
    def test_base_points_lie_on_every_member(self):
        pts = hesse_base_points()
        assert len(pts) == 9
        for lam in (0.0, 2.0 + 1.0j, -7.25):
            f = hesse_cubic(lam)
            for v in pts:
                assert f.residual_at(v) < 1e-12

    def test_pencil_member_recovers_its_parameter(self):
        f = hesse_cubic(2.0)
        T, lam = hesse_normalize(f)
        assert abs(lam - 2.0) < 1e-8
        target = hesse_cubic(lam)
        assert act_on_cubic(T, f).poly.proportionality_residual(target.poly) < 1e-6

    def test_random_cubic_enters_the_pencil(self, rng):
        f = random_smooth_cubic(rng)
        T, lam = hesse_normalize(f)
        g = act_on_cubic(T, f)
        target = hesse_cubic(lam)
        assert g.poly.proportionality_residual(target.poly) < 1e-6

    def test_moved_flexes_land_on_base_points(self, rng):
        from cubicpoints import CurvePoint, inflection_points, normalize_point

        f = random_smooth_cubic(rng)
        T, _ = hesse_normalize(f)
        base = PointSet(
            [CurvePoint(normalize_point(v), 0.0) for v in hesse_base_points()], 1e-6
        )
        moved = PointSet(
            [CurvePoint(act_on_point(T, cp.point), 0.0) for cp in inflection_points(f)],
            1e-6,
        )
        assert moved.setwise_equal(base)

    def test_singular_member_is_rejected(self):
        from cubicpoints import SingularCurveError

        with pytest.raises(SingularCurveError):
            hesse_normalize(hesse_cubic(-3.0))
