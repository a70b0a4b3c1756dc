import math
from fractions import Fraction

import numpy as np
import pytest

from basedtc.checks import collar_level, smooth_lifting_data
from basedtc.paths import (
    BASED,
    FREE,
    LOOP,
    Circle,
    Euclidean,
    PathError,
    PathMap,
    Product,
    check_continuity,
    constant_path,
    evaluate_fibration,
    fibration_parameters,
    lift_branch,
    lift_extend,
    lift_parameter_bottom,
    lift_parameter_top,
    linear_path,
    loop_fold,
    piecewise_linear,
    prefix_scale,
    random_pl_path,
    shift_embed,
    transport_section,
)

R = Euclidean(1)


def identity_path():
    return PathMap(lambda t: float(t), R, 1, BASED, 0.0)


class TestFibrations:
    def test_p(self):
        np.testing.assert_allclose(evaluate_fibration(identity_path(), "p", 3)[:, 0], [1 / 3, 2 / 3, 1])

    def test_q(self):
        loop = PathMap(lambda t: math.sin(math.pi * t), R, 1, LOOP, 0.0)
        got = evaluate_fibration(loop, "q", 2)[:, 0]
        np.testing.assert_allclose(got, [math.sin(math.pi / 3), math.sin(2 * math.pi / 3)])

    def test_P_two_is_endpoints(self):
        f = PathMap(lambda t: 3 * float(t) + 1, R, 1, FREE)
        np.testing.assert_array_equal(evaluate_fibration(f, "P", 2)[:, 0], [1, 4])

    def test_Q(self):
        loop = PathMap(lambda t: float(t) * (1 - float(t)), R, 1, LOOP, 0.0)
        np.testing.assert_allclose(evaluate_fibration(loop, "Q", 2)[:, 0], [0, 0.25])

    def test_parameters_are_exact(self):
        assert fibration_parameters("P", 3) == [0, Fraction(1, 2), 1]

    @pytest.mark.parametrize("kind, n", [("P", 1), ("Q", 1), ("p", 0), ("x", 2)])
    def test_range_errors(self, kind, n):
        with pytest.raises(PathError):
            fibration_parameters(kind, n)

    def test_boundary_mismatch(self):
        f = PathMap(lambda t: float(t), R, 1, FREE)
        with pytest.raises(PathError):
            evaluate_fibration(f, "p", 2)
        with pytest.raises(PathError):
            evaluate_fibration(identity_path(), "q", 2)

    def test_based_path_checked_at_construction(self):
        with pytest.raises(PathError):
            PathMap(lambda t: 1.0, R, 1, BASED, 0.0)
        with pytest.raises(PathError):
            PathMap(lambda t: float(t), R, 1, LOOP, 0.0)


class TestReparametrizations:
    def test_prefix_scale_one_is_identity(self):
        f = identity_path()
        g = prefix_scale(f, 1)
        for t in (0, Fraction(1, 3), 1):
            assert g(t) == f(t)

    def test_prefix_scale_rejects(self):
        with pytest.raises(PathError):
            prefix_scale(identity_path(), 0)
        with pytest.raises(PathError):
            prefix_scale(identity_path(), Fraction(3, 2))

    def test_constant_stays_constant(self):
        c = constant_path([2.0, -1.0], Euclidean(2))
        for g in (prefix_scale(c, Fraction(2, 3)), loop_fold(c, 3)):
            for t in np.linspace(0, 1, 11):
                np.testing.assert_array_equal(g(t), [2.0, -1.0])

    def test_loop_fold_knee(self):
        f = identity_path()
        for n in (1, 2, 5):
            g = loop_fold(f, n)
            assert g(Fraction(n, n + 1)) == f(1)
            assert g(1) == 0.0

    def test_loop_fold_needs_based(self):
        with pytest.raises(PathError):
            loop_fold(PathMap(lambda t: 1.0, R, 1, FREE), 2)

    def test_shift_embed_ends(self):
        f = identity_path()
        g = shift_embed(f, 4)
        assert g(0) == f(Fraction(1, 4)) and g(1) == f(1)
        with pytest.raises(PathError):
            shift_embed(f, 1)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_identities_on_random_paths(self, n):
        rng = np.random.default_rng(n)
        sp = Euclidean(2)
        for _ in range(20):
            phi = random_pl_path(rng, sp, BASED)
            loop = random_pl_path(rng, sp, LOOP)
            pn = evaluate_fibration(phi, "p", n)
            assert np.max(np.abs(evaluate_fibration(loop_fold(phi, n), "q", n) - pn)) <= 1e-12
            assert np.max(np.abs(evaluate_fibration(prefix_scale(loop, Fraction(n, n + 1)), "p", n)
                                 - evaluate_fibration(loop, "q", n))) <= 1e-12
            if n >= 2:
                assert np.max(np.abs(evaluate_fibration(shift_embed(phi, n), "P", n) - pn)) <= 1e-12

    def test_piecewise_linear_exact_at_knots(self):
        f = piecewise_linear([0, Fraction(1, 3), 1], [[0.0], [0.7], [1.0]], R)
        assert f(Fraction(1, 3))[0] == 0.7
        assert f(Fraction(2, 3))[0] == pytest.approx(0.85)


class TestSpaces:
    def test_circle_distance_wraps(self):
        c = Circle()
        assert c.distance([0.95], [0.05]) == pytest.approx(0.1)
        assert c.distance([2.25], [0.25]) == 0

    def test_product_distance(self):
        sp = Product((Euclidean(1), Circle()))
        assert sp.dim == 2
        assert sp.distance([0.0, 0.9], [3.0, 0.1 + 4]) == pytest.approx(math.hypot(3, 0.2))

    def test_loop_on_circle(self):
        # a loop that winds once is closed in R/Z
        f = PathMap(lambda t: float(t), Circle(), 1, LOOP, 0.0)
        assert evaluate_fibration(f, "q", 1)[0, 0] == 0.5


class TestLiftExtend:
    def test_zero_data(self):
        G = PathMap(lambda y, s: 0.0, R, 2)
        hs = [PathMap(lambda y, t: 0.0, R, 2) for _ in range(3)]
        H = lift_extend(G, hs, 3, 0.0)
        for t in (0, 0.3, 1):
            for s in (0, Fraction(1, 3), 0.77, 1):
                assert H(0.5, t, s)[0] == 0.0

    def test_branch_boundaries_exact(self):
        n = 3
        # s = j/n + 2t/(5n) sits exactly on the bottom seam
        t = Fraction(1, 2)
        assert lift_branch(n, t, Fraction(1, 3) + 2 * t / (5 * n)) == ("bottom", 1)
        assert lift_branch(n, t, Fraction(2, 3) - 2 * t / (5 * n)) == ("top", 1)
        assert lift_branch(n, 0, Fraction(1, 3)) == ("middle", 1)
        assert lift_branch(n, t, 1) == ("top", 2)

    @pytest.mark.parametrize("n, j", [(2, 0), (2, 1), (3, 2)])
    def test_seam_parameters(self, n, j):
        # at the seams the radical parameters reach the values needed for continuity
        for t in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10), 1):
            top_seam = Fraction(j + 1, n) - 2 * t / (5 * n)
            assert lift_parameter_top(n, j, t, top_seam) == pytest.approx(0, abs=1e-12)
            assert lift_parameter_top(n, j, t, Fraction(j + 1, n)) == pytest.approx(float(t), abs=1e-12)
            bottom_seam = Fraction(j, n) + 2 * t / (5 * n)
            assert lift_parameter_bottom(n, j, t, bottom_seam) == pytest.approx(0, abs=1e-12)
            assert lift_parameter_bottom(n, j, t, Fraction(j, n)) == pytest.approx(float(t), abs=1e-12)

    def test_compatibility_violation(self):
        G = PathMap(lambda y, s: float(s), R, 2)
        hs = [PathMap(lambda y, t: 0.0, R, 2) for _ in range(2)]
        with pytest.raises(PathError, match="compatibility"):
            lift_extend(G, hs, 2, 0.0)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_boundary_identities(self, n):
        rng = np.random.default_rng(11)
        G, hs, x0 = smooth_lifting_data(rng, n)
        H = lift_extend(G, hs, n, x0)
        ticks = [Fraction(k, 16) for k in range(17)]
        for y in ticks[::4]:
            for u in ticks:
                assert np.max(np.abs(H(y, 0, u) - G(y, u))) <= 1e-9
                assert np.max(np.abs(H(y, u, 0) - x0)) <= 1e-9
                for i in range(1, n + 1):
                    assert np.max(np.abs(H(y, u, Fraction(i, n)) - hs[i - 1](y, u))) <= 1e-9

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(5)
        G, hs, x0 = smooth_lifting_data(rng, 3)
        H = lift_extend(G, hs, 3, x0)
        pts = rng.uniform(size=(200, 3))
        pts[:20, 1] = 0
        vec = H.grid(pts[:, 0], pts[:, 1], pts[:, 2])
        scal = np.array([H(*p) for p in pts])
        np.testing.assert_allclose(vec, scal, atol=1e-12)

    @pytest.mark.parametrize("n", [2, 3])
    def test_continuity_past_the_collar_scale(self, n):
        rng = np.random.default_rng(0)
        G, hs, x0 = smooth_lifting_data(rng, n)
        H = lift_extend(G, hs, n, x0)
        rep = check_continuity(H, 5, start_level=collar_level(n))
        assert rep.strictly_decreasing and not rep.flagged

    def test_coarse_grids_do_not_resolve_the_collars(self):
        # collars have width 2t/(5n); dyadic grids coarser than that can show
        # growing gaps even though the map is continuous
        rng = np.random.default_rng(0)
        G, hs, x0 = smooth_lifting_data(rng, 2)
        H = lift_extend(G, hs, 2, x0)
        assert check_continuity(H, 5).flagged
        assert collar_level(2) == 4 and collar_level(3) == 4 and collar_level(7) == 6


class TestContinuity:
    def test_identity_halves(self):
        rep = check_continuity(identity_path(), 5)
        np.testing.assert_allclose(rep.max_gaps, [0.5, 0.25, 0.125, 0.0625, 0.03125])
        assert rep.strictly_decreasing and not rep.flagged

    def test_step_flagged(self):
        step = PathMap(lambda t: 0.0 if t < 0.4 else 1.0, R, 1)
        rep = check_continuity(step, 5)
        assert rep.flagged and not rep.strictly_decreasing

    def test_constant_not_flagged(self):
        rep = check_continuity(constant_path([1.0], R), 4)
        assert not rep.flagged

    def test_levels_minimum(self):
        with pytest.raises(PathError):
            check_continuity(identity_path(), 1)


class TestTransportSection:
    def setup_method(self):
        self.sp = Euclidean(3)
        self.x0 = np.zeros(3)
        ident = lambda x: np.asarray(x, float)  # noqa: E731
        self.ident = ident
        self.H = lambda x, t: np.asarray(x, float)
        self.phi = PathMap(lambda t: self.x0, self.sp, 1, BASED, self.x0)

    def make(self, n):
        x0 = self.x0
        s = lambda ys: linear_path([x0, *ys], self.sp, BASED, x0)  # noqa: E731
        return transport_section(s, self.ident, self.ident, self.H, self.phi, n, x0, x0, self.sp)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_waypoints(self, n):
        rng = np.random.default_rng(n)
        sec = self.make(n)
        xs = rng.normal(size=(n, 3))
        path = sec(xs)
        for i in range(1, n + 1):
            assert np.max(np.abs(path(Fraction(i, n)) - xs[i - 1])) <= 1e-12
        assert np.all(path(0) == self.x0)
        assert np.max(np.abs(evaluate_fibration(path, "p", n) - xs)) <= 1e-12

    def test_continuous(self):
        rng = np.random.default_rng(1)
        path = self.make(3)(rng.normal(size=(3, 3)))
        assert not check_continuity(path, 6, start_level=3).flagged

    def test_nontrivial_equivalence(self):
        # Y = R^3 shifted by v: fwd x = x + v, bwd y = y - v, H(x,t) = x, phi from v to v
        v = np.array([1.0, -2.0, 0.5])
        fwd = lambda x: np.asarray(x) + v  # noqa: E731
        bwd = lambda y: np.asarray(y) - v  # noqa: E731
        y0 = v
        phi = PathMap(lambda t: v, self.sp, 1, BASED, v)
        s = lambda ys: linear_path([y0, *ys], self.sp, BASED, y0)  # noqa: E731
        sec = transport_section(s, fwd, bwd, self.H, phi, 2, self.x0, y0, self.sp)
        xs = np.array([[1.0, 2, 3], [-1, 0, 4]])
        np.testing.assert_allclose(evaluate_fibration(sec(xs), "p", 2), xs, atol=1e-12)

    def test_precondition_errors(self):
        bad_phi = PathMap(lambda t: np.ones(3), self.sp, 1, FREE)
        s = lambda ys: None  # noqa: E731
        with pytest.raises(PathError):
            transport_section(s, self.ident, self.ident, self.H, bad_phi, 2, self.x0, self.x0, self.sp)
        with pytest.raises(PathError):
            self.make(2)(np.zeros((3, 3)))
