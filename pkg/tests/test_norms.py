import numpy as np
import pytest

from alphafractal import (
    FunctionSpec,
    Level,
    LevelSequence,
    ProblemConfig,
    apply_rb,
    build_partition,
    check_lip_hypothesis,
    estimate_norms,
    lip_seminorm,
    sup_norm,
)
from alphafractal.core import SampledFunction, matched_endpoint_polynomial
from alphafractal.errors import BadExponent, EmptyGrid

from reference import ref_lip

DOM = (0.0, 1.0)


class TestSupNorm:
    def test_zero(self):
        assert sup_norm(FunctionSpec.constant(0.0, DOM), np.linspace(0, 1, 9)) == 0.0

    def test_identity(self):
        assert sup_norm(lambda x: x, np.linspace(0, 1, 9)) == 1.0

    def test_parabola_on_grid(self):
        # maximum of x - x^2 is 0.25 at x = 0.5, which lies on the 1025 grid
        grid = np.linspace(0, 1, 1025)
        assert sup_norm(lambda x: x - x ** 2, grid) == 0.25

    def test_empty(self):
        with pytest.raises(EmptyGrid):
            sup_norm(lambda x: x, np.array([]))

    def test_refinement_monotone(self):
        g = FunctionSpec.sinusoid(1.0, 7.0, 0.3, 0.0, DOM)
        coarse = sup_norm(g, np.linspace(0, 1, 65))
        fine = sup_norm(g, np.linspace(0, 1, 129))  # nested refinement
        assert fine >= coarse


class TestLipSeminorm:
    def test_constant(self):
        assert lip_seminorm(FunctionSpec.constant(3.0, DOM), 1.0,
                            np.linspace(0, 1, 33)) == 0.0

    def test_identity_d1(self):
        assert lip_seminorm(lambda x: x, 1.0, np.linspace(0, 1, 33)) == pytest.approx(1.0)

    def test_identity_d_half(self):
        # |x - y| / |x - y|^{1/2} maximized at the endpoint pair
        assert lip_seminorm(lambda x: x, 0.5, np.linspace(0, 1, 33)) == pytest.approx(1.0)

    def test_against_brute_force(self):
        rng = np.random.default_rng(2)
        xs = np.sort(rng.uniform(0, 1, size=40))
        ys = rng.normal(size=40)
        g = SampledFunction(xs, ys)
        for d in (1.0, 0.7, 0.3):
            want = ref_lip(xs, ys, d)
            assert lip_seminorm(g, d, xs) == pytest.approx(want, rel=1e-12)

    def test_bad_exponent(self):
        with pytest.raises(BadExponent):
            lip_seminorm(lambda x: x, 1.5, np.linspace(0, 1, 9))

    def test_empty(self):
        with pytest.raises(EmptyGrid):
            lip_seminorm(lambda x: x, 1.0, np.array([0.5]))

    def test_subsampling_cap(self):
        # strided estimate on a big grid stays close for a smooth function
        g = FunctionSpec.sinusoid(1.0, np.pi, 0.0, 0.0, DOM)
        big = lip_seminorm(g, 1.0, np.linspace(0, 1, 5001))
        assert big == pytest.approx(np.pi, rel=1e-3)

    def test_refinement_monotone(self):
        g = FunctionSpec.sinusoid(1.0, 5.0, 0.1, 0.0, DOM)
        coarse = lip_seminorm(g, 1.0, np.linspace(0, 1, 65))
        fine = lip_seminorm(g, 1.0, np.linspace(0, 1, 129))
        assert fine >= coarse

    def test_triangle_inequality_on_shared_grid(self):
        rng = np.random.default_rng(9)
        grid = np.linspace(0, 1, 80)
        g = SampledFunction(grid, rng.normal(size=80))
        h = SampledFunction(grid, rng.normal(size=80))
        gh = SampledFunction(grid, g.ys + h.ys)
        assert lip_seminorm(gh, 0.6, grid) <= (
            lip_seminorm(g, 0.6, grid) + lip_seminorm(h, 0.6, grid) + 1e-12)


class TestNormEstimate:
    def test_norm_d_is_max(self):
        est = estimate_norms(FunctionSpec.sinusoid(0.1, np.pi, 0.0, 0.15, DOM),
                             1.0, np.linspace(0, 1, 1025))
        assert est.sup_norm == pytest.approx(0.25)
        assert est.lip_d == pytest.approx(0.1 * np.pi, rel=1e-4)
        assert est.norm_d == max(est.sup_norm, est.lip_d)


def _cfg(alpha_specs, mode="lipschitz", d=1.0, grid_size=1025):
    p = build_partition([0.0, 0.5, 1.0])
    f = FunctionSpec.polynomial([0.0, 1.0], DOM)
    b = FunctionSpec.polynomial([0.0, 0.0, 1.0], DOM)
    return ProblemConfig(p, f, LevelSequence((Level(tuple(alpha_specs), b),)),
                         mode=mode, d=d, grid_size=grid_size)


class TestLipHypothesis:
    def test_point_two_passes(self):
        a = FunctionSpec.constant(0.2, DOM)
        rep = check_lip_hypothesis(_cfg([a, a]))
        assert rep.observed == pytest.approx(0.4)
        assert rep.inputs["contraction_factor"] == pytest.approx(0.8)
        assert rep.passed

    def test_point_three_fails(self):
        a = FunctionSpec.constant(0.3, DOM)
        rep = check_lip_hypothesis(_cfg([a, a]))
        assert rep.observed == pytest.approx(0.6)
        assert not rep.passed

    def test_sine_ratio_uses_norm_d(self):
        # ||0.1 sin(pi x) + 0.15||_d = max(0.25, 0.1 pi) = 0.1 pi; ratio vs a^d = 0.5
        a = FunctionSpec.sinusoid(0.1, np.pi, 0.0, 0.15, DOM)
        rep = check_lip_hypothesis(_cfg([a, a]))
        assert rep.observed == pytest.approx(0.1 * np.pi / 0.5, rel=1e-4)
        assert not rep.passed


class TestContractionCertificate:
    def test_rb_contracts_norm_d(self):
        a = FunctionSpec.constant(0.2, DOM)
        cfg = _cfg([a, a], grid_size=513)
        rep = check_lip_hypothesis(cfg)
        assert rep.passed
        factor = rep.inputs["contraction_factor"] + 0.05
        rng = np.random.default_rng(31)
        grid = cfg.grid
        f0, f1 = float(cfg.germ(0.0)), float(cfg.germ(1.0))
        for _ in range(25):
            g1 = matched_endpoint_polynomial(rng.uniform(-1, 1, 6), DOM, f0, f1)
            g2 = matched_endpoint_polynomial(rng.uniform(-1, 1, 6), DOM, f0, f1)
            s1 = SampledFunction(grid, np.asarray(g1(grid)))
            s2 = SampledFunction(grid, np.asarray(g2(grid)))
            t1 = apply_rb(s1, 1, cfg)
            t2 = apply_rb(s2, 1, cfg)
            num = estimate_norms(SampledFunction(grid, t1.ys - t2.ys), cfg.d, grid).norm_d
            den = estimate_norms(SampledFunction(grid, s1.ys - s2.ys), cfg.d, grid).norm_d
            assert num <= factor * den + 1e-12
