import numpy as np
import pytest

from alphafractal import (
    DepthPolicy,
    FunctionSpec,
    Level,
    LevelSequence,
    ProblemConfig,
    build_partition,
    derive_affine_maps,
    validate_level_sequence,
)
from alphafractal.errors import (
    BadExponent,
    EndpointMismatch,
    NonMonotoneKnots,
    ScalingNotContractive,
    TooFewKnots,
)

DOM = (0.0, 1.0)


class TestPartition:
    def test_basic(self):
        p = build_partition([0.0, 0.5, 1.0])
        assert p.n_intervals == 2
        assert p.domain == (0.0, 1.0)

    def test_two_knots_rejected(self):
        with pytest.raises(TooFewKnots):
            build_partition([0.0, 1.0])

    def test_intervals(self):
        p = build_partition([0.0, 0.25, 1.0])
        assert p.n_intervals == 2
        assert p.interval(1) == (0.0, 0.25)
        assert p.interval(2) == (0.25, 1.0)

    def test_non_monotone_rejected(self):
        with pytest.raises(NonMonotoneKnots):
            build_partition([0.0, 0.5, 0.5, 1.0])
        with pytest.raises(NonMonotoneKnots):
            build_partition([0.0, 0.6, 0.5])


class TestAffineMaps:
    def test_uniform(self):
        m = derive_affine_maps(build_partition([0.0, 0.5, 1.0]))
        assert m.a == (0.5, 0.5)
        assert m.e == (0.0, 0.5)

    def test_nonuniform(self):
        m = derive_affine_maps(build_partition([0.0, 0.25, 1.0]))
        assert m.a == (0.25, 0.75)
        assert m.e == (0.0, 0.25)

    def test_shifted(self):
        m = derive_affine_maps(build_partition([-1.0, 0.0, 1.0]))
        assert m.a == (0.5, 0.5)
        assert m.e == (-0.5, 0.5)

    def test_endpoints_map_to_knots_exactly(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            knots = np.sort(rng.uniform(-2.0, 3.0, size=5))
            knots += np.arange(5) * 1e-3  # enforce strict increase
            p = build_partition(knots)
            m = derive_affine_maps(p)
            for i in range(1, p.n_intervals + 1):
                assert float(m.forward(i, p.lo)) == p.knots[i - 1]
                assert float(m.forward(i, p.hi)) == p.knots[i]
                assert float(m.inverse(i, p.knots[i - 1])) == p.lo
                assert float(m.inverse(i, p.knots[i])) == p.hi

    def test_coefficient_sum_and_range(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            knots = np.cumsum(rng.uniform(0.1, 1.0, size=6))
            p = build_partition(knots)
            m = derive_affine_maps(p)
            assert all(0.0 < a < 1.0 for a in m.a)
            assert sum(m.a) == pytest.approx(1.0, abs=1e-12)

    def test_round_trip(self):
        rng = np.random.default_rng(5)
        p = build_partition([0.0, 0.3, 0.45, 0.9, 1.0])
        m = derive_affine_maps(p)
        xs = rng.uniform(0.0, 1.0, size=200)
        for i in range(1, p.n_intervals + 1):
            back = m.inverse(i, m.forward(i, xs))
            assert np.max(np.abs(back - xs)) < 1e-12
        # forward o inverse on points of I_i
        zs = rng.uniform(0.3, 0.45, size=100)
        fwd = m.forward(2, m.inverse(2, zs))
        assert np.max(np.abs(fwd - zs)) < 1e-12


class TestFunctionSpec:
    def test_families_evaluate(self):
        x = np.linspace(0.0, 1.0, 11)
        assert np.all(FunctionSpec.constant(2.5, DOM)(x) == 2.5)
        lin = FunctionSpec.linear_endpoint(1.0, 3.0, DOM)
        assert lin(0.0) == 1.0 and lin(1.0) == 3.0 and lin(0.5) == 2.0
        poly = FunctionSpec.polynomial([1.0, 0.0, 2.0], DOM)
        assert poly(0.5) == pytest.approx(1.5)
        sin = FunctionSpec.sinusoid(0.1, np.pi, 0.0, 0.15, DOM)
        assert sin(0.5) == pytest.approx(0.25)
        samp = FunctionSpec.sampled([0.0, 1.0, 0.0], DOM)
        assert samp(0.25) == pytest.approx(0.5)

    def test_deterministic_bit_for_bit(self):
        spec = FunctionSpec.sinusoid(0.3, 2.1, 0.7, 0.05, DOM)
        x = np.random.default_rng(0).uniform(0, 1, 100)
        a = spec(x)
        b = spec(x)
        assert np.array_equal(a, b)

    def test_scalar_in_scalar_out(self):
        spec = FunctionSpec.polynomial([0.0, 1.0], DOM)
        assert isinstance(spec(0.3), float)


def _cfg(alpha_value, base, mode="continuous", d=1.0):
    p = build_partition([0.0, 0.5, 1.0])
    f = FunctionSpec.polynomial([0.0, 1.0], DOM)
    a = FunctionSpec.constant(alpha_value, DOM)
    return ProblemConfig(p, f, LevelSequence((Level((a, a), base),)),
                         mode=mode, d=d)


class TestValidation:
    def test_ratio_08_fails_lip_passes_continuous(self, base_x2):
        rep = validate_level_sequence(_cfg(0.4, base_x2, mode="lip"))
        assert not rep.ok
        assert rep.problems[0][0] == "LipConditionViolated"
        assert rep.lip_ratios[0] == pytest.approx(0.8)
        rep2 = validate_level_sequence(_cfg(0.4, base_x2, mode="cont"))
        assert rep2.ok

    def test_ratio_04_passes_both(self, base_x2):
        assert validate_level_sequence(_cfg(0.2, base_x2, mode="lip")).ok
        assert validate_level_sequence(_cfg(0.2, base_x2, mode="cont")).ok

    def test_endpoint_mismatch(self):
        shifted = FunctionSpec.polynomial([0.1, 0.0, 1.0], DOM)  # x^2 + 0.1
        rep = validate_level_sequence(_cfg(0.4, shifted))
        assert not rep.ok
        assert rep.problems[0][0] == "EndpointMismatch"
        with pytest.raises(EndpointMismatch):
            rep.raise_if_failed()

    def test_scaling_not_contractive_at_construction(self):
        with pytest.raises(ScalingNotContractive):
            LevelSequence((Level(
                (FunctionSpec.constant(1.2, DOM), FunctionSpec.constant(0.5, DOM)),
                FunctionSpec.polynomial([0.0, 0.0, 1.0], DOM),
            ),))

    def test_degenerate_base_warns(self, germ_x):
        cfg = _cfg(0.4, germ_x)
        with pytest.warns(UserWarning, match="degenerates"):
            rep = validate_level_sequence(cfg)
        assert rep.ok
        assert rep.degenerate_levels == (1,)


class TestLevelSequence:
    def test_repeat_last_tail(self, base_x2, germ_x):
        a1 = FunctionSpec.constant(0.3, DOM)
        a2 = FunctionSpec.constant(0.2, DOM)
        seq = LevelSequence((
            Level((a1, a1), base_x2),
            Level((a2, a2), germ_x),
        ))
        assert seq.level(1).scalings[0] is a1
        assert seq.level(2).scalings[0] is a2
        assert seq.level(7).scalings[0] is a2
        assert seq.base(7) is germ_x

    def test_alpha_sup_over_prefix(self, base_x2):
        a1 = FunctionSpec.constant(0.3, DOM)
        a2 = FunctionSpec.constant(-0.45, DOM)
        seq = LevelSequence((Level((a1, a1), base_x2), Level((a2, a2), base_x2)))
        grid = np.linspace(0, 1, 100)
        assert seq.alpha_sup(grid) == pytest.approx(0.45)


class TestProblemConfig:
    def test_grid_contains_knots(self, germ_x, base_x2):
        p = build_partition([0.0, 0.31, 0.77, 1.0])
        a = FunctionSpec.constant(0.4, DOM)
        cfg = ProblemConfig(p, germ_x, LevelSequence((Level((a,) * 3, base_x2),)),
                            grid_size=257)
        for k in p.knots:
            assert k in cfg.grid

    def test_bad_exponent(self, germ_x, base_x2):
        with pytest.raises(BadExponent):
            _cfg(0.4, base_x2, d=0.0)
        with pytest.raises(BadExponent):
            _cfg(0.4, base_x2, d=1.5)

    def test_ordinate_endpoints_enforced(self, germ_x, base_x2):
        p = build_partition([0.0, 0.5, 1.0])
        a = FunctionSpec.constant(0.4, DOM)
        levels = LevelSequence((Level((a, a), base_x2),))
        with pytest.raises(EndpointMismatch):
            ProblemConfig(p, germ_x, levels, ordinates=(0.1, 0.5, 1.0))
        # interior mismatch only warns
        with pytest.warns(UserWarning, match="interior"):
            ProblemConfig(p, germ_x, levels, ordinates=(0.0, 0.7, 1.0))

    def test_depth_policy_validation(self):
        with pytest.raises(Exception):
            DepthPolicy(depth=0)
        with pytest.raises(Exception):
            DepthPolicy(eps=-1.0)
