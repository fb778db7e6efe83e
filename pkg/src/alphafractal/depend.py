"""Continuous-dependence experiments: how the interpolant moves when the base
sequence, the scaling sequence, or the partition moves.

The base map is Lipschitz with constant ||alpha||/(1 - ||alpha||); the scaling
map obeys ||alpha - beta|| ||f - b|| / (1 - s_cap)^2 under a common cap; for
the partition the quantitative handle is the per-map displacement bound
2 (1 + theta k_f) ||Delta - Delta~||_2 in the weighted metric
mu((x,y),(x',y')) = |x-x'| + theta |y-y'|, while continuity itself is
witnessed by shrinking knot perturbations.
"""

from __future__ import annotations

import numpy as np

from .core import Partition, ProblemConfig, evaluate
from .engine import backward_trajectory, resolve_depth, truncation_error
from .errors import CapViolated, EndpointMismatch, KnotCountMismatch
from .norms import lip_seminorm
from .report import BoundReport

VERIFY_TOL = 1e-6
BASE_RATIO_SLACK = 1e-4  # allowance on the base-map ratio check
LIP_SLACK = 0.05         # conservative inflation of estimated Lipschitz constants


def _interpolant_sup_diff(cfgA: ProblemConfig, cfgB: ProblemConfig) -> tuple[float, int]:
    """Sup difference of the two trajectory interpolants on a shared comparison grid."""
    depth = max(resolve_depth(cfgA), resolve_depth(cfgB))
    fa = backward_trajectory(None, depth, cfgA).values
    fb = backward_trajectory(None, depth, cfgB).values
    if np.array_equal(fa.xs, fb.xs):
        return float(np.max(np.abs(fa.ys - fb.ys))), depth
    common = np.union1d(fa.xs, fb.xs)
    return float(np.max(np.abs(fa(common) - fb(common)))), depth


# ---------------------------------------------------------------------------
# Dependence on the base sequence
# ---------------------------------------------------------------------------


def base_dependence(cfg: ProblemConfig, bases_a, bases_b) -> BoundReport:
    """Ratio ||A(b) - A(c)|| / ||b - c|| against the Lipschitz constant
    ||alpha||/(1 - ||alpha||).  Identical sequences give ratio 0."""
    cfgA = cfg.with_bases(tuple(bases_a))
    cfgB = cfg.with_bases(tuple(bases_b))
    a = cfg.alpha_sup
    predicted = a / (1.0 - a)
    depth_levels = max(cfgA.levels.prefix_len, cfgB.levels.prefix_len)
    denom = max(
        float(np.max(np.abs(evaluate(cfgA.levels.base(r), cfg.grid)
                            - evaluate(cfgB.levels.base(r), cfg.grid))))
        for r in range(1, depth_levels + 1)
    )
    if denom < 1e-12:
        observed, depth = 0.0, 0
        trunc = 0.0
    else:
        num, depth = _interpolant_sup_diff(cfgA, cfgB)
        observed = num / denom
        trunc = (truncation_error(cfgA, depth) + truncation_error(cfgB, depth)) / denom
    return BoundReport(
        name="base-dependence",
        predicted=predicted,
        observed=observed,
        tolerance=BASE_RATIO_SLACK + trunc,
        inputs={"alpha_sup": a, "base_distance": denom, "depth": depth},
    )


# ---------------------------------------------------------------------------
# Dependence on the scaling sequence
# ---------------------------------------------------------------------------


def scaling_dependence(cfg: ProblemConfig, alphas_a, alphas_b,
                       s_cap: float) -> BoundReport:
    """||B(alpha) - B(beta)|| <= ||alpha - beta|| ||f - b|| / (1 - s_cap)^2 for
    sequences capped by s_cap < 1."""
    if not 0.0 < s_cap < 1.0:
        raise CapViolated(f"s_cap must lie in (0, 1), got {s_cap}")
    cfgA = cfg.with_scalings(tuple(tuple(v) for v in alphas_a))
    cfgB = cfg.with_scalings(tuple(tuple(v) for v in alphas_b))
    for label, c in (("first", cfgA), ("second", cfgB)):
        if c.alpha_sup > s_cap:
            raise CapViolated(
                f"{label} scaling sequence sup estimate {c.alpha_sup:.6g} exceeds cap {s_cap}"
            )
    depth_levels = max(cfgA.levels.prefix_len, cfgB.levels.prefix_len)
    dist = 0.0
    for r in range(1, depth_levels + 1):
        for i in range(1, cfg.n_intervals + 1):
            gap = np.abs(evaluate(cfgA.levels.scaling(i, r), cfg.grid)
                         - evaluate(cfgB.levels.scaling(i, r), cfg.grid))
            dist = max(dist, float(np.max(gap)))
    predicted = dist * cfg.base_gap_sup / (1.0 - s_cap) ** 2
    observed, depth = _interpolant_sup_diff(cfgA, cfgB)
    trunc = truncation_error(cfgA, depth) + truncation_error(cfgB, depth)
    return BoundReport(
        name="scaling-dependence",
        predicted=predicted,
        observed=observed,
        tolerance=VERIFY_TOL + trunc,
        inputs={"alpha_distance": dist, "s_cap": s_cap,
                "base_gap_sup": cfg.base_gap_sup, "depth": depth},
    )


# ---------------------------------------------------------------------------
# Dependence on the partition
# ---------------------------------------------------------------------------


def _lip1(fn, grid: np.ndarray) -> float:
    return lip_seminorm(fn, 1.0, grid)


def admissible_theta_limit(A: float, R: float, k_f: float, k_b: float,
                           k_alpha: float, alpha_sup: float,
                           base_sup: float) -> float:
    """(1 - A) / (R k_alpha + A k_f + ||alpha|| k_b + ||b|| k_alpha); inf when
    every Lipschitz constant vanishes.  Decreasing in each constant."""
    denom = R * k_alpha + A * k_f + alpha_sup * k_b + base_sup * k_alpha
    return np.inf if denom <= 0.0 else (1.0 - A) / denom


def theta_constants(cfg: ProblemConfig, slack: float = LIP_SLACK) -> dict:
    """Grid-estimated Lipschitz constants (inflated by ``slack``) and the
    admissible theta limit."""
    grid = cfg.grid
    inflate = 1.0 + slack
    k_f = inflate * _lip1(cfg.germ, grid)
    k_b = inflate * max(_lip1(lv.base, grid) for lv in cfg.levels.levels)
    k_alpha = inflate * max(
        _lip1(spec, grid) for lv in cfg.levels.levels for spec in lv.scalings
    )
    A = cfg.maps.A
    R = cfg.r_bound
    denom = R * k_alpha + A * k_f + cfg.alpha_sup * k_b + cfg.base_sup * k_alpha
    limit = admissible_theta_limit(A, R, k_f, k_b, k_alpha,
                                   cfg.alpha_sup, cfg.base_sup)
    return {"k_f": k_f, "k_b": k_b, "k_alpha": k_alpha, "A": A, "R": R,
            "denominator": denom, "theta_limit": limit}


def compute_theta(cfg: ProblemConfig, slack: float = LIP_SLACK) -> float:
    """Half the admissible theta limit (a valid metric weight); 1.0 when every
    estimated Lipschitz constant vanishes and the limit degenerates."""
    consts = theta_constants(cfg, slack)
    if not np.isfinite(consts["theta_limit"]):
        return 1.0
    return 0.5 * consts["theta_limit"]


def partition_dependence(cfg: ProblemConfig, other: Partition,
                         slack: float = LIP_SLACK) -> BoundReport:
    """Compare the IFS maps of two equal-count partitions of one interval.

    predicted/observed is the per-map displacement inequality
        max over i, x of |l_i - l_i~|(x) + theta |f(l_i(x)) - f(l_i~(x))|
            <= 2 (1 + theta k_f) ||Delta - Delta~||_2,
    which does not depend on y, r, alpha, or b (those terms cancel).  The
    interpolant sup-difference rides along in the inputs for the continuity
    witness.
    """
    p = cfg.partition
    if len(other.knots) != len(p.knots):
        raise KnotCountMismatch(
            f"partitions carry {len(p.knots)} vs {len(other.knots)} knots"
        )
    if other.lo != p.lo or other.hi != p.hi:
        raise EndpointMismatch("partitions must share the interval endpoints")
    cfgB = cfg.with_partition(other)
    consts = theta_constants(cfg, slack)
    theta = compute_theta(cfg, slack)
    k_f = consts["k_f"]
    l2 = float(np.linalg.norm(p.array()[1:-1] - other.array()[1:-1]))
    predicted = 2.0 * (1.0 + theta * k_f) * l2

    grid = cfg.grid
    observed = 0.0
    for i in range(1, p.n_intervals + 1):
        la = np.asarray(cfg.maps.forward(i, grid), dtype=float)
        lb = np.asarray(cfgB.maps.forward(i, grid), dtype=float)
        shift = np.abs(la - lb) + theta * np.abs(evaluate(cfg.germ, la)
                                                 - evaluate(cfg.germ, lb))
        observed = max(observed, float(np.max(shift)))

    sup_diff, depth = _interpolant_sup_diff(cfg, cfgB)
    return BoundReport(
        name="partition-displacement",
        predicted=predicted,
        observed=observed,
        tolerance=VERIFY_TOL,
        inputs={
            "knot_l2": l2,
            "theta": theta,
            "k_f": k_f,
            "interpolant_sup_diff": sup_diff,
            "depth": depth,
        },
    )


def partition_continuity(cfg: ProblemConfig, other: Partition,
                         halvings: int = 3) -> list[BoundReport]:
    """Reports along knot perturbations of geometrically shrinking magnitude:
    Delta + (Delta~ - Delta)/2^k for k = 0..halvings-1.  A continuity witness
    requires the interpolant sup-differences to decrease strictly."""
    if halvings < 1:
        raise KnotCountMismatch("need at least one magnitude")
    base = cfg.partition.array()
    target = other.array()
    out = []
    for k in range(halvings):
        knots = base + (target - base) / (2.0 ** k)
        out.append(partition_dependence(cfg, Partition(tuple(knots))))
    return out


def is_strictly_decreasing(values) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))
