"""The two interchangeable evaluators of the non-stationary interpolant.

Backward trajectories compose the level operators innermost-first,
    T^{alpha_1} o T^{alpha_2} o ... o T^{alpha_R} applied to a seed,
on sampled functions over the configured grid.  The series evaluator sums the
self-referential expansion
    f(x) + sum_j alpha_{i,1}(z_1) ... alpha_{i,j}(z_j) (f - b_j)(z_j)
along the address chain z_j of the evaluation point.  Both approximate the
same limit; truncation error obeys the geometric tail bound
    ||alpha||^{k+1} / (1 - ||alpha||) * sup_r ||f - b_r||.

Off-grid reads inside an RB step use linear interpolation of the sampled
difference g - b_r; interpolating the difference (rather than g alone) makes
the degenerate identities b_r = f and alpha = 0 exact on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ENDPOINT_TOL,
    ProblemConfig,
    SampledFunction,
    evaluate,
    specs_equal,
)
from .errors import DepthZero, GridMismatch, EndpointMismatch, NotValidated, OutOfDomain
from .ifs import PerturbationSpec, locate_many

INTERPOLATION_TOL = 1e-8  # default |f^alpha(x_i) - y_i| tolerance at knots


def require_valid(cfg: ProblemConfig) -> None:
    rep = cfg.validation()
    if not rep.ok:
        raise NotValidated(rep.summary())


def sample_germ(cfg: ProblemConfig) -> SampledFunction:
    """The germ sampled on the configured grid (default trajectory seed)."""
    return SampledFunction(cfg.grid, cfg.germ_values)


def knot_interpolant_seed(cfg: ProblemConfig) -> SampledFunction:
    """Piecewise-linear interpolant of the knot data, an alternative seed."""
    knots = cfg.partition.array()
    ys = np.asarray(cfg.knot_ordinates, dtype=float)
    return SampledFunction(cfg.grid, np.interp(cfg.grid, knots, ys))


def _grid_geometry(cfg: ProblemConfig):
    """Interval index and Q_i(x) for every grid point (cached per config)."""

    def build():
        idx = locate_many(cfg.grid, cfg.partition)
        q = cfg.maps.inverse_many(idx, cfg.grid)
        idx.setflags(write=False)
        q.setflags(write=False)
        return idx, q

    return cfg._cached("_rb_geometry", build)


def _level_data(cfg: ProblemConfig, r: int):
    """alpha_{i,r} evaluated at the Q points and b_r on the grid (cached)."""
    r_eff = min(r, cfg.levels.prefix_len)

    def build():
        idx, q = _grid_geometry(cfg)
        lv = cfg.levels.level(r_eff)
        alpha_q = np.empty_like(q)
        for i in range(1, cfg.n_intervals + 1):
            mask = idx == i
            if np.any(mask):
                alpha_q[mask] = evaluate(lv.scalings[i - 1], q[mask])
        b_vals = evaluate(lv.base, cfg.grid)
        alpha_q.setflags(write=False)
        b_vals.setflags(write=False)
        return alpha_q, b_vals

    return cfg._cached(f"_rb_level_{r_eff}", build)


def _rb_step(values: np.ndarray, r: int, cfg: ProblemConfig,
             pert: PerturbationSpec | None = None) -> np.ndarray:
    """One RB application to grid samples; returns a fresh value array."""
    idx, q = _grid_geometry(cfg)
    alpha_q, b_vals = _level_data(cfg, r)
    diff_q = np.interp(q, cfg.grid, values - b_vals)
    if pert is None:
        return cfg.germ_values + alpha_q * diff_q
    lv = pert.level(r)
    scale = alpha_q.copy()
    bump = np.zeros_like(q)
    for i in range(1, cfg.n_intervals + 1):
        mask = idx == i
        if np.any(mask):
            scale[mask] = scale[mask] + lv.t[i - 1] * evaluate(lv.theta[i - 1], q[mask])
            bump[mask] = lv.s[i - 1] * evaluate(lv.phi[i - 1], q[mask])
    return cfg.germ_values + scale * diff_q + bump


def apply_rb(g: SampledFunction, r: int, cfg: ProblemConfig) -> SampledFunction:
    """One Read-Bajraktarevic application
        (T^{alpha_r} g)(x) = f(x) + alpha_{i,r}(Q_i(x)) (g - b_r)(Q_i(x))
    on the configured grid.  The input must live on that grid and match the
    germ at both endpoints."""
    require_valid(cfg)
    if not np.array_equal(g.xs, cfg.grid):
        raise GridMismatch("input is not sampled on the configured grid")
    f_vals = cfg.germ_values
    res = max(abs(float(g.ys[0] - f_vals[0])), abs(float(g.ys[-1] - f_vals[-1])))
    if res > ENDPOINT_TOL:
        raise EndpointMismatch(
            f"input endpoint residual {res:.3g} exceeds {ENDPOINT_TOL}"
        )
    return g.with_values(_rb_step(g.ys, r, cfg))


# ---------------------------------------------------------------------------
# Depth policy
# ---------------------------------------------------------------------------


def geometric_tail(rate: float, magnitude: float, depth: int) -> float:
    """Upper bound on the total weight of series terms beyond ``depth``."""
    if rate <= 0.0 or magnitude <= 0.0:
        return 0.0
    return rate ** (depth + 1) / (1.0 - rate) * magnitude


def required_depth(rate: float, magnitude: float, eps: float, cap: int) -> int:
    """Smallest depth whose geometric tail bound is <= eps (capped)."""
    if rate <= 0.0 or magnitude <= 0.0:
        return 1
    k = 1
    tail = rate * rate / (1.0 - rate) * magnitude
    while k < cap and tail > eps:
        k += 1
        tail *= rate
    return k


def resolve_depth(cfg: ProblemConfig, rate: float | None = None,
                  magnitude: float | None = None) -> int:
    """Depth dictated by the configured policy (fixed, or tail tolerance)."""
    pol = cfg.depth_policy
    if pol.depth is not None:
        return pol.depth
    rate = cfg.alpha_sup if rate is None else rate
    magnitude = cfg.base_gap_sup if magnitude is None else magnitude
    return required_depth(rate, magnitude, pol.eps, pol.cap)


def truncation_error(cfg: ProblemConfig, depth: int) -> float:
    return geometric_tail(cfg.alpha_sup, cfg.base_gap_sup, depth)


# ---------------------------------------------------------------------------
# Interpolant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interpolant:
    """An evaluable approximation of the non-stationary interpolant.

    Trajectory strategy carries the final sampled function and interpolates
    it linearly; series strategy recomputes the truncated series per point.
    """

    cfg: ProblemConfig
    strategy: str
    depth: int
    values: SampledFunction | None = None

    def __call__(self, x):
        if self.strategy == "trajectory":
            return self.values(x)
        return series_eval(x, self.depth, self.cfg)

    @property
    def r_bound(self) -> float:
        return self.cfg.r_bound

    def knot_residuals(self) -> np.ndarray:
        knots = self.cfg.partition.array()
        target = np.asarray(self.cfg.knot_ordinates, dtype=float)
        got = evaluate(self, knots)
        return np.abs(got - target)

    def satisfies_interpolation(self, tol: float = INTERPOLATION_TOL) -> bool:
        return bool(np.max(self.knot_residuals()) <= tol)


def backward_trajectory(g: SampledFunction | None, depth: int,
                        cfg: ProblemConfig,
                        pert: PerturbationSpec | None = None) -> Interpolant:
    """T^{alpha_1} o T^{alpha_2} o ... o T^{alpha_depth} applied to the seed g
    (defaults to the sampled germ).  Applications run innermost-first, so the
    level-depth operator hits the seed."""
    require_valid(cfg)
    if depth < 1:
        raise DepthZero("backward trajectory needs depth >= 1")
    if g is None:
        g = sample_germ(cfg)
    if not np.array_equal(g.xs, cfg.grid):
        raise GridMismatch("seed is not sampled on the configured grid")
    if pert is not None:
        pert.check_contractive(cfg)
    vals = g.ys
    for r in range(depth, 0, -1):
        vals = _rb_step(vals, r, cfg, pert)
    return Interpolant(cfg=cfg, strategy="trajectory", depth=depth,
                       values=g.with_values(vals))


def trajectory_interpolant(cfg: ProblemConfig) -> Interpolant:
    """Trajectory at the policy depth from the germ seed (cached per config)."""
    return cfg._cached(
        "_trajectory",
        lambda: backward_trajectory(None, resolve_depth(cfg), cfg),
    )


# ---------------------------------------------------------------------------
# Series evaluation
# ---------------------------------------------------------------------------


def _series_values(xs: np.ndarray, depth: int, cfg: ProblemConfig) -> np.ndarray:
    """Partial sums of the self-referential series at each point, up to j = depth."""
    z = np.array(xs, dtype=float)
    total = evaluate(cfg.germ, z)
    prod = np.ones_like(z)
    for j in range(1, depth + 1):
        idx = locate_many(z, cfg.partition)
        z = cfg.maps.inverse_many(idx, z)
        lv = cfg.levels.level(j)
        alpha_j = np.empty_like(z)
        for i in range(1, cfg.n_intervals + 1):
            mask = idx == i
            if np.any(mask):
                alpha_j[mask] = evaluate(lv.scalings[i - 1], z[mask])
        prod = prod * alpha_j
        total = total + prod * (evaluate(cfg.germ, z) - evaluate(lv.base, z))
    return total


def series_eval(x, depth: int, cfg: ProblemConfig):
    """Truncated self-referential series at x; truncation error is bounded by
    the geometric tail ||alpha||^{depth+1}/(1-||alpha||) sup_r||f - b_r||."""
    require_valid(cfg)
    xa = np.asarray(x, dtype=float)
    lo, hi = cfg.domain
    if np.any(xa < lo) or np.any(xa > hi):
        raise OutOfDomain(f"evaluation point outside [{lo}, {hi}]")
    out = _series_values(np.atleast_1d(xa), depth, cfg)
    return float(out[0]) if xa.shape == () else out


def eval_interpolant(x, cfg: ProblemConfig, strategy: str = "series"):
    """Evaluate the interpolant under the configured depth policy."""
    if strategy == "series":
        return series_eval(x, resolve_depth(cfg), cfg)
    if strategy == "trajectory":
        return trajectory_interpolant(cfg)(x)
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# Stationary cross-check
# ---------------------------------------------------------------------------


def _levels_constant(cfg: ProblemConfig) -> bool:
    first = cfg.levels.levels[0]
    for lv in cfg.levels.levels[1:]:
        if not specs_equal(lv.base, first.base):
            return False
        if not all(specs_equal(a, b) for a, b in zip(lv.scalings, first.scalings)):
            return False
    return True


def stationary_fixed_point(cfg: ProblemConfig, tol: float = 1e-10,
                           max_iter: int = 10_000) -> Interpolant:
    """Banach iteration of the single RB operator of a constant-in-r sequence,
    from the germ seed, until the sup-difference drops below tol."""
    require_valid(cfg)
    if not _levels_constant(cfg):
        raise NotValidated("stationary fixed point needs a constant-in-r level sequence")
    vals = cfg.germ_values.copy()
    for it in range(1, max_iter + 1):
        new = _rb_step(vals, 1, cfg)
        delta = float(np.max(np.abs(new - vals)))
        vals = new
        if delta <= tol:
            return Interpolant(cfg=cfg, strategy="trajectory", depth=it,
                               values=SampledFunction(cfg.grid, vals))
    raise RuntimeError(
        f"fixed-point iteration did not reach {tol} within {max_iter} steps"
    )
