"""Grid estimation of sup-norms, Holder/Lipschitz seminorms, and the norm
||g||_d = max(||g||_inf, Lip_d(g)), plus the contraction-hypothesis check
built on them.

All estimates are one-sided: a finite grid can only underestimate a sup, so
hypothesis checks downstream apply a documented safety slack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import BadExponent, EmptyGrid
from .report import BoundReport

if TYPE_CHECKING:  # pragma: no cover
    from .core import ProblemConfig

LIP_PAIR_CAP = 2049  # full O(M^2) pair enumeration up to this many grid points


def _values_on(g, grid: np.ndarray) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(g(grid), dtype=float)
    if vals.shape != grid.shape:
        vals = np.broadcast_to(vals, grid.shape).copy()
    return vals


def sup_norm(g, grid) -> float:
    """max over the grid of |g|; nondecreasing under grid refinement."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise EmptyGrid("sup_norm needs a non-empty grid")
    return float(np.max(np.abs(_values_on(g, grid))))


def lip_seminorm(g, d: float, grid) -> float:
    """max over grid pairs of |g(x) - g(y)| / |x - y|^d.

    Pair enumeration is O(M^2); beyond LIP_PAIR_CAP points the grid is
    strided down (keeping the last point) so the pair count stays bounded,
    at the cost of a slightly weaker underestimate.
    """
    if not 0.0 < d <= 1.0:
        raise BadExponent(f"exponent d must lie in (0, 1], got {d}")
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2:
        raise EmptyGrid("lip_seminorm needs at least two grid points")
    if grid.size > LIP_PAIR_CAP:
        stride = int(np.ceil((grid.size - 1) / (LIP_PAIR_CAP - 1)))
        sub = grid[::stride]
        if sub[-1] != grid[-1]:
            sub = np.append(sub, grid[-1])
        grid = sub
    vals = _values_on(g, grid)
    n = grid.size
    cols = np.arange(n)
    worst = 0.0
    # row blocks keep the pair matrices small
    block = 256
    for start in range(0, n - 1, block):
        stop = min(start + block, n - 1)
        rows = np.arange(start, stop)
        dx = np.abs(grid[None, :] - grid[rows, None]) ** d
        dv = np.abs(vals[None, :] - vals[rows, None])
        mask = cols[None, :] > rows[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(mask, dv / dx, 0.0)
        worst = max(worst, float(np.max(q)))
    return worst


@dataclass(frozen=True)
class NormEstimate:
    """sup-norm and Lip_d seminorm estimated on one grid; ||g||_d is their max."""

    sup_norm: float
    lip_d: float
    d: float
    grid_points: int

    @property
    def norm_d(self) -> float:
        return max(self.sup_norm, self.lip_d)


def estimate_norms(g, d: float, grid) -> NormEstimate:
    grid = np.asarray(grid, dtype=float)
    return NormEstimate(
        sup_norm=sup_norm(g, grid),
        lip_d=lip_seminorm(g, d, grid),
        d=d,
        grid_points=int(grid.size),
    )


def check_lip_hypothesis(cfg: "ProblemConfig") -> BoundReport:
    """Check max over prefix levels and intervals of ||alpha_{i,r}||_d / a_i^d
    against the 1/2 threshold; the RB operator then contracts the ||.||_d norm
    with factor 2 * max(...)."""
    grid = cfg.grid
    a = cfg.maps.a
    ratios = []
    for lv in cfg.levels.levels:
        worst = 0.0
        for i, spec in enumerate(lv.scalings):
            est = estimate_norms(spec, cfg.d, grid)
            worst = max(worst, est.norm_d / a[i] ** cfg.d)
        ratios.append(worst)
    observed = max(ratios)
    return BoundReport(
        name="lip-hypothesis",
        predicted=0.5,
        observed=observed,
        tolerance=0.0,
        inputs={
            "d": cfg.d,
            "per_level_ratios": tuple(ratios),
            "contraction_factor": 2.0 * observed,
            "grid_points": int(grid.size),
        },
    )
