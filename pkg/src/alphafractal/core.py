"""Core domain types: partitions, affine maps, function specs, level sequences,
sampled functions, and the problem configuration.

The construction lives on a compact interval I = [x_0, x_N] carved by a knot
vector into N subintervals I_i = [x_{i-1}, x_i].  Per level r the data are a
vector of scaling functions (alpha_{1,r}, ..., alpha_{N,r}) with sup-norm < 1
and a base function b_r that agrees with the germ f at both endpoints.
Infinite level sequences are represented as a finite explicit prefix plus a
repeat-last tail, which turns every sup over r into a finite max over the
prefix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BadExponent,
    ConfigError,
    DepthZero,
    EndpointMismatch,
    LipConditionViolated,
    NonMonotoneKnots,
    ScalingNotContractive,
    TooFewKnots,
)

ENDPOINT_TOL = 1e-9       # base/ordinate endpoint matching tolerance
DEGENERATE_TOL = 1e-12    # "function is identically zero on the grid" threshold
DEFAULT_GRID_SIZE = 1025  # power of two plus one: nests under midpoint refinement
DEFAULT_EPS = 1e-8        # default tail tolerance for the truncation depth
DEPTH_CAP = 64            # hard cap guarding pathological near-1 scaling norms

FunctionLike = Callable[[np.ndarray], np.ndarray]


def evaluate(fn: FunctionLike, x) -> np.ndarray:
    """Evaluate ``fn`` at ``x`` (scalar or array), broadcasting scalar results."""
    x = np.asarray(x, dtype=float)
    out = np.asarray(fn(x), dtype=float)
    if out.shape != x.shape:
        out = np.broadcast_to(out, x.shape).copy()
    return out


# ---------------------------------------------------------------------------
# Function specifications
# ---------------------------------------------------------------------------

_FAMILIES = ("constant", "linear-endpoint", "polynomial", "sinusoid", "sampled")


@dataclass(frozen=True)
class FunctionSpec:
    """Evaluable real function on an interval, drawn from a closed family.

    Families and their ``params`` layout:

    - ``constant``:        (c,)                      -> c
    - ``linear-endpoint``: (y_left, y_right)         -> chord through the
                            domain endpoints
    - ``polynomial``:      (c0, c1, ..., ck)         -> sum c_j x^j
    - ``sinusoid``:        (a, w, phase, offset)     -> a*sin(w*x + phase) + offset
    - ``sampled``:         (v_1, ..., v_M)           -> piecewise-linear through
                            the sample points; ``abscissas`` gives the sample
                            grid (defaults to a uniform grid over the domain)

    Instances are immutable and evaluate deterministically; the same spec at
    the same point always yields the identical double.
    """

    family: str
    params: tuple[float, ...]
    domain: tuple[float, float]
    abscissas: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ConfigError(f"unknown function family {self.family!r}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        lo, hi = (float(self.domain[0]), float(self.domain[1]))
        if not lo < hi:
            raise ConfigError("function domain must satisfy lo < hi")
        object.__setattr__(self, "domain", (lo, hi))
        n_expected = {"constant": 1, "linear-endpoint": 2, "sinusoid": 4}
        if self.family in n_expected and len(self.params) != n_expected[self.family]:
            raise ConfigError(
                f"{self.family} spec takes {n_expected[self.family]} parameters, "
                f"got {len(self.params)}"
            )
        if self.family == "polynomial" and not self.params:
            raise ConfigError("polynomial spec needs at least one coefficient")
        if self.family == "sampled":
            if len(self.params) < 2:
                raise ConfigError("sampled spec needs at least 2 sample values")
            if self.abscissas is not None:
                xs = tuple(float(x) for x in self.abscissas)
                if len(xs) != len(self.params):
                    raise ConfigError("sampled spec abscissas/values length mismatch")
                if any(b <= a for a, b in zip(xs, xs[1:])):
                    raise ConfigError("sampled spec abscissas must be strictly increasing")
                if xs[0] != lo or xs[-1] != hi:
                    raise ConfigError("sampled spec abscissas must span the domain")
                object.__setattr__(self, "abscissas", xs)
        elif self.abscissas is not None:
            raise ConfigError("abscissas only apply to the sampled family")

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: float, domain) -> "FunctionSpec":
        return cls("constant", (value,), tuple(domain))

    @classmethod
    def linear_endpoint(cls, y_left: float, y_right: float, domain) -> "FunctionSpec":
        return cls("linear-endpoint", (y_left, y_right), tuple(domain))

    @classmethod
    def polynomial(cls, coeffs: Sequence[float], domain) -> "FunctionSpec":
        return cls("polynomial", tuple(coeffs), tuple(domain))

    @classmethod
    def sinusoid(cls, amplitude: float, omega: float, phase: float, offset: float,
                 domain) -> "FunctionSpec":
        return cls("sinusoid", (amplitude, omega, phase, offset), tuple(domain))

    @classmethod
    def sampled(cls, values: Sequence[float], domain,
                abscissas: Sequence[float] | None = None) -> "FunctionSpec":
        xs = None if abscissas is None else tuple(abscissas)
        return cls("sampled", tuple(values), tuple(domain), xs)

    # -- evaluation ---------------------------------------------------------

    def _sample_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        cached = self.__dict__.get("_samples")
        if cached is None:
            lo, hi = self.domain
            if self.abscissas is None:
                xs = np.linspace(lo, hi, len(self.params))
            else:
                xs = np.asarray(self.abscissas, dtype=float)
            ys = np.asarray(self.params, dtype=float)
            cached = (xs, ys)
            object.__setattr__(self, "_samples", cached)
        return cached

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        if self.family == "constant":
            out = np.full(x.shape, self.params[0])
        elif self.family == "linear-endpoint":
            yl, yr = self.params
            out = yl + (yr - yl) * (x - lo) / (hi - lo)
        elif self.family == "polynomial":
            out = np.polynomial.polynomial.polyval(x, np.asarray(self.params))
        elif self.family == "sinusoid":
            a, w, phase, offset = self.params
            out = a * np.sin(w * x + phase) + offset
        else:
            xs, ys = self._sample_arrays()
            out = np.interp(x, xs, ys)
        out = np.asarray(out, dtype=float)
        return out if out.shape else float(out)

    def endpoint_values(self) -> tuple[float, float]:
        lo, hi = self.domain
        return float(self(lo)), float(self(hi))


def specs_equal(a, b) -> bool:
    """Equality usable for both FunctionSpec instances and plain callables."""
    if a is b:
        return True
    if isinstance(a, FunctionSpec) and isinstance(b, FunctionSpec):
        return a == b
    return False


def matched_endpoint_polynomial(coeffs: Sequence[float], domain,
                                y_left: float, y_right: float) -> FunctionSpec:
    """Shift a polynomial by a linear term so it hits the prescribed endpoint values."""
    lo, hi = float(domain[0]), float(domain[1])
    c = list(float(v) for v in coeffs)
    while len(c) < 2:
        c.append(0.0)
    p = np.polynomial.polynomial.polyval([lo, hi], np.asarray(c))
    mu = ((y_right - p[1]) - (y_left - p[0])) / (hi - lo)
    lam = (y_left - p[0]) - mu * lo
    c[0] += lam
    c[1] += mu
    return FunctionSpec.polynomial(c, (lo, hi))


# ---------------------------------------------------------------------------
# Partition and affine maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Strictly increasing knot vector x_0 < x_1 < ... < x_N with N >= 2.

    N = 1 is rejected: it would force a_1 = 1, so the affine map l_1 would
    not contract.
    """

    knots: tuple[float, ...]

    def __post_init__(self):
        knots = tuple(float(k) for k in self.knots)
        if len(knots) < 3:
            raise TooFewKnots(
                f"need at least 3 knots (got {len(knots)}): a single interval is not contractive"
            )
        if not all(np.isfinite(knots)):
            raise NonMonotoneKnots("knots must be finite")
        if any(b <= a for a, b in zip(knots, knots[1:])):
            raise NonMonotoneKnots(f"knots must be strictly increasing, got {knots}")
        object.__setattr__(self, "knots", knots)

    @property
    def n_intervals(self) -> int:
        return len(self.knots) - 1

    @property
    def lo(self) -> float:
        return self.knots[0]

    @property
    def hi(self) -> float:
        return self.knots[-1]

    @property
    def domain(self) -> tuple[float, float]:
        return (self.knots[0], self.knots[-1])

    @property
    def span(self) -> float:
        return self.knots[-1] - self.knots[0]

    def array(self) -> np.ndarray:
        arr = self.__dict__.get("_array")
        if arr is None:
            arr = np.asarray(self.knots, dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, "_array", arr)
        return arr

    def interval(self, i: int) -> tuple[float, float]:
        """Endpoints of I_i for i in 1..N."""
        return (self.knots[i - 1], self.knots[i])


def build_partition(knots: Sequence[float]) -> Partition:
    """Build a partition from a knot vector (>= 3 strictly increasing values)."""
    return Partition(tuple(knots))


@dataclass(frozen=True)
class AffineMapSet:
    """The contractive maps l_i : I -> I_i and their inverses Q_i = l_i^{-1}.

    Coefficients come from the closed form
        a_i = (x_i - x_{i-1}) / (x_N - x_0)
        e_i = (x_N x_{i-1} - x_0 x_i) / (x_N - x_0)
    so l_i(x_0) = x_{i-1} and l_i(x_N) = x_i.  Evaluation uses the equivalent
    two-point form, which maps the interval endpoints onto the knots exactly
    in floating point (no residual at the joins).
    """

    partition: Partition
    a: tuple[float, ...]
    e: tuple[float, ...]

    @classmethod
    def from_partition(cls, p: Partition) -> "AffineMapSet":
        k = p.array()
        span = p.span
        a = tuple(float(v) for v in (k[1:] - k[:-1]) / span)
        e = tuple(float(v) for v in (k[-1] * k[:-1] - k[0] * k[1:]) / span)
        return cls(p, a, e)

    @property
    def A(self) -> float:
        """Largest contraction ratio max_i a_i."""
        return max(self.a)

    def forward(self, i: int, x):
        """l_i(x) for x in I (two-point form; the interval endpoints land on
        the knots bit-exactly)."""
        lo, hi = self.partition.domain
        xl, xr = self.partition.interval(i)
        x = np.asarray(x, dtype=float)
        out = (xl * (hi - x) + xr * (x - lo)) / (hi - lo)
        return np.where(x == lo, xl, np.where(x == hi, xr, out))

    def inverse(self, i: int, z):
        """Q_i(z) = l_i^{-1}(z) for z in I_i (knots land on the interval
        endpoints bit-exactly)."""
        lo, hi = self.partition.domain
        xl, xr = self.partition.interval(i)
        z = np.asarray(z, dtype=float)
        out = (lo * (xr - z) + hi * (z - xl)) / (xr - xl)
        return np.where(z == xl, lo, np.where(z == xr, hi, out))

    def inverse_many(self, idx: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Vectorized Q applied per point: idx holds 1-based interval indices."""
        k = self.partition.array()
        lo, hi = self.partition.domain
        xl = k[idx - 1]
        xr = k[idx]
        out = (lo * (xr - z) + hi * (z - xl)) / (xr - xl)
        out = np.where(z == xl, lo, np.where(z == xr, hi, out))
        return np.clip(out, lo, hi)


def derive_affine_maps(p: Partition) -> AffineMapSet:
    """Affine coefficients and maps for a partition."""
    return AffineMapSet.from_partition(p)


# ---------------------------------------------------------------------------
# Level sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Level:
    """One level of the sequence: per-interval scaling functions + base function."""

    scalings: tuple
    base: object

    def __post_init__(self):
        object.__setattr__(self, "scalings", tuple(self.scalings))
        if not self.scalings:
            raise ConfigError("a level needs one scaling function per interval")


@dataclass(frozen=True)
class LevelSequence:
    """Explicit prefix of levels r = 1..R; levels beyond the prefix repeat the last.

    Construction rejects scaling vectors whose estimated sup-norm reaches 1
    (checked for FunctionSpec scalings on their own domains; arbitrary
    callables are only checked once a grid is known, in
    ``validate_level_sequence``).
    """

    levels: tuple[Level, ...]

    def __post_init__(self):
        levels = tuple(self.levels)
        if not levels:
            raise ConfigError("level sequence needs at least one explicit level")
        n = len(levels[0].scalings)
        if any(len(lv.scalings) != n for lv in levels):
            raise ConfigError("all levels must carry the same number of scaling functions")
        object.__setattr__(self, "levels", levels)
        worst = 0.0
        for lv in levels:
            for spec in lv.scalings:
                if isinstance(spec, FunctionSpec):
                    grid = np.linspace(spec.domain[0], spec.domain[1], 513)
                    worst = max(worst, float(np.max(np.abs(evaluate(spec, grid)))))
        if worst >= 1.0:
            raise ScalingNotContractive(
                f"scaling sup-norm estimate {worst:.6g} >= 1; the RB operators would not contract"
            )

    @property
    def prefix_len(self) -> int:
        return len(self.levels)

    @property
    def n_intervals(self) -> int:
        return len(self.levels[0].scalings)

    def level(self, r: int) -> Level:
        """Level r >= 1 with the repeat-last tail rule."""
        if r < 1:
            raise ConfigError("levels are indexed from 1")
        return self.levels[min(r, len(self.levels)) - 1]

    def scaling(self, i: int, r: int):
        """alpha_{i,r} for interval i in 1..N."""
        return self.level(r).scalings[i - 1]

    def base(self, r: int):
        """b_r."""
        return self.level(r).base

    def alpha_sup(self, grid: np.ndarray) -> float:
        """Grid estimate of sup_r max_i ||alpha_{i,r}||_inf (finite max over the prefix)."""
        worst = 0.0
        for lv in self.levels:
            for spec in lv.scalings:
                worst = max(worst, float(np.max(np.abs(evaluate(spec, grid)))))
        return worst


# ---------------------------------------------------------------------------
# Sampled functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampledFunction:
    """Function known through samples on a sorted grid; piecewise linear in between."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and ys must be 1-d arrays of equal length")
        if xs.size < 2:
            raise ValueError("a sampled function needs at least two points")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("sample grid must be strictly increasing")
        if not np.all(np.isfinite(ys)):
            raise ValueError("sample values must be finite")
        xs = xs.copy()
        ys = ys.copy()
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __call__(self, x):
        out = np.interp(np.asarray(x, dtype=float), self.xs, self.ys)
        out = np.asarray(out, dtype=float)
        return out if out.shape else float(out)

    def with_values(self, ys: np.ndarray) -> "SampledFunction":
        return SampledFunction(self.xs, ys)

    def sup(self) -> float:
        return float(np.max(np.abs(self.ys)))

    def sup_diff(self, other: "SampledFunction") -> float:
        if not np.array_equal(self.xs, other.xs):
            raise ValueError("sup_diff requires a shared grid")
        return float(np.max(np.abs(self.ys - other.ys)))


# ---------------------------------------------------------------------------
# Problem configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DepthPolicy:
    """Truncation policy: fixed depth, or smallest depth whose geometric tail
    bound ||alpha||^{k+1}/(1-||alpha||) * sup_r||f - b_r|| drops below eps."""

    depth: int | None = None
    eps: float = DEFAULT_EPS
    cap: int = DEPTH_CAP

    def __post_init__(self):
        if self.depth is not None and self.depth < 1:
            raise DepthZero("fixed depth must be >= 1")
        if self.eps <= 0:
            raise ConfigError("tail tolerance eps must be > 0")
        if self.cap < 1:
            raise ConfigError("depth cap must be >= 1")


_MODES = {"continuous": "continuous", "cont": "continuous",
          "lipschitz": "lipschitz", "lip": "lipschitz"}


@dataclass(frozen=True)
class ProblemConfig:
    """Everything needed to build and evaluate the interpolant.

    ``germ`` may be a FunctionSpec or any vectorized callable on I.  When
    ``ordinates`` is omitted the interpolation data are (x_i, f(x_i)).
    """

    partition: Partition
    germ: FunctionLike
    levels: LevelSequence
    ordinates: tuple[float, ...] | None = None
    d: float = 1.0
    grid_size: int = DEFAULT_GRID_SIZE
    depth_policy: DepthPolicy = field(default_factory=DepthPolicy)
    mode: str = "continuous"

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ConfigError(f"mode must be one of {sorted(set(_MODES))}, got {self.mode!r}")
        object.__setattr__(self, "mode", _MODES[self.mode])
        if not 0.0 < self.d <= 1.0:
            raise BadExponent(f"Holder exponent d must lie in (0, 1], got {self.d}")
        n = self.partition.n_intervals
        if self.levels.n_intervals != n:
            raise ConfigError(
                f"level sequence carries {self.levels.n_intervals} scaling functions "
                f"per level but the partition has {n} intervals"
            )
        if self.grid_size < n + 1:
            raise ConfigError("grid_size must be at least the knot count")
        if self.ordinates is not None:
            ords = tuple(float(y) for y in self.ordinates)
            if len(ords) != n + 1:
                raise ConfigError("ordinates must supply one value per knot")
            f0, fN = (float(evaluate(self.germ, self.partition.lo)),
                      float(evaluate(self.germ, self.partition.hi)))
            if abs(ords[0] - f0) > ENDPOINT_TOL or abs(ords[-1] - fN) > ENDPOINT_TOL:
                raise EndpointMismatch(
                    "ordinates must match the germ at both endpoints "
                    f"(residuals {abs(ords[0] - f0):.3g}, {abs(ords[-1] - fN):.3g})"
                )
            interior = np.abs(np.asarray(ords[1:-1])
                              - evaluate(self.germ, self.partition.array()[1:-1]))
            if interior.size and float(np.max(interior)) > ENDPOINT_TOL:
                warnings.warn(
                    "interior ordinates differ from the germ values; the construction "
                    "interpolates (x_i, f(x_i)), so these ordinates will not be hit",
                    stacklevel=2,
                )
            object.__setattr__(self, "ordinates", ords)

    # -- cached derived data ------------------------------------------------

    def _cached(self, key: str, build):
        val = self.__dict__.get(key)
        if val is None:
            val = build()
            object.__setattr__(self, key, val)
        return val

    @property
    def n_intervals(self) -> int:
        return self.partition.n_intervals

    @property
    def domain(self) -> tuple[float, float]:
        return self.partition.domain

    @property
    def grid(self) -> np.ndarray:
        """Evaluation grid: uniform grid_size points with every knot inserted."""

        def build():
            lo, hi = self.partition.domain
            g = np.union1d(np.linspace(lo, hi, self.grid_size), self.partition.array())
            g.setflags(write=False)
            return g

        return self._cached("_grid", build)

    @property
    def maps(self) -> AffineMapSet:
        return self._cached("_maps", lambda: derive_affine_maps(self.partition))

    @property
    def germ_values(self) -> np.ndarray:
        def build():
            v = evaluate(self.germ, self.grid)
            v.setflags(write=False)
            return v

        return self._cached("_germ_values", build)

    @property
    def knot_ordinates(self) -> tuple[float, ...]:
        if self.ordinates is not None:
            return self.ordinates
        return self._cached(
            "_knot_ordinates",
            lambda: tuple(float(v) for v in evaluate(self.germ, self.partition.array())),
        )

    @property
    def alpha_sup(self) -> float:
        """Grid estimate of ||alpha||_inf."""
        return self._cached("_alpha_sup", lambda: self.levels.alpha_sup(self.grid))

    @property
    def germ_sup(self) -> float:
        return self._cached("_germ_sup", lambda: float(np.max(np.abs(self.germ_values))))

    @property
    def base_gap_sup(self) -> float:
        """Grid estimate of sup_r ||f - b_r||_inf (finite max over the prefix)."""

        def build():
            worst = 0.0
            for lv in self.levels.levels:
                gap = self.germ_values - evaluate(lv.base, self.grid)
                worst = max(worst, float(np.max(np.abs(gap))))
            return worst

        return self._cached("_base_gap_sup", build)

    @property
    def base_sup(self) -> float:
        """Grid estimate of sup_r ||b_r||_inf."""

        def build():
            return max(
                float(np.max(np.abs(evaluate(lv.base, self.grid))))
                for lv in self.levels.levels
            )

        return self._cached("_base_sup", build)

    @property
    def r_bound(self) -> float:
        """Uniform bound R = ||f|| + ||alpha||/(1-||alpha||) sup_r||f-b_r|| on the interpolant."""
        a = self.alpha_sup
        return self.germ_sup + a / (1.0 - a) * self.base_gap_sup

    def validation(self) -> "ValidationReport":
        return self._cached("_validation", lambda: validate_level_sequence(self))

    # -- derived configurations ---------------------------------------------

    def with_levels(self, levels: LevelSequence) -> "ProblemConfig":
        return replace(self, levels=levels)

    def with_bases(self, bases: Sequence) -> "ProblemConfig":
        """Same scalings, new base per level.  ``bases`` is aligned with the prefix
        (repeat-last applies beyond its end)."""
        n = max(self.levels.prefix_len, len(bases))
        new = tuple(
            Level(self.levels.level(r).scalings, bases[min(r, len(bases)) - 1])
            for r in range(1, n + 1)
        )
        return replace(self, levels=LevelSequence(new))

    def with_scalings(self, scalings_per_level: Sequence[Sequence]) -> "ProblemConfig":
        """Same bases, new scaling vectors per level."""
        n = max(self.levels.prefix_len, len(scalings_per_level))
        new = tuple(
            Level(tuple(scalings_per_level[min(r, len(scalings_per_level)) - 1]),
                  self.levels.level(r).base)
            for r in range(1, n + 1)
        )
        return replace(self, levels=LevelSequence(new))

    def with_germ(self, germ: FunctionLike) -> "ProblemConfig":
        return replace(self, germ=germ, ordinates=None)

    def with_partition(self, partition: Partition) -> "ProblemConfig":
        return replace(self, partition=partition, ordinates=None)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

_PROBLEM_ERRORS = {
    "ScalingNotContractive": ScalingNotContractive,
    "EndpointMismatch": EndpointMismatch,
    "LipConditionViolated": LipConditionViolated,
}


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_level_sequence: estimates plus a list of problems."""

    alpha_sup: float
    endpoint_residuals: tuple[tuple[float, float], ...]
    degenerate_levels: tuple[int, ...]
    lip_ratios: tuple[float, ...] | None
    problems: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.problems

    @property
    def contraction_factor(self) -> float | None:
        """Lipschitz-mode RB contraction factor 2 * max ratio (None in continuous mode)."""
        if self.lip_ratios is None:
            return None
        return 2.0 * max(self.lip_ratios)

    def raise_if_failed(self) -> None:
        if self.problems:
            code, message = self.problems[0]
            raise _PROBLEM_ERRORS[code](message)

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{code}: {msg}" for code, msg in self.problems)


def validate_level_sequence(cfg: ProblemConfig) -> ValidationReport:
    """Check the convergence hypotheses on a configuration.

    Continuous mode needs ||alpha||_inf < 1 and endpoint-matched bases; the
    Lipschitz mode additionally needs max_i ||alpha_{i,r}||_d / a_i^d < 1/2
    on every level.  Norms are grid estimates.  A base equal to the germ is
    legal but degenerate (the interpolant collapses to the germ), so it is
    warned about, not rejected.
    """
    from . import norms  # local import: norms has no runtime dependency on core

    grid = cfg.grid
    f_vals = cfg.germ_values
    f0, fN = float(f_vals[0]), float(f_vals[-1])
    problems: list[tuple[str, str]] = []

    alpha_sup = cfg.alpha_sup
    if alpha_sup >= 1.0:
        problems.append((
            "ScalingNotContractive",
            f"||alpha||_inf estimate {alpha_sup:.6g} >= 1",
        ))

    residuals = []
    degenerate = []
    for r, lv in enumerate(cfg.levels.levels, start=1):
        b_vals = evaluate(lv.base, grid)
        res = (abs(float(b_vals[0]) - f0), abs(float(b_vals[-1]) - fN))
        residuals.append(res)
        if max(res) > ENDPOINT_TOL:
            problems.append((
                "EndpointMismatch",
                f"base b_{r} endpoint residuals {res[0]:.3g}, {res[1]:.3g} exceed {ENDPOINT_TOL}",
            ))
        if float(np.max(np.abs(b_vals - f_vals))) < DEGENERATE_TOL:
            degenerate.append(r)
    if degenerate:
        warnings.warn(
            f"base function equals the germ on levels {degenerate}; "
            "the interpolant degenerates to the germ",
            stacklevel=2,
        )

    lip_ratios = None
    if cfg.mode == "lipschitz":
        a = cfg.maps.a
        per_level = []
        for lv in cfg.levels.levels:
            worst = 0.0
            for i, spec in enumerate(lv.scalings):
                est = norms.estimate_norms(spec, cfg.d, grid)
                worst = max(worst, est.norm_d / a[i] ** cfg.d)
            per_level.append(worst)
        lip_ratios = tuple(per_level)
        if max(lip_ratios) >= 0.5:
            problems.append((
                "LipConditionViolated",
                f"max ||alpha_i||_d / a_i^d = {max(lip_ratios):.6g} >= 1/2",
            ))

    return ValidationReport(
        alpha_sup=alpha_sup,
        endpoint_residuals=tuple(residuals),
        degenerate_levels=tuple(degenerate),
        lip_ratios=lip_ratios,
        problems=tuple(problems),
    )
