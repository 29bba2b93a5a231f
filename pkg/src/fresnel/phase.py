"""Phase functions, amplitudes, and time-decay symbol classes.

A phase is a positive function of frequency, 1-homogeneous in xi, optionally
depending on the parameters t and x. Built-in families carry exact symbolic
derivatives (sympy-backed, cached); tabulated callables fall back to
scale-relative central differences with Richardson extrapolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import fd
from .errors import (
    CapabilityError,
    DataError,
    DomainError,
    HypothesisViolationError,
)

ANALYTIC = "analytic"
FINITE_DIFFERENCE = "finite-difference"

_BUILTIN_KINDS = ("builtin-euclidean", "builtin-anisotropic-power", "builtin-star")


@dataclass(frozen=True)
class PhaseSpec:
    """A 1-homogeneous phase phi(t, x, xi) with derivative access.

    ``fn`` has the uniform signature fn(t, x, xi) with xi shaped (..., n),
    vectorized over the leading axes. Builtin kinds ignore ``fn``.
    """

    kind: str
    dimension: int
    depends_on_t: bool = False
    depends_on_x: bool = False
    deriv_mode: str = ANALYTIC
    params: dict = field(default_factory=dict)
    fn: Callable | None = None
    fd_step_rel: float = 1e-3

    def __post_init__(self):
        if self.dimension < 2:
            raise DomainError("phase dimension must be >= 2")
        if self.kind not in _BUILTIN_KINDS and self.deriv_mode == ANALYTIC:
            raise CapabilityError(
                f"kind {self.kind!r} has no analytic derivatives; use finite-difference mode"
            )
        if self.kind == "builtin-star" and self.dimension != 2:
            raise CapabilityError("builtin-star is a planar (n=2) family")

    # -- evaluation ---------------------------------------------------------

    def value(self, t, x, xi):
        """phi(t, x, xi) for xi shaped (..., n)."""
        xi = _check_xi(xi, self.dimension)
        if self.kind == "builtin-euclidean":
            r = self.params.get("radius", 1.0)
            return np.linalg.norm(xi, axis=-1) / r
        if self.kind == "builtin-anisotropic-power":
            m = self.params["exponent"]
            return np.sum(xi**m, axis=-1) ** (1.0 / m)
        if self.kind == "builtin-star":
            eps = self.params["epsilon"]
            k = self.params["k"]
            rad = np.linalg.norm(xi, axis=-1)
            theta = np.arctan2(xi[..., 1], xi[..., 0])
            return rad * (1.0 + eps * np.cos(k * theta))
        return np.asarray(self.fn(t, x, xi), dtype=float)

    def grad_xi(self, t, x, xi):
        """Gradient in xi, shaped like xi."""
        xi = _check_xi(xi, self.dimension)
        if self.deriv_mode == ANALYTIC:
            fns = [_analytic_deriv_fn(self, _unit_alpha(self.dimension, i))
                   for i in range(self.dimension)]
            cols = [xi[..., i] for i in range(self.dimension)]
            return np.stack([f(*cols) for f in fns], axis=-1)
        scale = np.linalg.norm(xi, axis=-1, keepdims=True)
        h = self.fd_step_rel * scale
        out = np.empty_like(xi)
        for i in range(self.dimension):
            e = np.zeros(self.dimension)
            e[i] = 1.0
            hp = h[..., 0]
            out[..., i] = (self.value(t, x, xi + h * e) - self.value(t, x, xi - h * e)) / (2 * hp)
        return out


def euclidean_phase(dimension: int = 2, radius: float = 1.0) -> PhaseSpec:
    """phi = |xi| / radius; unit level set is the sphere of that radius."""
    if radius <= 0:
        raise DomainError("radius must be positive")
    return PhaseSpec("builtin-euclidean", dimension, params={"radius": radius})


def anisotropic_power_phase(dimension: int = 2, exponent: int = 4) -> PhaseSpec:
    """phi = (sum xi_i^m)^(1/m) for even m >= 2; flat points on the axes."""
    if exponent < 2 or exponent % 2:
        raise DomainError("exponent must be even and >= 2")
    return PhaseSpec("builtin-anisotropic-power", dimension, params={"exponent": exponent})


def star_phase(epsilon: float = 0.3, k: int = 3) -> PhaseSpec:
    """phi = |xi| (1 + eps cos(k theta)); non-convex level set for k >= 2, eps > 1/(k^2-1)."""
    if not 0 <= epsilon < 1:
        raise DomainError("epsilon must lie in [0, 1)")
    return PhaseSpec("builtin-star", 2, params={"epsilon": float(epsilon), "k": int(k)})


def user_phase(fn: Callable, dimension: int, depends_on_t: bool = False,
               depends_on_x: bool = False, fd_step_rel: float = 1e-3) -> PhaseSpec:
    """Register a callable fn(t, x, xi) as a phase; derivatives are FD-only."""
    return PhaseSpec("user-table", dimension, depends_on_t, depends_on_x,
                     FINITE_DIFFERENCE, {}, fn, fd_step_rel)


def averaged_phase_spec(fn: Callable, dimension: int, label: str = "") -> PhaseSpec:
    """Wrap a time-averaged characteristic-root callable (built by the evolution layer)."""
    return PhaseSpec("time-averaged", dimension, False, False, FINITE_DIFFERENCE,
                     {"label": label}, fn)


# -- symbolic backend for builtin kinds --------------------------------------

_SYMPY_CACHE: dict = {}


def _phase_key(phase: PhaseSpec):
    return (phase.kind, phase.dimension, tuple(sorted(phase.params.items())))


def _sympy_symbols(n):
    import sympy as sp

    return sp.symbols(f"xi1:{n + 1}", real=True)


def _sympy_expr(phase: PhaseSpec):
    import sympy as sp

    key = _phase_key(phase)
    if key not in _SYMPY_CACHE:
        syms = _sympy_symbols(phase.dimension)
        if phase.kind == "builtin-euclidean":
            expr = sp.sqrt(sum(s**2 for s in syms)) / phase.params.get("radius", 1.0)
        elif phase.kind == "builtin-anisotropic-power":
            m = phase.params["exponent"]
            expr = sum(s**m for s in syms) ** sp.Rational(1, m)
        elif phase.kind == "builtin-star":
            eps, k = phase.params["epsilon"], phase.params["k"]
            r = sp.sqrt(syms[0] ** 2 + syms[1] ** 2)
            expr = r * (1 + eps * sp.cos(k * sp.atan2(syms[1], syms[0])))
        else:
            raise CapabilityError(f"no symbolic form for kind {phase.kind!r}")
        _SYMPY_CACHE[key] = (syms, expr, {})
    return _SYMPY_CACHE[key]


def _analytic_deriv_fn(phase: PhaseSpec, alpha):
    import sympy as sp

    syms, expr, derivs = _sympy_expr(phase)
    alpha = tuple(int(a) for a in alpha)
    if alpha not in derivs:
        d = expr
        for s, a in zip(syms, alpha):
            if a:
                d = sp.diff(d, s, a)
        derivs[alpha] = sp.lambdify(syms, d, modules="numpy")
    return derivs[alpha]


def _unit_alpha(n, i):
    a = [0] * n
    a[i] = 1
    return tuple(a)


def _check_xi(xi, n):
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != n:
        raise DomainError(f"xi must have last dimension {n}")
    if np.any(np.linalg.norm(xi, axis=-1) == 0.0):
        raise DomainError("phase is not smooth at xi = 0")
    return xi


# -- operations ---------------------------------------------------------------


@dataclass
class DerivResult:
    """Value of a xi-derivative with an FD error estimate (None when analytic)."""

    value: float
    error: float | None = None


def eval_phase(phase: PhaseSpec, t, x, xi) -> float:
    """phi(t, x, xi); t and x are ignored when the phase does not depend on them."""
    out = phase.value(t, x, xi)
    return float(out) if np.ndim(out) == 0 else out


def eval_phase_deriv(phase: PhaseSpec, t, x, xi, alpha) -> DerivResult:
    """Mixed xi-derivative of multi-index alpha.

    Finite-difference mode is capped at total order 6 and reports a
    step-halving error estimate; analytic mode is exact.
    """
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != phase.dimension or any(a < 0 for a in alpha):
        raise DomainError("alpha must be a nonnegative multi-index of the phase dimension")
    xi = _check_xi(np.asarray(xi, dtype=float), phase.dimension)
    if xi.ndim != 1:
        raise DomainError("eval_phase_deriv expects a single xi point")
    order = sum(alpha)
    if order == 0:
        return DerivResult(eval_phase(phase, t, x, xi))
    if phase.deriv_mode == ANALYTIC:
        fn = _analytic_deriv_fn(phase, alpha)
        return DerivResult(float(fn(*xi)))
    if order > 6:
        raise CapabilityError("finite-difference derivatives are limited to total order 6")

    def f_pts(pts):
        return phase.value(t, x, pts)

    scale = float(np.linalg.norm(xi))
    steps = np.full(phase.dimension, phase.fd_step_rel * scale)
    d_h = fd.mixed_partial(f_pts, xi, alpha, steps)
    d_h2 = fd.mixed_partial(f_pts, xi, alpha, steps / 2.0)
    val = (4.0 * d_h2 - d_h) / 3.0
    rounding = 1e-14 * max(1.0, scale) / float(np.prod((steps / 2) ** np.asarray(alpha)))
    return DerivResult(val, abs(d_h2 - val) + rounding)


@dataclass
class HomogeneityReport:
    max_rel_deviation: float
    sample_count: int
    lambdas: tuple


def check_homogeneity(phase: PhaseSpec, sample_count: int = 100, t: float = 1.0,
                      x=None, seed: int = 0) -> HomogeneityReport:
    """Max relative deviation of phi(lambda xi) from lambda phi(xi) on random samples."""
    if sample_count < 1:
        raise DomainError("sample_count must be >= 1")
    rng = np.random.default_rng(seed)
    xi = rng.standard_normal((sample_count, phase.dimension))
    xi /= np.linalg.norm(xi, axis=-1, keepdims=True)
    xi *= rng.uniform(0.5, 4.0, size=(sample_count, 1))
    lambdas = (0.5, 2.0, 10.0)
    base = phase.value(t, x, xi)
    worst = 0.0
    for lam in lambdas:
        scaled = phase.value(t, x, lam * xi)
        dev = np.max(np.abs(scaled - lam * base) / (lam * np.abs(base)))
        worst = max(worst, float(dev))
    return HomogeneityReport(worst, sample_count, lambdas)


def phase_bounds(phase: PhaseSpec, directions, t_grid=(0.0,), x_grid=(None,)):
    """(C_lower, C_upper) = extrema of phi over unit directions and parameter grids."""
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    if directions.size == 0 or len(t_grid) == 0 or len(x_grid) == 0:
        raise DomainError("phase_bounds requires nonempty grids")
    directions = directions / np.linalg.norm(directions, axis=-1, keepdims=True)
    lo, hi = np.inf, -np.inf
    for t in t_grid:
        for x in x_grid:
            vals = phase.value(t, x, directions)
            if np.any(vals <= 0.0) or not np.all(np.isfinite(vals)):
                raise HypothesisViolationError("phase is not positive on the sampling grid")
            lo = min(lo, float(np.min(vals)))
            hi = max(hi, float(np.max(vals)))
    return lo, hi


# -- amplitudes ---------------------------------------------------------------


@dataclass(frozen=True)
class AmplitudeSpec:
    """Order-zero amplitude a(t, x, xi) with an optional low-frequency cutoff.

    The cutoff chi(t|xi| >= C) vanishes for t|xi| <= C and rises smoothly
    (cosine-squared in log scale) to 1 at t|xi| >= 2C.
    """

    fn: Callable | None = None
    cutoff_c: float | None = None
    seminorm_budget: dict = field(default_factory=dict)

    def value(self, t, x, xi):
        xi = np.asarray(xi, dtype=float)
        out = np.ones(xi.shape[:-1]) if self.fn is None else np.asarray(
            self.fn(t, x, xi), dtype=float)
        if self.cutoff_c is not None:
            s = t * np.linalg.norm(xi, axis=-1)
            out = out * _smooth_step(s, self.cutoff_c, 2.0 * self.cutoff_c)
        return out


def _smooth_step(s, lo, hi):
    """0 below lo, 1 above hi, cosine-squared transition in between."""
    u = np.clip((s - lo) / (hi - lo), 0.0, 1.0)
    return np.sin(0.5 * np.pi * u) ** 2


def unit_amplitude(cutoff_c: float | None = None) -> AmplitudeSpec:
    return AmplitudeSpec(None, cutoff_c)


def constant_amplitude(value: float, cutoff_c: float | None = None) -> AmplitudeSpec:
    return AmplitudeSpec(lambda t, x, xi: np.full(np.asarray(xi).shape[:-1], value), cutoff_c)


def amplitude_symbol_constants(amp: AmplitudeSpec, max_order: int, dimension: int,
                               t: float = 1.0, x=None, seed: int = 0, samples: int = 64):
    """Sampled constants sup |d^alpha a| <xi>^{|alpha|} per multi-index order.

    Verifies the order-zero symbol estimate up to max_order; returns
    {order: constant}. Non-finite samples raise DataError.
    """
    rng = np.random.default_rng(seed)
    xi = rng.standard_normal((samples, dimension))
    xi /= np.linalg.norm(xi, axis=-1, keepdims=True)
    xi *= np.exp(rng.uniform(np.log(0.5), np.log(32.0), size=(samples, 1)))
    consts: dict[int, float] = {}
    for alpha in _multi_indices(dimension, max_order):
        order = sum(alpha)
        worst = 0.0
        for p in xi:
            if order == 0:
                d = float(amp.value(t, x, p[None, :])[0])
            else:
                steps = np.full(dimension, 1e-3 * max(1.0, np.linalg.norm(p)))
                d = fd.mixed_partial(lambda q: amp.value(t, x, q), p, alpha, steps)
            if not np.isfinite(d):
                raise DataError("non-finite amplitude sample")
            bracket = np.sqrt(1.0 + np.dot(p, p))
            worst = max(worst, abs(d) * bracket**order)
        consts[order] = max(consts.get(order, 0.0), worst)
    return consts


def _multi_indices(n, max_total):
    if n == 1:
        for a in range(max_total + 1):
            yield (a,)
        return
    for a in range(max_total + 1):
        for rest in _multi_indices(n - 1, max_total - a):
            yield (a,) + rest


# -- symbol classes -----------------------------------------------------------


@dataclass(frozen=True)
class SymbolClassSpec:
    """Membership test configuration for the time-decay classes.

    kind "T" is |d_t^k f| <= c_k <t>^{ell-k}; "Tnu" replaces the weight by
    <t (log(e+t))^nu>; "S" tests |xi|^{|alpha|-m1} d_xi^alpha a(t, xi) in
    the t-class of order m2, uniformly over the xi grid.
    """

    kind: str = "T"
    ell: float = 0.0
    nu: float = 0.0
    m1: float = 1.0
    m2: float = 0.0
    max_order: int = 3
    xi_order: int = 1
    t_max: float = 1e4
    t_points: int = 600
    growth_threshold: float = 10.0
    fd_step: float = 1e-3
    xi_directions: int = 8
    xi_radii: tuple = (0.5, 1.0, 4.0, 16.0)


@dataclass
class SymbolClassReport:
    member: bool
    constants: dict
    growth: dict
    spec: SymbolClassSpec


def _t_grid(spec: SymbolClassSpec):
    return np.concatenate([[0.0], np.geomspace(1e-2, spec.t_max, spec.t_points - 1)])


def _class_weight(spec: SymbolClassSpec, t):
    if spec.kind == "Tnu":
        s = t * np.log(np.e + t) ** spec.nu
    else:
        s = t
    return np.sqrt(1.0 + s * s)


def _t_deriv(f, t, k, step):
    """k-th t-derivative on an array of t values, absolute-step Richardson."""
    if k == 0:
        return np.asarray(f(t), dtype=float)
    off, w = fd.central_stencil(k)

    def apply(h):
        acc = np.zeros_like(t, dtype=float)
        for o, wt in zip(off, w):
            acc += wt * np.asarray(f(t + o * h), dtype=float)
        return acc / h**k

    d1, d2 = apply(step), apply(step / 2.0)
    return (4.0 * d2 - d1) / 3.0


def check_symbol_class(f: Callable, spec: SymbolClassSpec) -> SymbolClassReport:
    """Verdict and smallest grid constants for membership of f in the class.

    Membership is decided by ratio growth across the grid: the supremum of
    |d^k f| / weight^{ell-k} over the top decade must not exceed
    growth_threshold times the supremum over the initial window.
    """
    if spec.kind in ("T", "Tnu"):
        return _check_t_class(f, spec, spec.ell)
    if spec.kind == "S":
        return _check_s_class(f, spec)
    raise DomainError(f"unknown symbol class kind {spec.kind!r}")


def _check_t_class(f, spec, ell, order_cap=None):
    t = _t_grid(spec)
    weight = _class_weight(spec, t)
    constants, growth = {}, {}
    member = True
    early = t <= max(10.0, 1e-3 * spec.t_max)
    late = t >= 0.1 * spec.t_max
    kmax = spec.max_order if order_cap is None else order_cap
    for k in range(kmax + 1):
        dk = _t_deriv(f, t, k, spec.fd_step)
        if not np.all(np.isfinite(dk)):
            raise DataError(f"non-finite derivative samples at order {k}")
        ratio = np.abs(dk) / weight ** (ell - k)
        c_k = float(np.max(ratio))
        floor = 1e-9 * max(c_k, 1e-30)
        g = float(np.max(ratio[late]) / max(np.max(ratio[early]), floor)) if c_k > 0 else 0.0
        constants[k] = c_k
        growth[k] = g
        if g > spec.growth_threshold:
            member = False
    return SymbolClassReport(member, constants, growth, spec)


def _check_s_class(f, spec):
    import dataclasses

    rng = np.random.default_rng(0)
    n = 2
    dirs = rng.standard_normal((spec.xi_directions, n))
    dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
    # t-resolution is reduced here: every (alpha, xi) pair runs its own t-sweep
    tspec = dataclasses.replace(spec, t_points=80)
    constants, growth = {}, {}
    member = True
    for alpha in _multi_indices(n, spec.xi_order):
        aord = sum(alpha)
        for r in spec.xi_radii:
            for d in dirs:
                xi = r * d

                def g_of_t(tv, xi=xi, alpha=alpha, aord=aord):
                    tv = np.atleast_1d(np.asarray(tv, dtype=float))
                    if aord == 0:
                        vals = np.array([f(tt, xi[None, :])[0] for tt in tv])
                    else:
                        steps = np.full(n, 1e-3 * np.linalg.norm(xi))
                        vals = np.array([
                            fd.mixed_partial(lambda q, tt=tt: f(tt, q), xi, alpha, steps)
                            for tt in tv
                        ])
                    return np.linalg.norm(xi) ** (aord - spec.m1) * vals

                rep = _check_t_class(g_of_t, tspec, spec.m2, order_cap=min(spec.max_order, 1))
                member = member and rep.member
                for k, c in rep.constants.items():
                    key = (alpha, k)
                    constants[key] = max(constants.get(key, 0.0), c)
                    growth[key] = max(growth.get(key, 0.0), rep.growth[k])
    return SymbolClassReport(member, constants, growth, spec)
