"""Integral transforms over (0, inf) as numerical operators.

Each transform takes a :class:`RealFunction`, an evaluation point and a
:class:`~ptrans.quadrature.QuadConfig`, and returns a
:class:`~ptrans.quadrature.QuadResult`. The quadrature strategy is chosen
from the function's declared growth class, never inferred at run time.

Kernels (f is the input function, y the evaluation point):

==============  ==========================================
l2              x exp(-x^2 y^2)
laplace         exp(-x y)
widder          x / (x^2 + y^2)
glasser         1 / sqrt(x^2 + y^2)
p_nu2           x / (x^2 + y^2)^order
hankel          sqrt(x y) J_order(x y)
k               sqrt(x y) K_order(x y)
iterated_l2     l2 of u^(2 order - 2) l2{f; u}
==============  ==========================================
"""

import enum
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NonConvergenceError
from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    QuadResult,
    Strategy,
    integrate_exponential_decay,
    integrate_gaussian_decay,
    integrate_oscillatory_bessel,
    integrate_oscillatory_cosine,
    integrate_semiinfinite,
    integrate_to_cutoff,
)
from .specfun import bessel_j, bessel_k

# tail tolerance exp(-_DECAY_SPAN) relative to the function's own decay scale
_DECAY_SPAN = 40.0


class GrowthClass(str, enum.Enum):
    GAUSSIAN = "gaussian-decay"
    EXPONENTIAL = "exponential-decay"
    ALGEBRAIC = "algebraic-decay"
    OSCILLATORY = "oscillatory-bessel"
    BOUNDED = "bounded"


class Singularity(str, enum.Enum):
    NONE = "none"
    INTEGRABLE = "integrable"
    REMOVABLE = "removable"


@dataclass(frozen=True)
class RealFunction:
    """A vectorised function on the positive real axis plus decay metadata.

    For the oscillatory class the function equals
    ``envelope(x) * J_order(freq * x)``; ``cosine_envelope`` may hold the
    equivalent envelope against cos(freq x) when order is -1/2.
    ``decay_scale`` is the length over which Gaussian or exponential decay
    sets in; ``decay_power`` the algebraic exponent p in |f| ~ x^p at infinity.
    """

    func: Callable[[np.ndarray], np.ndarray]
    growth: GrowthClass = GrowthClass.BOUNDED
    singularity_at_zero: Singularity = Singularity.NONE
    name: str = ""
    decay_scale: Optional[float] = None
    decay_power: Optional[float] = None
    envelope: Optional[Callable[[np.ndarray], np.ndarray]] = None
    bessel_order: Optional[float] = None
    freq: Optional[float] = None
    cosine_envelope: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, compare=False)

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

    @property
    def is_oscillatory(self):
        return self.growth is GrowthClass.OSCILLATORY

    def cutoff(self):
        """Point beyond which the function's own decay makes it negligible, if known."""
        if self.decay_scale is None:
            return None
        if self.growth is GrowthClass.GAUSSIAN:
            return self.decay_scale * math.sqrt(_DECAY_SPAN)
        if self.growth is GrowthClass.EXPONENTIAL:
            return self.decay_scale * _DECAY_SPAN
        return None

    @classmethod
    def oscillatory(cls, envelope, order, freq, name="", cosine_envelope=None, decay_power=None,
                    singularity_at_zero=Singularity.NONE):
        order = float(order)
        freq = float(freq)

        def func(x):
            return envelope(x) * bessel_j(order, freq * x)

        return cls(func, GrowthClass.OSCILLATORY, singularity_at_zero, name, None, decay_power,
                   envelope, order, freq, cosine_envelope)


ZERO_FUNCTION = RealFunction(lambda x: np.zeros_like(x), GrowthClass.BOUNDED, name="zero")


def _require_point(y, what="y"):
    y = float(y)
    if not y > 0 or not math.isfinite(y):
        raise DomainError(f"{what} must be a finite positive number, got {y}")
    return y


def _is_zero(f):
    return f is ZERO_FUNCTION or f.name == "zero"


def _zero_result():
    return QuadResult(0.0, 0.0, 0, True, Strategy.FINITE)


def integrate_against(f, kernel, cfg=DEFAULT_CONFIG):
    """Integral over (0, inf) of kernel(x) f(x), routed by f's growth class.

    ``kernel`` must be smooth and non-oscillatory on (0, inf).
    """
    if _is_zero(f):
        return _zero_result()
    if f.is_oscillatory:
        if f.bessel_order == -0.5 and f.cosine_envelope is not None:
            env = f.cosine_envelope
            return integrate_oscillatory_cosine(lambda x: kernel(x) * env(x), f.freq, cfg)
        env = f.envelope
        return integrate_oscillatory_bessel(lambda x: kernel(x) * env(x), f.bessel_order, f.freq, cfg)
    cutoff = f.cutoff()
    if cutoff is not None:
        return integrate_to_cutoff(lambda x: kernel(x) * f(x), cutoff, cfg)
    return integrate_semiinfinite(lambda x: kernel(x) * f(x), 0.0, cfg)


def l2_transform(f, y, cfg=DEFAULT_CONFIG):
    """int_0^inf x exp(-x^2 y^2) f(x) dx."""
    y = _require_point(y)
    if _is_zero(f):
        return _zero_result()
    return integrate_gaussian_decay(lambda x: x * f(x), y * y, cfg, cutoff_hint=f.cutoff())


def laplace_transform(f, y, cfg=DEFAULT_CONFIG):
    """int_0^inf exp(-x y) f(x) dx."""
    y = _require_point(y)
    if _is_zero(f):
        return _zero_result()
    return integrate_exponential_decay(f, y, cfg, cutoff_hint=f.cutoff())


def p_nu2_transform(f, order, y, cfg=DEFAULT_CONFIG):
    """int_0^inf x f(x) / (x^2 + y^2)^order dx, order > 0."""
    order = float(order)
    if not order > 0:
        raise DomainError(f"the P_(order,2) transform needs order > 0, got {order}")
    y = _require_point(y)
    y2 = y * y
    return integrate_against(f, lambda x: x * (x * x + y2) ** (-order), cfg)


def widder_potential(f, y, cfg=DEFAULT_CONFIG):
    """int_0^inf x f(x) / (x^2 + y^2) dx."""
    y = _require_point(y)
    y2 = y * y
    return integrate_against(f, lambda x: x / (x * x + y2), cfg)


def glasser_transform(f, y, cfg=DEFAULT_CONFIG):
    """int_0^inf f(x) / sqrt(x^2 + y^2) dx."""
    y = _require_point(y)
    y2 = y * y
    return integrate_against(f, lambda x: 1.0 / np.sqrt(x * x + y2), cfg)


def hankel_transform(f, order, y, cfg=DEFAULT_CONFIG):
    """int_0^inf sqrt(x y) J_order(x y) f(x) dx, order > -1."""
    order = float(order)
    if not order > -1:
        raise DomainError(f"the Hankel transform needs order > -1, got {order}")
    y = _require_point(y)
    if _is_zero(f):
        return _zero_result()
    if f.is_oscillatory:
        warnings.warn("Hankel transform of an oscillatory function: panel sums may not alternate",
                      RuntimeWarning, stacklevel=2)
    return integrate_oscillatory_bessel(lambda x: np.sqrt(x * y) * f(x), order, y, cfg)


def k_transform(f, order, y, cfg=DEFAULT_CONFIG):
    """int_0^inf sqrt(x y) K_order(x y) f(x) dx."""
    order = float(order)
    y = _require_point(y)
    if _is_zero(f):
        return _zero_result()

    def smooth(x):
        xy = x * y
        return np.sqrt(xy) * bessel_k(order, xy) * np.exp(xy) * f(x)

    return integrate_exponential_decay(smooth, y, cfg, cutoff_hint=f.cutoff())


class _MemoTransform:
    """Pointwise cache of an inner transform; confined to one outer call."""

    def __init__(self, transform, cfg, budget):
        self.transform = transform
        self.cfg = cfg
        self.cache = {}
        self.evals = 0
        self.budget = budget
        self.all_converged = True
        self.errors = {}

    def __call__(self, points):
        points = np.asarray(points, dtype=float)
        out = np.empty_like(points)
        for i, p in enumerate(points.ravel()):
            key = float(p)
            hit = self.cache.get(key)
            if hit is None:
                res = self.transform(key, self.cfg)
                self.evals += res.evals
                if self.evals > self.budget:
                    raise NonConvergenceError("nested transform exhausted the evaluation budget")
                self.all_converged &= res.converged
                self.errors[key] = res.error_estimate
                hit = res.value
                self.cache[key] = hit
            out.flat[i] = hit
        return out

    def relative_error(self):
        """Worst inner relative error over points whose value is material.

        Points where the inner transform is below 1e-6 of its largest sampled
        magnitude carry negligible weight in the outer integral and are skipped.
        """
        if not self.cache:
            return 0.0
        scale = max(abs(v) for v in self.cache.values())
        if scale == 0:
            return 0.0
        floor = 1e-6 * scale
        return max((self.errors[k] / abs(v) for k, v in self.cache.items() if abs(v) >= floor), default=0.0)


INNER_ABS_FLOOR = 1e-15


def inner_config(cfg):
    """Inner quadrature of a nested transform: 10x tighter, with a near-zero absolute floor.

    Outer weights such as y^(2 nu - 1) can amplify the far tail of an inner
    transform by many orders of magnitude, so inner accuracy must be relative.
    """
    tight = cfg.tightened(10.0)
    return replace(tight, abs_tol=cfg.abs_tol * INNER_ABS_FLOOR)


def memoized_transform(transform, cfg=DEFAULT_CONFIG, budget=None):
    """Wrap ``transform(point, cfg) -> QuadResult`` as a cached pointwise function.

    Used to sample an inner transform inside an outer quadrature. ``budget``
    caps the total inner evaluations (default ``cfg.max_evals``).
    """
    return _MemoTransform(transform, inner_config(cfg), cfg.max_evals if budget is None else int(budget))


def split_budget(cfg, outer_share=0.3):
    """Outer config and inner evaluation budget sharing ``cfg.max_evals``."""
    if not 0 < outer_share < 1:
        raise ValueError("outer_share must lie in (0, 1)")
    outer = max(1, int(outer_share * cfg.max_evals))
    return replace(cfg, max_evals=outer), max(1, cfg.max_evals - outer)


def finish_nested(outer, memo, cfg):
    """Combine outer and inner accounting into one QuadResult."""
    error = outer.error_estimate + abs(outer.value) * memo.relative_error()
    evals = outer.evals + memo.evals
    converged = outer.converged and memo.all_converged and error <= cfg.tolerance(outer.value) * 1.5
    return QuadResult(outer.value, error, evals, converged, outer.strategy)


def iterated_l2(g, order, y, cfg=DEFAULT_CONFIG):
    """l2 transform of u^(2 order - 2) l2{g; u}, evaluated at y, by nested quadrature."""
    order = float(order)
    if not order > 0:
        raise DomainError(f"iterated_l2 needs order > 0, got {order}")
    y = _require_point(y)
    if _is_zero(g):
        return _zero_result()
    inner = memoized_transform(lambda u, c: l2_transform(g, u, c), cfg)
    power = 2.0 * order - 1.0
    outer = integrate_gaussian_decay(lambda u: u ** power * inner(u), y * y, cfg)
    return finish_nested(outer, inner, cfg)


@dataclass(frozen=True)
class TransformSpec:
    name: str
    needs_order: bool
    kernel: str
    run: Callable


TRANSFORMS = {
    "l2": TransformSpec("l2", False, "x exp(-x^2 y^2)", lambda f, o, y, c: l2_transform(f, y, c)),
    "laplace": TransformSpec("laplace", False, "exp(-x y)", lambda f, o, y, c: laplace_transform(f, y, c)),
    "widder": TransformSpec("widder", False, "x / (x^2 + y^2)", lambda f, o, y, c: widder_potential(f, y, c)),
    "glasser": TransformSpec("glasser", False, "1 / sqrt(x^2 + y^2)", lambda f, o, y, c: glasser_transform(f, y, c)),
    "p_nu2": TransformSpec("p_nu2", True, "x / (x^2 + y^2)^order", lambda f, o, y, c: p_nu2_transform(f, o, y, c)),
    "hankel": TransformSpec("hankel", True, "sqrt(x y) J_order(x y)", lambda f, o, y, c: hankel_transform(f, o, y, c)),
    "k": TransformSpec("k", True, "sqrt(x y) K_order(x y)", lambda f, o, y, c: k_transform(f, o, y, c)),
    "iterated_l2": TransformSpec("iterated_l2", True, "l2{u^(2 order - 2) l2{f; u}; y}",
                                 lambda f, o, y, c: iterated_l2(f, o, y, c)),
}


@dataclass(frozen=True)
class TransformRequest:
    """Which transform to apply, at which order and point, to which function."""

    transform: str
    function: RealFunction
    point: float
    order: Optional[float] = None


def evaluate_transform(request: TransformRequest, cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    spec = TRANSFORMS.get(request.transform)
    if spec is None:
        raise DomainError(f"unknown transform {request.transform!r}; known: {', '.join(TRANSFORMS)}")
    if spec.needs_order and request.order is None:
        raise DomainError(f"transform {request.transform!r} needs an order")
    return spec.run(request.function, request.order, request.point, cfg)
