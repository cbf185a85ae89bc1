"""Adaptive quadrature on finite and semi-infinite intervals.

Integrands are vectorised callables: they receive a 1-D float array of
abscissae and return an array of the same shape.

Strategies:

* finite-adaptive: globally adaptive 21-point Gauss-Kronrod rule, splitting
  the fewest worst intervals whose removal would meet half the tolerance.
* semi-infinite-transformed: (a, a + 1) is integrated through x = a + t^2
  and (a + 1, inf) through x = a + 1 / t^2, so both ends map next to zero.
* decaying-truncated: integrands with a known Gaussian or exponential
  decay rate are truncated where the probed tail mass falls below the
  configured tail tolerance.
* oscillatory-accelerated: integrals against J_order(freq x) are split at the
  kernel zeros and the partial sums are extrapolated (iterated Aitken,
  Levin u-transform). Panels are integrated in t with x = t^2.
"""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import AccelerationFailure, EvalError, TailError
from .specfun import bessel_j

_EPS = 2.220446049250313e-16


class Strategy(str, enum.Enum):
    FINITE = "finite-adaptive"
    SEMI_INFINITE = "semi-infinite-transformed"
    TRUNCATED = "decaying-truncated"
    OSCILLATORY = "oscillatory-accelerated"


@dataclass(frozen=True)
class QuadConfig:
    """Tolerance and budget policy shared by all integrators."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-9
    max_subdivisions: int = 2000
    max_evals: int = 2_000_000
    truncation_tail_tol: float = 1e-13
    oscillatory_blocks: int = 24

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ValueError("at least one of abs_tol, rel_tol must be positive")
        if self.max_subdivisions <= 0 or self.max_evals <= 0:
            raise ValueError("budgets must be positive")
        if self.truncation_tail_tol <= 0:
            raise ValueError("truncation_tail_tol must be positive")
        if self.oscillatory_blocks <= 0:
            raise ValueError("oscillatory_blocks must be positive")

    def tolerance(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))

    def tightened(self, factor):
        """Copy with both tolerances divided by ``factor`` (used for inner integrals)."""
        return replace(
            self,
            abs_tol=self.abs_tol / factor,
            rel_tol=self.rel_tol / factor,
            truncation_tail_tol=self.truncation_tail_tol / factor,
        )


DEFAULT_CONFIG = QuadConfig()


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    evals: int
    converged: bool
    strategy: Strategy

    def as_dict(self):
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "evals": self.evals,
            "converged": self.converged,
            "strategy": self.strategy.value,
        }


# ---------------------------------------------------------------------------
# Gauss-Kronrod 21 point rule (QUADPACK qk21 constants)

_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980160906,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_wg_full = np.zeros(21)
_wg_full[1:10:2] = _WG
_wg_full[11:20:2] = _WG[::-1]
GAUSS_WEIGHTS = _wg_full

_UFLOW = np.finfo(float).tiny


def _evaluate(f, x):
    values = np.asarray(f(x), dtype=float)
    if values.shape != x.shape:
        values = np.broadcast_to(values, x.shape).astype(float)
    if np.any(np.isnan(values)):
        bad = x[np.isnan(values)][0]
        raise EvalError(f"integrand returned NaN at x = {bad!r}")
    if np.any(np.isinf(values)):
        bad = x[np.isinf(values)][0]
        raise EvalError(f"integrand returned an infinite value at x = {bad!r}")
    return values


def _gk21(f, lo, hi):
    """Apply the rule on every interval; returns (kronrod, error, evals)."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * NODES[None, :]
    fx = _evaluate(f, x.ravel()).reshape(x.shape)
    res_k = half * (fx @ KRONROD_WEIGHTS)
    res_g = half * (fx @ GAUSS_WEIGHTS)
    res_abs = np.abs(half) * (np.abs(fx) @ KRONROD_WEIGHTS)
    mean = 0.5 * res_k / np.where(half == 0, 1.0, half)
    res_asc = np.abs(half) * (np.abs(fx - mean[:, None]) @ KRONROD_WEIGHTS)
    err = np.abs(res_k - res_g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = res_asc * np.minimum(1.0, (200.0 * err / res_asc) ** 1.5)
    err = np.where((res_asc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * res_abs
    err = np.where(res_abs > _UFLOW / (50.0 * _EPS), np.maximum(floor, err), err)
    return res_k, err, x.size


@dataclass
class _AdaptiveState:
    lo: np.ndarray
    hi: np.ndarray
    value: np.ndarray
    error: np.ndarray
    group: np.ndarray
    evals: int
    converged: bool


def _adaptive(f, edges, cfg, tol=None):
    """Globally adaptive integration over consecutive intervals ``edges``.

    The returned state keeps the panel index of every leaf interval so the
    caller can recover per-panel sums.
    """
    edges = np.asarray(edges, dtype=float)
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    group = np.arange(lo.size)
    value, error, evals = _gk21(f, lo, hi)
    span = float(np.sum(hi - lo))
    converged = False
    while True:
        total = float(np.sum(value))
        total_err = float(np.sum(error))
        target = cfg.tolerance(total) if tol is None else tol
        if total_err <= target:
            converged = True
            break
        if lo.size >= cfg.max_subdivisions or evals >= cfg.max_evals:
            break
        width = hi - lo
        splittable = width > 64.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        ranked = np.argsort(-error, kind="stable")
        ranked = ranked[splittable[ranked]]
        if ranked.size == 0:
            break
        # split the fewest worst intervals whose removal would meet half the target
        excess = total_err - 0.5 * target
        count = int(np.searchsorted(np.cumsum(error[ranked]), excess) + 1)
        count = min(count, ranked.size, max(cfg.max_subdivisions - lo.size, 1))
        pick = np.sort(ranked[:count])
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        new_val, new_err, n = _gk21(f, new_lo, new_hi)
        evals += n
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        value = np.concatenate([value[keep], new_val])
        error = np.concatenate([error[keep], new_err])
        group = np.concatenate([group[keep], group[pick], group[pick]])
        order = np.lexsort((lo, group))
        lo, hi, value, error, group = lo[order], hi[order], value[order], error[order], group[order]
    return _AdaptiveState(lo, hi, value, error, group, evals, converged)


def _result(state, strategy, extra_error=0.0, cfg=DEFAULT_CONFIG):
    value = float(np.sum(state.value))
    error = float(np.sum(state.error)) + extra_error
    converged = state.converged and error <= cfg.tolerance(value) * (1.0 + 1e-12)
    return QuadResult(value, error, state.evals, converged, strategy)


def integrate_finite(f, a, b, cfg=DEFAULT_CONFIG):
    """Adaptive Gauss-Kronrod estimate of the integral of ``f`` over (a, b).

    Integrable endpoint singularities are handled by repeated bisection; the
    rule never evaluates ``f`` at the endpoints.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"integrate_finite requires a < b, got ({a}, {b})")
    state = _adaptive(f, [a, b], cfg)
    return _result(state, Strategy.FINITE, cfg=cfg)


def _tail_probe(f, start, scale=1.0):
    """Raise TailError unless |x f(x)| shrinks between x ~ 1e2 and x ~ 1e8."""
    xs = start + scale * np.array([1e2, 1e4, 1e6, 1e8])
    with np.errstate(all="ignore"):
        values = np.abs(np.asarray(f(xs), dtype=float) * xs)
    if not np.all(np.isfinite(values)):
        raise TailError("integrand is not finite far out in the tail")
    if values[0] == 0.0:
        return
    if values[-1] > 0.5 * values[0] and values[-1] > 1e-300:
        raise TailError(
            f"x f(x) does not decay: {values[0]:.3g} at x = {xs[0]:.3g}, {values[-1]:.3g} at x = {xs[-1]:.3g}"
        )


def integrate_semiinfinite(f, a=0.0, cfg=DEFAULT_CONFIG, probe_tail=True):
    """Integral of ``f`` over (a, inf) via x = a + t^2 on (a, a + 1) and x = a + 1 / t^2 beyond."""
    a = float(a)
    if a < 0:
        raise ValueError("integrate_semiinfinite requires a >= 0")
    if probe_tail:
        _tail_probe(f, a)

    def mapped(t):
        # t in (0, 1) covers (a, a + 1) through x = a + t^2; t in (-1, 0) covers (a + 1, inf)
        # through x = a + 1 / t^2. Both ends sit at t = 0, where floats are dense, and the
        # squares turn x^p endpoint singularities into the milder t^(2p + 1).
        out = np.empty_like(t)
        near = t >= 0
        tn = t[near]
        out[near] = 2.0 * tn * f(a + tn * tn)
        r = -t[~near]
        far = np.zeros_like(r)
        # below r ~ 1e-75 the Jacobian overflows and an integrable tail contributes nothing
        live = r > 1e-75
        rl = r[live]
        r2 = rl * rl
        far[live] = 2.0 * f(a + 1.0 / r2) / (r2 * rl)
        out[~near] = far
        return out

    state = _adaptive(mapped, [-1.0, 0.0, 1.0], cfg)
    return _result(state, Strategy.SEMI_INFINITE, cfg=cfg)


def integrate_to_cutoff(f, cutoff, cfg=DEFAULT_CONFIG):
    """Integral over (0, inf) of an ``f`` that is negligible beyond ``cutoff``.

    Integrates (0, X) through x = t^2 and enlarges X until |x f(x)| just
    beyond it is below a thousandth of the tolerance; that probe magnitude
    is added to the error estimate.
    """
    cut = float(cutoff)
    if not cut > 0:
        raise ValueError("cutoff must be positive")

    def squared(t):
        return 2.0 * t * f(t * t)

    evals = 0
    for _ in range(40):
        state = _adaptive(squared, [0.0, math.sqrt(cut)], cfg)
        evals += state.evals
        value = float(np.sum(state.value))
        probe = cut * np.array([1.0, 1.25, 1.5, 2.0])
        with np.errstate(all="ignore"):
            tail = float(np.max(np.abs(np.asarray(f(probe), dtype=float) * probe)))
        if not math.isfinite(tail):
            raise TailError("integrand is not finite beyond the cutoff")
        if tail <= 1e-3 * cfg.tolerance(value):
            state.evals = evals
            return _result(state, Strategy.TRUNCATED, extra_error=tail, cfg=cfg)
        cut *= 1.5
    raise TailError("integrand is not negligible beyond any tried cutoff")


_MAX_GROWTH_LOG2 = 40.0


def _probe_growth(f_smooth, scale):
    """Dyadic magnitude probe; rejects non-polynomial growth."""
    xs = scale * 2.0 ** np.arange(-6.0, 9.0)
    with np.errstate(all="ignore"):
        mags = np.abs(np.asarray(f_smooth(xs), dtype=float))
    if not np.all(np.isfinite(mags)):
        raise TailError("smooth factor is not finite at the probe points")
    tail = mags[-4:]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.log2(tail[1:] / tail[:-1])
    if np.any(np.isfinite(ratios) & (ratios > _MAX_GROWTH_LOG2)):
        raise TailError("smooth factor grows faster than any moderate power")
    return xs, mags


def _truncate_and_integrate(f_smooth, weight, truncation_point, tail_bound, scale, cfg, cutoff_hint=None):
    xs, mags = _probe_growth(f_smooth, scale if cutoff_hint is None else min(scale, cutoff_hint))
    bound = max(float(np.max(mags)), _UFLOW)
    # the tail tolerance is relative to the integral's dyadic magnitude, so tiny integrals keep their digits
    with np.errstate(all="ignore"):
        magnitude = float(np.max(mags * np.abs(weight(xs)) * xs))
    threshold = cfg.truncation_tail_tol * magnitude if magnitude > 0 else cfg.truncation_tail_tol
    threshold = max(threshold, _UFLOW)
    cut = truncation_point(bound / threshold)
    if cutoff_hint is not None:
        cut = min(cut, float(cutoff_hint))
    for _ in range(60):
        local = float(np.max(np.abs(np.asarray(f_smooth(np.array([cut, 1.5 * cut, 2.0 * cut])), dtype=float))))
        if not math.isfinite(local):
            raise TailError("smooth factor is not finite near the truncation point")
        tail = tail_bound(local, cut)
        if tail <= threshold:
            break
        cut *= 1.25
    else:
        raise TailError("could not find a truncation point for the decaying integrand")

    def integrand(x):
        return f_smooth(x) * weight(x)

    state = _adaptive(integrand, [0.0, cut], cfg)
    return _result(state, Strategy.TRUNCATED, extra_error=tail, cfg=cfg)


def integrate_gaussian_decay(f_smooth, decay_rate, cfg=DEFAULT_CONFIG, cutoff_hint=None):
    """Integral over (0, inf) of f_smooth(x) exp(-decay_rate x^2).

    The interval is cut at X = sqrt(ln(M / tau) / decay_rate), M being the
    dyadic envelope bound of |f_smooth| and tau the tail tolerance scaled by
    the integral's dyadic magnitude; X is enlarged until the local tail bound
    |f(X)| exp(-rate X^2) / (2 rate X) meets tau.
    ``cutoff_hint`` caps the first guess for X when f_smooth decays on its own
    (otherwise a tiny rate would spread the nodes far beyond its support).
    """
    rate = float(decay_rate)
    if not rate > 0:
        raise ValueError("decay_rate must be positive")
    scale = 1.0 / math.sqrt(rate)

    def cut(ratio):
        return math.sqrt(max(1.0, math.log(ratio)) / rate)

    def tail(local, x):
        return local * math.exp(-rate * x * x) / (2.0 * rate * x)

    return _truncate_and_integrate(f_smooth, lambda x: np.exp(-rate * x * x), cut, tail, scale, cfg, cutoff_hint)


def integrate_exponential_decay(f_smooth, decay_rate, cfg=DEFAULT_CONFIG, cutoff_hint=None):
    """Integral over (0, inf) of f_smooth(x) exp(-decay_rate x), truncated like
    :func:`integrate_gaussian_decay` with X = ln(M / tau) / decay_rate."""
    rate = float(decay_rate)
    if not rate > 0:
        raise ValueError("decay_rate must be positive")
    scale = 1.0 / rate

    def cut(ratio):
        return max(1.0, math.log(ratio)) / rate

    def tail(local, x):
        return 2.0 * local * math.exp(-rate * x) / rate

    return _truncate_and_integrate(f_smooth, lambda x: np.exp(-rate * x), cut, tail, scale, cfg, cutoff_hint)


# ---------------------------------------------------------------------------
# oscillatory Bessel integrals


def bessel_j_zeros(order, count):
    """First ``count`` positive zeros of J_order (order > -1).

    McMahon's expansion gives the starting points, Newton's method on
    J / J' polishes them.
    """
    order = float(order)
    k = np.arange(1, count + 1, dtype=float)
    mu = 4.0 * order * order
    beta = (k + 0.5 * order - 0.25) * math.pi
    e = 8.0 * beta
    guess = (beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e ** 3)
             - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e ** 5))
    x = np.maximum(guess, 0.5 * beta)
    for _ in range(40):
        jv = bessel_j(order, x)
        deriv = bessel_j(order - 1.0, x) - (order / x) * jv
        step = jv / deriv
        x = x - step
        if np.all(np.abs(step) <= 4.0 * _EPS * x):
            break
    if np.any(np.diff(x) <= 0.5) or x[0] <= 0:
        raise AccelerationFailure(f"zero polishing for order {order} produced an unordered sequence")
    return x


def _aitken_iterated(sums):
    seq = np.array(sums, dtype=float)
    estimates = [seq[-1]]
    while seq.size >= 3:
        d2 = seq[2:] - 2.0 * seq[1:-1] + seq[:-2]
        with np.errstate(divide="ignore", invalid="ignore"):
            nxt = seq[2:] - (seq[2:] - seq[1:-1]) ** 2 / np.where(d2 == 0, np.nan, d2)
        nxt = np.where(np.isfinite(nxt), nxt, seq[2:])
        seq = nxt
        estimates.append(seq[-1])
    return estimates


def levin_u(partial_sums, terms, start_index=1):
    """Levin u-transform of the whole sequence (beta = start_index)."""
    s = np.asarray(partial_sums, dtype=float)
    a = np.asarray(terms, dtype=float)
    n = s.size
    k = n - 1
    j = np.arange(n, dtype=float)
    idx = start_index + j
    omega = idx * a
    if np.any(omega == 0):
        raise AccelerationFailure("zero term in Levin transform")
    binom = np.array([math.comb(k, int(i)) for i in range(n)], dtype=float)
    coeff = (-1.0) ** j * binom * (idx / (start_index + k)) ** (k - 1)
    return float(np.sum(coeff * s / omega) / np.sum(coeff / omega))


def _extrapolate(partial, terms):
    """Return (estimate, residual, method) from Aitken, upgraded to Levin-u."""
    aitken = _aitken_iterated(partial)
    a_best = aitken[-1]
    a_resid = abs(aitken[-1] - aitken[-2]) if len(aitken) > 1 else math.inf
    l_full = levin_u(partial, terms)
    l_short = levin_u(partial[:-1], terms[:-1])
    l_resid = abs(l_full - l_short)
    if l_resid <= a_resid:
        return l_full, l_resid, "levin-u"
    return a_best, a_resid, "aitken"


def _check_alternation(terms):
    tail = np.asarray(terms[len(terms) // 2:])
    signs = np.sign(tail)
    flips = np.sum(signs[1:] * signs[:-1] < 0)
    if flips < tail.size - 2:
        raise AccelerationFailure("panel integrals do not alternate in sign")
    if abs(terms[-1]) > abs(terms[len(terms) // 2]) * (1.0 - 1e-4):
        raise AccelerationFailure("panel integrals do not decay; the integral may diverge")


def _oscillatory(integrand, zeros, cfg, blocks):
    """Shared driver: panels between consecutive zeros then extrapolation."""
    evals = 0
    count = blocks
    last = None

    def squared(t):
        # x = t^2 softens integrable singularities of the envelope at 0
        return 2.0 * t * integrand(t * t)

    while True:
        edges = np.sqrt(np.concatenate([[0.0], zeros(count + 1)]))
        panel_cfg = cfg.tightened(10.0)
        state = _adaptive(squared, edges, panel_cfg)
        evals += state.evals
        panels = np.bincount(state.group, weights=state.value, minlength=edges.size - 1)
        panel_err = float(np.sum(state.error))
        head = panels[0]
        terms = panels[1:]
        partial = head + np.cumsum(terms)
        negligible = cfg.tolerance(partial[-1]) * 1e-3
        if np.all(np.abs(terms[-3:]) <= negligible):
            # kernel zeros outrun the envelope decay; the plain partial sum has converged
            value, resid = float(partial[-1]), float(np.sum(np.abs(terms[-3:])))
        else:
            _check_alternation(terms)
            value, resid, _ = _extrapolate(partial, terms)
        error = resid + panel_err
        if last is not None:
            error = max(error, min(abs(value - last), error * 10.0))
        converged = state.converged and error <= cfg.tolerance(value)
        if converged or evals >= cfg.max_evals or count >= 4 * blocks:
            return QuadResult(float(value), float(error), evals, bool(converged), Strategy.OSCILLATORY)
        last = value
        count *= 2


def integrate_oscillatory_bessel(envelope, order, freq, cfg=DEFAULT_CONFIG):
    """Integral over (0, inf) of envelope(x) J_order(freq x).

    The envelope should be eventually monotone; conditionally convergent
    integrals are accepted as long as the panel sums alternate and decay.
    """
    order = float(order)
    freq = float(freq)
    if not freq > 0:
        raise ValueError("freq must be positive")

    def integrand(x):
        return envelope(x) * bessel_j(order, freq * x)

    def zeros(n):
        return bessel_j_zeros(order, n) / freq

    return _oscillatory(integrand, zeros, cfg, cfg.oscillatory_blocks)


def integrate_oscillatory_cosine(envelope, freq, cfg=DEFAULT_CONFIG):
    """Integral over (0, inf) of envelope(x) cos(freq x).

    Same partition-extrapolation path as the order -1/2 Bessel kernel,
    since cos(w x) = sqrt(pi w x / 2) J_{-1/2}(w x); the product is evaluated
    directly as a cosine.
    """
    freq = float(freq)
    if not freq > 0:
        raise ValueError("freq must be positive")

    def integrand(x):
        return envelope(x) * np.cos(freq * x)

    def zeros(n):
        return (np.arange(1, n + 1) - 0.5) * math.pi / freq

    return _oscillatory(integrand, zeros, cfg, cfg.oscillatory_blocks)
