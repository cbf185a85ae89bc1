"""Real-argument special functions used on the closed-form side of the identities.

Scalar routines return floats. ``bessel_j``, ``bessel_k`` and
``exp_integral_e1`` also accept numpy arrays and broadcast elementwise,
because the quadrature layer evaluates them on whole node vectors.

Crossovers (validated by the test suite, not by theory):

* ``bessel_j``: power series for x <= 4, Miller backward recurrence up to
  max(25, 1.5 * order**2), Hankel asymptotic expansion beyond.
* ``bessel_k``: trapezoid rule on the cosh integral representation, which is
  spectrally accurate for every x > 0 once the step resolves the peak.
* ``tricomi_psi``: two-term Kummer combination for z <= 2, integral
  representation (double-exponential rule) for z > 2 when a > 0.
"""

import math
import warnings

import numpy as np

from .errors import DomainError, NearSingularWarning, NonConvergenceError, PoleError

EULER_GAMMA = 0.57721566490153286061
_FPMIN = 1e-300
_EPS = 2.220446049250313e-16
_LOG_MAX = 709.78

# distance from an integer below which tricomi_psi switches to the limit procedure
PSI_INTEGER_GUARD = 1e-4
PSI_LIMIT_STEP = 1e-5


def _is_nonpositive_integer(x):
    return x <= 0 and x == math.floor(x)


def _scalar_or_vector(func, x):
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return func(float(arr))
    flat = np.array([func(float(v)) for v in arr.ravel()])
    return flat.reshape(arr.shape)


# ---------------------------------------------------------------------------
# gamma family


def gamma(x):
    """Gamma function of a real argument.

    Raises PoleError at 0, -1, -2, ... and OverflowError above ~171.6.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}")
    return math.gamma(x)


def rgamma(x):
    """Reciprocal gamma function; zero at the poles of gamma."""
    x = float(x)
    if _is_nonpositive_integer(x):
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


def beta(a, b):
    """Beta function B(a, b) = gamma(a) gamma(b) / gamma(a + b) for a, b > 0."""
    a = float(a)
    b = float(b)
    if a <= 0 or b <= 0:
        raise DomainError(f"beta requires positive arguments, got ({a}, {b})")
    if a + b < 171.0:
        return math.gamma(a) * math.gamma(b) / math.gamma(a + b)
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _upper_gamma_cf(a, x, max_iter=20000):
    """Continued fraction h with Gamma(a, x) = exp(-x) x**a h (modified Lentz)."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b if b != 0 else 1.0 / _FPMIN
    h = d
    for i in range(1, max_iter):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise NonConvergenceError(f"incomplete gamma continued fraction failed at a={a}, x={x}")


def _lower_gamma_series(a, x, max_iter=20000):
    """Sum S with gamma_lower(a, x) = exp(-x) x**a S, valid for a > 0."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(max_iter):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total
    raise NonConvergenceError(f"incomplete gamma series failed at a={a}, x={x}")


# Taylor coefficients of 1/Gamma(z) = sum c_k z^k, k = 2..16 (c_1 = 1)
_RGAMMA_TAYLOR = (
    0.5772156649015329, -0.6558780715202538, -0.0420026350340952, 0.1665386113822915,
    -0.0421977345555443, -0.0096219715278770, 0.0072189432466630, -0.0011651675918591,
    -0.0002152416741149, 0.0001280502823882, -0.0000201348547807, -0.0000012504934821,
    0.0000011330272320, -0.0000002056338417, 0.0000000061160950,
)


def _gamma1p_minus_one_over(a):
    """(Gamma(1 + a) - 1) / a without cancellation for small |a|."""
    if abs(a) >= 0.1:
        return (math.gamma(1.0 + a) - 1.0) / a
    tail = 0.0
    for c in reversed(_RGAMMA_TAYLOR):
        tail = tail * a + c
    reciprocal = 1.0 + a * tail
    return -tail / reciprocal


def _upper_gamma_small_order(a, x):
    """Gamma(a, x) for 0 < |a| < 1/2, x < 3/2: the 1/a pole of Gamma(a) cancels analytically.

    Gamma(a, x) = (Gamma(1+a) - 1)/a - (x^a - 1)/a - x^a sum_(n>=1) (-x)^n / (n! (a+n)).
    """
    term = 1.0
    total = 0.0
    for n in range(1, 200):
        term *= -x / n
        piece = term / (a + n)
        total += piece
        if abs(piece) < _EPS * max(abs(total), 1e-300):
            break
    power = math.exp(a * math.log(x))
    return _gamma1p_minus_one_over(a) - math.expm1(a * math.log(x)) / a - power * total


def upper_incomplete_gamma_scaled(a, x):
    """exp(x) * Gamma(a, x); finite where the unscaled value would underflow."""
    a = float(a)
    x = float(x)
    if x < 0:
        raise DomainError(f"incomplete gamma requires x >= 0, got {x}")
    if x == 0:
        if a <= 0:
            raise DomainError("Gamma(a, 0) diverges for a <= 0")
        return math.gamma(a)
    if 0 < abs(a) < 0.5 and x < 1.5:
        return math.exp(x) * _upper_gamma_small_order(a, x)
    if a > 0 and x < a + 1.0:
        log_pref = a * math.log(x) - x
        return math.exp(x) * (math.gamma(a) - math.exp(log_pref) * _lower_gamma_series(a, x))
    if x >= 1.0 or a > 0:
        return math.exp(a * math.log(x)) * _upper_gamma_cf(a, x)
    # a <= 0 and x < 1: recur down from an order in [0, 1)
    # Gamma(s, x) = (Gamma(s + 1, x) - x**s exp(-x)) / s
    if _is_nonpositive_integer(a):
        steps = int(-a)
        s = 0.0
        value = exp_integral_e1(x)
    else:
        steps = int(math.ceil(-a))
        s = a + steps
        value = math.exp(-x) * upper_incomplete_gamma_scaled(s, x)
    ex = math.exp(-x)
    for _ in range(steps):
        s -= 1.0
        value = (value - x ** s * ex) / s
    return math.exp(x) * value


def upper_incomplete_gamma(a, x):
    """Upper incomplete gamma Gamma(a, x) = int_x^inf t**(a-1) exp(-t) dt."""
    a = float(a)
    x = float(x)
    if x == 0:
        if a <= 0:
            raise DomainError("Gamma(a, 0) diverges for a <= 0")
        return math.gamma(a)
    return math.exp(-x) * upper_incomplete_gamma_scaled(a, x)


def erfc(x):
    """Complementary error function."""
    return math.erfc(float(x))


def erfcx(x):
    """Scaled complementary error function exp(x**2) erfc(x)."""
    x = float(x)
    if x < 2.0:
        if x * x > _LOG_MAX:
            raise OverflowError(f"erfcx({x}) exceeds the double range")
        return math.exp(x * x) * math.erfc(x)
    s = x * x
    # erfc(x) = Gamma(1/2, x^2) / sqrt(pi)
    return x * _upper_gamma_cf(0.5, s) / math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# exponential integral


def _e1_scalar(x, scaled=False):
    if not x > 0:
        raise DomainError(f"E1 requires x > 0, got {x}")
    if x <= 1.0:
        total = -EULER_GAMMA - math.log(x)
        term = 1.0
        for k in range(1, 200):
            term *= -x / k
            contrib = -term / k
            total += contrib
            if abs(contrib) < _EPS * abs(total):
                break
        return total * math.exp(x) if scaled else total
    b = x + 1.0
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, 20000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h if scaled else h * math.exp(-x)
    raise NonConvergenceError(f"E1 continued fraction failed at x={x}")


def exp_integral_e1(x):
    """Exponential integral E1(x) = int_x^inf exp(-u)/u du for x > 0."""
    return _scalar_or_vector(_e1_scalar, x)


def exp_integral_e1_scaled(x):
    """exp(x) * E1(x)."""
    return _scalar_or_vector(lambda v: _e1_scalar(v, scaled=True), x)


# ---------------------------------------------------------------------------
# Bessel J

_J_SERIES_MAX = 4.0
_J_SERIES_TERMS = 48


def _j_asymptotic_threshold(order):
    return max(25.0, 1.5 * order * order)


def _j_series(order, x):
    half = 0.5 * x
    with np.errstate(divide="ignore"):
        term = np.power(half, order) * rgamma(order + 1.0)
    total = term.copy()
    quarter = -(half * half)
    for k in range(1, _J_SERIES_TERMS):
        term = term * quarter / (k * (k + order))
        total = total + term
    return total


def _j_asymptotic(order, x):
    mu4 = 4.0 * order * order
    inv = 1.0 / x
    p_sum = np.ones_like(x)
    q_sum = np.zeros_like(x)
    coeff = np.ones_like(x)
    last = np.full_like(x, np.inf)
    active = np.ones_like(x, dtype=bool)
    for k in range(1, 80):
        coeff = coeff * (mu4 - (2 * k - 1) ** 2) / (8.0 * k) * inv
        mag = np.abs(coeff)
        active = active & (mag < last) & (mag > 1e-17)
        if not active.any():
            break
        sign = (-1.0) ** (k // 2)
        contrib = np.where(active, sign * coeff, 0.0)
        if k % 2 == 0:
            p_sum = p_sum + contrib
        else:
            q_sum = q_sum + contrib
        last = np.where(active, mag, last)
    phase = x - (0.5 * order + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p_sum * np.cos(phase) - q_sum * np.sin(phase))


def _j_miller(order, x):
    """Backward recurrence for order >= 0, normalised by the Neumann-type sum
    (x/2)**frac = sum_k c_k J_{frac+2k}(x)."""
    n_target = int(math.floor(order))
    frac = order - n_target
    xmax = float(np.max(x))
    start = int(max(n_target, xmax) + 30 + 6.0 * xmax ** (1.0 / 3.0))
    start += start % 2
    upper = np.zeros_like(x)
    current = np.full_like(x, 1e-30)
    stored = np.zeros_like(x)
    norm = np.zeros_like(x)
    log_c = lambda k: math.lgamma(frac + k) - math.lgamma(k + 1.0)  # noqa: E731
    if start == n_target:
        stored = current.copy()
    if start % 2 == 0:
        k = start // 2
        c = (frac + 2 * k) * math.exp(log_c(k)) if k > 0 else math.gamma(frac + 1.0)
        norm = norm + c * current
    for m in range(start, 0, -1):
        lower = (2.0 * (frac + m) / x) * current - upper
        upper, current = current, lower
        idx = m - 1
        if idx == n_target:
            stored = current.copy()
        if idx % 2 == 0:
            k = idx // 2
            c = (frac + 2 * k) * math.exp(log_c(k)) if k > 0 else math.gamma(frac + 1.0)
            norm = norm + c * current
        big = np.abs(current) > 1e200
        if big.any():
            scale = np.where(big, 1e-200, 1.0)
            upper = upper * scale
            current = current * scale
            stored = stored * scale
            norm = norm * scale
    return stored * np.power(0.5 * x, frac) / norm


def _j_nonnegative_order(order, x):
    out = np.empty_like(x)
    small = x <= _J_SERIES_MAX
    large = x >= _j_asymptotic_threshold(order)
    mid = ~(small | large)
    if small.any():
        out[small] = _j_series(order, x[small])
    if large.any():
        out[large] = _j_asymptotic(order, x[large])
    if mid.any():
        out[mid] = _j_miller(order, x[mid])
    return out


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x) for real order and x >= 0.

    Negative non-integer orders need x > 0; negative integer orders use
    J_{-n} = (-1)**n J_n.
    """
    order = float(order)
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    xs = np.atleast_1d(arr).astype(float)
    if np.any(xs < 0) or not np.all(np.isfinite(xs)):
        raise DomainError("bessel_j requires finite x >= 0")
    if order < 0 and order == math.floor(order):
        n = int(-order)
        out = (-1.0) ** n * _j_nonnegative_order(float(n), xs)
    elif order < 0:
        if np.any(xs == 0):
            raise DomainError("bessel_j of negative non-integer order is singular at x = 0")
        out = np.empty_like(xs)
        small = xs <= _J_SERIES_MAX
        large = xs >= _j_asymptotic_threshold(order)
        mid = ~(small | large)
        if small.any():
            out[small] = _j_series(order, xs[small])
        if large.any():
            out[large] = _j_asymptotic(order, xs[large])
        if mid.any():
            xm = xs[mid]
            steps = int(math.ceil(-order))
            base = order + steps
            hi = _j_nonnegative_order(base + 1.0, xm)
            cur = _j_nonnegative_order(base, xm)
            s = base
            # J_{s-1} = (2 s / x) J_s - J_{s+1}
            for _ in range(steps):
                nxt = (2.0 * s / xm) * cur - hi
                hi, cur = cur, nxt
                s -= 1.0
            out[mid] = cur
    else:
        out = _j_nonnegative_order(order, xs)
    return float(out[0]) if scalar else out.reshape(arr.shape)


# ---------------------------------------------------------------------------
# Bessel K

_K_LOG_DROP = 46.0


def _k_log_integrand(order, x, t):
    ot = order * t
    log_cosh = ot + np.log1p(np.exp(-2.0 * ot)) - math.log(2.0)
    return -x * np.cosh(t) + log_cosh


def _k_grid(order, xs):
    """Common trapezoid grid that resolves the integrand peak for every x in xs."""
    peaks = np.arcsinh(order / xs) if order > 0 else np.zeros_like(xs)
    widths = 1.0 / np.sqrt(xs * np.cosh(peaks))
    step = min(0.25, float(np.min(widths)) / 2.5)
    t_end = 0.0
    for x, peak in zip(xs, peaks):
        top = float(_k_log_integrand(order, x, np.array([peak]))[0])
        t = peak + 1.0
        while float(_k_log_integrand(order, x, np.array([t]))[0]) > top - _K_LOG_DROP:
            t = 2.0 * t + 1.0
        t_end = max(t_end, t)
    count = int(math.ceil(t_end / step)) + 1
    return step, np.arange(count) * step


def bessel_k(order, x):
    """Modified Bessel function of the second kind K_order(x) for x > 0.

    Evaluates int_0^inf exp(-x cosh t) cosh(order t) dt by the trapezoid rule
    in log space. The integrand depends on |order| only, so K is even in the
    order by construction. Raises OverflowError if the value exceeds the
    double range.
    """
    order = abs(float(order))
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    xs = np.atleast_1d(arr).astype(float).ravel()
    if np.any(~(xs > 0)) or not np.all(np.isfinite(xs)):
        raise DomainError("bessel_k requires finite x > 0")
    out = np.empty_like(xs)
    chunk = 256
    for lo in range(0, xs.size, chunk):
        part = xs[lo:lo + chunk]
        step, t = _k_grid(order, part)
        logs = _k_log_integrand(order, part[:, None], t[None, :])
        top = np.max(logs, axis=1)
        weights = np.ones_like(t)
        weights[0] = 0.5
        total = np.sum(weights[None, :] * np.exp(logs - top[:, None]), axis=1) * step
        log_val = top + np.log(total)
        if np.any(log_val > _LOG_MAX):
            raise OverflowError(f"K_{order}(x) exceeds the double range for x = {float(np.min(part))}")
        out[lo:lo + chunk] = np.exp(log_val)
    return float(out[0]) if scalar else out.reshape(arr.shape)


# ---------------------------------------------------------------------------
# confluent hypergeometric functions

_KUMMER_ASYMPTOTIC_MIN = 60.0


def _kummer_series(a, b, z, max_terms=20000):
    term = 1.0
    total = 1.0
    for k in range(max_terms):
        term *= (a + k) * z / ((b + k) * (k + 1.0))
        total += term
        if term == 0.0 or (abs(term) < _EPS * abs(total) and k > abs(z)):
            return total
    raise NonConvergenceError(f"1F1 series did not converge at a={a}, b={b}, z={z}")


def _kummer_asymptotic(a, b, z):
    total = 1.0
    term = 1.0
    last = math.inf
    for k in range(200):
        term *= (b - a + k) * (1.0 - a + k) / ((k + 1.0) * z)
        if abs(term) >= last or abs(term) < _EPS * abs(total):
            break
        total += term
        last = abs(term)
    log_mag = z + (a - b) * math.log(z) + math.lgamma(b) - math.lgamma(a)
    if log_mag > _LOG_MAX:
        raise OverflowError(f"1F1({a}, {b}, {z}) exceeds the double range")
    sign = math.copysign(1.0, math.gamma(b)) * math.copysign(1.0, math.gamma(a)) if b < 171 and a < 171 else 1.0
    return sign * math.exp(log_mag) * total


def kummer_1f1(a, b, z):
    """Kummer's confluent hypergeometric function 1F1(a; b; z)."""
    a = float(a)
    b = float(b)
    z = float(z)
    if _is_nonpositive_integer(b):
        raise PoleError(f"1F1 has a pole at b = {b}")
    if z == 0:
        return 1.0
    if _is_nonpositive_integer(a):
        return _kummer_series(a, b, z)
    if z < 0:
        # Kummer transformation keeps the series terms of one sign
        if _is_nonpositive_integer(b - a):
            return math.exp(z) * _kummer_series(b - a, b, -z)
        return math.exp(z) * kummer_1f1(b - a, b, -z)
    if z > _KUMMER_ASYMPTOTIC_MIN and not _is_nonpositive_integer(b - a):
        return _kummer_asymptotic(a, b, z)
    return _kummer_series(a, b, z)


def _gamma_affine(constant, sign, b):
    """Gamma(constant + sign * b) for integer constant, accurate next to a pole.

    Rounding constant + sign * b loses the distance to the pole, so the
    argument is shifted above 1/2 and every factor is formed from b directly.
    """
    x = constant + sign * b
    if x > 0.5:
        return math.gamma(x)
    shifts = int(math.ceil(0.5 - x))
    denom = 1.0
    for j in range(shifts):
        denom *= (constant + j) + sign * b
    return math.gamma((constant + shifts) + sign * b) / denom


def _psi_two_term(a, b, z):
    first = _gamma_affine(1.0, -1.0, b) * rgamma(a - b + 1.0) * kummer_1f1(a, b, z)
    second = _gamma_affine(-1.0, 1.0, b) * rgamma(a) * z ** (1.0 - b) * kummer_1f1(a - b + 1.0, 2.0 - b, z)
    return first + second


def _psi_integral(a, b, z, step=1.0 / 64.0):
    """Psi(a, b; z) = (1/Gamma(a)) int_0^inf exp(-z t) t^(a-1) (1+t)^(b-a-1) dt, a > 0,
    by the exp-sinh substitution t = exp(pi/2 sinh s)."""
    half_pi = 0.5 * math.pi
    s_left = -math.asinh((100.0 / min(a, 1.0)) / half_pi) - 0.5
    t_right = (120.0 + 10.0 * (a + abs(b))) / z
    s_right = math.asinh(math.log(max(t_right, 2.0)) / half_pi) + 0.5
    s = np.arange(math.floor(s_left / step), math.ceil(s_right / step) + 1) * step
    log_t = half_pi * np.sinh(s)
    t = np.exp(log_t)
    logs = -z * t + a * log_t + (b - a - 1.0) * np.log1p(t) + np.log(half_pi * np.cosh(s))
    top = float(np.max(logs))
    total = float(np.sum(np.exp(logs - top))) * step
    log_val = top + math.log(total) - math.lgamma(a)
    if log_val > _LOG_MAX:
        raise OverflowError(f"Psi({a}, {b}; {z}) exceeds the double range")
    return math.exp(log_val)


_PSI_INTEGRAL_MIN_ARG = 2.0


def tricomi_psi(a, b, z):
    """Tricomi's confluent hypergeometric function Psi(a, b; z) for z > 0.

    Uses the two-term combination of 1F1 functions for z <= 2. When b lies
    within PSI_INTEGER_GUARD of an integer on that path, the value is the
    average of evaluations at b +/- PSI_LIMIT_STEP and a NearSingularWarning
    is issued. For z > 2 and a > 0 the integral representation is used,
    which is regular in b. The reductions b = a + 1, b = a and a = 1 are exact.
    """
    a = float(a)
    b = float(b)
    z = float(z)
    if not z > 0:
        raise DomainError(f"tricomi_psi requires z > 0, got {z}")
    if b == a + 1:
        return z ** (-a)
    if b == a:
        # Psi(a, a; z) = exp(z) Gamma(1 - a, z), regular for integer b
        return upper_incomplete_gamma_scaled(1.0 - a, z)
    if a == 1:
        # Kummer's relation maps Psi(1, b; z) onto the case above
        return z ** (1.0 - b) * upper_incomplete_gamma_scaled(b - 1.0, z)
    if a > 0 and z > _PSI_INTEGRAL_MIN_ARG:
        return _psi_integral(a, b, z)
    nearest = round(b)
    offset = b - nearest
    if abs(offset) < PSI_INTEGER_GUARD:
        warnings.warn(
            f"Psi({a}, {b}; {z}): b is within {PSI_INTEGER_GUARD} of an integer; "
            "value obtained by symmetric averaging",
            NearSingularWarning,
            stacklevel=2,
        )
        step = PSI_LIMIT_STEP
        if abs(abs(offset) - step) < 0.5 * step:
            step *= 2.0
        return 0.5 * (_psi_two_term(a, b + step, z) + _psi_two_term(a, b - step, z))
    return _psi_two_term(a, b, z)


def whittaker_w(kappa, order, z):
    """Whittaker's function W_{kappa,order}(z).

    Reduced to Tricomi's function:
    exp(-z/2) z^(order+1/2) Psi(order - kappa + 1/2, 1 + 2 order; z).
    """
    kappa = float(kappa)
    order = float(order)
    z = float(z)
    if not z > 0:
        raise DomainError(f"whittaker_w requires z > 0, got {z}")
    return math.exp(-0.5 * z) * z ** (order + 0.5) * tricomi_psi(order - kappa + 0.5, 1.0 + 2.0 * order, z)
