"""Named test functions with decay metadata and known closed-form transforms.

Every entry produces a :class:`CatalogFunction`. The convergence metadata
(``small_power``, ``large_power``) describes |f(x)| ~ x^small_power as
x -> 0 and |f(x)| ~ x^large_power as x -> inf; ``large_power`` is ``None``
for Gaussian-type decay, which dominates every power.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Optional

import numpy as np

from .errors import ConvergenceViolation, DomainError
from .specfun import (
    bessel_j,
    bessel_k,
    beta,
    exp_integral_e1,
    gamma,
    rgamma,
    tricomi_psi,
    whittaker_w,
)
from .transforms import GrowthClass, RealFunction, Singularity


@dataclass(frozen=True)
class CatalogFunction:
    name: str
    params: Dict[str, float]
    realization: RealFunction
    formula: str
    small_power: float
    large_power: Optional[float]
    closed_l2: Optional[Callable[[float], float]] = field(default=None, compare=False)
    closed_pnu2: Optional[Callable[[float, float], float]] = field(default=None, compare=False)

    @property
    def oscillatory(self):
        return self.realization.is_oscillatory

    def absolute_growth_exponent(self):
        """Exponent alpha with int_0^X x |f(x)| dx = O(X^alpha); 0 when bounded."""
        if self.large_power is None or self.large_power < -2:
            return 0.0
        return self.large_power + 2.0

    def label(self):
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.name}({inner})"

    def rescaled(self, factor):
        """The function x -> f(factor * x) with closed forms carried over."""
        factor = float(factor)
        if not factor > 0:
            raise DomainError("rescaling factor must be positive")
        base = self.realization

        def func(x):
            return base(factor * x)

        envelope = None if base.envelope is None else (lambda x: base.envelope(factor * x))
        cos_env = None if base.cosine_envelope is None else (lambda x: base.cosine_envelope(factor * x))
        realization = replace(
            base,
            func=func,
            name=f"{base.name}@{_fmt(factor)}",
            decay_scale=None if base.decay_scale is None else base.decay_scale / factor,
            envelope=envelope,
            freq=None if base.freq is None else base.freq * factor,
            cosine_envelope=cos_env,
        )
        closed_l2 = None
        closed_pnu2 = None
        if self.closed_l2 is not None:
            closed_l2 = lambda y: self.closed_l2(y / factor) / factor ** 2
        if self.closed_pnu2 is not None:
            closed_pnu2 = lambda nu, y: self.closed_pnu2(nu, factor * y) * factor ** (2 * nu - 2)
        return replace(self, name=f"{self.name}@{_fmt(factor)}", realization=realization,
                       closed_l2=closed_l2, closed_pnu2=closed_pnu2)


def _fmt(v):
    return f"{v:g}"


def _vector(x):
    return np.asarray(x, dtype=float)


def one():
    return CatalogFunction(
        "one", {}, RealFunction(lambda x: np.ones_like(_vector(x)), GrowthClass.BOUNDED, name="one"),
        "1", 0.0, 0.0,
        closed_l2=lambda y: 0.5 / (y * y),
        closed_pnu2=_pnu2_one,
    )


def _pnu2_one(nu, y):
    if not nu > 1:
        raise ConvergenceViolation("P_(nu,2){1; y} needs nu > 1")
    return y ** (2 - 2 * nu) / (2 * (nu - 1))


def power_gauss(mu=0.0, a=1.0):
    """x^(2 mu) exp(-a^2 x^2); mu = 0, a = 1 is the plain Gaussian."""
    mu = float(mu)
    a = float(a)
    if not mu > -1 or not a > 0:
        raise DomainError("power_gauss needs mu > -1 and a > 0")
    power = 2 * mu
    realization = RealFunction(
        lambda x: _vector(x) ** power * np.exp(-(a * _vector(x)) ** 2),
        GrowthClass.GAUSSIAN,
        Singularity.INTEGRABLE if power < 0 else Singularity.NONE,
        name=f"x^{_fmt(power)} exp(-{_fmt(a * a)} x^2)",
        decay_scale=1.0 / a,
    )

    def closed_l2(y):
        return gamma(mu + 1) / (2 * (y * y + a * a) ** (mu + 1))

    def closed_pnu2(nu, y):
        return gamma(mu + 1) / 2 * a ** (2 * nu - 2 * mu - 2) * tricomi_psi(nu, nu - mu, (a * y) ** 2)

    name = "gauss" if mu == 0 and a == 1 else "power_gauss"
    params = {} if name == "gauss" else {"mu": mu, "a": a}
    return CatalogFunction(name, params, realization, f"x^(2*{_fmt(mu)}) exp(-{_fmt(a)}^2 x^2)",
                           power, None, closed_l2, closed_pnu2)


def gauss(a=1.0):
    return power_gauss(0.0, a) if a == 1 else replace(power_gauss(0.0, a), name="gauss", params={"a": float(a)})


def besselj(mu=0.0, z=1.0):
    """x^mu J_mu(z x)."""
    mu = float(mu)
    z = float(z)
    if not mu > -1 or not z > 0:
        raise DomainError("besselj needs mu > -1 and z > 0")
    realization = RealFunction.oscillatory(
        lambda x: _vector(x) ** mu, mu, z, name=f"x^{_fmt(mu)} J_{_fmt(mu)}({_fmt(z)} x)",
        decay_power=mu - 0.5,
    )

    def closed_l2(y):
        return z ** mu / 2 ** (mu + 1) * y ** (-2 * mu - 2) * math.exp(-z * z / (4 * y * y))

    def closed_pnu2(nu, y):
        return rgamma(nu) * (z / 2) ** (nu - 1) * y ** (mu - nu + 1) * float(bessel_k(nu - mu - 1, z * y))

    return CatalogFunction("besselj", {"mu": mu, "z": z}, realization, f"x^{_fmt(mu)} J_{_fmt(mu)}({_fmt(z)} x)",
                           2 * mu, mu - 0.5, closed_l2, closed_pnu2)


def cos_over_x(a=1.0):
    """cos(a x) / x, stored as an envelope against J_(-1/2)(a x)."""
    a = float(a)
    if not a > 0:
        raise DomainError("cos_over_x needs a > 0")
    norm = math.sqrt(math.pi * a / 2)
    realization = RealFunction(
        lambda x: np.cos(a * _vector(x)) / _vector(x),
        GrowthClass.OSCILLATORY,
        Singularity.NONE,
        name=f"cos({_fmt(a)} x)/x",
        decay_power=-1.0,
        envelope=lambda x: norm / np.sqrt(_vector(x)),
        bessel_order=-0.5,
        freq=a,
        cosine_envelope=lambda x: 1.0 / _vector(x),
    )

    def closed_l2(y):
        return math.sqrt(math.pi) / (2 * y) * math.exp(-a * a / (4 * y * y))

    def closed_pnu2(nu, y):
        return (math.sqrt(math.pi) * rgamma(nu) * (a / (2 * y)) ** (nu - 0.5)
                * float(bessel_k(nu - 0.5, a * y)))

    return CatalogFunction("cos_over_x", {"a": a}, realization, f"cos({_fmt(a)} x)/x", -1.0, -1.0,
                           closed_l2, closed_pnu2)


def power(mu=1.0):
    """x^(2 mu - 2)."""
    mu = float(mu)
    if not mu > 0:
        raise DomainError("power needs mu > 0")
    exponent = 2 * mu - 2
    realization = RealFunction(
        lambda x: _vector(x) ** exponent, GrowthClass.ALGEBRAIC,
        Singularity.INTEGRABLE if exponent < 0 else Singularity.NONE,
        name=f"x^{_fmt(exponent)}", decay_power=exponent,
    )

    def closed_l2(y):
        return gamma(mu) / (2 * y ** (2 * mu))

    def closed_pnu2(nu, y):
        if not nu > mu:
            raise ConvergenceViolation("P_(nu,2){x^(2mu-2)} needs nu > mu")
        return 0.5 * y ** (2 * mu - 2 * nu) * beta(mu, nu - mu)

    return CatalogFunction("power", {"mu": mu}, realization, f"x^(2*{_fmt(mu)}-2)", exponent, exponent,
                           closed_l2, closed_pnu2)


def e1_inverse_square(a=1.0):
    """E1(a^2 / x^2); vanishes faster than any power at 0, grows like log x."""
    a = float(a)
    if not a > 0:
        raise DomainError("e1_inverse_square needs a > 0")
    realization = RealFunction(
        lambda x: exp_integral_e1((a / _vector(x)) ** 2), GrowthClass.ALGEBRAIC,
        name=f"E1({_fmt(a * a)}/x^2)", decay_power=0.0,
    )

    def closed_l2(y):
        return float(bessel_k(0, 2 * a * y)) / (y * y)

    def closed_pnu2(nu, y):
        if not nu > 1:
            raise ConvergenceViolation("P_(nu,2){E1(a^2/x^2)} needs nu > 1")
        ratio = (a / y) ** 2
        return (gamma(nu - 1) / (2 * a * (nu - 1)) * y ** (3 - 2 * nu) * math.exp(ratio / 2)
                * whittaker_w(1.5 - nu, 0.0, ratio))

    # a tiny positive power (the log growth) keeps the metadata check strict
    return CatalogFunction("e1_inverse_square", {"a": a}, realization, f"E1({_fmt(a)}^2/x^2)",
                           math.inf, 1e-9, closed_l2, closed_pnu2)


FACTORIES = {
    "one": (one, ()),
    "gauss": (gauss, ("a",)),
    "power_gauss": (power_gauss, ("mu", "a")),
    "besselj": (besselj, ("mu", "z")),
    "cos_over_x": (cos_over_x, ("a",)),
    "power": (power, ("mu",)),
    "e1_inverse_square": (e1_inverse_square, ("a",)),
}


def function_names():
    return list(FACTORIES)


def make_function(name, **params):
    """Build a catalog function by name; unknown parameters raise DomainError."""
    try:
        factory, allowed = FACTORIES[name]
    except KeyError:
        raise DomainError(f"unknown function {name!r}; catalog: {', '.join(FACTORIES)}") from None
    extra = sorted(set(k for k, v in params.items() if v is not None) - set(allowed))
    if extra:
        raise DomainError(f"function {name!r} takes parameters {list(allowed)}, got {extra}")
    return factory(**{k: v for k, v in params.items() if v is not None and k in allowed})


def default_pair_functions():
    """The five functions of the default Parseval pair grid."""
    return [
        gauss(),
        power_gauss(1.0, 2.0),
        power_gauss(0.25, 1.0),
        besselj(0.0, 1.0),
        cos_over_x(1.0),
    ]
