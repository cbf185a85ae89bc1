"""Integral transforms with Gaussian-type kernels, their identities and Parseval checks."""

from .errors import (
    AccelerationFailure,
    ConvergenceViolation,
    DomainError,
    NonConvergenceError,
    StripViolation,
)
from .functions import make_function
from .harness import run_suite
from .identities import evaluate_identity
from .quadrature import QuadConfig, QuadResult
from .transforms import TransformRequest, evaluate_transform

__version__ = "0.1.0"
