"""Factorization invariants of numerical and Puiseux monoids.

Atoms, factorizations and length sets with exact rational arithmetic,
constructive realization of finite sets of integers >= 2 as length sets,
and checkable certificates for the ascending chain condition on principal
ideals (ACCP).
"""

from .errors import (
    BudgetExhausted,
    ConstructionFailure,
    DomainViolation,
    NotInMonoid,
    UnsupportedConfiguration,
)
from .rationals import (
    PrimeStream,
    Rational,
    denominator_set,
    factorize,
    is_prime,
    next_prime_avoiding,
    rational,
    rational_str,
    vp,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "ConstructionFailure",
    "DomainViolation",
    "NotInMonoid",
    "UnsupportedConfiguration",
    "PrimeStream",
    "Rational",
    "denominator_set",
    "factorize",
    "is_prime",
    "next_prime_avoiding",
    "rational",
    "rational_str",
    "vp",
    "__version__",
]
