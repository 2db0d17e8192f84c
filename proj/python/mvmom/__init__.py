"""Exact mixed moments of a multivariate standard normal distribution.

Moments E[x1^m1 * ... * xk^mk] are computed in exact rational arithmetic.
Correlations may be left symbolic (results are polynomials in c12, c13, ...)
or pinned to rationals.  Three independent engines are available:

* ``wick``  -- sum over pairing types (the oracle),
* ``stein`` -- memoized reduction of one exponent at a time,
* ``pure``  -- a discovered single-direction recurrence, evaluated with a
  constant-size window (fastest for large exponents on a numeric covariance).
"""

from fractions import Fraction

from ._core import (
    NotFoundError,
    count_marriages,
    discover,
    marriage_polynomial,
    moment,
    moment_info,
    poly_coeff,
    poly_eval,
    univariate_moment,
)

__all__ = [
    "NotFoundError",
    "count_marriages",
    "discover",
    "marriage_polynomial",
    "moment",
    "moment_info",
    "moment_fraction",
    "poly_coeff",
    "poly_eval",
    "univariate_moment",
]


def moment_fraction(m, cov, engine="pure"):
    """Moment with a fully numeric covariance, as a ``fractions.Fraction``.

    ``cov`` lists the correlations in pair order (c12, c13, ..., c23, ...);
    entries may be strings like ``"1/2"``, integers, or ``Fraction``s.
    """
    cov = [str(Fraction(str(e))) for e in cov]
    return Fraction(moment(m, cov, engine))
