"""Orthonormal Legendre polynomial basis on [-1, 1].

The basis is fixed throughout the package: ``P_p`` denotes the classical
Legendre polynomial scaled by ``sqrt((2p+1)/2)`` so that the family is
orthonormal in L2([-1, 1]).  Two lower-triangular matrices describe the
change of basis against monomials: ``c[p, r]`` is the coefficient of
``t**r`` in ``P_p(t)``, and ``d = c^{-1}`` expands ``t**k`` in the
polynomial basis.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

logger = logging.getLogger(__name__)

#: Largest supported polynomial order.  Rows of the coefficient matrix
#: grow roughly like binom(2p, p), which stops being reliably
#: representable in float64 well before p = 100; 60 leaves a wide
#: safety margin over anything the recovery pipeline uses (order <= 25).
MAX_ORDER = 60


@dataclass(frozen=True)
class CoeffMatrices:
    """Monomial <-> orthonormal-Legendre change-of-basis matrices.

    Attributes
    ----------
    p_max : int
        Largest polynomial order covered by the matrices.
    c : ndarray, shape (p_max+1, p_max+1)
        Lower triangular; ``c[p, r]`` multiplies ``t**r`` in ``P_p(t)``.
    d : ndarray, shape (p_max+1, p_max+1)
        Inverse of ``c``; ``t**k = sum_r d[k, r] P_r(t)``.

    Entries with odd ``p - r`` vanish (each polynomial has fixed parity),
    and every diagonal entry of ``c`` is nonzero, which is what makes the
    closed-form inverse possible.  Instances are immutable and safe to
    share between threads.
    """

    p_max: int
    c: np.ndarray
    d: np.ndarray


def _check_order(p_max: int) -> None:
    if not 0 <= p_max <= MAX_ORDER:
        raise ValueError(
            f"polynomial order must be in [0, {MAX_ORDER}], got {p_max}"
        )


def build_legendre_coeffs(p_max: int) -> np.ndarray:
    """Monomial coefficients of the orthonormal Legendre polynomials.

    Returns the lower-triangular matrix ``c`` with ``c[p, r]`` the
    coefficient of ``t**r`` in ``P_p(t)``.  Entries are built by a
    multiplicative recurrence along each row (diagonal seed, then steps
    of two down in ``r``) so no factorial of a large argument is ever
    formed explicitly.
    """
    _check_order(p_max)
    c = np.zeros((p_max + 1, p_max + 1))
    c[0, 0] = np.sqrt(0.5)
    for p in range(1, p_max + 1):
        c[p, p] = c[p - 1, p - 1] * np.sqrt((2 * p + 1) / (2 * p - 1)) * (2 * p - 1) / p
        for r in range(p, 1, -2):
            c[p, r - 2] = -c[p, r] * r * (r - 1) / ((p + r - 1) * (p - r + 2))
    return c


def build_inverse_coeffs(p_max: int) -> np.ndarray:
    """Closed-form inverse of :func:`build_legendre_coeffs`.

    Returns the lower-triangular matrix ``d`` with
    ``t**k = sum_r d[k, r] P_r(t)``.  Columns are filled by a
    multiplicative recurrence from the diagonal seed ``d[r, r]``,
    stepping ``k -> k + 2``; parity zeros are left untouched.
    """
    _check_order(p_max)
    d = np.zeros((p_max + 1, p_max + 1))
    d[0, 0] = np.sqrt(2.0)
    for r in range(1, p_max + 1):
        d[r, r] = d[r - 1, r - 1] * np.sqrt((2 * r - 1) / (2 * r + 1)) * r / (2 * r - 1)
    for r in range(p_max + 1):
        for k in range(r, p_max - 1, 2):
            d[k + 2, r] = d[k, r] * (k + 1) * (k + 2) / ((k - r + 2) * (k + r + 3))
    return d


@lru_cache(maxsize=None)
def legendre_coeffs(p_max: int) -> CoeffMatrices:
    """Build (and cache) both coefficient matrices up to ``p_max``."""
    c = build_legendre_coeffs(p_max)
    d = build_inverse_coeffs(p_max)
    c.setflags(write=False)
    d.setflags(write=False)
    return CoeffMatrices(p_max, c, d)


def rational_parts(p_max: int):
    """Exact rational factors of the coefficient matrices.

    Splitting off the square-root normalizations,
    ``c[p, r] = sqrt((2p+1)/2) * rc[p][r]`` and
    ``d[k, r] = sqrt(2/(2r+1)) * rd[k][r]`` with ``rc``/``rd`` exact
    rationals.  In this form the inverse identity is free of radicals,
    ``sum_r rc[k][r] * rd[r][l] = delta_kl`` exactly, so the identity
    defect of the recurrences can be evaluated with zero rounding.
    Entries with odd index difference are ``Fraction(0)``.

    Returns
    -------
    (rc, rd) : pair of (p_max+1) x (p_max+1) nested lists of Fraction.
    """
    _check_order(p_max)
    rc = [[Fraction(0)] * (p_max + 1) for _ in range(p_max + 1)]
    rd = [[Fraction(0)] * (p_max + 1) for _ in range(p_max + 1)]
    rc[0][0] = Fraction(1)
    diag = Fraction(1)
    for p in range(1, p_max + 1):
        diag = diag * Fraction(2 * p - 1, p)
        rc[p][p] = diag
        for r in range(p, 1, -2):
            rc[p][r - 2] = -rc[p][r] * Fraction(r * (r - 1), (p + r - 1) * (p - r + 2))
    rd[0][0] = Fraction(1)
    for r in range(1, p_max + 1):
        rd[r][r] = rd[r - 1][r - 1] * Fraction(r, 2 * r - 1)
    for r in range(p_max + 1):
        for k in range(r, p_max - 1, 2):
            rd[k + 2][r] = rd[k][r] * Fraction((k + 1) * (k + 2), (k - r + 2) * (k + r + 3))
    return rc, rd


def eval_basis(coeffs: CoeffMatrices, t) -> np.ndarray:
    """Evaluate ``P_0 .. P_{p_max}`` at ``t``.

    Parameters
    ----------
    coeffs : CoeffMatrices
        Fixes the maximum order.
    t : float or ndarray
        Evaluation points, normally in [-1, 1].  Points outside the
        interval are evaluated anyway (the recurrence extrapolates
        cleanly) but are flagged at debug log level.

    Returns
    -------
    ndarray, shape (p_max+1,) + shape(t)
        Component ``p`` holds ``P_p(t)``.

    The three-term recurrence in the normalized basis is used instead of
    Horner evaluation of the monomial coefficients; the latter loses
    digits above order ~15 while the recurrence is stable at any
    supported order.
    """
    t = np.asarray(t, dtype=float)
    if logger.isEnabledFor(logging.DEBUG) and np.any(np.abs(t) > 1.0):
        logger.debug("eval_basis called with |t| > 1: extrapolating")
    out = np.empty((coeffs.p_max + 1,) + t.shape)
    out[0] = np.sqrt(0.5)
    if coeffs.p_max >= 1:
        out[1] = np.sqrt(1.5) * t
    for p in range(1, coeffs.p_max):
        a = np.sqrt((2 * p + 1) * (2 * p + 3)) / (p + 1)
        b = (p / (p + 1)) * np.sqrt((2 * p + 3) / (2 * p - 1))
        out[p + 1] = a * t * out[p] - b * out[p - 1]
    return out
