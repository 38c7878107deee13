"""Moment algebra connecting images, projections, and view angles.

Three ingredients, all built on the orthonormal Legendre basis of
:mod:`momentct.legendre` (with a monomial "geometric" mode kept for
comparison experiments):

* image moments ``lambda_nm`` -- inner products of the image with the
  separable basis ``P_n(x) P_m(y)``;
* projection moments ``L_p(theta)`` -- inner products of one projection
  with ``P_p(s)``;
* coupling coefficients ``mu_nm(p, theta)`` expressing each projection
  moment as a linear combination of image moments of the same and lower
  total order, assembled into the per-view matrix ``T``.

The Legendre coupling coefficients are evaluated through the ``v``
lattice: for fixed ``(p, n, m)`` the trigonometric weights live on an
even ``(q, r)`` grid seeded by a single closed-form value (computed in
the log domain) and filled by two exact rational recurrences.  One seed
per ``(p, n, m)`` bounds error accumulation.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .legendre import eval_basis, legendre_coeffs
from .phantom import pixel_centers
from .radon import SinogramGeometry

BASES = ("legendre", "geometric")

#: Largest image-moment order per basis.  The monomial basis turns
#: numerically useless earlier, hence the lower cap.
IMAGE_MOMENT_CAPS = {"legendre": 25, "geometric": 20}


def check_basis(basis: str) -> str:
    if basis not in BASES:
        raise ValueError(f"basis must be one of {BASES}, got {basis!r}")
    return basis


def stacked_length(order: int) -> int:
    """Number of moments with total order at most ``order``."""
    return (order + 1) * (order + 2) // 2


def block_offset(k: int) -> int:
    """Start of the total-order-``k`` block in the stacked layout."""
    return k * (k + 1) // 2


@dataclass
class MomentSet:
    """Triangular table of image moments up to a maximum total order.

    ``values[n, m]`` holds ``lambda_nm`` for ``n + m <= order``; entries
    beyond the triangle are identically zero.
    """

    order: int
    basis: str
    values: np.ndarray

    def __post_init__(self):
        check_basis(self.basis)
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        vals = np.array(self.values, dtype=float)
        expected = (self.order + 1, self.order + 1)
        if vals.shape != expected:
            raise ValueError(f"values shape {vals.shape} != {expected}")
        n_idx, m_idx = np.indices(expected)
        vals[n_idx + m_idx > self.order] = 0.0
        if not np.all(np.isfinite(vals)):
            raise ValueError("moment values must be finite")
        self.values = vals

    def value(self, n: int, m: int) -> float:
        return float(self.values[n, m])

    def stacked(self) -> np.ndarray:
        """Flatten into the block layout: for each total order ``k`` the
        entries ``lambda_{k,0}, lambda_{k-1,1}, ..., lambda_{0,k}``."""
        psi = np.empty(stacked_length(self.order))
        for k in range(self.order + 1):
            off = block_offset(k)
            for j in range(k + 1):
                psi[off + j] = self.values[k - j, j]
        return psi

    @classmethod
    def from_stacked(cls, order: int, basis: str, psi: np.ndarray) -> "MomentSet":
        psi = np.asarray(psi, dtype=float)
        if psi.shape != (stacked_length(order),):
            raise ValueError(
                f"stacked vector must have length {stacked_length(order)}"
            )
        vals = np.zeros((order + 1, order + 1))
        for k in range(order + 1):
            off = block_offset(k)
            for j in range(k + 1):
                vals[k - j, j] = psi[off + j]
        return cls(order, basis, vals)

    @classmethod
    def zero(cls, order: int, basis: str = "legendre") -> "MomentSet":
        return cls(order, basis, np.zeros((order + 1, order + 1)))


@dataclass
class ProjectionMomentVector:
    """Moments ``L_0 .. L_order`` of a single projection at view ``theta``."""

    theta: float
    order: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.order + 1,):
            raise ValueError(f"values must have length {self.order + 1}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("projection moments must be finite")
        self.values = vals


def basis_values(order: int, t, basis: str = "legendre") -> np.ndarray:
    """Rows ``p = 0..order`` of the 1-D basis evaluated at ``t``."""
    check_basis(basis)
    t = np.asarray(t, dtype=float)
    if basis == "legendre":
        return eval_basis(legendre_coeffs(order), t)
    powers = np.arange(order + 1).reshape((order + 1,) + (1,) * t.ndim)
    return t[None, ...] ** powers


def image_moments(image: np.ndarray, order: int, basis: str = "legendre") -> MomentSet:
    """Moments of a square raster spanning ``[-1, 1]^2``, by midpoint rule.

    ``lambda_nm = (2/n)^2 sum_ij P_n(x_i) P_m(y_j) f[i, j]`` with the
    pixel-center abscissas of :func:`momentct.phantom.pixel_centers`;
    the geometric basis substitutes monomials.
    """
    check_basis(basis)
    cap = IMAGE_MOMENT_CAPS[basis]
    if not 0 <= order <= cap:
        raise ValueError(
            f"order cap exceeded: {basis} image moments support order <= {cap}"
        )
    image = np.asarray(image, dtype=float)
    if image.ndim != 2 or image.shape[0] != image.shape[1]:
        raise ValueError(f"image must be square, got shape {image.shape}")
    n = image.shape[0]
    b = basis_values(order, pixel_centers(n), basis)
    weight = (2.0 / n) ** 2
    vals = weight * (b @ image @ b.T)
    return MomentSet(order, basis, vals)


def projection_moments(
    row: np.ndarray,
    geometry: SinogramGeometry,
    order: int,
    basis: str = "legendre",
    theta: float = math.nan,
) -> ProjectionMomentVector:
    """Moments of one sampled projection, by midpoint rule over ``s``."""
    check_basis(basis)
    row = np.asarray(row, dtype=float)
    if row.shape != (geometry.n_rays,):
        raise ValueError(f"row must have length {geometry.n_rays}")
    b = basis_values(order, geometry.ray_positions, basis)
    values = (2.0 / geometry.n_rays) * (b @ row)
    return ProjectionMomentVector(theta, order, values)


@lru_cache(maxsize=None)
def _v_lattice(p: int, n: int, m: int) -> tuple:
    """Nonzero ``v`` values for fixed ``(p, n, m)`` as ``(q, r, v)`` triples.

    The lattice covers even ``q in [0, p-(n+m)]`` and even ``r in [0, q]``.
    When ``p - (n + m)`` is odd every entry vanishes (parity of the
    coefficient matrices) and the lattice is empty.  The ``(0, 0)`` seed
    is evaluated in the log domain; the two rational recurrences then
    fill the column ``r = 0`` across ``q`` and each row across ``r``.
    """
    span = p - (n + m)
    if span < 0 or span % 2 == 1:
        return ()
    half = span // 2
    log_v = (
        0.5
        * (
            math.log(2.0)
            + math.log(2 * p + 1)
            - math.log(2 * n + 1)
            - math.log(2 * m + 1)
        )
        - span * math.log(2.0)
        + math.lgamma(n + 1)
        + math.lgamma(m + 1)
        - math.lgamma(2 * n + 1)
        - math.lgamma(2 * m + 1)
        + math.lgamma(p + n + m + 1)
        - math.lgamma(half + 1)
        - math.lgamma((p + n + m) // 2 + 1)
    )
    seed = (-1.0 if half % 2 else 1.0) * math.exp(log_v)

    first_col = {0: seed}
    v = seed
    for q in range(0, span, 2):
        v = -v * (p + n + m + q + 1) * (p - n - m - q) / ((q + 2) * (2 * m + q + 3))
        first_col[q + 2] = v

    entries = []
    for q in range(0, span + 1, 2):
        v = first_col[q]
        entries.append((q, 0, v))
        # The r-step ratio is positive: the inverse-matrix entries and the
        # binomial are positive, so the sign of v is set by the single
        # Legendre coefficient factor, which does not depend on r.
        for r in range(0, q - 1, 2):
            v = v * (q - r) * (2 * m + q - r + 1) / ((r + 2) * (2 * n + r + 3))
            entries.append((q, r + 2, v))
    return tuple(entries)


def v_coefficient(p: int, n: int, m: int, q: int, r: int) -> float:
    """Trigonometric weight ``v_qr(p, n, m)`` of the Legendre coupling.

    Zero whenever ``q`` or ``r`` is odd; otherwise the recurrence-filled
    lattice value.  Index bounds (``n + m <= p``, ``q <= p - (n + m)``,
    ``r <= q``, all nonnegative) are enforced.
    """
    if min(p, n, m, q, r) < 0:
        raise ValueError("indices must be nonnegative")
    if n + m > p:
        raise ValueError(f"n + m = {n + m} exceeds p = {p}")
    if q > p - (n + m):
        raise ValueError(f"q = {q} exceeds p - (n + m) = {p - (n + m)}")
    if r > q:
        raise ValueError(f"r = {r} exceeds q = {q}")
    if q % 2 or r % 2:
        return 0.0
    for qq, rr, v in _v_lattice(p, n, m):
        if qq == q and rr == r:
            return v
    return 0.0


def mu_coefficient(p: int, n: int, m: int, theta: float, basis: str = "legendre") -> float:
    """Coupling coefficient ``mu_nm(p, theta)`` of one image moment.

    Legendre mode sums the ``v`` lattice against powers of cos/sin;
    geometric mode has the closed form ``binom(p, n) cos^n sin^m`` on
    the top block ``n + m = p`` and zero elsewhere.
    """
    check_basis(basis)
    if n + m > p:
        return 0.0
    ct, st = math.cos(theta), math.sin(theta)
    if basis == "geometric":
        if n + m != p:
            return 0.0
        return math.comb(p, n) * ct**n * st**m
    total = 0.0
    for q, r, v in _v_lattice(p, n, m):
        total += v * ct ** (n + r) * st ** (m + q - r)
    return total


def mu_coefficient_general(
    p: int, n: int, m: int, theta: float, c: np.ndarray, d: np.ndarray
) -> float:
    """Coupling coefficient for arbitrary change-of-basis matrices.

    Direct double sum over the full ``(q, r)`` grid, no parity
    shortcuts.  With the Legendre matrices it reproduces
    :func:`mu_coefficient`; with identity matrices it collapses to the
    geometric closed form.  Used as the slow reference path.
    """
    if n + m > p:
        return 0.0
    ct, st = math.cos(theta), math.sin(theta)
    total = 0.0
    for q in range(p - (n + m) + 1):
        for r in range(q + 1):
            total += (
                c[p, q + n + m]
                * d[n + r, n]
                * d[m + q - r, m]
                * math.comb(n + m + q, n + r)
                * ct ** (n + r)
                * st ** (m + q - r)
            )
    return total


def build_T_stack(thetas, order: int, basis: str = "legendre") -> np.ndarray:
    """View matrices for many angles at once.

    Returns an array of shape ``(len(thetas), order+1, ncols)`` with
    ``ncols = (order+1)(order+2)/2``; slice ``[i]`` is the matrix mapping
    the stacked moment vector to the projection moments at ``thetas[i]``.
    Row ``p`` holds ``mu_nm(p, theta)`` in stacked block order, zero for
    ``n + m > p``.
    """
    check_basis(basis)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    ncols = stacked_length(order)
    cos_pow = np.cos(thetas)[None, :] ** np.arange(order + 1)[:, None]
    sin_pow = np.sin(thetas)[None, :] ** np.arange(order + 1)[:, None]
    out = np.zeros((len(thetas), order + 1, ncols))
    for p in range(order + 1):
        for k in range(p + 1):
            if basis == "geometric" and k != p:
                continue
            off = block_offset(k)
            for j in range(k + 1):
                n, m = k - j, j
                if basis == "geometric":
                    out[:, p, off + j] = math.comb(p, n) * cos_pow[n] * sin_pow[m]
                    continue
                acc = None
                for q, r, v in _v_lattice(p, n, m):
                    term = v * cos_pow[n + r] * sin_pow[m + q - r]
                    acc = term if acc is None else acc + term
                if acc is not None:
                    out[:, p, off + j] = acc
    return out


def build_T(theta: float, order: int, basis: str = "legendre") -> np.ndarray:
    """View matrix of shape ``(order+1, (order+1)(order+2)/2)`` for one angle."""
    return build_T_stack([theta], order, basis)[0]


def predict_projection_moments(moments: MomentSet, theta: float) -> ProjectionMomentVector:
    """Projection moments a view at ``theta`` must have, given image moments."""
    t = build_T(theta, moments.order, moments.basis)
    return ProjectionMomentVector(theta, moments.order, t @ moments.stacked())


def geometric_to_legendre(ms: MomentSet) -> MomentSet:
    """Exact change of basis from monomial to orthonormal-Legendre moments.

    ``lambda_nm = sum_{r<=n, s<=m} c[n, r] c[m, s] g_rs``; the triangle
    is preserved because ``r + s <= n + m``.
    """
    if ms.basis != "geometric":
        raise ValueError("moment set is not in the geometric basis")
    c = legendre_coeffs(ms.order).c
    return MomentSet(ms.order, "legendre", c @ ms.values @ c.T)


def legendre_to_geometric(ms: MomentSet) -> MomentSet:
    """Inverse of :func:`geometric_to_legendre` (uses the ``d`` matrix)."""
    if ms.basis != "legendre":
        raise ValueError("moment set is not in the Legendre basis")
    d = legendre_coeffs(ms.order).d
    return MomentSet(ms.order, "geometric", d @ ms.values @ d.T)
