"""Image-moment recovery from projection moments at the known views.

With projections available at at least ``order + 1`` distinct angles,
the image moments up to that order are determined by the measured
projection moments.  The solve proceeds order by order: the total-order
``k`` block enters the ``k``-th projection moment linearly with
coefficients ``mu_nm(k, theta)``, on top of a contribution from already
recovered lower orders.  Peeling the lower orders and least-squares
solving the ``(k+1)``-unknown system over all known views is far better
conditioned than one stacked solve over every unknown at once, and uses
every view rather than interpolating at exactly ``k + 1`` of them.
"""

from dataclasses import dataclass

import numpy as np

from .moments import (
    MomentSet,
    block_offset,
    build_T_stack,
    check_basis,
    projection_moments,
    stacked_length,
)
from .radon import Sinogram

#: Per-order condition number above which recovery refuses to continue.
CONDITION_LIMIT = 1e12


class RecoveryError(Exception):
    """Base class for failures while solving for image moments."""


class InsufficientViewsError(RecoveryError):
    """Fewer known views than unknown moment orders."""


class ConditioningError(RecoveryError):
    """A per-order system was too ill-conditioned to trust."""

    def __init__(self, order: int, condition: float):
        self.order = order
        self.condition = condition
        super().__init__(
            f"order-{order} system condition {condition:.3e} exceeds "
            f"{CONDITION_LIMIT:.0e}; recovery aborted"
        )


@dataclass
class RecoveryReport:
    """Recovered moments plus per-order solve diagnostics."""

    moments: MomentSet
    condition_numbers: np.ndarray
    residual_norms: np.ndarray


def _lstsq(a: np.ndarray, rhs: np.ndarray, ridge: float) -> np.ndarray:
    if ridge > 0.0:
        # Augmented system keeps the solve inside one orthogonal
        # factorization instead of forming normal equations.
        k = a.shape[1]
        a = np.vstack([a, np.sqrt(ridge) * np.eye(k)])
        rhs = np.concatenate([rhs, np.zeros(k)])
    solution, _, _, _ = np.linalg.lstsq(a, rhs, rcond=None)
    return solution


def recover_from_projection_moments(
    thetas,
    measured: np.ndarray,
    order: int,
    basis: str = "legendre",
    ridge: float = 0.0,
    stacked: bool = False,
) -> RecoveryReport:
    """Solve for image moments given projection moments per view.

    Parameters
    ----------
    thetas : array_like
        View angles in radians, one per row of ``measured``.
    measured : ndarray, shape (n_views, order+1)
        ``measured[i, p]`` is the order-``p`` projection moment at view
        ``thetas[i]``.
    order : int
        Maximum total moment order to recover; needs at least
        ``order + 1`` views.
    basis : {"legendre", "geometric"}
        Basis in which the projection moments were taken; also the basis
        of the recovered set.
    ridge : float
        Optional Tikhonov parameter for noisy data; 0 disables it and
        enables the conditioning abort.
    stacked : bool
        Solve one global system over all unknowns instead of the
        per-order sequence.  Kept for comparison; the reported condition
        number is then that of the stacked matrix, repeated per order,
        while residual norms are still evaluated block-wise.

    Returns
    -------
    RecoveryReport

    Raises
    ------
    InsufficientViewsError
        Fewer than ``order + 1`` views.
    ConditioningError
        Some per-order matrix has condition number above 1e12 (only
        enforced when ``ridge == 0``).
    """
    check_basis(basis)
    if order < 0:
        raise ValueError("order must be nonnegative")
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    measured = np.asarray(measured, dtype=float)
    if measured.shape != (len(thetas), order + 1):
        raise ValueError(
            f"measured moments must have shape {(len(thetas), order + 1)}, "
            f"got {measured.shape}"
        )
    if len(thetas) < order + 1:
        raise InsufficientViewsError(
            f"need at least {order + 1} known views to recover order "
            f"{order}, have {len(thetas)}"
        )
    t_stack = build_T_stack(thetas, order, basis)

    psi = np.zeros(stacked_length(order))
    conditions = np.empty(order + 1)
    residuals = np.empty(order + 1)

    if stacked:
        big = t_stack.reshape(len(thetas) * (order + 1), -1)
        cond = np.linalg.cond(big)
        if ridge == 0.0 and cond > CONDITION_LIMIT:
            raise ConditioningError(order, cond)
        psi = _lstsq(big, measured.reshape(-1), ridge)
        conditions[:] = cond
        for k in range(order + 1):
            sl = slice(block_offset(k), block_offset(k) + k + 1)
            rhs = measured[:, k] - t_stack[:, k, : block_offset(k)] @ psi[: block_offset(k)]
            residuals[k] = np.linalg.norm(t_stack[:, k, sl] @ psi[sl] - rhs)
        moments = MomentSet.from_stacked(order, basis, psi)
        return RecoveryReport(moments, conditions, residuals)

    for k in range(order + 1):
        off = block_offset(k)
        a = t_stack[:, k, off : off + k + 1]
        rhs = measured[:, k] - t_stack[:, k, :off] @ psi[:off]
        cond = np.linalg.cond(a)
        if ridge == 0.0 and cond > CONDITION_LIMIT:
            raise ConditioningError(k, cond)
        block = _lstsq(a, rhs, ridge)
        psi[off : off + k + 1] = block
        conditions[k] = cond
        residuals[k] = np.linalg.norm(a @ block - rhs)

    moments = MomentSet.from_stacked(order, basis, psi)
    return RecoveryReport(moments, conditions, residuals)


def recover_moments(
    sino: Sinogram,
    order: int,
    basis: str = "legendre",
    ridge: float = 0.0,
    stacked: bool = False,
) -> RecoveryReport:
    """Recover image moments from the known views of a sinogram.

    Takes the projection moments of every known row (midpoint rule, in
    the requested basis) and delegates to
    :func:`recover_from_projection_moments`; see there for the solver
    behavior, diagnostics, and failure modes.
    """
    known = np.flatnonzero(sino.known_mask)
    if len(known) < order + 1:
        raise InsufficientViewsError(
            f"need at least {order + 1} known views to recover order "
            f"{order}, have {len(known)}"
        )
    thetas = sino.geometry.angles_rad[known]
    measured = np.empty((len(known), order + 1))
    for row_idx, view in enumerate(known):
        measured[row_idx] = projection_moments(
            sino.data[view], sino.geometry, order, basis, theta=thetas[row_idx]
        ).values
    return recover_from_projection_moments(
        thetas, measured, order, basis, ridge=ridge, stacked=stacked
    )
