"""Sinogram completion: synthesize unknown views from recovered moments.

Two steps: recover image moments up to order ``M`` from the known views,
then evaluate the truncated projection expansion
``g(s) ~ sum_p L_p(theta) P_p(s)`` at every missing angle, where the
``L_p`` are predicted from the moments.  The expansion inverts the
projection-moment map only because the basis is orthonormal, so a
moment set recovered in the geometric mode is first converted exactly
to the Legendre basis.
"""

from dataclasses import dataclass

import numpy as np

from .legendre import eval_basis, legendre_coeffs
from .moments import MomentSet, build_T_stack, check_basis, geometric_to_legendre
from .radon import Sinogram, SinogramGeometry
from .recovery import RecoveryReport, recover_moments

BLEND_MODES = ("replace_unknown_only", "replace_all")


@dataclass(frozen=True)
class CompletionConfig:
    """Moment order, recovery basis, and which rows to overwrite."""

    order: int = 15
    basis: str = "legendre"
    blend: str = "replace_unknown_only"

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        check_basis(self.basis)
        if self.blend not in BLEND_MODES:
            raise ValueError(f"blend must be one of {BLEND_MODES}, got {self.blend!r}")


def estimate_projection(
    moments: MomentSet, theta: float, geometry: SinogramGeometry
) -> np.ndarray:
    """Estimated projection at view ``theta``, sampled at the ray grid.

    Requires a Legendre moment set: the truncated expansion relies on
    orthonormality of the basis.  Convert geometric sets with
    :func:`momentct.moments.geometric_to_legendre` first.
    """
    if moments.basis != "legendre":
        raise ValueError(
            "projection estimation needs orthonormal (Legendre) moments; "
            "convert geometric sets with geometric_to_legendre first"
        )
    return estimate_projections(moments, [theta], geometry)[0]


def estimate_projections(
    moments: MomentSet, thetas, geometry: SinogramGeometry
) -> np.ndarray:
    """Vectorized :func:`estimate_projection` over several angles."""
    if moments.basis != "legendre":
        raise ValueError(
            "projection estimation needs orthonormal (Legendre) moments; "
            "convert geometric sets with geometric_to_legendre first"
        )
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    t_stack = build_T_stack(thetas, moments.order, moments.basis)
    predicted = t_stack @ moments.stacked()
    basis_on_rays = eval_basis(
        legendre_coeffs(moments.order), geometry.ray_positions
    )
    return predicted @ basis_on_rays


def complete_sinogram(
    sino: Sinogram, config: CompletionConfig = CompletionConfig(), ridge: float = 0.0
) -> tuple[Sinogram, RecoveryReport]:
    """Fill the unknown views of a sinogram from its known views.

    Runs moment recovery on the known rows, then replaces either only
    the masked-unknown rows (default) or every row with the moment-based
    estimate.  The returned sinogram has all views marked known; in
    ``replace_unknown_only`` mode the known rows pass through untouched.
    Also returns the recovery report for diagnostics.
    """
    report = recover_moments(sino, config.order, config.basis, ridge=ridge)
    moments = report.moments
    if moments.basis == "geometric":
        moments = geometric_to_legendre(moments)

    data = sino.data.copy()
    if config.blend == "replace_all":
        targets = np.arange(sino.geometry.n_views)
    else:
        targets = np.flatnonzero(~sino.known_mask)
    if len(targets):
        thetas = sino.geometry.angles_rad[targets]
        data[targets] = estimate_projections(moments, thetas, sino.geometry)
    completed = Sinogram(sino.geometry, data)
    return completed, report
