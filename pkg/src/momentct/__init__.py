"""Limited-angle parallel-beam tomography via orthonormal moments.

Reconstruction pipeline: recover orthonormal-Legendre image moments from
the projections at the available view angles, synthesize the projections
at the missing angles from those moments, then run filtered
backprojection on the completed sinogram.
"""

from .completion import CompletionConfig, complete_sinogram, estimate_projection
from .estimators import FilteredBackprojector, SinogramCompleter
from .fbp import ReconConfig, fbp_reconstruct, mse_percent
from .legendre import CoeffMatrices, build_inverse_coeffs, build_legendre_coeffs, eval_basis, legendre_coeffs
from .moments import (
    MomentSet,
    ProjectionMomentVector,
    build_T,
    geometric_to_legendre,
    image_moments,
    mu_coefficient,
    predict_projection_moments,
    projection_moments,
    v_coefficient,
)
from .phantom import Ellipse, PhantomSpec, analytic_projection, rasterize, reference_phantom
from .radon import (
    Sinogram,
    SinogramGeometry,
    add_noise,
    project_image,
    project_phantom,
    restrict_known,
    uniform_geometry,
    zero_fill,
)
from .recovery import (
    ConditioningError,
    InsufficientViewsError,
    RecoveryError,
    RecoveryReport,
    recover_from_projection_moments,
    recover_moments,
)

__version__ = "0.1.0"

__all__ = [
    "CoeffMatrices",
    "CompletionConfig",
    "ConditioningError",
    "Ellipse",
    "FilteredBackprojector",
    "InsufficientViewsError",
    "MomentSet",
    "PhantomSpec",
    "ProjectionMomentVector",
    "ReconConfig",
    "RecoveryError",
    "RecoveryReport",
    "Sinogram",
    "SinogramCompleter",
    "SinogramGeometry",
    "add_noise",
    "analytic_projection",
    "build_T",
    "build_inverse_coeffs",
    "build_legendre_coeffs",
    "complete_sinogram",
    "estimate_projection",
    "eval_basis",
    "fbp_reconstruct",
    "geometric_to_legendre",
    "image_moments",
    "legendre_coeffs",
    "mse_percent",
    "mu_coefficient",
    "predict_projection_moments",
    "project_image",
    "project_phantom",
    "projection_moments",
    "rasterize",
    "recover_from_projection_moments",
    "recover_moments",
    "reference_phantom",
    "restrict_known",
    "uniform_geometry",
    "v_coefficient",
    "zero_fill",
]
