"""Scikit-learn style wrappers around the completion/reconstruction core.

Both transformers take a :class:`momentct.radon.Sinogram` as ``X`` and
follow the usual conventions (``__init__`` stores hyperparameters
verbatim, fitted state carries a trailing underscore, ``fit`` returns
``self``), so they compose with :class:`sklearn.pipeline.Pipeline`,
``clone`` and the ``get_params``/``set_params`` machinery:

>>> pipe = Pipeline([
...     ("complete", SinogramCompleter(order=15)),
...     ("fbp", FilteredBackprojector(size=128)),
... ])
>>> image = pipe.fit_transform(limited_angle_sinogram)
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .completion import estimate_projections
from .fbp import ReconConfig, fbp_reconstruct
from .moments import geometric_to_legendre
from .radon import Sinogram
from .recovery import recover_moments


def _check_sinogram(X) -> Sinogram:
    if not isinstance(X, Sinogram):
        raise TypeError(f"expected a Sinogram, got {type(X).__name__}")
    return X


class SinogramCompleter(BaseEstimator, TransformerMixin):
    """Fill unknown sinogram views from moments of the known views.

    Parameters
    ----------
    order : int
        Maximum total moment order recovered from the known views.
    basis : {"legendre", "geometric"}
        Recovery basis.  Geometric recovery is converted exactly to the
        Legendre basis before projections are synthesized (only an
        orthonormal basis inverts the moment map), so this switch
        isolates the conditioning of the recovery step.
    blend : {"replace_unknown_only", "replace_all"}
        Whether measured rows pass through untouched or every row is
        replaced by its moment estimate.
    ridge : float
        Optional Tikhonov parameter for noisy data (0 disables it).

    Attributes
    ----------
    moments_ : MomentSet
        Moments recovered by ``fit`` (in the requested basis).
    condition_numbers_, residual_norms_ : ndarray
        Per-order solve diagnostics.
    """

    def __init__(self, order=15, basis="legendre", blend="replace_unknown_only", ridge=0.0):
        self.order = order
        self.basis = basis
        self.blend = blend
        self.ridge = ridge

    def fit(self, X, y=None):
        X = _check_sinogram(X)
        report = recover_moments(X, self.order, self.basis, ridge=self.ridge)
        self.moments_ = report.moments
        self.condition_numbers_ = report.condition_numbers
        self.residual_norms_ = report.residual_norms
        return self

    def transform(self, X) -> Sinogram:
        check_is_fitted(self, "moments_")
        X = _check_sinogram(X)
        moments = self.moments_
        if moments.basis == "geometric":
            moments = geometric_to_legendre(moments)
        data = X.data.copy()
        if self.blend == "replace_all":
            targets = np.arange(X.geometry.n_views)
        else:
            targets = np.flatnonzero(~X.known_mask)
        if len(targets):
            thetas = X.geometry.angles_rad[targets]
            data[targets] = estimate_projections(moments, thetas, X.geometry)
        return Sinogram(X.geometry, data)


class FilteredBackprojector(BaseEstimator, TransformerMixin):
    """Stateless transformer running filtered backprojection.

    Parameters
    ----------
    size : int
        Side length of the reconstructed square image.
    filter_name : {"ram_lak", "hamming_windowed"}
        Ramp filter window.
    """

    def __init__(self, size=128, filter_name="ram_lak"):
        self.size = size
        self.filter_name = filter_name

    def fit(self, X, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        X = _check_sinogram(X)
        return fbp_reconstruct(X, ReconConfig(size=self.size, filter_name=self.filter_name))
