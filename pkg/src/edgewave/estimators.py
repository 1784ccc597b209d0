"""scikit-learn style wrappers around the step functions in :mod:`edgewave.adaptive`.

All three estimators share the same life cycle:

``fit(X)``
    Build the line graph, its Fourier basis and the spectral filter.  ``X``
    is a clean reference window (``T_ref x N_e``) used by the bandlimited
    filter and by the simplicial-convolution parameter fit; it may be
    omitted for a low-pass filter with fixed parameters.
``transform(Y, mask)``
    Run the online recursion over masked observations ``Y`` (``T x N_e``)
    starting from a zero estimate.  Row ``t`` of the output is the estimate
    available after consuming ``Y[t]``.
``update(y, mask)``
    Advance a persistent online state by one observation.

Example
-------
>>> from edgewave.datasets import sioux_falls_graph
>>> g = sioux_falls_graph()
>>> est = LGLMS(graph=g, filter_type="lowpass", bandwidth=10).fit()
>>> est.line_graph_.graph.num_nodes
38
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import as_mask
from .adaptive import (
    DEFAULT_SC_PARAMS,
    ScParams,
    fit_sc_params,
    init_lglms,
    is_stable,
    lglms_step,
    simplicial_conv_step,
    stability_margin,
)
from .exceptions import ConfigError, StabilityError
from .graph import Graph, hodge_laplacians, line_graph
from .spectral import FilterSpectrum, GftBasis, bandlimited_filter, filter_projector, gft_basis, lowpass_filter

__all__ = ["LGLMS", "SpectralFilter", "SimplicialConvolution", "default_bandwidth"]

FILTER_TYPES = ("lowpass", "bandlimited")


def default_bandwidth(n_edges: int) -> int:
    """Quarter-band default, ``ceil(N_e / 4)``."""
    return max(1, math.ceil(n_edges / 4))


def _mask_rows(mask, T, n):
    """Broadcast a mask to ``T x n`` booleans; ``None`` means all observed."""
    if mask is None:
        return np.ones((T, n), dtype=bool)
    m = np.asarray(mask)
    if m.ndim == 1:
        return np.broadcast_to(as_mask(m, n), (T, n))
    if m.shape != (T, n):
        raise ValueError(f"mask has shape {m.shape}, expected ({n},) or ({T}, {n})")
    return m.astype(bool)


class _LineGraphEstimator(TransformerMixin, BaseEstimator):
    def _check_graph(self):
        if not isinstance(self.graph, Graph):
            raise ConfigError("graph must be an edgewave.graph.Graph")
        if self.graph.num_edges < 1:
            raise ConfigError("graph has no edges")

    def _fit_spectral(self, X):
        self._check_graph()
        n = self.graph.num_edges
        self.line_graph_ = line_graph(self.graph)
        if self.basis is not None:
            if not isinstance(self.basis, GftBasis) or self.basis.size != n:
                raise ConfigError("basis does not match the line graph of graph")
            self.basis_ = self.basis
        else:
            self.basis_ = gft_basis(self.line_graph_.laplacian())
        k = default_bandwidth(n) if self.bandwidth is None else self.bandwidth
        if self.filter_type == "lowpass":
            self.filter_ = lowpass_filter(self.basis_, k)
        elif self.filter_type == "bandlimited":
            if X is None:
                raise ConfigError("a bandlimited filter needs reference data in fit(X)")
            self.filter_ = bandlimited_filter(self.basis_, X, k)
        elif isinstance(self.filter_type, FilterSpectrum):
            if self.filter_type.size != n:
                raise ConfigError("filter size does not match the number of edges")
            self.filter_ = self.filter_type
        else:
            raise ConfigError(f"filter_type must be one of {FILTER_TYPES} or a FilterSpectrum")
        self.projector_ = filter_projector(self.basis_, self.filter_)
        self.n_features_in_ = n

    def _check_reference(self, X):
        if X is None:
            return None
        return check_array(X, ensure_2d=True, dtype=float)

    def _check_obs(self, Y):
        check_is_fitted(self)
        Y = check_array(Y, dtype=float)
        if Y.shape[1] != self.n_features_in_:
            raise ValueError(f"Y has {Y.shape[1]} columns, expected {self.n_features_in_}")
        return Y


class LGLMS(_LineGraphEstimator):
    """Line-graph least-mean-squares tracker for time-varying edge signals.

    Parameters
    ----------
    graph : Graph
        The original graph; its edges index the signal.
    alpha : float, default=0.5
        LMS step size.  ``transform`` refuses to run when
        ``||alpha M U S U^T||_2^2 > 1`` for the supplied mask.
    filter_type : {"lowpass", "bandlimited"} or FilterSpectrum, default="bandlimited"
    bandwidth : int, optional
        Number of passed bins; defaults to ``ceil(N_e / 4)``.
    basis : GftBasis, optional
        Precomputed line-graph basis, to share one eigendecomposition
        between estimators.

    Attributes
    ----------
    basis_, filter_, projector_, line_graph_
        Spectral objects built in ``fit``.
    state_ : LglmsState
        Online state advanced by :meth:`update`.
    """

    def __init__(self, graph=None, alpha=0.5, filter_type="bandlimited", bandwidth=None, basis=None):
        self.graph = graph
        self.alpha = alpha
        self.filter_type = filter_type
        self.bandwidth = bandwidth
        self.basis = basis

    def fit(self, X=None, y=None):
        if not self.alpha > 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        self._fit_spectral(self._check_reference(X))
        self.state_ = init_lglms(self.basis_, self.filter_, self.alpha)
        return self

    def stability_margin(self, mask=None) -> float:
        check_is_fitted(self)
        n = self.n_features_in_
        m = np.ones(n, dtype=bool) if mask is None else as_mask(mask, n)
        return stability_margin(self.alpha, m, self.basis_, self.filter_)

    def _check_stable(self, masks):
        for m in np.unique(masks, axis=0):
            margin = self.stability_margin(m)
            if not is_stable(margin):
                raise StabilityError(margin)

    def update(self, y, mask=None):
        """Consume one observation and return the new estimate."""
        check_is_fitted(self)
        m = np.ones(self.n_features_in_, dtype=bool) if mask is None else as_mask(mask, self.n_features_in_)
        self._check_stable(m[None, :])
        self.state_ = lglms_step(self.state_, y, m)
        return self.state_.estimate

    def transform(self, Y, mask=None):
        Y = self._check_obs(Y)
        T, n = Y.shape
        masks = _mask_rows(mask, T, n)
        self._check_stable(masks)
        P, a = self.projector_, float(self.alpha)
        x = np.zeros(n)
        out = np.empty((T, n))
        for t in range(T):
            x = x + a * (P @ np.where(masks[t], Y[t] - x, 0.0))
            out[t] = x
        return out


class SpectralFilter(_LineGraphEstimator):
    """Memoryless projection ``U S U^T y[t]`` on the line-graph spectrum."""

    def __init__(self, graph=None, filter_type="bandlimited", bandwidth=None, basis=None):
        self.graph = graph
        self.filter_type = filter_type
        self.bandwidth = bandwidth
        self.basis = basis

    def fit(self, X=None, y=None):
        self._fit_spectral(self._check_reference(X))
        return self

    def update(self, y, mask=None):
        check_is_fitted(self)
        return self.projector_ @ np.asarray(y, dtype=float)

    def transform(self, Y, mask=None):
        Y = self._check_obs(Y)
        return Y @ self.projector_


class SimplicialConvolution(_LineGraphEstimator):
    """Hodge-Laplacian recursion ``(theta L_l + gamma L_u + xi I) z``.

    ``z`` is the previous estimate with observed entries replaced by the new
    observation.  Unset coefficients are fit by least squares on the
    reference window passed to ``fit``.  When ``filter_type`` is given the
    reported estimate is the line-graph filter applied to the recursion
    state; the state itself is never filtered.  ``filter_type=None`` reports
    the raw state.
    """

    def __init__(self, graph=None, theta=None, gamma=None, xi=None,
                 filter_type="bandlimited", bandwidth=None, basis=None):
        self.graph = graph
        self.theta = theta
        self.gamma = gamma
        self.xi = xi
        self.filter_type = filter_type
        self.bandwidth = bandwidth
        self.basis = basis

    def fit(self, X=None, y=None):
        X = self._check_reference(X)
        self._check_graph()
        self.hodge_ = hodge_laplacians(self.graph)
        if self.filter_type is None:
            self.projector_ = None
            self.n_features_in_ = self.graph.num_edges
        else:
            self._fit_spectral(X)
        given = (self.theta, self.gamma, self.xi)
        if None in given:
            fitted = fit_sc_params(self.hodge_, X) if X is not None else DEFAULT_SC_PARAMS
            given = tuple(f if g is None else g for g, f in zip(given, (fitted.theta, fitted.gamma, fitted.xi)))
        self.params_ = ScParams(*map(float, given))
        self.operator_ = self.params_.operator(self.hodge_)
        self.state_ = np.zeros(self.n_features_in_)
        return self

    def _report(self, x):
        return x if self.projector_ is None else x @ self.projector_

    def update(self, y, mask=None):
        check_is_fitted(self)
        n = self.n_features_in_
        m = np.ones(n, dtype=bool) if mask is None else as_mask(mask, n)
        self.state_ = simplicial_conv_step(self.state_, self.hodge_, self.params_, y, m)
        return self._report(self.state_)

    def transform(self, Y, mask=None):
        Y = self._check_obs(Y)
        T, n = Y.shape
        masks = _mask_rows(mask, T, n)
        op = self.operator_
        x = np.zeros(n)
        out = np.empty((T, n))
        for t in range(T):
            x = op @ np.where(masks[t], Y[t], x)
            out[t] = x
        return self._report(out)
