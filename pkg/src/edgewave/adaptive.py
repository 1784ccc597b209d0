"""Online edge-signal estimators as pure step functions.

``lglms_step`` is the LMS update carried out on the line graph::

    x_hat[t+1] = x_hat[t] + alpha * U S U^T M (y[t] - x_hat[t])

Two reference recursions live alongside it: a memoryless spectral
projection of the current observation and a simplicial convolution driven
by the lower and upper Hodge Laplacians.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ._validation import as_mask, as_matrix, as_vector
from .graph import HodgePair
from .spectral import FilterSpectrum, GftBasis, apply_filter, filter_projector

logger = logging.getLogger(__name__)

__all__ = [
    "LglmsState",
    "ScParams",
    "DEFAULT_SC_PARAMS",
    "init_lglms",
    "lglms_step",
    "stability_margin",
    "spectral_baseline_step",
    "simplicial_conv_step",
    "fit_sc_params",
    "is_stable",
    "STABILITY_TOL",
]

# rounding allowance on the margin; SVD of an exactly-unit-norm operator can return 1 + eps
STABILITY_TOL = 1e-12


@dataclass(frozen=True)
class LglmsState:
    """Immutable LGLMS state; :func:`lglms_step` returns a new instance."""

    estimate: np.ndarray
    step_size: float
    basis: GftBasis
    filter: FilterSpectrum
    iteration: int = 0
    projector: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.step_size > 0:
            raise ValueError(f"step size must be positive, got {self.step_size}")
        if self.filter.size != self.basis.size:
            raise ValueError("filter and basis sizes differ")
        est = as_vector(self.estimate, self.basis.size, name="estimate")
        object.__setattr__(self, "estimate", est)


def init_lglms(basis: GftBasis, f: FilterSpectrum, step_size: float = 0.5, estimate=None) -> LglmsState:
    """Fresh state at ``x_hat[0]`` (zeros unless given) with a cached projector."""
    if estimate is None:
        estimate = np.zeros(basis.size)
    P = filter_projector(basis, f)
    P.setflags(write=False)
    return LglmsState(
        estimate=np.array(estimate, dtype=float),
        step_size=float(step_size),
        basis=basis,
        filter=f,
        projector=P,
    )


def lglms_step(state: LglmsState, y, m) -> LglmsState:
    """One LGLMS update.

    ``y`` must already be masked (zeros at unobserved entries); the mask is
    applied to the innovation ``y - x_hat`` so unobserved entries never
    contribute.
    """
    n = state.basis.size
    y = as_vector(y, n, name="y")
    m = as_mask(m, n)
    innovation = np.where(m, y - state.estimate, 0.0)
    if state.projector is not None:
        correction = state.projector @ innovation
    else:
        correction = apply_filter(state.basis, state.filter, innovation)
    return replace(
        state,
        estimate=state.estimate + state.step_size * correction,
        iteration=state.iteration + 1,
    )


def stability_margin(alpha: float, m, basis: GftBasis, f: FilterSpectrum) -> float:
    """Squared spectral norm ``||alpha M U S U^T||_2^2``; stable iff <= 1."""
    n = basis.size
    m = as_mask(m, n)
    if f.size != n:
        raise ValueError(f"filter has {f.size} bins, basis has {n}")
    scale = float(alpha) ** 2
    if m.all():
        # U is orthogonal, so ||U S U^T||_2 is the largest gain
        return scale * float(np.max(np.abs(f.gains), initial=0.0)) ** 2
    A = basis.U[m] * f.gains
    if A.size == 0:
        return 0.0
    return scale * float(np.linalg.norm(A, 2)) ** 2


def is_stable(margin: float) -> bool:
    return margin <= 1.0 + STABILITY_TOL


def spectral_baseline_step(basis: GftBasis, f: FilterSpectrum, y) -> np.ndarray:
    """Memoryless estimate ``U S U^T y`` of the current observation."""
    y = as_vector(y, basis.size, name="y")
    return apply_filter(basis, f, y)


@dataclass(frozen=True)
class ScParams:
    """Coefficients of ``theta L_l + gamma L_u + xi I``."""

    theta: float
    gamma: float
    xi: float

    def __post_init__(self):
        for name in ("theta", "gamma", "xi"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def operator(self, hodge: HodgePair) -> np.ndarray:
        n = hodge.lower.shape[0]
        return self.theta * hodge.lower + self.gamma * hodge.upper + self.xi * np.eye(n)


DEFAULT_SC_PARAMS = ScParams(theta=-0.1, gamma=-0.1, xi=1.0)


def simplicial_conv_step(x_hat, hodge: HodgePair, p: ScParams, y, m) -> np.ndarray:
    """Simplicial convolution applied to the data-injected state.

    Observed entries of the previous estimate are overwritten with ``y``
    before the convolution, otherwise the recursion would never see data.
    """
    n = hodge.lower.shape[0]
    x_hat = as_vector(x_hat, n, name="x_hat")
    y = as_vector(y, n, name="y")
    m = as_mask(m, n)
    z = np.where(m, y, x_hat)
    return p.theta * (hodge.lower @ z) + p.gamma * (hodge.upper @ z) + p.xi * z


def fit_sc_params(hodge: HodgePair, reference, fallback: ScParams = DEFAULT_SC_PARAMS) -> ScParams:
    """Least-squares one-step-ahead fit of ``(theta, gamma, xi)``.

    Regresses ``x[t+1]`` on ``[L_l x[t], L_u x[t], x[t]]`` over consecutive
    reference rows.  Falls back to ``fallback`` when there are fewer than
    two rows or the design matrix is rank deficient (e.g. no triangles).
    """
    ref = as_matrix(reference, hodge.lower.shape[0], name="reference")
    if ref.shape[0] < 2:
        logger.info("SC fit: fewer than two reference rows, using fallback %s", fallback)
        return fallback
    prev, nxt = ref[:-1], ref[1:]
    design = np.stack(
        [(prev @ hodge.lower.T).ravel(), (prev @ hodge.upper.T).ravel(), prev.ravel()],
        axis=1,
    )
    coef, _, rank, _ = np.linalg.lstsq(design, nxt.ravel(), rcond=None)
    if rank < 3 or not np.all(np.isfinite(coef)):
        logger.info("SC fit: singular design (rank %d), using fallback %s", rank, fallback)
        return fallback
    return ScParams(theta=float(coef[0]), gamma=float(coef[1]), xi=float(coef[2]))
