"""Graph Fourier transform and binary spectral filters.

The basis is computed once with a dense symmetric eigensolver, sorted by
ascending eigenvalue and sign-fixed so the same matrix always yields the
same ``U``.  Filters are per-bin gains in ``[0, 1]``; applying one is
``U diag(g) U^T x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_matrix, as_signal, check_bandwidth

__all__ = [
    "GftBasis",
    "FilterSpectrum",
    "gft_basis",
    "forward_gft",
    "inverse_gft",
    "lowpass_filter",
    "bandlimited_filter",
    "apply_filter",
    "filter_projector",
]

SYMMETRY_TOL = 1e-9
# relative slack when deciding which entry has the largest magnitude
_SIGN_TIE_TOL = 1e-10
_ENERGY_TIE_TOL = 1e-12


@dataclass(frozen=True)
class GftBasis:
    eigenvectors: np.ndarray
    eigenvalues: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def U(self) -> np.ndarray:
        return self.eigenvectors


@dataclass(frozen=True)
class FilterSpectrum:
    gains: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gains, dtype=float)
        if g.ndim != 1:
            raise ValueError("filter gains must be 1-D")
        if not np.all(np.isfinite(g)) or g.min(initial=0.0) < 0 or g.max(initial=0.0) > 1:
            raise ValueError("filter gains must lie in [0, 1]")
        g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "gains", g)

    @property
    def size(self) -> int:
        return self.gains.shape[0]

    @property
    def is_binary(self) -> bool:
        return bool(np.all((self.gains == 0) | (self.gains == 1)))

    @property
    def support(self) -> np.ndarray:
        """Indices of bins with nonzero gain."""
        return np.flatnonzero(self.gains)


def _fix_signs(U: np.ndarray) -> np.ndarray:
    absU = np.abs(U)
    peak = absU.max(axis=0)
    # first row index reaching the column maximum, up to rounding
    lead = np.argmax(absU >= peak * (1 - _SIGN_TIE_TOL), axis=0)
    signs = np.sign(U[lead, np.arange(U.shape[1])])
    signs[signs == 0] = 1
    return U * signs


def gft_basis(laplacian) -> GftBasis:
    """Eigendecomposition ``L = U diag(lam) U^T`` with deterministic ordering.

    Parameters
    ----------
    laplacian : array_like, shape (N, N)
        Symmetric matrix, typically a combinatorial Laplacian.

    Returns
    -------
    GftBasis
        Eigenvalues ascending (stable on ties); in each eigenvector the
        entry of largest magnitude is positive, lowest index on ties.
    """
    L = as_matrix(laplacian, name="laplacian")
    if L.shape[0] != L.shape[1]:
        raise ValueError(f"laplacian must be square, got {L.shape}")
    if L.size and np.max(np.abs(L - L.T)) > SYMMETRY_TOL:
        raise ValueError("laplacian is not symmetric")
    lam, U = np.linalg.eigh(0.5 * (L + L.T))
    order = np.argsort(lam, kind="stable")
    lam = lam[order]
    U = _fix_signs(U[:, order])
    lam.setflags(write=False)
    U.setflags(write=False)
    return GftBasis(eigenvectors=U, eigenvalues=lam)


def forward_gft(basis: GftBasis, x) -> np.ndarray:
    """Spectrum ``U^T x``; rows of a 2-D input are transformed independently."""
    x = as_signal(x, basis.size)
    return x @ basis.U


def inverse_gft(basis: GftBasis, s) -> np.ndarray:
    s = as_signal(s, basis.size, name="s")
    return s @ basis.U.T


def lowpass_filter(basis: GftBasis, cutoff_count: int) -> FilterSpectrum:
    """Pass the ``cutoff_count`` lowest-frequency bins."""
    k = check_bandwidth(cutoff_count, basis.size, name="cutoff_count")
    gains = np.zeros(basis.size)
    gains[:k] = 1.0
    return FilterSpectrum(gains)


def bandlimited_filter(basis: GftBasis, reference, bandwidth: int) -> FilterSpectrum:
    """Pass the ``bandwidth`` bins carrying the most energy in ``reference``.

    Energy of bin ``j`` is the mean over reference rows of ``(U^T x)_j^2``.
    Ties go to the lower bin index.
    """
    k = check_bandwidth(bandwidth, basis.size)
    ref = np.asarray(reference, dtype=float)
    if ref.ndim == 1:
        ref = ref[None, :]
    ref = as_matrix(ref, basis.size, name="reference")
    if ref.shape[0] == 0:
        raise ValueError("reference signal is empty")
    energy = np.mean(forward_gft(basis, ref) ** 2, axis=0)
    tol = _ENERGY_TIE_TOL * max(float(energy.max()), np.finfo(float).tiny)
    gains = np.zeros(basis.size)
    remaining = energy.copy()
    for _ in range(k):
        # lowest index among bins within rounding of the current maximum
        j = int(np.argmax(remaining >= remaining.max() - tol))
        gains[j] = 1.0
        remaining[j] = -np.inf
    return FilterSpectrum(gains)


def filter_projector(basis: GftBasis, f: FilterSpectrum) -> np.ndarray:
    """Dense operator ``U diag(g) U^T``."""
    if f.size != basis.size:
        raise ValueError(f"filter has {f.size} bins, basis has {basis.size}")
    U = basis.U
    return (U * f.gains) @ U.T


def apply_filter(basis: GftBasis, f: FilterSpectrum, x) -> np.ndarray:
    if f.size != basis.size:
        raise ValueError(f"filter has {f.size} bins, basis has {basis.size}")
    x = as_signal(x, basis.size)
    return (x @ basis.U * f.gains) @ basis.U.T

