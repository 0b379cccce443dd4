"""Pairwise subspace angles in the Hilbert-Schmidt sense.

For projectors ``P_j, P_l`` the pair value is ``tr(P_j P_l)``, computed
as the squared Frobenius norm of ``B_j.T @ B_l`` without forming the
projectors.  The normalized value ``N * tr(P_j P_l) / (s_j * s_l)``
equals 1 in expectation for independent rotation-invariant subspaces;
a family is nearly equiangular when all normalized off-diagonal values
sit in a common narrow window around 1.

``welch_bound`` is the pigeonhole floor ``s*(K*s - N) / ((K-1)*N)`` on
the largest off-diagonal ``tr(P_j P_l)`` of any equidimensional family:
no spread of K s-dimensional subspaces in R^N can beat it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDeltaError,
    InvalidDimsError,
    TooFewSubspacesError,
)
from .frames import FusionFrame, Subspace

_WINDOW_SLACK = 1e-12


def hs_inner(a: Subspace, b: Subspace) -> float:
    """Hilbert-Schmidt inner product ``tr(P_a P_b)`` of two projectors."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"subspaces live in R^{a.ambient_dim} and R^{b.ambient_dim}"
        )
    c = a.basis.T @ b.basis
    return float(np.sum(c * c))


@dataclass(frozen=True)
class AngleReport:
    """Pairwise angle table plus summary statistics.

    ``pair_values[j, l]`` is ``tr(P_j P_l)``; the diagonal holds the
    subspace dimensions.  The normalized statistics run over unordered
    off-diagonal pairs.  ``welch`` is ``nan`` for mixed dimensions.
    """

    ambient_dim: int
    dims: tuple[int, ...]
    pair_values: np.ndarray
    normalized_min: float
    normalized_max: float
    normalized_mean: float
    welch: float

    def normalized_table(self) -> np.ndarray:
        """Full table of ``N * tr(P_j P_l) / (s_j * s_l)``."""
        s = np.asarray(self.dims, dtype=np.float64)
        return self.ambient_dim * self.pair_values / np.outer(s, s)


def angle_report(frame: FusionFrame) -> AngleReport:
    """Compute every pairwise angle of a frame (needs at least 2 subspaces)."""
    k = len(frame)
    if k < 2:
        raise TooFewSubspacesError(f"pairwise angles need K >= 2, got K={k}")
    n = frame.ambient_dim
    table = np.zeros((k, k))
    for j in range(k):
        table[j, j] = float(frame.subspaces[j].dim)
        for l in range(j + 1, k):
            value = hs_inner(frame.subspaces[j], frame.subspaces[l])
            table[j, l] = value
            table[l, j] = value
    dims = frame.dims
    normalized = []
    for j in range(k):
        for l in range(j + 1, k):
            normalized.append(n * table[j, l] / (dims[j] * dims[l]))
    normalized = np.asarray(normalized)
    if frame.is_equidimensional:
        welch = welch_bound(n, k, dims[0])
    else:
        welch = math.nan
    return AngleReport(
        ambient_dim=n,
        dims=dims,
        pair_values=table,
        normalized_min=float(normalized.min()),
        normalized_max=float(normalized.max()),
        normalized_mean=float(normalized.mean()),
        welch=welch,
    )


def welch_bound(dim: int, count: int, subspace_dim: int) -> float:
    """Lower bound ``s*(K*s - N) / ((K-1)*N)`` on the largest pair value."""
    if count < 2:
        raise InvalidDimsError(f"the bound needs K >= 2, got K={count}")
    if not 1 <= subspace_dim <= dim:
        raise InvalidDimsError(
            f"need 1 <= s <= N, got s={subspace_dim}, N={dim}"
        )
    return subspace_dim * (count * subspace_dim - dim) / ((count - 1) * dim)


def _check_window_args(epsilon: float, dim: int, subspace_dim: int) -> None:
    if not epsilon > 0.0:
        raise InvalidDeltaError(f"epsilon must be positive, got {epsilon}")
    if not 1 <= subspace_dim <= dim:
        raise InvalidDimsError(
            f"need 1 <= s <= N, got s={subspace_dim}, N={dim}"
        )


def equiangular_window(epsilon: float, dim: int, subspace_dim: int) -> tuple[float, float]:
    """Normalized pair-value window implied by tolerance ``epsilon``.

    Returns ``(lo, hi)`` with

        lo = 1/(1+eps) - eps*sqrt((1+eps)*N/s)
        hi = 1 + eps*(1 + sqrt((1+eps)*N/s)) + N*eps**2/(4*s)
    """
    _check_window_args(epsilon, dim, subspace_dim)
    ratio = math.sqrt((1.0 + epsilon) * dim / subspace_dim)
    lo = 1.0 / (1.0 + epsilon) - epsilon * ratio
    hi = 1.0 + epsilon * (1.0 + ratio) + dim * epsilon * epsilon / (4.0 * subspace_dim)
    return lo, hi


def simplified_window(
    epsilon: float, dim: int, subspace_dim: int, c: float
) -> tuple[float, float]:
    """Looser symmetric window ``1 -+ c*eps*(1 + sqrt(N/s))`` for ``c > 1``.

    The upper edge keeps the same quadratic correction as
    :func:`equiangular_window`.
    """
    _check_window_args(epsilon, dim, subspace_dim)
    if not c > 1.0:
        raise InvalidDeltaError(f"the slack factor must exceed 1, got c={c}")
    spread = c * epsilon * (1.0 + math.sqrt(dim / subspace_dim))
    hi = 1.0 + spread + dim * epsilon * epsilon / (4.0 * subspace_dim)
    return 1.0 - spread, hi


def window_check(
    report: AngleReport, window: tuple[float, float]
) -> tuple[np.ndarray, bool]:
    """Check every off-diagonal normalized pair against ``window``.

    The interval is closed with an absolute slack of 1e-12 on both
    edges.  Returns a boolean K x K table (diagonal True) and the
    overall verdict.
    """
    lo, hi = float(window[0]), float(window[1])
    normalized = report.normalized_table()
    ok = (normalized >= lo - _WINDOW_SLACK) & (normalized <= hi + _WINDOW_SLACK)
    np.fill_diagonal(ok, True)
    return ok, bool(ok.all())
