"""Dense symmetric linear algebra built on a cyclic Jacobi eigensolver.

Conventions
-----------
Matrices are ``float64`` ndarrays with column vectors, so an ``N x s``
matrix holds ``s`` vectors of an ``N``-dimensional space.  A matrix of
rank below its column count is *rank deficient*; the working test is
``lam_min(G) <= s * 2**-52 * lam_max(G)`` on the Gram matrix ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    InvalidDimsError,
    NoConvergenceError,
    NotSymmetricError,
    RankDeficientError,
)

_EPS = 2.0**-52
_SYM_TOL = 1e-8
_OFF_TOL_FACTOR = 1e-12
_MAX_SWEEPS = 100


@dataclass(frozen=True)
class SymEigen:
    """Eigendecomposition of a symmetric matrix.

    ``eigenvalues`` are sorted ascending and ``eigenvectors[:, i]`` is the
    unit eigenvector for ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(a, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidDimsError(f"{name} must be 2-D, got {arr.ndim}-D")
    if arr.size == 0:
        raise InvalidDimsError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def gram(a) -> np.ndarray:
    """Return the Gram matrix ``A.T @ A``, symmetrized exactly.

    Parameters
    ----------
    a : array_like
        ``n x m`` matrix of ``m`` column vectors.

    Returns
    -------
    ndarray
        ``m x m`` symmetric positive semidefinite matrix.
    """
    arr = _as_matrix(a)
    g = arr.T @ arr
    return (g + g.T) / 2.0


def sym_eigen(a) -> SymEigen:
    """Full eigendecomposition of a symmetric matrix.

    Uses cyclic Jacobi rotations until the largest off-diagonal entry
    falls below ``1e-12`` times the Frobenius norm of the input, with a
    budget of 100 sweeps.

    Raises
    ------
    NotSymmetricError
        If ``max |a_ij - a_ji| > 1e-8``.
    NoConvergenceError
        If the sweep budget is exhausted.
    """
    arr = _as_matrix(a)
    n, m = arr.shape
    if n != m:
        raise InvalidDimsError(f"eigensolver needs a square matrix, got {n}x{m}")
    skew = float(np.max(np.abs(arr - arr.T)))
    if skew > _SYM_TOL:
        raise NotSymmetricError(
            f"matrix is not symmetric: max |a_ij - a_ji| = {skew:.3e}"
        )
    fnorm = float(np.linalg.norm(arr))
    if fnorm == 0.0:
        return SymEigen(np.zeros(n), np.eye(n))
    work = np.ascontiguousarray((arr + arr.T) / 2.0)
    vecs = np.eye(n)
    sweeps = _kernels.jacobi_sweeps(work, vecs, _OFF_TOL_FACTOR * fnorm, _MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergenceError(
            f"Jacobi eigensolver did not converge in {_MAX_SWEEPS} sweeps (n={n})"
        )
    vals = np.diag(work).copy()
    order = np.argsort(vals, kind="stable")
    return SymEigen(vals[order], np.ascontiguousarray(vecs[:, order]))


def _check_full_rank(eig: SymEigen, cols: int, context: str) -> float:
    lam_max = float(eig.eigenvalues[-1])
    lam_min = float(eig.eigenvalues[0])
    tol = cols * _EPS * lam_max
    if lam_min <= tol:
        raise RankDeficientError(
            f"{context}: smallest Gram eigenvalue {lam_min:.3e} is below "
            f"the rank tolerance {tol:.3e}"
        )
    return tol


def qr_orthonormalize(a) -> np.ndarray:
    """Orthonormalize columns with modified Gram-Schmidt.

    One full reorthogonalization pass keeps ``Q.T @ Q`` within 1e-12 of
    the identity.  Column order is preserved, and an already orthonormal
    input is a fixed point up to roundoff.

    Raises
    ------
    RankDeficientError
        If the columns are numerically dependent.
    """
    arr = _as_matrix(a)
    _check_full_rank(sym_eigen(gram(arr)), arr.shape[1], "qr_orthonormalize")
    q = arr.copy()
    m = q.shape[1]
    for j in range(m):
        for _ in range(2):
            if j:
                q[:, j] -= q[:, :j] @ (q[:, :j].T @ q[:, j])
        q[:, j] /= np.linalg.norm(q[:, j])
    return q


def pinv_sqrt_apply(vectors) -> np.ndarray:
    """Map column vectors ``X`` to the orthonormal basis ``X @ G**-0.5``.

    ``G = X.T @ X`` is the Gram matrix; its inverse square root is formed
    from the eigendecomposition with eigenvalues clamped at the rank
    tolerance.  The result spans the same subspace as ``X`` and inherits
    its orientation, unlike a pivoting factorization.

    Raises
    ------
    RankDeficientError
        If ``G`` is numerically singular.
    """
    arr = _as_matrix(vectors, "vectors")
    n, s = arr.shape
    if s > n:
        raise InvalidDimsError(f"need at most as many vectors as dimensions, got {s} > {n}")
    eig = sym_eigen(gram(arr))
    tol = _check_full_rank(eig, s, "pinv_sqrt_apply")
    lam = np.maximum(eig.eigenvalues, tol)
    inv_half = (eig.eigenvectors / np.sqrt(lam)) @ eig.eigenvectors.T
    return arr @ inv_half
