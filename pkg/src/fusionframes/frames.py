"""Fusion frames: weighted families of subspaces of R^N.

A fusion frame is stored as orthonormal bases, one ``N x s_i`` matrix
per subspace, plus positive weights.  The frame operator is

    S = sum_i  v_i**2 * B_i @ B_i.T

and the frame bounds are its extreme eigenvalues.  A frame whose bound
ratio ``B/A`` is close to one is nearly tight; ``epsilon_tight`` is
``sqrt(B/A) - 1`` so that scaling by the tight constant ``sqrt(A*B)``
makes the relative deviation symmetric.

File format: JSON object with keys ``dim``, ``weights`` (length K) and
``subspaces`` (K entries, each a list of s_i basis vectors of length
``dim``).  Floats round-trip exactly through ``repr``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    FrameFormatError,
    InvalidDimsError,
    RankDeficientError,
)
from .linalg import gram, pinv_sqrt_apply, sym_eigen

_ORTHO_TOL = 1e-8


def _frozen_array(obj, field: str, values: np.ndarray) -> None:
    values = values.copy()
    values.setflags(write=False)
    object.__setattr__(obj, field, values)


@dataclass(frozen=True)
class Subspace:
    """A subspace of R^N held as an ``N x s`` column-orthonormal basis."""

    basis: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.basis, dtype=np.float64)
        if b.ndim != 2:
            raise InvalidDimsError(f"basis must be 2-D, got {b.ndim}-D")
        n, s = b.shape
        if not 1 <= s <= n:
            raise InvalidDimsError(f"need 1 <= s <= N, got basis shape {n}x{s}")
        if not np.all(np.isfinite(b)):
            raise ValueError("basis contains non-finite entries")
        dev = float(np.max(np.abs(b.T @ b - np.eye(s))))
        if dev > _ORTHO_TOL:
            raise ValueError(f"basis is not orthonormal (max deviation {dev:.3e})")
        _frozen_array(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        """The orthogonal projector ``B @ B.T`` onto the subspace."""
        p = self.basis @ self.basis.T
        return (p + p.T) / 2.0


@dataclass(frozen=True)
class FusionFrame:
    """An immutable weighted family of subspaces of a common R^N."""

    subspaces: tuple[Subspace, ...]
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        subs = tuple(self.subspaces)
        if not subs:
            raise InvalidDimsError("a fusion frame needs at least one subspace")
        n = subs[0].ambient_dim
        for i, sub in enumerate(subs):
            if sub.ambient_dim != n:
                raise DimensionMismatchError(
                    f"subspace {i} lives in R^{sub.ambient_dim}, expected R^{n}"
                )
        if self.weights is None:
            w = np.ones(len(subs))
        else:
            w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (len(subs),):
            raise InvalidDimsError(
                f"weights shape {w.shape} does not match {len(subs)} subspaces"
            )
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise ValueError("weights must be positive and finite")
        object.__setattr__(self, "subspaces", subs)
        _frozen_array(self, "weights", w)

    def __len__(self) -> int:
        return len(self.subspaces)

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[0].ambient_dim

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sub.dim for sub in self.subspaces)

    @property
    def is_equidimensional(self) -> bool:
        return len(set(self.dims)) == 1


@dataclass(frozen=True)
class FrameBoundsReport:
    """Extreme frame operator eigenvalues and derived tightness numbers.

    ``epsilon_tight`` is ``sqrt(upper/lower) - 1``, or ``inf`` when the
    family does not span (lower bound zero).
    """

    lower: float
    upper: float
    tight_constant: float
    epsilon_tight: float


def frame_operator(frame: FusionFrame) -> np.ndarray:
    """The ``N x N`` frame operator ``sum v_i**2 B_i B_i.T``."""
    n = frame.ambient_dim
    s = np.zeros((n, n))
    for weight, sub in zip(frame.weights, frame.subspaces):
        s += (weight * weight) * (sub.basis @ sub.basis.T)
    return (s + s.T) / 2.0


def frame_bounds_from_operator(op: np.ndarray) -> FrameBoundsReport:
    """Frame bounds from an already computed frame operator."""
    eig = sym_eigen(op)
    lower = max(float(eig.eigenvalues[0]), 0.0)
    upper = float(eig.eigenvalues[-1])
    tight_constant = math.sqrt(lower * upper)
    if lower > 0.0:
        epsilon = math.sqrt(upper / lower) - 1.0
    else:
        epsilon = math.inf
    return FrameBoundsReport(lower, upper, tight_constant, epsilon)


def frame_bounds(frame: FusionFrame) -> FrameBoundsReport:
    """Frame bounds ``A = lam_min(S)`` (clamped at 0) and ``B = lam_max(S)``."""
    return frame_bounds_from_operator(frame_operator(frame))


def riesz_bounds(vectors) -> tuple[float, float]:
    """Extreme eigenvalues of the Gram matrix of a column-vector family."""
    eig = sym_eigen(gram(vectors))
    return float(eig.eigenvalues[0]), float(eig.eigenvalues[-1])


def build_fusion_frame_from_gaussian(
    stream, dim: int, subspace_dim: int, count: int
) -> FusionFrame:
    """Unit-weight fusion frame from one Gaussian matrix.

    Draws an ``M x dim`` standard normal matrix with ``M = count *
    subspace_dim``, splits the rows into ``count`` consecutive blocks of
    ``subspace_dim`` rows, and orthonormalizes each block through the
    Gram inverse square root.  A rank-deficient block is redrawn once.
    """
    if not 1 <= subspace_dim <= dim:
        raise InvalidDimsError(
            f"need 1 <= subspace_dim <= dim, got subspace_dim={subspace_dim}, dim={dim}"
        )
    if count < 1:
        raise InvalidDimsError(f"count must be positive, got {count}")
    rows = stream.normals(count * subspace_dim * dim).reshape(count * subspace_dim, dim)
    subspaces = []
    for k in range(count):
        block = rows[k * subspace_dim : (k + 1) * subspace_dim, :]
        try:
            basis = pinv_sqrt_apply(block.T)
        except RankDeficientError:
            block = stream.normals(subspace_dim * dim).reshape(subspace_dim, dim)
            basis = pinv_sqrt_apply(block.T)
        subspaces.append(Subspace(basis))
    return FusionFrame(tuple(subspaces))


def frame_to_dict(frame: FusionFrame) -> dict:
    """Plain-data form of a frame, suitable for JSON serialization."""
    return {
        "dim": frame.ambient_dim,
        "weights": [float(w) for w in frame.weights],
        "subspaces": [
            [[float(x) for x in row] for row in sub.basis.T]
            for sub in frame.subspaces
        ],
    }


def _format_error(msg: str) -> FrameFormatError:
    return FrameFormatError(f"frame file invalid: {msg}")


def frame_from_dict(data) -> FusionFrame:
    """Rebuild a frame from plain data, validating every invariant.

    Error messages name the first offending subspace by its index.
    """
    if not isinstance(data, dict):
        raise _format_error("top level must be a JSON object")
    for key in ("dim", "weights", "subspaces"):
        if key not in data:
            raise _format_error(f"missing key {key!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise _format_error("'dim' must be a positive integer")
    weights = data["weights"]
    subspace_rows = data["subspaces"]
    if not isinstance(weights, list) or not isinstance(subspace_rows, list):
        raise _format_error("'weights' and 'subspaces' must be arrays")
    if not subspace_rows:
        raise _format_error("'subspaces' must be non-empty")
    if len(weights) != len(subspace_rows):
        raise _format_error(
            f"{len(weights)} weights for {len(subspace_rows)} subspaces"
        )
    subspaces = []
    for idx, rows in enumerate(subspace_rows):
        try:
            arr = np.asarray(rows, dtype=np.float64)
        except (ValueError, TypeError) as exc:
            raise _format_error(f"subspace {idx} is not a numeric array") from exc
        if arr.ndim != 2 or arr.shape[1] != dim:
            raise _format_error(
                f"subspace {idx} must be a list of vectors of length {dim}"
            )
        if not np.all(np.isfinite(arr)):
            raise _format_error(f"subspace {idx} has non-finite entries")
        if not 1 <= arr.shape[0] <= dim:
            raise _format_error(
                f"subspace {idx} has {arr.shape[0]} vectors, need 1..{dim}"
            )
        dev = float(np.max(np.abs(arr @ arr.T - np.eye(arr.shape[0]))))
        if dev > _ORTHO_TOL:
            raise _format_error(
                f"subspace {idx} is not orthonormal (max deviation {dev:.3e})"
            )
        subspaces.append(Subspace(arr.T))
    try:
        return FusionFrame(tuple(subspaces), np.asarray(weights, dtype=np.float64))
    except (ValueError, InvalidDimsError, TypeError) as exc:
        raise _format_error(str(exc)) from exc


def save_frame(frame: FusionFrame, path) -> None:
    """Write a frame to ``path`` as JSON (floats are exact round-trips)."""
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(frame_to_dict(frame), handle, indent=2)
        handle.write("\n")


def load_frame(path) -> FusionFrame:
    """Read and validate a frame written by :func:`save_frame`."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise _format_error(f"not valid JSON ({exc})") from exc
    return frame_from_dict(data)
