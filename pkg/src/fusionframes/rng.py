"""Deterministic random streams with explicit seed derivation.

The core generator is xoshiro256++ (four 64-bit words of state).  Stream
states are derived from a master seed and a stream id with SplitMix64, so
``derive_stream(seed, i)`` for distinct ``i`` gives decorrelated streams
whose outputs do not depend on the order in which other streams are used.
That property is what makes parallel Monte Carlo runs reproducible for
any worker count.

Uniform doubles are ``(word >> 11) * 2.0**-53`` in ``[0, 1)``; standard
normals come from the Marsaglia polar method in a fixed fill order.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import DegenerateDrawError, InvalidDimsError, RankDeficientError
from .frames import Subspace
from .linalg import pinv_sqrt_apply

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # odd constant, also the SplitMix64 increment

_SPHERE_NORM_FLOOR = 1e-150
_SPHERE_RETRIES = 8


def _splitmix64(state: int) -> tuple[int, int]:
    """Advance SplitMix64 once; return (new_state, output)."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class RngStream:
    """A single xoshiro256++ stream.  Not safe for concurrent use."""

    __slots__ = ("_state",)

    def __init__(self, state) -> None:
        arr = np.asarray(state, dtype=np.uint64)
        if arr.shape != (4,):
            raise ValueError("state must hold exactly four 64-bit words")
        if not arr.any():
            raise ValueError("the all-zero state is invalid for xoshiro256++")
        self._state = arr.copy()

    @property
    def state(self) -> np.ndarray:
        """Copy of the current state words."""
        return self._state.copy()

    def raw(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit generator words."""
        out = np.empty(self._checked(count), dtype=np.uint64)
        _kernels.fill_raw(self._state, out)
        return out

    def uniforms(self, count: int) -> np.ndarray:
        """Next ``count`` doubles, uniform on [0, 1)."""
        out = np.empty(self._checked(count), dtype=np.float64)
        _kernels.fill_uniforms(self._state, out)
        return out

    def normals(self, count: int) -> np.ndarray:
        """Next ``count`` standard normal doubles."""
        out = np.empty(self._checked(count), dtype=np.float64)
        _kernels.fill_normals(self._state, out)
        return out

    @staticmethod
    def _checked(count: int) -> int:
        n = int(count)
        if n < 0:
            raise ValueError(f"count must be nonnegative, got {count}")
        return n


def derive_stream(master_seed: int, stream_id: int) -> RngStream:
    """Derive an independent stream from ``(master_seed, stream_id)``.

    The seed material is ``master_seed XOR (stream_id * golden)`` reduced
    mod 2**64, and the four state words are consecutive SplitMix64
    outputs from it.  The all-zero state, should it ever come up, is
    replaced by a fixed nonzero word.
    """
    base = (int(master_seed) ^ ((int(stream_id) * _GOLDEN) & _MASK64)) & _MASK64
    words = []
    for _ in range(4):
        base, word = _splitmix64(base)
        words.append(word)
    if not any(words):
        words[0] = _GOLDEN
    return RngStream(np.array(words, dtype=np.uint64))


def gaussian_matrix(stream: RngStream, rows: int, cols: int) -> np.ndarray:
    """A ``rows x cols`` matrix of iid standard normals, filled row-major."""
    if rows < 1 or cols < 1:
        raise InvalidDimsError(f"matrix shape must be positive, got {rows}x{cols}")
    return stream.normals(rows * cols).reshape(rows, cols)


def sphere_vector(stream: RngStream, dim: int) -> np.ndarray:
    """A point uniform on the unit sphere of R^dim (normalized Gaussian)."""
    if dim < 1:
        raise InvalidDimsError(f"dimension must be positive, got {dim}")
    for _ in range(_SPHERE_RETRIES):
        g = stream.normals(dim)
        norm = float(np.linalg.norm(g))
        if norm >= _SPHERE_NORM_FLOOR:
            return g / norm
    raise DegenerateDrawError(
        f"{_SPHERE_RETRIES} consecutive draws in dimension {dim} had norm "
        f"below {_SPHERE_NORM_FLOOR:g}"
    )


def random_subspace(stream: RngStream, dim: int, subspace_dim: int) -> Subspace:
    """Sample a subspace from the rotation-invariant distribution.

    Draws ``subspace_dim`` independent sphere points and orthonormalizes
    them through the Gram inverse square root, which keeps the span and
    therefore the distribution of the projector.  A rank-deficient draw
    (dependent sphere points) is retried once before giving up.
    """
    if not 1 <= subspace_dim <= dim:
        raise InvalidDimsError(
            f"need 1 <= subspace_dim <= dim, got subspace_dim={subspace_dim}, dim={dim}"
        )
    for attempt in range(2):
        cols = np.column_stack([sphere_vector(stream, dim) for _ in range(subspace_dim)])
        try:
            return Subspace(pinv_sqrt_apply(cols))
        except RankDeficientError:
            if attempt:
                raise
    raise AssertionError("unreachable")
