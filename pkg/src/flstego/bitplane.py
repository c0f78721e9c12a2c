"""Bit-plane decomposition of 8-bit grayscale images.

Planes are numbered 1..8, with plane 1 the least significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError

__all__ = [
    "NUM_PLANES",
    "BitPlaneStack",
    "as_gray",
    "as_binary",
    "slice_planes",
    "replace_plane",
    "reconstruct",
]

NUM_PLANES = 8


def _square(arr: np.ndarray, what: str) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{what} must be a square 2-D array, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise DimensionError(f"{what} side must be at least 2, got {arr.shape[0]}")


def as_gray(img, what: str = "gray image") -> np.ndarray:
    """Validate a square 8-bit image and return it as a uint8 array."""
    arr = np.asarray(img)
    _square(arr, what)
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise DomainError(f"{what} values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def as_binary(img, what: str = "binary image") -> np.ndarray:
    """Validate a square 0/1 image and return it as a uint8 array."""
    arr = np.asarray(img)
    _square(arr, what)
    if arr.dtype == np.bool_:
        return arr.astype(np.uint8)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise DomainError(f"{what} may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.uint8, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BitPlaneStack:
    """Eight binary planes of an N x N image, stored as a (8, N, N) array.

    ``planes[k - 1]`` is plane k. The array is read-only.
    """

    planes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.planes)
        if arr.ndim != 3 or arr.shape[0] != NUM_PLANES or arr.shape[1] != arr.shape[2]:
            raise DimensionError(f"a bit-plane stack must have shape (8, N, N), got {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise DomainError("bit planes may only contain 0 and 1")
        object.__setattr__(self, "planes", _readonly(arr))

    @property
    def side(self) -> int:
        return self.planes.shape[1]

    def plane(self, k: int) -> np.ndarray:
        return self.planes[_check_plane(k) - 1]

    def __eq__(self, other):
        if not isinstance(other, BitPlaneStack):
            return NotImplemented
        return np.array_equal(self.planes, other.planes)

    def __iter__(self):
        return iter(self.planes)

    def __len__(self):
        return NUM_PLANES


def _check_plane(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= NUM_PLANES:
        raise DomainError(f"plane number must be in [1, {NUM_PLANES}], got {k!r}")
    return int(k)


def slice_planes(img) -> BitPlaneStack:
    arr = as_gray(img)
    shifts = np.arange(NUM_PLANES, dtype=np.uint8)[:, None, None]
    return BitPlaneStack((arr[None, :, :] >> shifts) & 1)


def replace_plane(stack: BitPlaneStack, k: int, plane) -> BitPlaneStack:
    """Return a copy of ``stack`` with plane ``k`` set to ``plane``."""
    k = _check_plane(k)
    bits = as_binary(plane, what="replacement plane")
    if bits.shape[0] != stack.side:
        raise DimensionError(f"plane side {bits.shape[0]} does not match stack side {stack.side}")
    planes = stack.planes.copy()
    planes[k - 1] = bits
    return BitPlaneStack(planes)


def reconstruct(stack: BitPlaneStack) -> np.ndarray:
    weights = (1 << np.arange(NUM_PLANES, dtype=np.uint16))[:, None, None]
    return (stack.planes.astype(np.uint16) * weights).sum(axis=0).astype(np.uint8)
