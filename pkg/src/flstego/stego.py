"""Encrypt, embed, extract and decrypt binary secrets in the low bit planes.

The shared secret for each plane is the receiver key K_r. The sender
scrambles a secret P - K_r times, where P is the map period; the receiver
completes the cycle by scrambling K_r more times, which restores the
original. Keys are limited to [1, P-1] so an embedded plane is never the
plaintext secret.

There is no payload header: extracting from an image that carries nothing,
or with the wrong keys, yields noise rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bitplane import NUM_PLANES, as_binary, as_gray, reconstruct, replace_plane, slice_planes
from .errors import DimensionError, DomainError, KeyRangeError
from .fltransform import FLMap, build_map, parse_map_id, period, scramble
from .metrics import quality_report

__all__ = [
    "DEFAULT_MAP",
    "KeyBundle",
    "StegoResult",
    "encrypt_secret",
    "decrypt_secret",
    "embed",
    "extract",
    "hide",
    "reveal",
]

DEFAULT_MAP = "FL6"


def _check_key(m: FLMap, key: int) -> tuple[int, int]:
    p = period(m)
    if isinstance(key, bool) or not isinstance(key, (int, np.integer)):
        raise KeyRangeError(f"key must be an integer, got {key!r}")
    if p == 1:
        raise KeyRangeError(f"{m} has period 1, so no key can scramble with it")
    if not 1 <= key <= p - 1:
        raise KeyRangeError(f"key {key} outside [1, {p - 1}] for {m.name} mod {m.modulus} (period {p})")
    return int(key), p


def _check_secret(secret, m: FLMap, what: str = "secret") -> np.ndarray:
    bits = as_binary(secret, what=what)
    if bits.shape[0] != m.modulus:
        raise DimensionError(f"{what} side {bits.shape[0]} does not match map modulus {m.modulus}")
    return bits


def encrypt_secret(secret, m: FLMap, key: int) -> np.ndarray:
    """Scramble ``secret`` P - key times."""
    bits = _check_secret(secret, m)
    key, p = _check_key(m, key)
    return scramble(bits, m, p - key)


def decrypt_secret(scrambled, m: FLMap, key: int) -> np.ndarray:
    """Scramble ``scrambled`` forward ``key`` more times, completing the period."""
    bits = _check_secret(scrambled, m, what="scrambled secret")
    key, _ = _check_key(m, key)
    return scramble(bits, m, key)


def _check_count(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= NUM_PLANES:
        raise DomainError(f"number of planes must be in [1, {NUM_PLANES}], got {k!r}")
    return int(k)


def embed(cover, scrambled: Sequence) -> np.ndarray:
    """Write ``scrambled[j]`` into plane j + 1 of ``cover``."""
    cover = as_gray(cover, what="cover")
    _check_count(len(scrambled))
    stack = slice_planes(cover)
    for k, plane in enumerate(scrambled, start=1):
        plane = as_binary(plane, what=f"plane {k} payload")
        if plane.shape != cover.shape:
            raise DimensionError(f"plane {k} payload is {plane.shape}, cover is {cover.shape}")
        stack = replace_plane(stack, k, plane)
    return reconstruct(stack)


def extract(stego, k: int) -> list[np.ndarray]:
    """Return planes 1..k of ``stego``."""
    k = _check_count(k)
    stack = slice_planes(as_gray(stego, what="stego image"))
    return [stack.plane(j).copy() for j in range(1, k + 1)]


@dataclass(frozen=True)
class KeyBundle:
    """Map choice, modulus, and one receiver key per occupied plane."""

    map_id: str
    modulus: int
    receiver_keys: tuple[int, ...]

    def __post_init__(self):
        index = parse_map_id(self.map_id)
        object.__setattr__(self, "map_id", "ARNOLD" if index is None else f"FL{index}")
        keys = tuple(self.receiver_keys)
        object.__setattr__(self, "receiver_keys", keys)
        _check_count(len(keys))
        m = self.map
        for key in keys:
            _check_key(m, key)

    @property
    def map(self) -> FLMap:
        return build_map(self.map_id, self.modulus)

    @property
    def period(self) -> int:
        return period(self.map)

    def sender_counts(self) -> tuple[int, ...]:
        """Scramble iterations the sender applies, P - K_r per plane."""
        p = self.period
        return tuple(p - k for k in self.receiver_keys)

    def __len__(self) -> int:
        return len(self.receiver_keys)


@dataclass(frozen=True, eq=False)
class StegoResult:
    stego: np.ndarray
    planes_used: int
    mse: float
    psnr_db: float


def _check_modulus(img: np.ndarray, keys: KeyBundle, what: str) -> None:
    if img.shape[0] != keys.modulus:
        raise DimensionError(f"{what} side {img.shape[0]} does not match key modulus {keys.modulus}")


def hide(cover, secrets: Sequence, keys: KeyBundle) -> StegoResult:
    """Encrypt each secret with its key and embed it into planes 1..k."""
    cover = as_gray(cover, what="cover")
    _check_modulus(cover, keys, "cover")
    if len(secrets) != len(keys):
        raise DimensionError(f"{len(secrets)} secrets but {len(keys)} receiver keys")
    m = keys.map
    scrambled = [encrypt_secret(s, m, k) for s, k in zip(secrets, keys.receiver_keys)]
    stego = embed(cover, scrambled)
    report = quality_report(cover, stego)
    return StegoResult(stego, len(scrambled), report.mse, report.psnr_db)


def reveal(stego, keys: KeyBundle) -> list[np.ndarray]:
    """Extract len(keys) planes and decrypt each with its key."""
    stego = as_gray(stego, what="stego image")
    _check_modulus(stego, keys, "stego image")
    m = keys.map
    planes = extract(stego, len(keys))
    return [decrypt_secret(p, m, k) for p, k in zip(planes, keys.receiver_keys)]
