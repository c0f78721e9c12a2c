"""Fibonacci-Lucas torus maps: construction, period, and pixel scrambling.

A map is the 2x2 integer matrix

    (F_i  F_{i+1})
    (L_i  L_{i+1})   mod N

acting on pixel coordinates (x, y) = (row, col) of an N x N image. Sequence
indexing is F_1 = F_2 = 1 and L_1 = 2, L_2 = 1, which makes FL(6) the
matrix (8 13; 11 18).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError, DomainError, PeriodError

__all__ = [
    "MAX_SEQUENCE_INDEX",
    "MAX_MAP_INDEX",
    "ARNOLD",
    "FLMap",
    "fib",
    "lucas",
    "parse_map_id",
    "build_map",
    "apply_point",
    "period",
    "scramble",
    "unscramble",
]

# F_91 and L_91 still fit in a signed 64-bit integer.
MAX_SEQUENCE_INDEX = 91
MAX_MAP_INDEX = MAX_SEQUENCE_INDEX - 1

ARNOLD = "ARNOLD"

Matrix = tuple[int, int, int, int]


def _check_index(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"sequence index must be an integer, got {n!r}")
    n = int(n)
    if not 1 <= n <= MAX_SEQUENCE_INDEX:
        raise DomainError(f"sequence index {n} outside [1, {MAX_SEQUENCE_INDEX}]")
    return n


def _sequence(first: int, second: int, n: int) -> int:
    a, b = first, second
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def fib(n: int) -> int:
    """Return F_n with F_1 = F_2 = 1."""
    return _sequence(1, 1, _check_index(n))


def lucas(n: int) -> int:
    """Return L_n with L_1 = 2, L_2 = 1 (so L_3 = 3, L_6 = 11)."""
    return _sequence(2, 1, _check_index(n))


@dataclass(frozen=True)
class FLMap:
    """A torus map (a b; c d) mod ``modulus``.

    ``index`` is the Fibonacci-Lucas index i, or None for the Arnold cat map.
    Entries are always stored reduced into [0, modulus-1].
    """

    index: int | None
    modulus: int
    entries: Matrix

    @property
    def name(self) -> str:
        return ARNOLD if self.index is None else f"FL{self.index}"

    @property
    def det(self) -> int:
        a, b, c, d = self.entries
        return (a * d - b * c) % self.modulus

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(2, 2)

    def inverse_entries(self) -> Matrix:
        a, b, c, d = self.entries
        n = self.modulus
        inv = pow(self.det, -1, n) if n > 1 else 0
        return ((d * inv) % n, (-b * inv) % n, (-c * inv) % n, (a * inv) % n)

    def __str__(self) -> str:
        a, b, c, d = self.entries
        return f"{self.name} mod {self.modulus}: ({a} {b}; {c} {d})"


_MAP_RE = re.compile(r"^FL\s*(\d+)$", re.IGNORECASE)


def parse_map_id(map_id: int | str) -> int | None:
    """Normalise a map identifier to an FL index, or None for Arnold.

    Accepts an int i, or strings like ``"FL6"`` / ``"fl6"`` / ``"ARNOLD"``.
    """
    if isinstance(map_id, (int, np.integer)) and not isinstance(map_id, bool):
        index = int(map_id)
    elif isinstance(map_id, str):
        text = map_id.strip()
        if text.upper() == ARNOLD:
            return None
        m = _MAP_RE.match(text)
        if m is None:
            raise DomainError(f"unrecognised map identifier {map_id!r}; use FL<i> or ARNOLD")
        index = int(m.group(1))
    else:
        raise DomainError(f"unrecognised map identifier {map_id!r}")
    if not 1 <= index <= MAX_MAP_INDEX:
        raise DomainError(f"map index {index} outside [1, {MAX_MAP_INDEX}]")
    return index


def build_map(map_id: int | str | None, modulus: int) -> FLMap:
    """Build FL(i) or the Arnold map reduced mod ``modulus``.

    >>> build_map(6, 256).entries
    (8, 13, 11, 18)
    >>> build_map("FL6", 5).entries
    (3, 3, 1, 3)
    """
    if isinstance(modulus, bool) or not isinstance(modulus, (int, np.integer)):
        raise DomainError(f"modulus must be an integer, got {modulus!r}")
    modulus = int(modulus)
    if modulus < 2:
        raise DomainError(f"modulus must be at least 2, got {modulus}")
    index = None if map_id is None else parse_map_id(map_id)
    if index is None:
        raw = (1, 1, 1, 2)
    else:
        raw = (fib(index), fib(index + 1), lucas(index), lucas(index + 1))
    return FLMap(index, modulus, tuple(v % modulus for v in raw))


def apply_point(m: FLMap, p: tuple[int, int]) -> tuple[int, int]:
    """Map one coordinate pair: (x, y) -> (a x + b y, c x + d y) mod N."""
    x, y = p
    n = m.modulus
    if not (0 <= x < n and 0 <= y < n):
        raise DomainError(f"point {p} outside the {n}x{n} torus")
    a, b, c, d = m.entries
    return ((a * x + b * y) % n, (c * x + d * y) % n)


def _matmul(p: Matrix, q: Matrix, n: int) -> Matrix:
    a, b, c, d = p
    e, f, g, h = q
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def _matpow(m: Matrix, t: int, n: int) -> Matrix:
    result = (1 % n, 0, 0, 1 % n)
    base = m
    while t:
        if t & 1:
            result = _matmul(result, base, n)
        base = _matmul(base, base, n)
        t >>= 1
    return result


@lru_cache(maxsize=256)
def period(m: FLMap) -> int:
    """Smallest P >= 1 with M^P = I (mod N), by successive multiplication.

    The search is capped at N**4 steps, which exceeds the order of the whole
    matrix group mod N, so hitting the cap means the map is not invertible.
    """
    n = m.modulus
    identity = (1 % n, 0, 0, 1 % n)
    cap = n**4
    power = m.entries
    p = 1
    while power != identity:
        if p >= cap:
            raise PeriodError(f"{m} did not return to identity within {cap} steps")
        power = _matmul(power, m.entries, n)
        p += 1
    return p


def _permute(img: np.ndarray, entries: Matrix, n: int) -> np.ndarray:
    a, b, c, d = entries
    x, y = np.indices((n, n), dtype=np.int64)
    out = np.empty_like(img)
    out[(a * x + b * y) % n, (c * x + d * y) % n] = img
    return out


def _check_image(img, m: FLMap, iterations: int) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"image must be square, got shape {arr.shape}")
    if arr.shape[0] != m.modulus:
        raise DimensionError(f"image side {arr.shape[0]} does not match map modulus {m.modulus}")
    if isinstance(iterations, bool) or not isinstance(iterations, (int, np.integer)):
        raise DomainError(f"iterations must be an integer, got {iterations!r}")
    if iterations < 0:
        raise DomainError(f"iterations must be non-negative, got {iterations}")
    return arr


def scramble(img, m: FLMap, iterations: int = 1) -> np.ndarray:
    """Move every pixel (x, y) to M(x, y), ``iterations`` times.

    One step sets ``out[x', y'] = img[x, y]``. The t-fold step is carried
    out as a single move by M^t, which is the same permutation.
    """
    arr = _check_image(img, m, iterations)
    if iterations == 0:
        return arr.copy()
    return _permute(arr, _matpow(m.entries, int(iterations), m.modulus), m.modulus)


def unscramble(img, m: FLMap, iterations: int = 1) -> np.ndarray:
    """Undo :func:`scramble` by applying the inverse matrix ``iterations`` times."""
    arr = _check_image(img, m, iterations)
    if iterations == 0:
        return arr.copy()
    inv = m.inverse_entries()
    return _permute(arr, _matpow(inv, int(iterations), m.modulus), m.modulus)
