"""Netpbm codecs: PGM (P2/P5, maxval 255) for covers, PBM (P1/P4) for secrets.

PBM stores 1 for black; that bit maps straight to a plane bit of 1.
Writers are atomic: data goes to a temporary file in the target directory
which is renamed over the destination only once fully written.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import HeaderError, ImageFileError, MaxvalError, NetpbmError, NonSquareError, TruncatedDataError

__all__ = [
    "GRAY_FORMATS",
    "BINARY_FORMATS",
    "parse_netpbm",
    "encode_gray",
    "encode_binary",
    "read_gray",
    "read_bin",
    "read_any",
    "write_gray",
    "write_bin",
    "atomic_write",
]

GRAY_FORMATS = ("P5", "P2")
BINARY_FORMATS = ("P4", "P1")
_WHITESPACE = b" \t\n\r\v\f"


class _Header:
    """Cursor over the whitespace/comment separated tokens of a header."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            ch = data[self.pos : self.pos + 1]
            if ch and ch in _WHITESPACE:
                self.pos += 1
            elif ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = n if end < 0 else end + 1
            else:
                break

    def token(self, what: str) -> bytes:
        self._skip()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos] not in _WHITESPACE and self.data[self.pos] != 0x23:
            self.pos += 1
        if start == self.pos:
            raise HeaderError(f"missing {what} in header")
        return self.data[start : self.pos]

    def integer(self, what: str) -> int:
        tok = self.token(what)
        if not tok.isdigit():
            raise HeaderError(f"{what} must be a decimal integer, got {tok!r}")
        value = int(tok)
        if value < 1:
            raise HeaderError(f"{what} must be positive, got {value}")
        return value


def _ascii_samples(data: bytes, count: int, what: str) -> np.ndarray:
    text = b"\n".join(line.split(b"#", 1)[0] for line in data.split(b"\n"))
    tokens = text.split()
    if len(tokens) < count:
        raise TruncatedDataError(f"expected {count} {what}, found {len(tokens)}")
    try:
        return np.array([int(t) for t in tokens[:count]], dtype=np.int64)
    except ValueError as exc:
        raise NetpbmError(f"non-numeric {what}: {exc}") from None


def _plain_bits(data: bytes, count: int) -> np.ndarray:
    # Plain PBM does not require whitespace between bits.
    text = b"".join(line.split(b"#", 1)[0] for line in data.split(b"\n"))
    digits = bytes(ch for ch in text if ch not in _WHITESPACE)
    if len(digits) < count:
        raise TruncatedDataError(f"expected {count} bits, found {len(digits)}")
    digits = digits[:count]
    if digits.strip(b"01"):
        raise NetpbmError("plain PBM raster may only contain 0 and 1")
    return np.frombuffer(digits, dtype=np.uint8) - ord("0")


def parse_netpbm(data: bytes) -> tuple[str, np.ndarray]:
    """Decode P1/P2/P4/P5 bytes into (magic, uint8 array of shape (h, w))."""
    if len(data) < 2 or data[:1] != b"P":
        raise HeaderError("not a Netpbm file (no P magic number)")
    magic = data[:2].decode("ascii", "replace")
    if magic not in GRAY_FORMATS + BINARY_FORMATS:
        raise HeaderError(f"unsupported Netpbm format {magic!r}; expected P1, P2, P4 or P5")
    hdr = _Header(data)
    hdr.pos = 2
    width = hdr.integer("width")
    height = hdr.integer("height")
    if magic in GRAY_FORMATS:
        maxval = hdr.integer("maxval")
        if maxval != 255:
            raise MaxvalError(f"maxval must be 255, got {maxval}")
    if magic in ("P4", "P5"):
        # exactly one whitespace byte separates the header from the raster
        if hdr.pos >= len(data) or data[hdr.pos] not in _WHITESPACE:
            raise HeaderError("header must end with a single whitespace byte")
        body = data[hdr.pos + 1 :]
    else:
        body = data[hdr.pos :]

    if magic == "P5":
        need = width * height
        if len(body) < need:
            raise TruncatedDataError(f"expected {need} raster bytes, found {len(body)}")
        pixels = np.frombuffer(body[:need], dtype=np.uint8).reshape(height, width)
    elif magic == "P2":
        values = _ascii_samples(body, width * height, "samples")
        if values.min() < 0 or values.max() > 255:
            raise NetpbmError("sample value outside [0, 255]")
        pixels = values.astype(np.uint8).reshape(height, width)
    elif magic == "P4":
        row_bytes = (width + 7) // 8
        need = row_bytes * height
        if len(body) < need:
            raise TruncatedDataError(f"expected {need} raster bytes, found {len(body)}")
        packed = np.frombuffer(body[:need], dtype=np.uint8).reshape(height, row_bytes)
        pixels = np.unpackbits(packed, axis=1, bitorder="big")[:, :width]
    else:
        pixels = _plain_bits(body, width * height).reshape(height, width)
    return magic, np.array(pixels, dtype=np.uint8)


def encode_gray(img, fmt: str = "P5") -> bytes:
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("gray pixel values must lie in [0, 255]")
    arr = arr.astype(np.uint8)
    h, w = arr.shape
    if fmt == "P5":
        return f"P5\n{w} {h}\n255\n".encode("ascii") + arr.tobytes()
    if fmt == "P2":
        rows = "\n".join(" ".join(str(v) for v in row) for row in arr.tolist())
        return f"P2\n{w} {h}\n255\n{rows}\n".encode("ascii")
    raise ValueError(f"unknown gray format {fmt!r}; use P5 or P2")


def encode_binary(bits, fmt: str = "P4") -> bytes:
    arr = np.asarray(bits)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("binary image may only contain 0 and 1")
    arr = arr.astype(np.uint8)
    h, w = arr.shape
    if fmt == "P4":
        return f"P4\n{w} {h}\n".encode("ascii") + np.packbits(arr, axis=1, bitorder="big").tobytes()
    if fmt == "P1":
        rows = "\n".join(" ".join(str(v) for v in row) for row in arr.tolist())
        return f"P1\n{w} {h}\n{rows}\n".encode("ascii")
    raise ValueError(f"unknown binary format {fmt!r}; use P4 or P1")


def _read(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ImageFileError(exc.errno, f"cannot read {path}: {exc.strerror}") from exc


def _load(path, formats: tuple[str, ...], square: bool) -> tuple[str, np.ndarray]:
    try:
        magic, arr = parse_netpbm(_read(path))
    except NetpbmError as exc:
        raise type(exc)(f"{path}: {exc}") from None
    if magic not in formats:
        raise HeaderError(f"{path}: expected {' or '.join(formats)}, found {magic}")
    if square and arr.shape[0] != arr.shape[1]:
        raise NonSquareError(f"{path}: image is {arr.shape[1]}x{arr.shape[0]}, must be square")
    return magic, arr


def read_gray(path, square: bool = True) -> np.ndarray:
    """Read a P5 or P2 file with maxval 255."""
    return _load(path, GRAY_FORMATS, square)[1]


def read_bin(path, square: bool = True) -> np.ndarray:
    """Read a P4 or P1 file into a 0/1 uint8 array."""
    return _load(path, BINARY_FORMATS, square)[1]


def read_any(path, square: bool = True) -> tuple[str, np.ndarray]:
    """Read any supported file, returning its magic number too."""
    return _load(path, GRAY_FORMATS + BINARY_FORMATS, square)


def atomic_write(path, data: bytes) -> None:
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    except OSError as exc:
        raise ImageFileError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise ImageFileError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def write_gray(img, path, fmt: str = "P5") -> None:
    atomic_write(path, encode_gray(img, fmt))


def write_bin(bits, path, fmt: str = "P4") -> None:
    atomic_write(path, encode_binary(bits, fmt))
