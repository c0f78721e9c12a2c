"""Bit-plane steganography with Fibonacci-Lucas scrambling of the secrets."""

from .bitplane import BitPlaneStack, reconstruct, replace_plane, slice_planes
from .errors import (
    DimensionError,
    DomainError,
    ImageFileError,
    KeyRangeError,
    NetpbmError,
    PeriodError,
    StegoError,
)
from .fltransform import FLMap, apply_point, build_map, fib, lucas, period, scramble, unscramble
from .metrics import QualityReport, mse, psnr, quality_report
from .stego import KeyBundle, StegoResult, decrypt_secret, embed, encrypt_secret, extract, hide, reveal

__version__ = "0.1.0"

__all__ = [
    "BitPlaneStack",
    "DimensionError",
    "DomainError",
    "FLMap",
    "ImageFileError",
    "KeyBundle",
    "KeyRangeError",
    "NetpbmError",
    "PeriodError",
    "QualityReport",
    "StegoError",
    "StegoResult",
    "apply_point",
    "build_map",
    "decrypt_secret",
    "embed",
    "encrypt_secret",
    "extract",
    "fib",
    "hide",
    "lucas",
    "mse",
    "period",
    "psnr",
    "quality_report",
    "reconstruct",
    "replace_plane",
    "reveal",
    "scramble",
    "slice_planes",
    "unscramble",
]
