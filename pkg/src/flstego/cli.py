"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 file or parse error, 4 validation
error (dimension or key). Errors go to stderr and leave --out targets
untouched.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import imgcodec
from .bitplane import slice_planes
from .errors import DimensionError, DomainError, ImageFileError, KeyRangeError, NetpbmError, StegoError
from .fltransform import MAX_MAP_INDEX, build_map, parse_map_id, period, scramble, unscramble
from .metrics import format_float, quality_report
from .stego import KeyBundle, hide, reveal

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FILE = 3
EXIT_VALIDATION = 4

SHARP_EDGE = (
    "No payload header or authentication is embedded: revealing with the wrong "
    "keyfile, or from an image that hides nothing, succeeds and writes noise."
)


class KeyFileError(StegoError, ValueError):
    """A keyfile is missing a line or has a malformed value."""


class _UsageError(Exception):
    pass


def parse_keyfile(text: str) -> tuple[str, int, tuple[int, ...]]:
    """Parse the three ``key=value`` lines: map, modulus, keys (in that order)."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    expected = ("map", "modulus", "keys")
    if len(lines) != len(expected):
        raise KeyFileError(f"keyfile needs exactly the lines {', '.join(expected)}; found {len(lines)} lines")
    values = {}
    for name, line in zip(expected, lines):
        key, sep, value = line.partition("=")
        if not sep or key.strip() != name:
            raise KeyFileError(f"expected '{name}=...' but found {line!r}")
        values[name] = value.strip()
    try:
        index = parse_map_id(values["map"])
    except DomainError as exc:
        raise KeyFileError(str(exc)) from None
    map_id = "ARNOLD" if index is None else f"FL{index}"
    try:
        modulus = int(values["modulus"])
        keys = tuple(int(k) for k in values["keys"].split(","))
    except ValueError:
        raise KeyFileError("modulus and keys must be decimal integers") from None
    if modulus < 2:
        raise KeyFileError(f"modulus must be at least 2, got {modulus}")
    return map_id, modulus, keys


def format_keyfile(keys: KeyBundle) -> str:
    return f"map={keys.map_id}\nmodulus={keys.modulus}\nkeys={','.join(map(str, keys.receiver_keys))}\n"


def load_keyfile(path) -> KeyBundle:
    try:
        text = Path(path).read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise KeyFileError(f"cannot read keyfile {path}: {exc}") from None
    try:
        map_id, modulus, keys = parse_keyfile(text)
    except KeyFileError as exc:
        raise KeyFileError(f"{path}: {exc}") from None
    return KeyBundle(map_id, modulus, keys)


def _map_arg(text: str) -> str:
    try:
        index = parse_map_id(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return "ARNOLD" if index is None else f"FL{index}"


def _resolve_modulus(requested: str, side: int) -> int:
    if requested == "auto":
        return side
    try:
        modulus = int(requested)
    except ValueError:
        raise _UsageError(f"--modulus must be 'auto' or an integer, got {requested!r}") from None
    if modulus < 2:
        raise _UsageError(f"--modulus must be at least 2, got {modulus}")
    if modulus != side:
        raise DimensionError(f"--modulus {modulus} does not match image side {side}")
    return modulus


def cmd_hide(args) -> int:
    if len(args.secret) > 8:
        raise _UsageError(f"at most 8 secrets may be hidden, got {len(args.secret)}")
    keys = load_keyfile(args.keyfile)
    cover = imgcodec.read_gray(args.cover)
    secrets = [imgcodec.read_bin(p) for p in args.secret]
    result = hide(cover, secrets, keys)
    imgcodec.write_gray(result.stego, args.out)
    if args.report:
        print(f"mse={format_float(result.mse)} psnr={format_float(result.psnr_db)}")
    return EXIT_OK


def cmd_reveal(args) -> int:
    keys = load_keyfile(args.keyfile)
    stego = imgcodec.read_gray(args.stego)
    secrets = reveal(stego, keys)
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ImageFileError(exc.errno, f"cannot create {out_dir}: {exc.strerror}") from exc
    for j, bits in enumerate(secrets, start=1):
        imgcodec.write_bin(bits, out_dir / f"secret_{j}.pbm")
    return EXIT_OK


def cmd_period(args) -> int:
    if args.modulus < 2:
        raise _UsageError(f"--modulus must be at least 2, got {args.modulus}")
    print(f"period={period(build_map(args.map, args.modulus))}")
    return EXIT_OK


def cmd_scramble(args) -> int:
    if args.iterations < 0:
        raise _UsageError(f"--iterations must be non-negative, got {args.iterations}")
    magic, img = imgcodec.read_any(args.input)
    m = build_map(args.map, _resolve_modulus(args.modulus, img.shape[0]))
    move = unscramble if args.inverse else scramble
    out = move(img, m, args.iterations)
    if magic in imgcodec.BINARY_FORMATS:
        imgcodec.write_bin(out, args.out)
    else:
        imgcodec.write_gray(out, args.out)
    return EXIT_OK


def cmd_slice(args) -> int:
    stack = slice_planes(imgcodec.read_gray(args.input))
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ImageFileError(exc.errno, f"cannot create {out_dir}: {exc.strerror}") from exc
    for k in range(1, 9):
        imgcodec.write_bin(stack.plane(k), out_dir / f"plane_{k}.pbm")
    return EXIT_OK


def cmd_metrics(args) -> int:
    a = imgcodec.read_gray(args.a, square=False)
    b = imgcodec.read_gray(args.b, square=False)
    print(quality_report(a, b).line())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flstego",
        description="Hide binary images in the low bit planes of a grayscale cover, "
        "scrambled with Fibonacci-Lucas torus maps.",
        epilog=SHARP_EDGE,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("hide", help="embed scrambled secrets into a cover", epilog=SHARP_EDGE)
    p.add_argument("--cover", required=True, help="cover image (PGM, square)")
    p.add_argument("--secret", action="append", required=True,
                   help="secret image (PBM, cover-sized); repeat for planes 1, 2, ... (max 8)")
    p.add_argument("--keyfile", required=True, help="keyfile with map=, modulus= and keys= lines")
    p.add_argument("--out", required=True, help="stego image to write (P5)")
    p.add_argument("--report", action="store_true", help="print mse= and psnr= of stego vs cover")
    p.set_defaults(func=cmd_hide)

    p = sub.add_parser("reveal", help="extract and unscramble secrets", epilog=SHARP_EDGE)
    p.add_argument("--stego", required=True, help="stego image (PGM)")
    p.add_argument("--keyfile", required=True)
    p.add_argument("--out-dir", required=True, help="directory for secret_1.pbm ... secret_k.pbm")
    p.set_defaults(func=cmd_reveal)

    p = sub.add_parser("period", help="print the period of a map mod N")
    p.add_argument("--map", required=True, type=_map_arg, help=f"FL<i> with 1 <= i <= {MAX_MAP_INDEX}, or ARNOLD")
    p.add_argument("--modulus", required=True, type=int)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("scramble", help="apply a map to an image a number of times")
    p.add_argument("--in", dest="input", required=True, help="PBM or PGM image")
    p.add_argument("--map", default="FL6", type=_map_arg)
    p.add_argument("--modulus", default="auto", help="'auto' (image side) or an integer equal to it")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--inverse", action="store_true", help="apply the inverse map instead")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("slice", help="write the 8 bit planes of a PGM")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out-dir", required=True, help="directory for plane_1.pbm ... plane_8.pbm")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("metrics", help="print mse= and psnr= between two PGMs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"flstego: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ImageFileError, NetpbmError, KeyFileError) as exc:
        print(f"flstego: error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except (DimensionError, KeyRangeError, DomainError) as exc:
        print(f"flstego: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
