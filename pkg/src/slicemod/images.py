"""8-bit netpbm (PGM/PPM) and CSV raster IO, normalized to [0, 1] floats.

Supported inputs: P2/P5 grayscale, P3/P6 color, and plain CSV matrices of
gray values.  The only writer is binary PPM (P6), used for label maps and
synthetic scenes.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError

__all__ = ["ImageBuffer", "read_image", "read_netpbm", "read_csv_matrix",
           "write_ppm"]


@dataclass
class ImageBuffer:
    """Pixel raster with float values in [0, 1].

    pixels has shape (height, width, channels); channels is 1 or 3.
    Flat pixel ids are row-major: id = y * width + x.
    """

    width: int
    height: int
    channels: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValidationError("image dimensions must be positive")
        if self.channels not in (1, 3):
            raise ValidationError("channels must be 1 or 3")
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.shape != (self.height, self.width, self.channels):
            raise ValidationError(
                f"pixel array shape {px.shape} does not match "
                f"({self.height}, {self.width}, {self.channels})")
        if not np.all(np.isfinite(px)):
            raise ValidationError("pixel values must be finite")
        if px.size and (px.min() < 0.0 or px.max() > 1.0):
            raise ValidationError("pixel values must lie in [0, 1]")
        self.pixels = px

    @property
    def n_pixels(self) -> int:
        return self.width * self.height


def _header_tokens(data: bytes):
    """Yield (token, end_offset) for whitespace-separated header fields,
    skipping '#' comments that run to end of line."""
    i = 0
    n = len(data)
    while i < n:
        ch = data[i:i + 1]
        if ch in b" \t\r\n\x0b\x0c":
            i += 1
        elif ch == b"#":
            while i < n and data[i:i + 1] not in b"\r\n":
                i += 1
        else:
            j = i
            while j < n and data[j:j + 1] not in b" \t\r\n\x0b\x0c#":
                j += 1
            yield data[i:j], j
            i = j


def read_netpbm(data: bytes) -> ImageBuffer:
    """Decode P2/P3 (ASCII) or P5/P6 (binary) bytes, 8-bit maxval."""
    tokens = _header_tokens(data)
    try:
        magic, _ = next(tokens)
    except StopIteration:
        raise ValidationError("empty image data") from None
    magic = magic.decode("latin-1")
    if magic not in ("P2", "P3", "P5", "P6"):
        raise ValidationError(f"unsupported netpbm magic {magic!r}")
    fields = []
    end = 0
    try:
        for _ in range(3):
            tok, end = next(tokens)
            fields.append(int(tok))
    except (StopIteration, ValueError):
        raise ValidationError("malformed netpbm header") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ValidationError("image dimensions must be positive")
    if not 1 <= maxval <= 255:
        raise ValidationError(f"maxval {maxval} outside 8-bit range")
    channels = 3 if magic in ("P3", "P6") else 1
    count = width * height * channels
    if magic in ("P5", "P6"):
        # binary raster starts one whitespace byte after the maxval token
        if data[end:end + 1] not in (b" ", b"\t", b"\r", b"\n"):
            raise ValidationError("missing separator before binary raster")
        start = end + 1
        raster = data[start:start + count]
        if len(raster) < count:
            raise ValidationError("truncated binary raster")
        values = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
    else:
        body = re.sub(rb"#[^\r\n]*", b" ", data[end:])
        parts = body.split()
        if len(parts) < count:
            raise ValidationError("truncated ASCII raster")
        if len(parts) > count:
            raise ValidationError("trailing data after ASCII raster")
        try:
            values = np.array([int(p) for p in parts], dtype=np.float64)
        except ValueError:
            raise ValidationError("non-integer sample in ASCII raster") from None
    if values.min() < 0 or values.max() > maxval:
        raise ValidationError("sample value exceeds maxval")
    pixels = (values / maxval).reshape(height, width, channels)
    return ImageBuffer(width, height, channels, pixels)


def read_csv_matrix(text: str) -> ImageBuffer:
    """Decode a comma-separated matrix of gray values.

    Values already in [0, 1] are taken as is; values in (1, 255] are
    interpreted as 8-bit and divided by 255; anything else is rejected.
    """
    if not text.strip():
        raise ValidationError("empty CSV matrix")
    try:
        arr = np.loadtxt(io.StringIO(text), delimiter=",", ndmin=2,
                         dtype=np.float64)
    except ValueError as exc:
        raise ValidationError(f"malformed CSV matrix: {exc}") from None
    if arr.size == 0:
        raise ValidationError("empty CSV matrix")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("CSV values must be finite")
    lo, hi = float(arr.min()), float(arr.max())
    if lo < 0:
        raise ValidationError("CSV values must be nonnegative")
    if hi > 255:
        raise ValidationError("CSV values exceed the 8-bit range")
    if hi > 1:
        arr = arr / 255.0
    h, w = arr.shape
    return ImageBuffer(w, h, 1, arr.reshape(h, w, 1))


def read_image(path) -> ImageBuffer:
    """Read a raster file, dispatching on extension (.csv) or magic bytes."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return read_csv_matrix(path.read_text())
    return read_netpbm(path.read_bytes())


def write_ppm(path, rgb: np.ndarray) -> None:
    """Write an (h, w, 3) uint8 array as binary PPM."""
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ValidationError("expected an (h, w, 3) uint8 array")
    h, w = rgb.shape[:2]
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(header + rgb.tobytes())
