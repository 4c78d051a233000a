"""Image file codecs: PNG and JPEG via Pillow, NetPBM natively.

NetPBM (P2/P3 ASCII, P5/P6 binary, 8-bit) is decoded and encoded here
without a compression dependency so round-trips are bit-exact by
construction. Grayscale files are promoted to 3-channel on decode.
"""
from __future__ import annotations

import io
import re
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ImageFormatError
from .raster import AnyRaster, GrayRaster, Raster

JPEG_QUALITY = 90


def _promote(arr: np.ndarray) -> Raster:
    if arr.ndim == 2:
        arr = np.repeat(arr[:, :, None], 3, axis=2)
    return Raster(arr)


# --- NetPBM ---------------------------------------------------------------

_PNM_MAGICS = {b"P2": ("gray", False), b"P3": ("rgb", False),
               b"P5": ("gray", True), b"P6": ("rgb", True)}


def _pnm_tokens(data: bytes):
    """Header tokens, skipping whitespace and # comments."""
    pos = 0
    while True:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ImageFormatError("truncated NetPBM header")
        yield data[start:pos], pos


def decode_pnm(data: bytes) -> Raster:
    magic = data[:2]
    if magic not in _PNM_MAGICS:
        raise ImageFormatError(f"not a supported NetPBM file (magic {magic!r})")
    kind, binary = _PNM_MAGICS[magic]
    tokens = _pnm_tokens(data[2:])
    try:
        (w_tok, _), (h_tok, _), (max_tok, end) = next(tokens), next(tokens), next(tokens)
        w, h, maxval = int(w_tok), int(h_tok), int(max_tok)
    except (StopIteration, ValueError) as exc:
        raise ImageFormatError(f"bad NetPBM header: {exc}") from exc
    if w < 1 or h < 1 or maxval != 255:
        raise ImageFormatError(f"unsupported NetPBM geometry {w}x{h} maxval {maxval}")
    channels = 3 if kind == "rgb" else 1
    count = w * h * channels
    if binary:
        body = data[2 + end + 1:]  # single whitespace byte after maxval
        if len(body) < count:
            raise ImageFormatError("truncated NetPBM pixel data")
        arr = np.frombuffer(body[:count], dtype=np.uint8)
    else:
        values = re.split(rb"\s+", data[2 + end:].strip())
        if len(values) < count:
            raise ImageFormatError("truncated NetPBM pixel data")
        try:
            arr = np.array([int(v) for v in values[:count]], dtype=np.int64)
        except ValueError as exc:
            raise ImageFormatError(f"bad NetPBM sample: {exc}") from exc
        if arr.min() < 0 or arr.max() > 255:
            raise ImageFormatError("NetPBM sample out of range")
        arr = arr.astype(np.uint8)
    arr = arr.reshape((h, w, 3) if channels == 3 else (h, w))
    return _promote(arr)


def encode_pnm(img: AnyRaster) -> bytes:
    """P6 for color, P5 for grayscale/binary, binary bodies."""
    if isinstance(img, Raster):
        header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    else:
        header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.px.tobytes()


# --- PNG / JPEG (Pillow-backed) -------------------------------------------

def _decode_pil(data: bytes) -> Raster:
    try:
        with Image.open(io.BytesIO(data)) as im:
            if im.mode in ("L", "I;16", "I"):
                return _promote(np.asarray(im.convert("L"), dtype=np.uint8))
            return Raster(np.asarray(im.convert("RGB"), dtype=np.uint8))
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageFormatError(f"cannot decode image: {exc}") from exc


def encode_png_bytes(img: AnyRaster) -> bytes:
    mode = "RGB" if isinstance(img, Raster) else "L"
    buf = io.BytesIO()
    Image.fromarray(np.asarray(img.px), mode=mode).save(buf, format="PNG")
    return buf.getvalue()


def encode_jpeg_bytes(img: AnyRaster) -> bytes:
    mode = "RGB" if isinstance(img, Raster) else "L"
    buf = io.BytesIO()
    Image.fromarray(np.asarray(img.px), mode=mode).save(buf, format="JPEG",
                                                        quality=JPEG_QUALITY)
    return buf.getvalue()


# --- file-level API --------------------------------------------------------

def decode_bytes(data: bytes, name: str = "<bytes>") -> Raster:
    """Decode PNG, JPEG or NetPBM content into a color raster."""
    if len(data) == 0:
        raise ImageFormatError(f"{name}: empty image data")
    if data[:2] in _PNM_MAGICS:
        try:
            return decode_pnm(data)
        except ImageFormatError as exc:
            raise ImageFormatError(f"{name}: {exc}") from exc
    try:
        return _decode_pil(data)
    except ImageFormatError as exc:
        raise ImageFormatError(f"{name}: {exc}") from exc


def decode_image(path) -> Raster:
    """Read an image file; grayscale sources come back as R=G=B color."""
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise ImageFormatError(f"{p}: cannot read: {exc}") from exc
    return decode_bytes(data, name=str(p))


def encode_image(img: AnyRaster, path) -> None:
    """Write an image; the format is chosen by the file extension
    (.png lossless, .ppm/.pgm raw NetPBM, .jpg/.jpeg quality 90)."""
    p = Path(path)
    ext = p.suffix.lower()
    if ext == ".png":
        payload = encode_png_bytes(img)
    elif ext == ".ppm":
        promoted = img if isinstance(img, Raster) else _promote(np.asarray(img.px))
        payload = encode_pnm(promoted)
    elif ext == ".pgm":
        if isinstance(img, Raster):
            raise ImageFormatError(f"{p}: cannot store a color image as PGM")
        payload = encode_pnm(img)
    elif ext in (".jpg", ".jpeg"):
        payload = encode_jpeg_bytes(img)
    else:
        raise ImageFormatError(f"{p}: unsupported output extension {ext!r}")
    p.write_bytes(payload)
