"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 no document found, 4 I/O error.
Diagnostics go to stderr (verbosity via SCAN_LOG=error|info|debug);
stdout carries only result paths, never pixel data.

Note the rotation naming follows the scanner's key convention:
``--dir right`` turns the image counter-clockwise and ``--dir left``
turns it clockwise.
"""
from __future__ import annotations

import logging
import os
import sys

import click

from . import codecs, pipeline
from .errors import CornerOrderingError, GeometryError, ImageFormatError, \
    NoDocumentError
from .raster import rotate_ccw, rotate_cw

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_DOCUMENT = 3
EXIT_IO = 4

DEFAULT_OUTPUT = "Scanned.jpg"

log = logging.getLogger("docuscan")


def _setup_logging():
    level = {"error": logging.ERROR, "info": logging.INFO,
             "debug": logging.DEBUG}.get(os.environ.get("SCAN_LOG", "error"), logging.ERROR)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s", force=True)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(path: str):
    try:
        return codecs.decode_image(path)
    except ImageFormatError as exc:
        _fail(EXIT_IO, str(exc))


def _save(img, path: str):
    try:
        codecs.encode_image(img, path)
    except (ImageFormatError, OSError) as exc:
        _fail(EXIT_IO, f"cannot write {path}: {exc}")
    click.echo(path)


def _parse_points(spec: str):
    try:
        pairs = [tuple(float(v) for v in chunk.split(",")) for chunk in spec.split(":")]
    except ValueError:
        raise click.BadParameter("points must be numeric x,y pairs")
    if len(pairs) != 4 or any(len(p) != 2 for p in pairs):
        raise click.BadParameter("need exactly 4 points as x1,y1:x2,y2:x3,y3:x4,y4")
    return pairs


@click.group()
def main():
    """Document scanner: detect, rectify, binarize, crop and rotate."""
    _setup_logging()


@main.command()
@click.argument("input_path", metavar="IN")
@click.option("--mode", type=click.Choice(["thresh", "gray", "color"]), default="thresh",
              show_default=True, help="Output rendering.")
@click.option("--out", "out_path", default=DEFAULT_OUTPUT, show_default=True,
              help="Output file; format by extension.")
@click.option("--block", type=int, default=15, show_default=True,
              help="Adaptive threshold window side (odd).")
@click.option("--c", "c_offset", type=float, default=8, show_default=True,
              help="Adaptive threshold mean offset.")
@click.option("--brighten", "brighten_amount", type=int, default=50, show_default=True,
              help="Brightness added after rectification.")
def scan(input_path, mode, out_path, block, c_offset, brighten_amount):
    """Detect the document in IN and write the scanned image."""
    img = _load(input_path)
    try:
        cfg = pipeline.PipelineConfig(brighten_amount=brighten_amount,
                                      adaptive_block=block, adaptive_c=c_offset)
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    try:
        result = pipeline.scan(img, cfg)
    except NoDocumentError as exc:
        _fail(EXIT_NO_DOCUMENT, str(exc))
    except (CornerOrderingError, GeometryError) as exc:
        _fail(EXIT_NO_DOCUMENT, f"document detection failed: {exc}")
    log.info("detected quad: %s", result.detected_quad)
    _save(pipeline.render(result, pipeline.ScanMode(mode)), out_path)


@main.command()
@click.argument("input_path", metavar="IN")
@click.option("--points", required=True, help="Corner clicks, any order: x1,y1:...:x4,y4")
@click.option("--out", "out_path", default=DEFAULT_OUTPUT, show_default=True)
def crop(input_path, points, out_path):
    """Four-click crop: warp the quad under the given points upright."""
    clicks = _parse_points(points)
    img = _load(input_path)
    try:
        out = pipeline.fcpt_crop(img, clicks)
    except CornerOrderingError as exc:
        raise click.UsageError(f"{exc} (re-click corners)")
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _save(out, out_path)


@main.command()
@click.argument("input_path", metavar="IN")
@click.option("--dir", "direction", type=click.Choice(["left", "right"]), required=True,
              help="right = counter-clockwise, left = clockwise.")
@click.option("--out", "out_path", default=DEFAULT_OUTPUT, show_default=True)
def rotate(input_path, direction, out_path):
    """Rotate the image a quarter turn."""
    img = _load(input_path)
    out = rotate_ccw(img) if direction == "right" else rotate_cw(img)
    _save(out, out_path)


@main.command()
@click.option("--port", type=int, default=8350, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--save-dir", default=".", show_default=True,
              help="Directory for images saved through the service.")
@click.option("--ui-dir", default=None, help="Built web UI bundle to serve at /.")
def serve(port, host, save_dir, ui_dir):
    """Run the local scanning service."""
    import uvicorn

    from .service.app import create_app

    app = create_app(save_dir=save_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
