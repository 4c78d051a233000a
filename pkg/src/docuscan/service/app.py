"""Local HTTP service exposing the scan pipeline to the browser UI.

JSON in, JSON or raw PNG out; no base64. Per-session operations are
serialized with the session's lock; different sessions proceed in
parallel.
"""
from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import pipeline
from ..codecs import decode_bytes, encode_jpeg_bytes, encode_png_bytes
from ..errors import CornerOrderingError, GeometryError, ImageFormatError, NoDocumentError
from ..pipeline import ScanMode
from .schemas import CropRequest, ErrorResponse, QuadModel, RotateRequest, \
    SaveResponse, SessionCreated
from .sessions import SessionStore

SAVE_BASENAME = "Scanned"


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def _png(img) -> Response:
    return Response(content=encode_png_bytes(img), media_type="image/png")


def _next_save_path(save_dir: Path) -> Path:
    candidate = save_dir / f"{SAVE_BASENAME}.jpg"
    n = 1
    while candidate.exists():
        candidate = save_dir / f"{SAVE_BASENAME}-{n}.jpg"
        n += 1
    return candidate


def create_app(save_dir: str | Path = ".", ui_dir: str | Path | None = None,
               store_capacity: int = 32) -> FastAPI:
    app = FastAPI(title="docuscan service")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"https?://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(capacity=store_capacity)
    app.state.store = store
    app.state.save_dir = Path(save_dir)
    save_lock = threading.Lock()  # collision-suffix scan + write are atomic

    @app.post("/sessions", status_code=201, response_model=SessionCreated,
              responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}})
    async def create_session(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = next((v for v in form.values() if hasattr(v, "read")), None)
            if upload is None:
                return _error(400, "multipart body carries no file")
            data = await upload.read()
        else:
            data = await request.body()
        try:
            original = decode_bytes(data, name="upload")
        except ImageFormatError as exc:
            return _error(400, str(exc))
        try:
            result = pipeline.scan(original)
        except (NoDocumentError, CornerOrderingError, GeometryError):
            # an undetectable or degenerate page is "no document" to the client
            return _error(422, "no_document")
        session = store.create(original, result)
        return SessionCreated(id=session.id,
                              detected_quad=QuadModel.from_quad(result.detected_quad))

    @app.get("/sessions/{session_id}/image")
    def get_image(session_id: str, mode: str | None = None):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        if mode is not None:
            try:
                wanted = ScanMode(mode)
            except ValueError:
                return _error(400, f"bad mode {mode!r}")
        with session.lock:
            if mode is not None:
                session.set_mode(wanted)
            return _png(session.current)

    @app.post("/sessions/{session_id}/crop")
    def crop(session_id: str, body: CropRequest):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        if len(body.points) != 4:
            return _error(400, f"need exactly 4 points, got {len(body.points)}")
        points = [(p.x, p.y) for p in body.points]
        with session.lock:
            try:
                session.push_edit(("crop", points))
            except CornerOrderingError:
                return _error(409, "reclick_corners")
            except (ValueError, GeometryError) as exc:
                return _error(400, str(exc))
            return _png(session.current)

    @app.post("/sessions/{session_id}/rotate")
    def rotate(session_id: str, body: RotateRequest):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        if body.dir not in ("left", "right"):
            return _error(400, f"bad dir {body.dir!r}")
        with session.lock:
            session.push_edit(("rotate", body.dir))
            return _png(session.current)

    @app.post("/sessions/{session_id}/save", response_model=SaveResponse,
              responses={507: {"model": ErrorResponse}})
    def save(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            payload = encode_jpeg_bytes(session.current)
        try:
            with save_lock:
                path = _next_save_path(app.state.save_dir)
                path.write_bytes(payload)
        except OSError as exc:
            return _error(507, f"cannot save: {exc}")
        return SaveResponse(path=str(path))

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        if not store.delete(session_id):
            return _error(404, "unknown session")
        return Response(status_code=204)

    if ui_dir is not None:
        bundle = Path(ui_dir)
        if (bundle / "index.html").exists():
            app.mount("/", StaticFiles(directory=bundle, html=True), name="ui")

    return app
