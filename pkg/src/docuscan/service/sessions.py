"""In-memory scan sessions with replayable edit history.

A session's ``current`` image is always the scan rendering for the
active mode with every logged edit replayed on top, so switching modes
is non-destructive: the log is re-applied to the newly rendered base.
"""
from __future__ import annotations

import threading
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field

from ..pipeline import ScanMode, ScanResult, fcpt_crop, render
from ..raster import AnyRaster, Raster, rotate_ccw, rotate_cw

# service rotation keeps the scanner's key convention: right = ccw
_ROTATE = {"right": rotate_ccw, "left": rotate_cw}


def apply_edit(img: AnyRaster, edit: tuple) -> AnyRaster:
    op, arg = edit
    if op == "rotate":
        return _ROTATE[arg](img)
    if op == "crop":
        return fcpt_crop(img, arg)
    raise ValueError(f"unknown edit {op!r}")


@dataclass
class ScanSession:
    id: str
    original: Raster
    result: ScanResult
    mode: ScanMode = ScanMode.THRESH
    edit_log: list[tuple] = field(default_factory=list)
    current: AnyRaster = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self):
        if self.current is None:
            self.current = render(self.result, self.mode)

    def set_mode(self, mode: ScanMode):
        if mode is self.mode:
            return
        self.mode = mode
        self.current = self.replay()

    def push_edit(self, edit: tuple):
        self.current = apply_edit(self.current, edit)
        self.edit_log.append(edit)

    def replay(self) -> AnyRaster:
        img = render(self.result, self.mode)
        for edit in self.edit_log:
            img = apply_edit(img, edit)
        return img


class SessionStore:
    """Bounded id -> session map with least-recently-used eviction."""

    def __init__(self, capacity: int = 32):
        self.capacity = capacity
        self._sessions: OrderedDict[str, ScanSession] = OrderedDict()
        self._lock = threading.Lock()

    def create(self, original: Raster, result: ScanResult) -> ScanSession:
        session = ScanSession(id=uuid.uuid4().hex, original=original, result=result)
        with self._lock:
            self._sessions[session.id] = session
            while len(self._sessions) > self.capacity:
                self._sessions.popitem(last=False)
        return session

    def get(self, session_id: str) -> ScanSession | None:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                self._sessions.move_to_end(session_id)
            return session

    def delete(self, session_id: str) -> bool:
        with self._lock:
            return self._sessions.pop(session_id, None) is not None

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)
