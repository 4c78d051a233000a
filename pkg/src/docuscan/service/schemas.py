"""Pydantic wire models for the scanning service."""
from __future__ import annotations

from pydantic import BaseModel

from ..geometry import Quad


class PointModel(BaseModel):
    x: float
    y: float


class QuadModel(BaseModel):
    tl: PointModel
    tr: PointModel
    bl: PointModel
    br: PointModel

    @classmethod
    def from_quad(cls, q: Quad) -> "QuadModel":
        return cls(tl=PointModel(x=q.tl.x, y=q.tl.y), tr=PointModel(x=q.tr.x, y=q.tr.y),
                   bl=PointModel(x=q.bl.x, y=q.bl.y), br=PointModel(x=q.br.x, y=q.br.y))


class SessionCreated(BaseModel):
    id: str
    detected_quad: QuadModel


class CropRequest(BaseModel):
    points: list[PointModel]


class RotateRequest(BaseModel):
    dir: str


class SaveResponse(BaseModel):
    path: str


class ErrorResponse(BaseModel):
    error: str
