"""HTTP/JSON service feeding the interactive explorer.

Sessions hold a state operator and a basis handle; apply/rotate
conjugate the state by the segment propagator and return the refreshed
scene.  Bases are cached and shared; each session serializes its own
mutations.  All payloads are JSON; scenes use the canonical serializer
so equal scenes are byte-equal.
"""

from __future__ import annotations

import math
import os
import threading
import time
import uuid

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import Response
from pydantic import BaseModel, Field

from . import dropsmap as dm
from . import dynamics as dy
from . import multipole as mpole
from . import opalg
from . import scene as sc
from . import tensorbasis as tb
from .expr import ExpressionError, parse_operator

SESSION_TTL = float(os.environ.get("DROPS_SESSION_TTL", "3600"))

app = FastAPI(title="droplet explorer service")


class CouplingModel(BaseModel):
    pair: tuple[int, int]
    j_hz: float


class SegmentModel(BaseModel):
    kind: str
    duration: float = Field(ge=0)
    amplitude: float = 0.0
    phase: str = "x"
    couplings: list[CouplingModel] = []
    a: float = 0.0
    b: float = 1.0
    couplings_during_pulse: bool = False


class CreateSessionModel(BaseModel):
    n: int = Field(ge=1, le=5)
    basis: str = "lisa"
    grid: tuple[int, int] = sc.DEFAULT_GRID
    state: str | None = None


class RotateModel(BaseModel):
    axis: str
    angle: float


class ResetModel(BaseModel):
    state: str


class Session:
    def __init__(self, n: int, kind: str, basis, grid: tuple, rho: np.ndarray):
        self.id = uuid.uuid4().hex
        self.n = n
        self.kind = kind
        self.basis = basis
        self.grid = grid
        self.rho = rho
        self.step = 0
        self.history: list = []
        self.lock = threading.Lock()
        self.touched = time.monotonic()

    def scene(self) -> dict:
        spectrum = dm.decompose(self.rho, self.basis)
        return sc.build_scene(
            spectrum, self.basis, self.kind, grid=self.grid, step=self.step
        )


_sessions: dict = {}
_store_lock = threading.Lock()


def _purge():
    now = time.monotonic()
    stale = [sid for sid, s in _sessions.items() if now - s.touched > SESSION_TTL]
    for sid in stale:
        _sessions.pop(sid, None)


def _get_session(session_id: str) -> Session:
    with _store_lock:
        _purge()
        session = _sessions.get(session_id)
    if session is None:
        raise HTTPException(status_code=404, detail="unknown session")
    session.touched = time.monotonic()
    return session


def _build_basis(n: int, kind: str):
    if kind == "lisa":
        return tb.build_lisa_basis(n)
    if kind == "multipole":
        if n > 3:
            raise HTTPException(
                status_code=422, detail="multipole basis supports up to 3 spins"
            )
        return mpole.build_multipole_basis(n)
    raise HTTPException(status_code=422, detail=f"unknown basis kind {kind!r}")


def _parse_state(text: str, n: int) -> np.ndarray:
    try:
        return parse_operator(text, n)
    except ExpressionError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _scene_response(scene: dict) -> Response:
    return Response(content=sc.scene_dumps(scene), media_type="application/json")


@app.post("/session")
def create_session(body: CreateSessionModel):
    basis = _build_basis(body.n, body.basis)
    if body.state is not None:
        rho = _parse_state(body.state, body.n)
    else:
        rho = dy.named_state("zero-product", body.n)
    session = Session(body.n, body.basis, basis, tuple(body.grid), rho)
    with _store_lock:
        _purge()
        _sessions[session.id] = session
    return {"id": session.id, "n": session.n, "basis": session.kind}


@app.get("/session/{session_id}/scene")
def get_scene(session_id: str):
    session = _get_session(session_id)
    with session.lock:
        return _scene_response(session.scene())


@app.post("/session/{session_id}/apply")
def apply_segment(session_id: str, body: SegmentModel):
    session = _get_session(session_id)
    couplings = {}
    for c in body.couplings:
        k, l = c.pair
        if not 1 <= k < l <= session.n:
            raise HTTPException(status_code=422, detail=f"bad coupling pair {c.pair}")
        couplings[(k, l)] = c.j_hz
    try:
        segment = dy.PulseSegment(
            kind=body.kind,
            duration=body.duration,
            amplitude=body.amplitude,
            phase=body.phase,
            couplings=couplings,
            a=body.a,
            b=body.b,
            couplings_during_pulse=body.couplings_during_pulse,
        )
        generator = dy.segment_hamiltonian(segment, session.n)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    with session.lock:
        u = opalg.exp_hermitian(generator, segment.duration)
        session.rho = u @ session.rho @ u.conj().T
        session.step += 1
        session.history.append(body.model_dump())
        return _scene_response(session.scene())


@app.post("/session/{session_id}/rotate")
def rotate(session_id: str, body: RotateModel):
    session = _get_session(session_id)
    if body.axis not in ("x", "y", "z"):
        raise HTTPException(status_code=422, detail=f"unknown axis {body.axis!r}")
    generator = dm.rotation_generator(session.n, body.axis)
    with session.lock:
        u = opalg.exp_hermitian(generator, body.angle)
        session.rho = u @ session.rho @ u.conj().T
        session.step += 1
        session.history.append({"rotate": [body.axis, body.angle]})
        return _scene_response(session.scene())


@app.post("/session/{session_id}/reset")
def reset(session_id: str, body: ResetModel):
    session = _get_session(session_id)
    rho = _parse_state(body.state, session.n)
    with session.lock:
        session.rho = rho
        session.step = 0
        session.history.clear()
        return _scene_response(session.scene())


@app.get("/basis/{n}/labels")
def basis_labels(n: int, basis: str = "lisa"):
    if not 1 <= n <= 5:
        raise HTTPException(status_code=422, detail="n must lie in 1..5")
    handle = _build_basis(n, basis)
    labels = []
    for label, ranks in handle.droplets.items():
        label_json = label.to_json() if hasattr(label, "to_json") else label
        labels.append({"label": label_json, "ranks": sorted(ranks)})
    return {"n": n, "basis": basis, "labels": labels}
