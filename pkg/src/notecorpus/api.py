"""HTTP JSON API over a corpus store.

All read endpoints are pure functions of the current corpus snapshot, so an
identical query always yields an identical body. Errors are always JSON
objects with a machine ``code`` (bad_request, not_found, conflict,
unprocessable), a human ``message``, and an optional ``detail``.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import features as feature_catalog
from .analytics import (
    TooFewEntities,
    correlation_matrix,
    dbscan,
    mds_project,
    standardize,
)
from .analytics.stats import EmptySelection
from .corpus.store import (
    CorpusStore,
    DuplicateContent,
    DuplicateName,
    UnknownComposition,
    UnknownName,
    UseCase,
)
from .features import UnknownFeature
from .score.musicxml import ArchiveError, UnsupportedError, XmlError

PREVIEW_SECONDS = 60.0
MAX_PAGE_SIZE = 1000


class ApiFailure(Exception):
    def __init__(self, status: int, code: str, message: str, detail: Optional[str] = None):
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


def _bad_request(message, detail=None):
    return ApiFailure(400, "bad_request", message, detail)


def _not_found(message, detail=None):
    return ApiFailure(404, "not_found", message, detail)


def _conflict(message, detail=None):
    return ApiFailure(409, "conflict", message, detail)


def _unprocessable(message, detail=None):
    return ApiFailure(422, "unprocessable", message, detail)


class ProjectionRequest(BaseModel):
    ids: list[str]
    features: list[str]
    grouping: str = "none"


class ClusterRequest(BaseModel):
    coords: list[tuple[float, float]]
    eps: float


class UseCasePayload(BaseModel):
    name: str
    selection: list[str]
    selected_features: list[str]
    grouping: str = "none"
    eps: Optional[float] = None
    color_by: str = Field(default="epoch")


def create_app(store: CorpusStore, frontend_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="notecorpus", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiFailure)
    async def _handle_failure(request: Request, exc: ApiFailure):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "detail": exc.detail},
        )

    def record_payload(record, with_features: bool = False) -> dict:
        body = {
            "id": record.id,
            "title": record.title,
            "composer_id": record.composer_id,
            "composer_name": record.composer_name,
            "composition_type": record.composition_type,
            "opus": record.opus,
            "epoch": store.record_epoch(record),
            "quality_flags": sorted(record.quality_flags),
        }
        if with_features:
            body["features"] = record.features.values
        return body

    def resolve_records(ids: list[str]):
        by_id = store.snapshot.by_id()
        records = []
        for composition_id in ids:
            record = by_id.get(composition_id)
            if record is None:
                raise _not_found(f"unknown composition {composition_id!r}")
            records.append(record)
        return records

    def validate_features(ids: list[str]) -> list[str]:
        for fid in ids:
            if not feature_catalog.is_known_feature(fid):
                raise _unprocessable(f"unknown feature {fid!r}")
        return ids

    @app.get("/api/compositions")
    def list_compositions(
        keyword: Optional[str] = None,
        composer: Optional[str] = None,
        type: Optional[str] = None,
        epoch: Optional[str] = None,
        offset: int = 0,
        limit: int = MAX_PAGE_SIZE,
    ):
        if offset < 0 or limit < 0:
            raise _bad_request("offset and limit must be nonnegative")
        limit = min(limit, MAX_PAGE_SIZE)
        ids = store.filter(
            keyword=keyword,
            composer_ids=[composer] if composer else None,
            types=[type] if type else None,
            epochs=[epoch] if epoch else None,
        )
        page = ids[offset : offset + limit]
        by_id = store.snapshot.by_id()
        return {
            "total": len(ids),
            "offset": offset,
            "limit": limit,
            "items": [record_payload(by_id[i]) for i in page],
        }

    @app.get("/api/features")
    def feature_matrix(ids: str = "", features: str = ""):
        id_list = _split(ids)
        feature_list = validate_features(_split(features))
        records = resolve_records(id_list)
        return {
            "features": feature_list,
            "rows": [
                {
                    "id": record.id,
                    "values": {fid: record.features.values[fid] for fid in feature_list},
                }
                for record in records
            ],
        }

    @app.get("/api/features/catalog")
    def feature_catalog_listing():
        return {
            "catalog_version": feature_catalog.CATALOG_VERSION,
            "features": [
                {
                    "id": d.id,
                    "display_name": d.display_name,
                    "category": d.category,
                    "description": d.description,
                    "unit": d.unit,
                }
                for d in feature_catalog.catalog()
            ],
        }

    @app.post("/api/projection")
    def projection(request: ProjectionRequest):
        feature_list = validate_features(request.features)
        if not feature_list:
            raise _unprocessable("projection needs at least one feature")
        records = resolve_records(request.ids)

        groups: Optional[dict[str, list[str]]] = None
        if request.grouping != "none":
            if request.grouping not in ("composer", "type", "epoch"):
                raise _unprocessable(f"unknown grouping {request.grouping!r}")
            grouped = store.group(request.ids, request.grouping)
            entity_ids = [key for key, _, _ in grouped]
            vectors = [vector for _, _, vector in grouped]
            groups = {key: members for key, members, _ in grouped}
        else:
            entity_ids = [record.id for record in records]
            vectors = [record.features for record in records]

        matrix = np.asarray(
            [[v.values[fid] for fid in feature_list] for v in vectors], dtype=float
        )
        try:
            standardized, kept = standardize(matrix)
            layout = mds_project(
                standardized,
                entity_ids=entity_ids,
                used_features=[feature_list[j] for j in kept],
            )
        except TooFewEntities as exc:
            raise _unprocessable(str(exc))
        return {
            "entity_ids": list(layout.entity_ids),
            "coords": [[x, y] for x, y in layout.coords],
            "used_features": list(layout.used_features),
            "stress": layout.stress,
            "degenerate": layout.degenerate,
            "diameter": layout.diameter,
            "groups": groups,
        }

    @app.post("/api/clusters")
    def clusters(request: ClusterRequest):
        if request.eps <= 0 or not math.isfinite(request.eps):
            raise _unprocessable("eps must be a positive finite number")
        result = dbscan(request.coords, eps=request.eps)
        return {
            "labels": list(result.labels),
            "eps": result.eps,
            "min_pts": result.min_pts,
            "hulls": [
                {"label": label, "vertices": [[x, y] for x, y in polygon]}
                for label, polygon in result.hulls
            ],
        }

    @app.get("/api/distribution")
    def distribution(feature: str, ids: str = ""):
        id_list = _split(ids)
        try:
            summary = store.summarize_distribution(feature, id_list)
        except UnknownFeature:
            raise _unprocessable(f"unknown feature {feature!r}")
        except UnknownComposition as exc:
            raise _not_found(f"unknown composition {exc.args[0]!r}")
        except EmptySelection as exc:
            raise _unprocessable(str(exc))
        return {
            "feature_id": summary.feature_id,
            "selection_stats": {
                "min": summary.selection_stats[0],
                "median": summary.selection_stats[1],
                "max": summary.selection_stats[2],
            },
            "corpus_stats": {
                "min": summary.corpus_stats[0],
                "median": summary.corpus_stats[1],
                "max": summary.corpus_stats[2],
            },
            "bin_edges": list(summary.bin_edges),
            "selection_histogram": list(summary.selection_histogram),
            "corpus_histogram": list(summary.corpus_histogram),
        }

    @app.get("/api/correlation")
    def correlation(ids: str = "", features: str = ""):
        id_list = _split(ids)
        feature_list = validate_features(_split(features))
        if not feature_list:
            raise _unprocessable("correlation needs at least one feature")
        records = resolve_records(id_list)
        matrix = np.asarray(
            [[r.features.values[fid] for fid in feature_list] for r in records],
            dtype=float,
        )
        try:
            corr = correlation_matrix(matrix)
        except TooFewEntities as exc:
            raise _unprocessable(str(exc))
        return {"features": feature_list, "matrix": corr}

    @app.get("/api/composers")
    def composers():
        boundaries = store.epoch_boundaries
        return {
            "items": [
                {
                    "composer_id": entry.composer_id,
                    "display_name": entry.display_name,
                    "birth_year": entry.birth_year,
                    "death_year": entry.death_year,
                    "epoch": entry.epoch(boundaries),
                }
                for entry in store.composer_timeline()
            ]
        }

    @app.get("/api/types")
    def types():
        from .corpus.metadata import TYPE_TAXONOMY, UNKNOWN

        return {"types": list(TYPE_TAXONOMY) + [UNKNOWN]}

    @app.get("/api/score/{composition_id}/preview")
    def preview(composition_id: str):
        try:
            doc = store.load_document(composition_id)
        except UnknownComposition:
            raise _not_found(f"unknown composition {composition_id!r}")
        events = []
        truncated = False
        for event in doc.events:
            if event.is_rest:
                continue
            if event.onset_seconds >= PREVIEW_SECONDS:
                truncated = True
                continue
            events.append(
                {
                    "onset_seconds": event.onset_seconds,
                    "duration_seconds": event.duration_seconds,
                    "midi_pitch": event.midi_pitch,
                    "part_index": event.part_index,
                }
            )
        return {
            "id": composition_id,
            "events": events,
            "truncated": truncated,
            "total_duration_seconds": doc.total_duration_seconds,
        }

    @app.post("/api/upload", status_code=201)
    async def upload(file: UploadFile):
        data = await file.read()
        if not data:
            raise _bad_request("empty upload")
        try:
            record = store.ingest_bytes(data)
        except ArchiveError as exc:
            raise _bad_request("not a readable score archive", str(exc))
        except (XmlError, UnsupportedError) as exc:
            raise _unprocessable("unparseable MusicXML", str(exc))
        except DuplicateContent as exc:
            raise _conflict(
                "composition already in corpus", f"existing id {exc.existing_id}"
            )
        return record_payload(record, with_features=True)

    @app.get("/api/usecases")
    def list_usecases():
        return {"items": [_usecase_payload(uc) for uc in store.list_use_cases()]}

    @app.get("/api/usecases/{name}")
    def get_usecase(name: str):
        try:
            return _usecase_payload(store.load_use_case(name))
        except UnknownName:
            raise _not_found(f"unknown use case {name!r}")

    @app.post("/api/usecases", status_code=201)
    def save_usecase(payload: UseCasePayload):
        validate_features(payload.selected_features)
        try:
            use_case = UseCase(
                name=payload.name,
                selection=tuple(payload.selection),
                selected_features=tuple(payload.selected_features),
                grouping=payload.grouping,
                eps=payload.eps,
                color_by=payload.color_by,
            )
        except ValueError as exc:
            raise _unprocessable(str(exc))
        try:
            store.save_use_case(use_case)
        except DuplicateName:
            raise _conflict(f"use case {payload.name!r} already exists")
        return _usecase_payload(use_case)

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app


def _usecase_payload(use_case: UseCase) -> dict:
    return {
        "name": use_case.name,
        "selection": list(use_case.selection),
        "selected_features": list(use_case.selected_features),
        "grouping": use_case.grouping,
        "eps": use_case.eps,
        "color_by": use_case.color_by,
    }


def _split(raw: str) -> list[str]:
    return [item for item in (part.strip() for part in raw.split(",")) if item]
