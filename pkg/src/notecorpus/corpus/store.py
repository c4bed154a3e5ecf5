"""Persistent corpus of parsed compositions with a JSON-file layout.

Directory layout under the corpus root:

- ``scores/``        original source files, named by content hash
- ``manifest.json``  composition metadata plus the composer registry
- ``features.json``  feature-vector cache keyed by id and catalog version
- ``usecases/``      one JSON file per saved analysis configuration

Writers (ingest, upload, use-case save) serialize through a lock and swap in
a fresh immutable snapshot; readers always see a consistent snapshot.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional

from .. import features as feature_catalog
from ..analytics.stats import (
    DistributionSummary,
    EmptySelection,
    aggregate_group,
    distribution_summary,
)
from ..features import FeatureVector, extract_features
from ..score.model import ScoreDocument
from ..score.musicxml import ScoreParseError, parse_mxl
from .metadata import (
    DEFAULT_EPOCH_BOUNDARIES,
    UNKNOWN,
    ComposerEntry,
    EpochBoundaries,
    composer_slug,
    infer_metadata,
)

GROUPING_MODES = ("composer", "type", "epoch")
COPYRIGHT_SAFE_YEARS = 70

_SLUG_RE = re.compile(r"^[a-z0-9][a-z0-9\-_]*$")
_SOURCE_SUFFIXES = (".mxl", ".xml", ".musicxml")


class CorpusIoError(OSError):
    """The corpus or source directory root cannot be read."""


class DuplicateContent(ValueError):
    """Uploaded bytes match an existing record's content hash."""

    def __init__(self, existing_id: str):
        super().__init__(f"duplicate of composition {existing_id}")
        self.existing_id = existing_id


class DuplicateName(ValueError):
    """A use case with this slug already exists."""


class UnknownName(KeyError):
    """No use case with this slug exists."""


class UnknownComposition(KeyError):
    """No composition with this id exists."""


@dataclass(frozen=True)
class CompositionRecord:
    id: str
    title: str
    composer_id: str
    composer_name: str
    composition_type: str
    opus: Optional[str]
    features: FeatureVector
    quality_flags: frozenset[str]
    source_path: str


@dataclass(frozen=True)
class UseCase:
    """A saved analysis configuration, addressable by slug."""

    name: str
    selection: tuple[str, ...]
    selected_features: tuple[str, ...]
    grouping: str = "none"
    eps: Optional[float] = None
    color_by: str = "epoch"

    def __post_init__(self) -> None:
        if not _SLUG_RE.match(self.name):
            raise ValueError(f"use case name must be a url-safe slug: {self.name!r}")
        if self.grouping not in ("none",) + GROUPING_MODES:
            raise ValueError(f"unknown grouping mode {self.grouping!r}")
        if self.color_by not in ("epoch", "type"):
            raise ValueError(f"unknown color_by {self.color_by!r}")


@dataclass
class IngestReport:
    parsed: list[str] = field(default_factory=list)
    duplicates: list[tuple[str, str]] = field(default_factory=list)
    failed: list[tuple[str, str]] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def parsed_count(self) -> int:
        return len(self.parsed)

    @property
    def duplicate_count(self) -> int:
        return len(self.duplicates)

    @property
    def failed_count(self) -> int:
        return len(self.failed)


@dataclass(frozen=True)
class _Snapshot:
    records: tuple[CompositionRecord, ...]
    composers: dict[str, ComposerEntry]

    def by_id(self) -> dict[str, CompositionRecord]:
        return {r.id: r for r in self.records}


def content_hash(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class CorpusStore:
    """Single-writer, many-reader corpus over a directory of score files."""

    def __init__(
        self,
        corpus_dir: str | Path,
        epoch_boundaries: EpochBoundaries = DEFAULT_EPOCH_BOUNDARIES,
    ):
        self.corpus_dir = Path(corpus_dir)
        self.scores_dir = self.corpus_dir / "scores"
        self.usecase_dir = self.corpus_dir / "usecases"
        self.manifest_path = self.corpus_dir / "manifest.json"
        self.features_path = self.corpus_dir / "features.json"
        self.epoch_boundaries = epoch_boundaries
        self._write_lock = threading.Lock()
        self._snapshot = _Snapshot(records=(), composers={})
        self.corpus_dir.mkdir(parents=True, exist_ok=True)
        self.scores_dir.mkdir(exist_ok=True)
        self.usecase_dir.mkdir(exist_ok=True)
        if self.manifest_path.exists():
            self._load()

    # ------------------------------------------------------------------
    # Read side

    @property
    def snapshot(self) -> _Snapshot:
        return self._snapshot

    def records(self) -> tuple[CompositionRecord, ...]:
        return self._snapshot.records

    def record(self, composition_id: str) -> CompositionRecord:
        found = self._snapshot.by_id().get(composition_id)
        if found is None:
            raise UnknownComposition(composition_id)
        return found

    def composer(self, composer_id: str) -> Optional[ComposerEntry]:
        return self._snapshot.composers.get(composer_id)

    def record_epoch(self, record: CompositionRecord) -> str:
        entry = self._snapshot.composers.get(record.composer_id)
        return entry.epoch(self.epoch_boundaries) if entry else UNKNOWN

    def load_document(self, composition_id: str) -> ScoreDocument:
        record = self.record(composition_id)
        return parse_mxl((self.corpus_dir / record.source_path).read_bytes())

    def filter(
        self,
        keyword: Optional[str] = None,
        composer_ids: Optional[Iterable[str]] = None,
        types: Optional[Iterable[str]] = None,
        epochs: Optional[Iterable[str]] = None,
    ) -> list[str]:
        """Ids matching the conjunction of the provided criteria, ordered by
        (title, id)."""
        composer_set = set(composer_ids) if composer_ids is not None else None
        type_set = set(types) if types is not None else None
        epoch_set = set(epochs) if epochs is not None else None
        needle = keyword.lower() if keyword else None

        out = []
        for record in self._snapshot.records:
            if needle is not None:
                haystack = f"{record.title}\n{record.composer_name}".lower()
                if needle not in haystack:
                    continue
            if composer_set is not None and record.composer_id not in composer_set:
                continue
            if type_set is not None and record.composition_type not in type_set:
                continue
            if epoch_set is not None and self.record_epoch(record) not in epoch_set:
                continue
            out.append(record)
        out.sort(key=lambda r: (r.title, r.id))
        return [r.id for r in out]

    def group(
        self, ids: Iterable[str], mode: str
    ) -> list[tuple[str, list[str], FeatureVector]]:
        """Partition the selection by metadata key and aggregate each group."""
        id_list = list(ids)
        if not id_list:
            raise EmptySelection("grouping needs a non-empty selection")
        if mode not in GROUPING_MODES:
            raise ValueError(f"unknown grouping mode {mode!r}")
        by_id = self._snapshot.by_id()
        buckets: dict[str, list[str]] = {}
        for composition_id in id_list:
            record = by_id.get(composition_id)
            if record is None:
                raise UnknownComposition(composition_id)
            if mode == "composer":
                key = record.composer_id
            elif mode == "type":
                key = record.composition_type
            else:
                key = self.record_epoch(record)
            buckets.setdefault(key, []).append(composition_id)
        return [
            (
                key,
                members,
                aggregate_group([by_id[m].features for m in members]),
            )
            for key, members in sorted(buckets.items())
        ]

    def composer_timeline(self) -> list[ComposerEntry]:
        """Composers with complete life data, sorted by birth year."""
        entries = [
            entry
            for entry in self._snapshot.composers.values()
            if entry.birth_year is not None and entry.death_year is not None
        ]
        entries.sort(key=lambda e: (e.birth_year, e.composer_id))
        return entries

    def summarize_distribution(
        self, feature_id: str, selection_ids: Iterable[str]
    ) -> DistributionSummary:
        feature_catalog.feature_descriptor(feature_id)  # raises UnknownFeature
        by_id = self._snapshot.by_id()
        selection = []
        for composition_id in selection_ids:
            record = by_id.get(composition_id)
            if record is None:
                raise UnknownComposition(composition_id)
            selection.append(record.features.values[feature_id])
        corpus = [r.features.values[feature_id] for r in self._snapshot.records]
        return distribution_summary(feature_id, selection, corpus)

    # ------------------------------------------------------------------
    # Write side

    def ingest_directory(
        self,
        source_dir: str | Path,
        enforce_public_domain: bool = False,
        current_year: int = 2026,
    ) -> IngestReport:
        """Parse every score file under ``source_dir`` into the corpus.

        Per-file failures are collected in the report and never abort the
        batch; files whose content hash is already present are reported as
        duplicates. An optional ``manifest.json`` next to the files provides
        per-file metadata and composer life data.
        """
        source = Path(source_dir)
        if not source.is_dir():
            raise CorpusIoError(f"source directory not readable: {source}")
        manifest_rows, manifest_composers = self._read_source_manifest(source)

        with self._write_lock:
            records = list(self._snapshot.records)
            composers = dict(self._snapshot.composers)
            seen = {r.id for r in records}
            report = IngestReport()

            for entry in manifest_composers:
                composers.setdefault(entry.composer_id, entry)

            paths = sorted(
                p
                for p in source.iterdir()
                if p.is_file() and p.suffix.lower() in _SOURCE_SUFFIXES
            )
            for path in paths:
                data = path.read_bytes()
                composition_id = content_hash(data)
                if composition_id in seen:
                    report.duplicates.append((path.name, composition_id))
                    continue
                row = manifest_rows.get(path.name)
                try:
                    record, entry = self._build_record(data, composition_id, row)
                except ScoreParseError as exc:
                    report.failed.append((path.name, str(exc)))
                    continue
                if entry.composer_id in composers:
                    entry = self._merge_composer(composers[entry.composer_id], entry)
                if enforce_public_domain:
                    verdict = self._copyright_verdict(entry, current_year)
                    if verdict == "protected":
                        report.skipped.append((path.name, "copyright"))
                        continue
                    if verdict == "no_death_data":
                        record = replace(
                            record,
                            quality_flags=record.quality_flags | {"no_death_data"},
                        )
                composers[entry.composer_id] = entry
                self._store_source(record.source_path, data)
                records.append(record)
                seen.add(composition_id)
                report.parsed.append(composition_id)

            records.sort(key=lambda r: r.id)
            self._swap_and_persist(records, composers)
            self._spot_check_cache()
            return report

    def ingest_bytes(
        self, data: bytes, manifest_row: Optional[dict] = None
    ) -> CompositionRecord:
        """Add a single uploaded score; raises DuplicateContent on a known hash."""
        composition_id = content_hash(data)
        with self._write_lock:
            if composition_id in {r.id for r in self._snapshot.records}:
                raise DuplicateContent(composition_id)
            record, entry = self._build_record(data, composition_id, manifest_row)
            composers = dict(self._snapshot.composers)
            if entry.composer_id in composers:
                entry = self._merge_composer(composers[entry.composer_id], entry)
            composers[entry.composer_id] = entry
            self._store_source(record.source_path, data)
            records = sorted(
                list(self._snapshot.records) + [record], key=lambda r: r.id
            )
            self._swap_and_persist(records, composers)
            return record

    def register_composer(self, entry: ComposerEntry) -> None:
        with self._write_lock:
            composers = dict(self._snapshot.composers)
            if entry.composer_id in composers:
                entry = self._merge_composer(composers[entry.composer_id], entry)
            composers[entry.composer_id] = entry
            self._swap_and_persist(list(self._snapshot.records), composers)

    def save_use_case(self, use_case: UseCase) -> None:
        path = self.usecase_dir / f"{use_case.name}.json"
        with self._write_lock:
            if path.exists():
                raise DuplicateName(use_case.name)
            payload = {
                "name": use_case.name,
                "selection": list(use_case.selection),
                "selected_features": list(use_case.selected_features),
                "grouping": use_case.grouping,
                "eps": use_case.eps,
                "color_by": use_case.color_by,
            }
            _write_json(path, payload)

    def load_use_case(self, name: str) -> UseCase:
        path = self.usecase_dir / f"{name}.json"
        if not path.exists():
            raise UnknownName(name)
        raw = json.loads(path.read_text())
        return UseCase(
            name=raw["name"],
            selection=tuple(raw["selection"]),
            selected_features=tuple(raw["selected_features"]),
            grouping=raw.get("grouping", "none"),
            eps=raw.get("eps"),
            color_by=raw.get("color_by", "epoch"),
        )

    def list_use_cases(self) -> list[UseCase]:
        names = sorted(p.stem for p in self.usecase_dir.glob("*.json"))
        return [self.load_use_case(name) for name in names]

    # ------------------------------------------------------------------
    # Internals

    def _build_record(
        self, data: bytes, composition_id: str, manifest_row: Optional[dict]
    ) -> tuple[CompositionRecord, ComposerEntry]:
        doc = parse_mxl(data)
        vector = extract_features(doc)
        meta = infer_metadata(doc, manifest_row)
        row = manifest_row or {}
        entry = ComposerEntry(
            composer_id=composer_slug(meta.composer_name),
            display_name=meta.composer_name,
            birth_year=row.get("composer_birth"),
            death_year=row.get("composer_death"),
        )
        suffix = ".mxl" if data[:2] == b"PK" else ".xml"
        record = CompositionRecord(
            id=composition_id,
            title=meta.title,
            composer_id=entry.composer_id,
            composer_name=meta.composer_name,
            composition_type=meta.composition_type,
            opus=meta.opus,
            features=vector,
            quality_flags=vector.flags,
            source_path=f"scores/{composition_id}{suffix}",
        )
        return record, entry

    @staticmethod
    def _merge_composer(existing: ComposerEntry, incoming: ComposerEntry) -> ComposerEntry:
        """Fill missing life data; existing values win."""
        return ComposerEntry(
            composer_id=existing.composer_id,
            display_name=existing.display_name,
            birth_year=existing.birth_year
            if existing.birth_year is not None
            else incoming.birth_year,
            death_year=existing.death_year
            if existing.death_year is not None
            else incoming.death_year,
        )

    @staticmethod
    def _copyright_verdict(entry: ComposerEntry, current_year: int) -> str:
        if entry.death_year is None:
            return "no_death_data"
        if current_year - entry.death_year <= COPYRIGHT_SAFE_YEARS:
            return "protected"
        return "clear"

    def _store_source(self, source_path: str, data: bytes) -> None:
        target = self.corpus_dir / source_path
        if not target.exists():
            target.write_bytes(data)

    def _spot_check_cache(self) -> None:
        """Verify the cached vector of one record against a fresh extraction."""
        records = self._snapshot.records
        if not records:
            return
        record = records[0]
        doc = parse_mxl((self.corpus_dir / record.source_path).read_bytes())
        fresh = extract_features(doc)
        if fresh.values != record.features.values:
            raise RuntimeError(
                f"feature cache inconsistent for {record.id}; delete "
                f"{self.features_path} to force re-extraction"
            )

    def _swap_and_persist(
        self, records: list[CompositionRecord], composers: dict[str, ComposerEntry]
    ) -> None:
        snapshot = _Snapshot(records=tuple(records), composers=composers)
        self._persist(snapshot)
        self._snapshot = snapshot

    def _persist(self, snapshot: _Snapshot) -> None:
        manifest = {
            "composers": [
                {
                    "composer_id": c.composer_id,
                    "display_name": c.display_name,
                    "birth_year": c.birth_year,
                    "death_year": c.death_year,
                }
                for c in sorted(snapshot.composers.values(), key=lambda c: c.composer_id)
            ],
            "records": [
                {
                    "id": r.id,
                    "title": r.title,
                    "composer_id": r.composer_id,
                    "composer_name": r.composer_name,
                    "composition_type": r.composition_type,
                    "opus": r.opus,
                    "quality_flags": sorted(r.quality_flags),
                    "source_path": r.source_path,
                }
                for r in snapshot.records
            ],
        }
        _write_json(self.manifest_path, manifest)
        cache = {
            "catalog_version": feature_catalog.CATALOG_VERSION,
            "vectors": {
                r.id: {
                    "values": r.features.values,
                    "flags": sorted(r.features.flags),
                }
                for r in snapshot.records
            },
        }
        _write_json(self.features_path, cache)

    def _load(self) -> None:
        manifest = json.loads(self.manifest_path.read_text())
        composers = {
            row["composer_id"]: ComposerEntry(
                composer_id=row["composer_id"],
                display_name=row["display_name"],
                birth_year=row.get("birth_year"),
                death_year=row.get("death_year"),
            )
            for row in manifest.get("composers", [])
        }
        cache: dict[str, dict] = {}
        if self.features_path.exists():
            raw = json.loads(self.features_path.read_text())
            if raw.get("catalog_version") == feature_catalog.CATALOG_VERSION:
                cache = raw.get("vectors", {})

        records = []
        for row in manifest.get("records", []):
            cached = cache.get(row["id"])
            if cached is not None:
                known = set(feature_catalog.feature_ids())
                vector = FeatureVector(
                    values={
                        fid: float(v)
                        for fid, v in cached["values"].items()
                        if fid in known
                    },
                    flags=frozenset(cached.get("flags", [])),
                )
                if set(vector.values) != known:
                    cached = None
                    vector = None  # incomplete cache row: re-extract below
            if cached is None:
                doc = parse_mxl((self.corpus_dir / row["source_path"]).read_bytes())
                vector = extract_features(doc)
            records.append(
                CompositionRecord(
                    id=row["id"],
                    title=row["title"],
                    composer_id=row["composer_id"],
                    composer_name=row.get("composer_name", row["composer_id"]),
                    composition_type=row["composition_type"],
                    opus=row.get("opus"),
                    features=vector,
                    quality_flags=frozenset(row.get("quality_flags", [])),
                    source_path=row["source_path"],
                )
            )
        records.sort(key=lambda r: r.id)
        snapshot = _Snapshot(records=tuple(records), composers=composers)
        if any(record.id not in cache for record in records):
            self._persist(snapshot)  # refresh the cache file
        self._snapshot = snapshot

    @staticmethod
    def _read_source_manifest(source: Path) -> tuple[dict, list[ComposerEntry]]:
        path = source / "manifest.json"
        if not path.exists():
            return {}, []
        raw = json.loads(path.read_text())
        rows = raw.get("files", {})
        composers = []
        for row in raw.get("composers", []):
            composers.append(
                ComposerEntry(
                    composer_id=composer_slug(row["name"]),
                    display_name=row["name"],
                    birth_year=row.get("birth_year"),
                    death_year=row.get("death_year"),
                )
            )
        return rows, composers


def _write_json(path: Path, payload) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload, indent=1, sort_keys=True))
    os.replace(tmp, path)
