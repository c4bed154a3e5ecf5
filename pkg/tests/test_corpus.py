"""Corpus store tests: ingest, metadata, filtering, grouping, use cases."""

import json

import pytest

from notecorpus import extract_features, parse_mxl
from notecorpus.analytics.stats import EmptySelection
from notecorpus.corpus import (
    TYPE_TAXONOMY,
    ComposerEntry,
    CorpusStore,
    DuplicateContent,
    DuplicateName,
    UnknownName,
    UseCase,
    infer_metadata,
    opus_from_title,
    type_from_title,
)
from notecorpus.corpus.store import CorpusIoError
from notecorpus.synth import simple_melody_xml


def write_score(directory, name, pitches, title="", composer="", qpm=120):
    data = simple_melody_xml(pitches, title=title, composer=composer, qpm=qpm)
    (directory / name).write_bytes(data)
    return data


class TestMetadataInference:
    def test_nocturne_with_opus(self):
        doc = parse_mxl(simple_melody_xml([60], title="Nocturne Op. 9 No. 2"))
        meta = infer_metadata(doc)
        assert meta.composition_type == "nocturne"
        assert meta.opus == "Op. 9"

    def test_deutsch_catalog_number(self):
        doc = parse_mxl(simple_melody_xml([60], title="11. Ecossaise D.781"))
        meta = infer_metadata(doc)
        assert meta.opus == "D.781"

    def test_searle_catalog_number(self):
        assert opus_from_title("Feux follets S.139") == "S.139"

    def test_empty_title_defaults(self):
        doc = parse_mxl(simple_melody_xml([60]))
        meta = infer_metadata(doc)
        assert meta.title == "unknown"
        assert meta.composition_type == "unknown"
        assert meta.opus is None

    def test_manifest_row_wins(self):
        doc = parse_mxl(simple_melody_xml([60], title="Waltz in A"))
        meta = infer_metadata(doc, {"title": "Minuet in G", "composer": "Someone"})
        assert meta.title == "Minuet in G"
        assert meta.composition_type == "minuet"
        assert meta.composer_name == "Someone"

    def test_earliest_keyword_in_title_wins(self):
        assert type_from_title("Waltz after a Mazurka") == "waltz"
        assert type_from_title("Grand Mazurka-Waltz") == "mazurka"

    def test_taxonomy_size(self):
        assert len(TYPE_TAXONOMY) == 28
        assert "unknown" not in TYPE_TAXONOMY


class TestComposerEntry:
    def test_epochs_from_midyear(self):
        assert ComposerEntry("a", "A", 1685, 1750).epoch() == "baroque"
        assert ComposerEntry("b", "B", 1756, 1791).epoch() == "classic"
        assert ComposerEntry("c", "C", 1810, 1849).epoch() == "romantic"
        assert ComposerEntry("d", "D", 1874, 1951).epoch() == "modern"
        assert ComposerEntry("e", "E").epoch() == "unknown"

    def test_birth_must_precede_death(self):
        with pytest.raises(ValueError):
            ComposerEntry("x", "X", 1900, 1850)


class TestIngest:
    def test_empty_directory(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        store = CorpusStore(tmp_path / "corpus")
        report = store.ingest_directory(source)
        assert (report.parsed_count, report.duplicate_count, report.failed_count) == (0, 0, 0)

    def test_unreadable_root(self, tmp_path):
        store = CorpusStore(tmp_path / "corpus")
        with pytest.raises(CorpusIoError):
            store.ingest_directory(tmp_path / "missing")

    def test_three_valid_one_corrupt(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        write_score(source, "a.xml", [60, 62], title="Sonata A")
        write_score(source, "b.xml", [64, 65], title="Sonata B")
        write_score(source, "c.xml", [67, 69], title="Sonata C")
        (source / "broken.mxl").write_bytes(b"PK\x03\x04 not a zip at all")
        store = CorpusStore(tmp_path / "corpus")
        report = store.ingest_directory(source)
        assert report.parsed_count == 3
        assert report.failed_count == 1
        assert report.failed[0][0] == "broken.mxl"

    def test_same_content_under_two_names_is_duplicate(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        data = write_score(source, "one.xml", [60, 64, 67], title="Piece")
        (source / "two.xml").write_bytes(data)
        store = CorpusStore(tmp_path / "corpus")
        report = store.ingest_directory(source)
        assert report.parsed_count == 1
        assert report.duplicate_count == 1

    def test_reingest_is_a_noop(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        write_score(source, "a.xml", [60, 62, 64], title="Etude")
        store = CorpusStore(tmp_path / "corpus")
        store.ingest_directory(source)
        manifest_before = (tmp_path / "corpus" / "manifest.json").read_text()
        features_before = (tmp_path / "corpus" / "features.json").read_text()
        report = store.ingest_directory(source)
        assert report.parsed_count == 0
        assert report.duplicate_count == 1
        assert (tmp_path / "corpus" / "manifest.json").read_text() == manifest_before
        assert (tmp_path / "corpus" / "features.json").read_text() == features_before

    def test_manifest_metadata_applied(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        write_score(source, "a.xml", [60], title="ignored")
        (source / "manifest.json").write_text(
            json.dumps(
                {
                    "files": {
                        "a.xml": {
                            "title": "Nocturne Op. 9",
                            "composer": "Test Composer",
                            "composer_birth": 1800,
                            "composer_death": 1880,
                        }
                    }
                }
            )
        )
        store = CorpusStore(tmp_path / "corpus")
        store.ingest_directory(source)
        record = store.records()[0]
        assert record.title == "Nocturne Op. 9"
        assert record.composition_type == "nocturne"
        assert store.record_epoch(record) == "romantic"

    def test_copyright_filter(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        write_score(source, "old.xml", [60], title="Old Sonata")
        write_score(source, "new.xml", [62], title="New Sonata")
        write_score(source, "nodata.xml", [64], title="Mystery Sonata")
        (source / "manifest.json").write_text(
            json.dumps(
                {
                    "files": {
                        "old.xml": {"composer": "Old", "composer_birth": 1700, "composer_death": 1770},
                        "new.xml": {"composer": "New", "composer_birth": 1930, "composer_death": 2000},
                        "nodata.xml": {"composer": "Mystery"},
                    }
                }
            )
        )
        store = CorpusStore(tmp_path / "corpus")
        report = store.ingest_directory(source, enforce_public_domain=True, current_year=2026)
        assert report.parsed_count == 2
        assert report.skipped == [("new.xml", "copyright")]
        flagged = [r for r in store.records() if "no_death_data" in r.quality_flags]
        assert len(flagged) == 1

    def test_cache_matches_fresh_extraction(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        write_score(source, "a.xml", [60, 67, 64, 72], title="Rondo")
        store = CorpusStore(tmp_path / "corpus")
        store.ingest_directory(source)
        for record in store.records():
            doc = parse_mxl((store.corpus_dir / record.source_path).read_bytes())
            assert extract_features(doc).values == record.features.values

    def test_store_reload_from_disk(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        write_score(source, "a.xml", [60, 62], title="Suite in C")
        store = CorpusStore(tmp_path / "corpus")
        store.ingest_directory(source)
        reloaded = CorpusStore(tmp_path / "corpus")
        assert reloaded.records() == store.records()

    def test_stale_cache_version_triggers_reextraction(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        write_score(source, "a.xml", [60, 62], title="Suite in C")
        store = CorpusStore(tmp_path / "corpus")
        store.ingest_directory(source)
        cache_path = tmp_path / "corpus" / "features.json"
        stale = json.loads(cache_path.read_text())
        stale["catalog_version"] = "0-stale"
        for row in stale["vectors"].values():
            row["values"]["note_density"] = 999.0
        cache_path.write_text(json.dumps(stale))
        reloaded = CorpusStore(tmp_path / "corpus")
        assert reloaded.records()[0].features.values["note_density"] != 999.0


@pytest.fixture()
def small_store(tmp_path):
    source = tmp_path / "src"
    source.mkdir()
    rows = {}
    pieces = [
        ("s1.xml", [60, 62, 64], "Sonata in C", "Alice Composer", 1700, 1760),
        ("s2.xml", [65, 67, 69], "Sonata in F", "Alice Composer", 1700, 1760),
        ("w1.xml", [72, 71, 69], "Waltz in A", "Bob Writer", 1820, 1890),
        ("w2.xml", [48, 50, 52], "Waltz in B", "Bob Writer", 1820, 1890),
        ("n1.xml", [55, 57, 59], "Nocturne in E", "Carol Newer", 1880, 1960),
        ("x1.xml", [40, 45, 50], "Untitled Fragment", "Carol Newer", 1880, 1960),
    ]
    for name, pitches, title, composer, birth, death in pieces:
        write_score(source, name, pitches, title=title, composer=composer)
        rows[name] = {
            "title": title,
            "composer": composer,
            "composer_birth": birth,
            "composer_death": death,
        }
    (source / "manifest.json").write_text(json.dumps({"files": rows}))
    store = CorpusStore(tmp_path / "corpus")
    report = store.ingest_directory(source)
    assert report.parsed_count == 6
    return store


class TestFilter:
    def test_empty_query_returns_full_corpus_sorted_by_title(self, small_store):
        ids = small_store.filter()
        assert len(ids) == 6
        titles = [small_store.record(i).title for i in ids]
        assert titles == sorted(titles)

    def test_keyword_over_title_and_composer(self, small_store):
        assert len(small_store.filter(keyword="waltz")) == 2
        assert len(small_store.filter(keyword="carol")) == 2
        assert small_store.filter(keyword="zebra") == []

    def test_conjunction_matches_hand_enumeration(self, small_store):
        ids = small_store.filter(composer_ids=["alice-composer"], types=["sonata"])
        assert len(ids) == 2
        ids = small_store.filter(composer_ids=["alice-composer"], types=["waltz"])
        assert ids == []

    def test_epoch_filter(self, small_store):
        ids = small_store.filter(epochs=["romantic"])
        assert {small_store.record(i).composer_id for i in ids} == {"bob-writer"}

    def test_adding_criteria_narrows(self, small_store):
        broad = set(small_store.filter(keyword="in"))
        narrow = set(small_store.filter(keyword="in", types=["waltz"]))
        assert narrow <= broad


class TestGroup:
    def test_singleton_group(self, small_store):
        ids = small_store.filter(types=["nocturne"])
        groups = small_store.group(ids, "composer")
        assert len(groups) == 1
        key, members, vector = groups[0]
        assert key == "carol-newer"
        assert members == ids
        assert vector.values == small_store.record(ids[0]).features.values

    def test_two_composers_two_groups_with_recomputed_means(self, small_store):
        ids = small_store.filter(types=["sonata"]) + small_store.filter(types=["waltz"])
        groups = small_store.group(ids, "composer")
        assert [g[0] for g in groups] == ["alice-composer", "bob-writer"]
        for _, members, vector in groups:
            assert len(members) == 2
            for fid, value in vector.values.items():
                manual = sum(
                    small_store.record(m).features.values[fid] for m in members
                ) / len(members)
                assert value == pytest.approx(manual, abs=1e-12)

    def test_epoch_grouping_uses_registry(self, small_store):
        groups = small_store.group(small_store.filter(), "epoch")
        assert [g[0] for g in groups] == ["baroque", "modern", "romantic"]

    def test_group_then_flatten_reproduces_selection(self, small_store):
        ids = small_store.filter()
        groups = small_store.group(ids, "type")
        flattened = sorted(m for _, members, _ in groups for m in members)
        assert flattened == sorted(ids)

    def test_empty_selection(self, small_store):
        with pytest.raises(EmptySelection):
            small_store.group([], "composer")


class TestUseCases:
    def test_round_trip_identity(self, small_store):
        ids = small_store.filter(types=["sonata"])
        case = UseCase(
            name="atonality",
            selection=tuple(ids),
            selected_features=("melodic_tritones", "pitch_class_variety"),
            grouping="composer",
            eps=0.35,
            color_by="type",
        )
        small_store.save_use_case(case)
        assert small_store.load_use_case("atonality") == case

    def test_duplicate_name_rejected(self, small_store):
        case = UseCase(name="dup", selection=(), selected_features=())
        small_store.save_use_case(case)
        with pytest.raises(DuplicateName):
            small_store.save_use_case(case)

    def test_unknown_name(self, small_store):
        with pytest.raises(UnknownName):
            small_store.load_use_case("never-saved")

    def test_invalid_slug_rejected(self):
        with pytest.raises(ValueError):
            UseCase(name="Not A Slug!", selection=(), selected_features=())


class TestTimelineAndUpload:
    def test_timeline_sorted_by_birth(self, small_store):
        timeline = small_store.composer_timeline()
        births = [entry.birth_year for entry in timeline]
        assert births == sorted(births)
        assert len(timeline) == 3

    def test_composer_without_years_omitted(self, small_store):
        small_store.ingest_bytes(
            simple_melody_xml([60, 61], title="Fugue X", composer="No Dates")
        )
        names = {entry.display_name for entry in small_store.composer_timeline()}
        assert "No Dates" not in names

    def test_upload_duplicate_rejected(self, small_store):
        data = simple_melody_xml([60, 61, 62], title="Upload Me")
        record = small_store.ingest_bytes(data)
        assert record.title == "Upload Me"
        with pytest.raises(DuplicateContent):
            small_store.ingest_bytes(data)

    def test_distribution_summary_via_store(self, small_store):
        ids = small_store.filter(types=["sonata"])
        summary = small_store.summarize_distribution("note_density", ids)
        assert sum(summary.corpus_histogram) == 6
        assert sum(summary.selection_histogram) == 2
