"""Parser tests: cursor arithmetic, ties, chords, defaults, and errors."""

import io
import zipfile
from fractions import Fraction

import pytest

from notecorpus.score import (
    ArchiveError,
    TempoMap,
    UnsupportedError,
    XmlError,
    midi_pitch,
    parse_mxl,
)
from notecorpus.synth import MeasureSpec, NoteSpec, build_musicxml, make_mxl

F = Fraction


def make_zip(entries: dict[str, bytes]) -> bytes:
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w") as archive:
        for name, data in entries.items():
            archive.writestr(name, data)
    return buffer.getvalue()


EMPTY_SCORE = (
    b'<?xml version="1.0"?><score-partwise version="3.1">'
    b'<part-list><score-part id="P1"><part-name>A</part-name></score-part></part-list>'
    b'<part id="P1"><measure number="1"/></part></score-partwise>'
)


class TestContainers:
    def test_empty_score_in_archive_gets_defaults(self):
        container = (
            b'<?xml version="1.0"?><container><rootfiles>'
            b'<rootfile full-path="score.xml"/></rootfiles></container>'
        )
        data = make_zip({"META-INF/container.xml": container, "score.xml": EMPTY_SCORE})
        doc = parse_mxl(data)
        assert doc.events == ()
        assert doc.time_signatures == ((F(0), 4, 4),)
        assert doc.tempo_map.segments == ((F(0), F(120)),)
        assert doc.part_count == 1

    def test_plain_xml_accepted(self):
        doc = parse_mxl(EMPTY_SCORE)
        assert doc.events == ()

    def test_archive_without_container_falls_back_to_xml_entry(self):
        data = make_zip({"music/piece.xml": EMPTY_SCORE})
        assert parse_mxl(data).part_count == 1

    def test_container_with_missing_target_falls_back(self):
        container = (
            b"<container><rootfiles>"
            b'<rootfile full-path="gone.xml"/></rootfiles></container>'
        )
        data = make_zip({"META-INF/container.xml": container, "real.xml": EMPTY_SCORE})
        assert parse_mxl(data).part_count == 1

    def test_archive_without_any_score_entry(self):
        with pytest.raises(ArchiveError):
            parse_mxl(make_zip({"readme.txt": b"nothing here"}))

    def test_corrupt_zip(self):
        with pytest.raises(ArchiveError):
            parse_mxl(b"PK\x03\x04 this is not really a zip")

    def test_malformed_xml(self):
        with pytest.raises(XmlError):
            parse_mxl(b"<score-partwise><unclosed></score-partwise")

    def test_score_timewise_rejected(self):
        with pytest.raises(UnsupportedError):
            parse_mxl(b"<score-timewise><part/></score-timewise>")

    def test_non_score_root_rejected(self):
        with pytest.raises(UnsupportedError):
            parse_mxl(b"<html><body/></html>")

    def test_score_without_parts_rejected(self):
        with pytest.raises(UnsupportedError):
            parse_mxl(b'<score-partwise version="3.1"><part-list/></score-partwise>')


class TestCursor:
    def test_quarter_rest_half_at_divisions_two(self):
        bar = [NoteSpec(60), NoteSpec(None), NoteSpec(64, F(2))]
        measure = MeasureSpec(voices={"1": bar}, divisions=2, time=(4, 4), tempo=120)
        doc = parse_mxl(build_musicxml([[measure]]))
        events = doc.events
        assert [(e.onset_quarters, e.midi_pitch) for e in events] == [
            (F(0), 60),
            (F(1), None),
            (F(2), 64),
        ]
        assert events[0].duration_seconds == 0.5
        assert events[2].duration_seconds == 1.0
        assert doc.total_duration_quarters == 4

    def test_backup_creates_parallel_voices(self):
        measure = MeasureSpec(
            voices={"1": [NoteSpec(60, F(4))], "2": [NoteSpec(55)] * 4},
            divisions=2,
            time=(4, 4),
            tempo=120,
        )
        doc = parse_mxl(build_musicxml([[measure]]))
        assert len(doc.events) == 5
        v1 = [e for e in doc.events if e.voice_id == "p0/v1"]
        v2 = [e for e in doc.events if e.voice_id == "p0/v2"]
        assert [e.onset_quarters for e in v1] == [F(0)]
        assert [e.onset_quarters for e in v2] == [F(0), F(1), F(2), F(3)]
        assert doc.total_duration_quarters == 4

    def test_chord_members_share_onset(self):
        bar = [NoteSpec(60), NoteSpec(64, chord=True), NoteSpec(67, chord=True), NoteSpec(62)]
        measure = MeasureSpec(voices={"1": bar}, divisions=1, time=(4, 4), tempo=120)
        doc = parse_mxl(build_musicxml([[measure]]))
        onsets = [e.onset_quarters for e in doc.events]
        assert onsets == [F(0), F(0), F(0), F(1)]
        assert [e.is_chord_member for e in doc.events] == [False, True, True, False]

    def test_tie_chain_merged_across_measures(self):
        bar1 = [NoteSpec(64), NoteSpec(60, F(2)), NoteSpec(60, tie="start")]
        bar2 = [NoteSpec(60, F(2), tie="stop"), NoteSpec(None, F(2))]
        measures = [
            MeasureSpec(voices={"1": bar1}, divisions=2, time=(4, 4), tempo=120),
            MeasureSpec(voices={"1": bar2}),
        ]
        doc = parse_mxl(build_musicxml([measures]))
        pitched = doc.pitched_events()
        assert len(pitched) == 3
        merged = pitched[-1]
        assert merged.onset_quarters == F(3)
        assert merged.duration_quarters == F(3)
        assert merged.tie_role == "start"

    def test_three_note_tie_chain(self):
        bars = [
            [NoteSpec(60, F(4), tie="start")],
            [NoteSpec(60, F(4), tie="continue")],
            [NoteSpec(60, F(4), tie="stop")],
        ]
        measures = [MeasureSpec(voices={"1": b}) for b in bars]
        measures[0].divisions = 1
        measures[0].time = (4, 4)
        measures[0].tempo = 60
        doc = parse_mxl(build_musicxml([measures]))
        assert len(doc.events) == 1
        assert doc.events[0].duration_quarters == F(12)
        assert doc.events[0].duration_seconds == 12.0

    def test_grace_notes_excluded(self):
        bar = [NoteSpec(62, grace=True), NoteSpec(60), NoteSpec(64, F(3))]
        measure = MeasureSpec(voices={"1": bar}, divisions=1, time=(4, 4), tempo=120)
        doc = parse_mxl(build_musicxml([[measure]]))
        assert [e.midi_pitch for e in doc.events] == [60, 64]

    def test_unpitched_notes_excluded_but_advance_cursor(self):
        xml = (
            b'<score-partwise><part-list><score-part id="P1"/></part-list>'
            b'<part id="P1"><measure number="1">'
            b"<attributes><divisions>1</divisions></attributes>"
            b"<note><unpitched/><duration>1</duration><voice>1</voice></note>"
            b"<note><pitch><step>C</step><octave>4</octave></pitch>"
            b"<duration>1</duration><voice>1</voice></note>"
            b"</measure></part></score-partwise>"
        )
        doc = parse_mxl(xml)
        assert [(e.onset_quarters, e.midi_pitch) for e in doc.events] == [(F(1), 60)]

    def test_staccato_articulation_detected(self):
        bar = [NoteSpec(60, staccato=True), NoteSpec(62)]
        measure = MeasureSpec(voices={"1": bar}, divisions=1, time=(2, 4), tempo=120)
        doc = parse_mxl(build_musicxml([[measure]]))
        assert [e.is_staccato for e in doc.events] == [True, False]

    def test_multiple_parts_keep_part_indices(self):
        part1 = [MeasureSpec(voices={"1": [NoteSpec(72)]}, divisions=1, time=(1, 4), tempo=120)]
        part2 = [MeasureSpec(voices={"1": [NoteSpec(48)]}, divisions=1)]
        doc = parse_mxl(build_musicxml([part1, part2]))
        assert doc.part_count == 2
        assert sorted((e.part_index, e.midi_pitch) for e in doc.events) == [
            (0, 72),
            (1, 48),
        ]


class TestPitchAndSeconds:
    def test_midi_pitch_reference_values(self):
        assert midi_pitch("C", 0, 4) == 60
        assert midi_pitch("A", 0, 4) == 69

    def test_all_steps_and_alters(self):
        # One octave-4 note per step, with flats and sharps on each step.
        expected = {"C": 60, "D": 62, "E": 64, "F": 65, "G": 67, "A": 69, "B": 71}
        for step, base in expected.items():
            for alter in (-1, 0, 1):
                assert midi_pitch(step, alter, 4) == base + alter

    def test_alter_parsed_from_xml(self):
        xml = (
            b'<score-partwise><part-list><score-part id="P1"/></part-list>'
            b'<part id="P1"><measure number="1">'
            b"<attributes><divisions>1</divisions></attributes>"
            b"<note><pitch><step>B</step><alter>-1</alter><octave>3</octave></pitch>"
            b"<duration>1</duration><voice>1</voice></note>"
            b"</measure></part></score-partwise>"
        )
        doc = parse_mxl(xml)
        assert doc.events[0].midi_pitch == 58  # B flat 3

    def test_constant_tempo_seconds_are_exact(self):
        measure = MeasureSpec(
            voices={"1": [NoteSpec(60)] * 3}, divisions=1, time=(3, 4), tempo=90
        )
        doc = parse_mxl(build_musicxml([[measure]]))
        for event in doc.events:
            assert event.onset_seconds_exact == event.onset_quarters * 60 / F(90)

    def test_tempo_change_mid_score(self):
        bars = [
            MeasureSpec(voices={"1": [NoteSpec(60), NoteSpec(62)]},
                        divisions=1, time=(2, 4), tempo=120),
            MeasureSpec(voices={"1": [NoteSpec(64), NoteSpec(65)]}, tempo=60),
        ]
        doc = parse_mxl(build_musicxml([bars]))
        # first two quarters at 120 (0.5 s each), next two at 60 (1 s each)
        assert [e.onset_seconds for e in doc.events] == [0.0, 0.5, 1.0, 2.0]
        assert doc.total_duration_seconds == 3.0

    def test_note_spanning_tempo_change(self):
        tempo_map = TempoMap(segments=((F(0), F(120)), (F(2), F(60))))
        assert tempo_map.seconds_at(F(4)) == F(3)
        assert tempo_map.seconds_at(F(1)) == F(1, 2)


class TestInvariants:
    def test_parse_is_deterministic(self):
        data = build_musicxml(
            [[MeasureSpec(voices={"1": [NoteSpec(60), NoteSpec(72, F(2)), NoteSpec(None)]},
                          divisions=4, time=(4, 4), tempo=96)]]
        )
        assert parse_mxl(data) == parse_mxl(data)

    def test_onsets_within_total_span(self):
        data = make_mxl(
            build_musicxml(
                [[MeasureSpec(voices={"1": [NoteSpec(60 + i) for i in range(4)]},
                              divisions=1, time=(4, 4), tempo=120)]]
            )
        )
        doc = parse_mxl(data)
        for event in doc.events:
            assert F(0) <= event.onset_quarters <= doc.total_duration_quarters

    def test_voice_streams_nondecreasing_in_seconds(self):
        measure = MeasureSpec(
            voices={"1": [NoteSpec(60, F(2)), NoteSpec(62, F(2))],
                    "2": [NoteSpec(50)] * 4},
            divisions=2,
            time=(4, 4),
            tempo=100,
        )
        doc = parse_mxl(build_musicxml([[measure]]))
        streams: dict[str, list[float]] = {}
        for event in doc.events:
            streams.setdefault(event.voice_id, []).append(event.onset_seconds)
        for onsets in streams.values():
            assert onsets == sorted(onsets)
