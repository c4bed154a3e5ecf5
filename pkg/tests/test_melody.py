"""Melody stream and interval tests."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from notecorpus import melodic_intervals, melodic_streams, parse_mxl
from notecorpus.synth import MeasureSpec, NoteSpec, build_musicxml, simple_melody_xml

F = Fraction


def test_empty_score_has_no_streams():
    measure = MeasureSpec(voices={"1": []}, divisions=1, time=(4, 4), tempo=120)
    doc = parse_mxl(build_musicxml([[measure]]))
    assert melodic_streams(doc) == []


def test_single_voice_identity_order():
    doc = parse_mxl(simple_melody_xml([60, 64, 67]))
    assert melodic_streams(doc) == [[60, 64, 67]]


def test_chord_top_note_represents_melody():
    bar = [NoteSpec(60), NoteSpec(64, chord=True), NoteSpec(67, chord=True), NoteSpec(62)]
    measure = MeasureSpec(voices={"1": bar}, divisions=1, time=(4, 4), tempo=120)
    doc = parse_mxl(build_musicxml([[measure]]))
    assert melodic_streams(doc) == [[67, 62]]


def test_rests_do_not_break_streams():
    doc = parse_mxl(simple_melody_xml([60, None, 64, None, 67]))
    assert melodic_streams(doc) == [[60, 64, 67]]


def test_streams_ordered_by_part_and_voice():
    measure = MeasureSpec(
        voices={"2": [NoteSpec(50, F(2))], "1": [NoteSpec(70, F(2))]},
        divisions=1,
        time=(2, 4),
        tempo=120,
    )
    doc = parse_mxl(build_musicxml([[measure]]))
    assert melodic_streams(doc) == [[70], [50]]


def test_interval_examples():
    assert melodic_intervals([60]) == []
    assert melodic_intervals([60, 72, 60]) == [12, -12]
    assert melodic_intervals([60, 60, 62]) == [0, 2]


@given(st.lists(st.integers(min_value=0, max_value=127)))
def test_interval_length_and_reconstruction(stream):
    intervals = melodic_intervals(stream)
    assert len(intervals) == max(0, len(stream) - 1)
    position = stream[0] if stream else None
    for step, expected in zip(intervals, stream[1:]):
        position += step
        assert position == expected
