"""Symbolic score parsing and the timed note-event model."""

from .melody import melodic_intervals, melodic_streams
from .model import (
    TIE_CONTINUE,
    TIE_NONE,
    TIE_START,
    TIE_STOP,
    NoteEvent,
    ScoreDocument,
    TempoMap,
)
from .musicxml import (
    ArchiveError,
    ScoreParseError,
    UnsupportedError,
    XmlError,
    midi_pitch,
    parse_mxl,
)

__all__ = [
    "ArchiveError",
    "NoteEvent",
    "ScoreDocument",
    "ScoreParseError",
    "TempoMap",
    "TIE_CONTINUE",
    "TIE_NONE",
    "TIE_START",
    "TIE_STOP",
    "UnsupportedError",
    "XmlError",
    "melodic_intervals",
    "melodic_streams",
    "midi_pitch",
    "parse_mxl",
]
