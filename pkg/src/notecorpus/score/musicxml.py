"""MusicXML parsing into the normalized note-event model.

Accepts compressed archives (.mxl: a ZIP with a META-INF/container.xml
pointing at the root score) as well as plain MusicXML documents. Only
score-partwise documents are supported.

Conventions applied while parsing:

- grace notes are dropped entirely (they carry no duration and would distort
  density and duration statistics),
- unpitched/percussion notes are dropped,
- chords become co-onset events, ``is_chord_member`` set on all but the first,
- tie chains are merged into a single event spanning the chain,
- a missing tempo defaults to 120 quarter notes per minute and a missing time
  signature to 4/4, both injected at onset 0.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
import zipfile
from fractions import Fraction
from typing import Optional

from .model import (
    TIE_CONTINUE,
    TIE_NONE,
    TIE_START,
    TIE_STOP,
    NoteEvent,
    ScoreDocument,
    TempoMap,
)

DEFAULT_QPM = Fraction(120)
DEFAULT_TIME_SIGNATURE = (4, 4)

_STEP_SEMITONES = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}


class ScoreParseError(Exception):
    """Base class for score parsing failures."""


class ArchiveError(ScoreParseError):
    """The payload is not a readable archive or lacks a score entry."""


class XmlError(ScoreParseError):
    """The score document is not well-formed XML."""


class UnsupportedError(ScoreParseError):
    """Well-formed XML that this parser does not support."""


def midi_pitch(step: str, alter: int, octave: int) -> int:
    """MIDI pitch number with C4 = 60."""
    if step not in _STEP_SEMITONES:
        raise UnsupportedError(f"unknown pitch step {step!r}")
    return (octave + 1) * 12 + _STEP_SEMITONES[step] + alter


def parse_mxl(data: bytes) -> ScoreDocument:
    """Parse compressed or plain MusicXML bytes into a ScoreDocument."""
    if data[:2] == b"PK":
        xml_bytes = _extract_root_entry(data)
    else:
        xml_bytes = data
    try:
        root = ET.fromstring(xml_bytes)
    except ET.ParseError as exc:
        raise XmlError(f"malformed MusicXML: {exc}") from exc
    return _parse_partwise(root)


def _extract_root_entry(data: bytes) -> bytes:
    """Resolve the root score file inside an .mxl ZIP container."""
    try:
        archive = zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile as exc:
        raise ArchiveError(f"not a ZIP archive: {exc}") from exc
    names = archive.namelist()

    target: Optional[str] = None
    if "META-INF/container.xml" in names:
        try:
            container = ET.fromstring(archive.read("META-INF/container.xml"))
        except ET.ParseError as exc:
            raise ArchiveError(f"unreadable container.xml: {exc}") from exc
        for rootfile in container.iter("rootfile"):
            path = rootfile.get("full-path")
            if path and path in names:
                target = path
                break
    if target is None:
        # No usable container reference: fall back to the first score-like
        # entry outside META-INF.
        for name in names:
            if name.startswith("META-INF/"):
                continue
            if name.lower().endswith((".xml", ".musicxml")):
                target = name
                break
    if target is None:
        raise ArchiveError("archive contains no MusicXML entry")
    return archive.read(target)


def _parse_partwise(root: ET.Element) -> ScoreDocument:
    tag = root.tag.split("}")[-1]
    if tag == "score-timewise":
        raise UnsupportedError("score-timewise documents are not supported")
    if tag != "score-partwise":
        raise UnsupportedError(f"not a MusicXML score (root element {tag!r})")

    parts = root.findall("part")
    if not parts:
        raise UnsupportedError("score has no parts")

    title = _find_text(root, "work/work-title") or _find_text(root, "movement-title") or ""
    composer = ""
    for creator in root.findall("identification/creator"):
        if creator.get("type", "composer") == "composer" and creator.text:
            composer = creator.text.strip()
            break

    events: list[NoteEvent] = []
    time_signatures: dict[Fraction, tuple[int, int]] = {}
    tempos: dict[Fraction, Fraction] = {}
    total_quarters = Fraction(0)

    for part_index, part in enumerate(parts):
        end = _parse_part(part, part_index, events, time_signatures, tempos)
        total_quarters = max(total_quarters, end)

    if not tempos:
        tempos[Fraction(0)] = DEFAULT_QPM
    elif Fraction(0) not in tempos:
        # Tempo first stated mid-score: extend it back to the start.
        first = min(tempos)
        tempos[Fraction(0)] = tempos[first]
    tempo_map = TempoMap(segments=tuple(sorted(tempos.items())))

    if not time_signatures:
        time_signatures[Fraction(0)] = DEFAULT_TIME_SIGNATURE
    elif Fraction(0) not in time_signatures:
        first = min(time_signatures)
        time_signatures[Fraction(0)] = time_signatures[first]
    signatures = tuple(
        (onset, num, den) for onset, (num, den) in sorted(time_signatures.items())
    )

    merged = _merge_tie_chains(events)
    timed = tuple(
        sorted(
            (_with_seconds(e, tempo_map) for e in merged),
            key=lambda e: (
                e.onset_quarters,
                e.part_index,
                e.voice_id,
                e.is_rest,
                -1 if e.midi_pitch is None else e.midi_pitch,
            ),
        )
    )
    return ScoreDocument(
        events=timed,
        time_signatures=signatures,
        tempo_map=tempo_map,
        title=title,
        composer_name=composer,
        part_count=len(parts),
        total_duration_quarters=total_quarters,
    )


def _parse_part(
    part: ET.Element,
    part_index: int,
    events: list[NoteEvent],
    time_signatures: dict[Fraction, tuple[int, int]],
    tempos: dict[Fraction, Fraction],
) -> Fraction:
    """Walk one part's measures, appending raw events; returns the part's end."""
    divisions = 1
    measure_start = Fraction(0)

    for measure in part.findall("measure"):
        offset = Fraction(0)
        max_offset = Fraction(0)
        last_onset = measure_start

        for child in measure:
            if child.tag == "attributes":
                div_text = _find_text(child, "divisions")
                if div_text:
                    divisions = int(float(div_text))
                    if divisions <= 0:
                        raise UnsupportedError("divisions must be positive")
                time = child.find("time")
                if time is not None:
                    beats = _find_text(time, "beats")
                    beat_type = _find_text(time, "beat-type")
                    if beats and beat_type:
                        onset = measure_start + offset
                        time_signatures.setdefault(onset, (int(beats), int(beat_type)))
            elif child.tag == "direction":
                sound = child.find("sound")
                if sound is not None and sound.get("tempo"):
                    qpm = Fraction(sound.get("tempo"))
                    if qpm > 0:
                        tempos.setdefault(measure_start + offset, qpm)
            elif child.tag == "sound" and child.get("tempo"):
                qpm = Fraction(child.get("tempo"))
                if qpm > 0:
                    tempos.setdefault(measure_start + offset, qpm)
            elif child.tag == "backup":
                offset -= _duration_quarters(child, divisions)
                if offset < 0:
                    offset = Fraction(0)
            elif child.tag == "forward":
                offset += _duration_quarters(child, divisions)
                max_offset = max(max_offset, offset)
            elif child.tag == "note":
                if child.find("grace") is not None:
                    continue
                duration = _duration_quarters(child, divisions)
                is_chord = child.find("chord") is not None
                onset = last_onset if is_chord else measure_start + offset
                event = _build_note(child, onset, duration, part_index, is_chord)
                if event is not None:
                    events.append(event)
                if not is_chord:
                    last_onset = measure_start + offset
                    offset += duration
                    max_offset = max(max_offset, offset)

        measure_start += max_offset
    return measure_start


def _build_note(
    note: ET.Element,
    onset: Fraction,
    duration: Fraction,
    part_index: int,
    is_chord: bool,
) -> Optional[NoteEvent]:
    voice = _find_text(note, "voice") or "1"
    voice_id = f"p{part_index}/v{voice}"

    if note.find("rest") is not None:
        return NoteEvent(
            onset_quarters=onset,
            duration_quarters=duration,
            onset_seconds_exact=Fraction(0),
            duration_seconds_exact=Fraction(0),
            midi_pitch=None,
            part_index=part_index,
            voice_id=voice_id,
        )
    pitch = note.find("pitch")
    if pitch is None:
        # Unpitched/percussion notes carry no usable pitch information.
        return None
    step = _find_text(pitch, "step") or ""
    alter = int(float(_find_text(pitch, "alter") or 0))
    octave = int(_find_text(pitch, "octave") or 4)

    tie_role = TIE_NONE
    tie_types = {tie.get("type") for tie in note.findall("tie")}
    if "start" in tie_types and "stop" in tie_types:
        tie_role = TIE_CONTINUE
    elif "start" in tie_types:
        tie_role = TIE_START
    elif "stop" in tie_types:
        tie_role = TIE_STOP

    staccato = note.find("notations/articulations/staccato") is not None

    return NoteEvent(
        onset_quarters=onset,
        duration_quarters=duration,
        onset_seconds_exact=Fraction(0),
        duration_seconds_exact=Fraction(0),
        midi_pitch=midi_pitch(step, alter, octave),
        part_index=part_index,
        voice_id=voice_id,
        is_chord_member=is_chord,
        is_staccato=staccato,
        tie_role=tie_role,
    )


def _merge_tie_chains(events: list[NoteEvent]) -> list[NoteEvent]:
    """Merge tied chains (same part/voice/pitch, contiguous) into single events.

    The merged event keeps the chain head's fields; its duration is the chain
    sum and its tie_role stays "start" as provenance of the merge.
    """
    merged: list[NoteEvent] = []
    consumed: set[int] = set()

    by_key: dict[tuple[int, str, Optional[int]], list[tuple[int, NoteEvent]]] = {}
    for idx, event in enumerate(events):
        by_key.setdefault((event.part_index, event.voice_id, event.midi_pitch), []).append(
            (idx, event)
        )
    for chain in by_key.values():
        chain.sort(key=lambda pair: pair[1].onset_quarters)

    for idx, event in enumerate(events):
        if idx in consumed:
            continue
        if event.is_rest or event.tie_role != TIE_START:
            merged.append(event)
            continue
        chain = by_key[(event.part_index, event.voice_id, event.midi_pitch)]
        duration = event.duration_quarters
        end = event.end_quarters
        cursor = event
        while cursor.tie_role in (TIE_START, TIE_CONTINUE):
            successor = None
            for other_idx, other in chain:
                if (
                    other_idx not in consumed
                    and other is not cursor
                    and other.onset_quarters == end
                    and other.tie_role in (TIE_STOP, TIE_CONTINUE)
                ):
                    successor = (other_idx, other)
                    break
            if successor is None:
                break
            consumed.add(successor[0])
            duration += successor[1].duration_quarters
            end = successor[1].end_quarters
            cursor = successor[1]
        merged.append(
            NoteEvent(
                onset_quarters=event.onset_quarters,
                duration_quarters=duration,
                onset_seconds_exact=Fraction(0),
                duration_seconds_exact=Fraction(0),
                midi_pitch=event.midi_pitch,
                part_index=event.part_index,
                voice_id=event.voice_id,
                is_chord_member=event.is_chord_member,
                is_staccato=event.is_staccato,
                tie_role=event.tie_role,
            )
        )
    return merged


def _with_seconds(event: NoteEvent, tempo_map: TempoMap) -> NoteEvent:
    onset_seconds = tempo_map.seconds_at(event.onset_quarters)
    end_seconds = tempo_map.seconds_at(event.end_quarters)
    return NoteEvent(
        onset_quarters=event.onset_quarters,
        duration_quarters=event.duration_quarters,
        onset_seconds_exact=onset_seconds,
        duration_seconds_exact=end_seconds - onset_seconds,
        midi_pitch=event.midi_pitch,
        part_index=event.part_index,
        voice_id=event.voice_id,
        is_chord_member=event.is_chord_member,
        is_staccato=event.is_staccato,
        tie_role=event.tie_role,
    )


def _duration_quarters(element: ET.Element, divisions: int) -> Fraction:
    text = _find_text(element, "duration")
    if not text:
        return Fraction(0)
    return Fraction(int(float(text)), divisions)


def _find_text(element: ET.Element, path: str) -> Optional[str]:
    found = element.find(path)
    if found is None or found.text is None:
        return None
    return found.text.strip()
