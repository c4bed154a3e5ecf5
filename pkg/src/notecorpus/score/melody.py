"""Melody stream extraction and interval computation."""

from __future__ import annotations

from .model import ScoreDocument


def melodic_streams(doc: ScoreDocument) -> list[list[int]]:
    """One pitch sequence per (part, voice), ordered by onset.

    Co-onset pitches (chords) are represented by their highest pitch; rests
    are skipped without breaking the sequence. Streams are ordered by
    (part_index, voice_id) and may be empty lists for all-rest voices.
    """
    voices: dict[tuple[int, str], dict] = {}
    for event in doc.events:
        if event.is_rest:
            continue
        key = (event.part_index, event.voice_id)
        onsets = voices.setdefault(key, {})
        current = onsets.get(event.onset_quarters)
        if current is None or event.midi_pitch > current:
            onsets[event.onset_quarters] = event.midi_pitch
    streams = []
    for key in sorted(voices):
        onsets = voices[key]
        streams.append([onsets[onset] for onset in sorted(onsets)])
    return streams


def melodic_intervals(stream: list[int]) -> list[int]:
    """Signed semitone steps between successive pitches of one stream."""
    return [stream[i + 1] - stream[i] for i in range(len(stream) - 1)]
