"""Normalized timed note-event model for parsed symbolic scores.

All musical time is kept as exact ``Fraction`` quarter-note offsets; wall-clock
seconds are derived through the tempo map and only converted to float at the
model boundary, so downstream statistics stay exact for rational inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


TIE_NONE = "none"
TIE_START = "start"
TIE_CONTINUE = "continue"
TIE_STOP = "stop"


@dataclass(frozen=True)
class NoteEvent:
    """One pitched or rest event; ``midi_pitch is None`` marks a rest."""

    onset_quarters: Fraction
    duration_quarters: Fraction
    onset_seconds_exact: Fraction
    duration_seconds_exact: Fraction
    midi_pitch: Optional[int]
    part_index: int
    voice_id: str
    is_chord_member: bool = False
    is_staccato: bool = False
    tie_role: str = TIE_NONE

    @property
    def is_rest(self) -> bool:
        return self.midi_pitch is None

    @property
    def onset_seconds(self) -> float:
        return float(self.onset_seconds_exact)

    @property
    def duration_seconds(self) -> float:
        return float(self.duration_seconds_exact)

    @property
    def end_quarters(self) -> Fraction:
        return self.onset_quarters + self.duration_quarters


@dataclass(frozen=True)
class TempoMap:
    """Piecewise-constant tempo in quarter notes per minute, sorted by onset.

    Always non-empty with a segment at onset 0 (a default is injected when the
    source file carries no tempo).
    """

    segments: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("tempo map must have at least one segment")
        if self.segments[0][0] != 0:
            raise ValueError("tempo map must start at onset 0")
        for _, qpm in self.segments:
            if qpm <= 0:
                raise ValueError("tempo must be positive")

    def seconds_at(self, quarters: Fraction) -> Fraction:
        """Exact seconds elapsed from score start to the given quarter offset."""
        seconds = Fraction(0)
        for i, (onset, qpm) in enumerate(self.segments):
            if quarters <= onset:
                break
            next_onset = (
                self.segments[i + 1][0] if i + 1 < len(self.segments) else None
            )
            end = quarters if next_onset is None else min(quarters, next_onset)
            seconds += (end - onset) * 60 / qpm
        return seconds


@dataclass(frozen=True)
class ScoreDocument:
    """Parsed score: ordered events plus meter/tempo context and titles."""

    events: tuple[NoteEvent, ...]
    time_signatures: tuple[tuple[Fraction, int, int], ...]
    tempo_map: TempoMap
    title: str
    composer_name: str
    part_count: int
    total_duration_quarters: Fraction = field(default=Fraction(0))

    @property
    def total_duration_seconds_exact(self) -> Fraction:
        return self.tempo_map.seconds_at(self.total_duration_quarters)

    @property
    def total_duration_seconds(self) -> float:
        return float(self.total_duration_seconds_exact)

    def pitched_events(self) -> tuple[NoteEvent, ...]:
        return tuple(e for e in self.events if not e.is_rest)

    def transposed(self, semitones: int) -> "ScoreDocument":
        """Copy with every pitch shifted; resulting pitches must stay in 0..127."""
        events = []
        for e in self.events:
            if e.is_rest:
                events.append(e)
                continue
            pitch = e.midi_pitch + semitones
            if not 0 <= pitch <= 127:
                raise ValueError(f"transposition pushes pitch {pitch} out of range")
            events.append(
                NoteEvent(
                    onset_quarters=e.onset_quarters,
                    duration_quarters=e.duration_quarters,
                    onset_seconds_exact=e.onset_seconds_exact,
                    duration_seconds_exact=e.duration_seconds_exact,
                    midi_pitch=pitch,
                    part_index=e.part_index,
                    voice_id=e.voice_id,
                    is_chord_member=e.is_chord_member,
                    is_staccato=e.is_staccato,
                    tie_role=e.tie_role,
                )
            )
        return ScoreDocument(
            events=tuple(events),
            time_signatures=self.time_signatures,
            tempo_map=self.tempo_map,
            title=self.title,
            composer_name=self.composer_name,
            part_count=self.part_count,
            total_duration_quarters=self.total_duration_quarters,
        )

    def with_tempo_scaled(self, factor: Fraction) -> "ScoreDocument":
        """Copy with every tempo multiplied by ``factor`` (seconds recomputed)."""
        factor = Fraction(factor)
        tempo_map = TempoMap(
            segments=tuple((onset, qpm * factor) for onset, qpm in self.tempo_map.segments)
        )
        events = tuple(
            NoteEvent(
                onset_quarters=e.onset_quarters,
                duration_quarters=e.duration_quarters,
                onset_seconds_exact=tempo_map.seconds_at(e.onset_quarters),
                duration_seconds_exact=tempo_map.seconds_at(e.end_quarters)
                - tempo_map.seconds_at(e.onset_quarters),
                midi_pitch=e.midi_pitch,
                part_index=e.part_index,
                voice_id=e.voice_id,
                is_chord_member=e.is_chord_member,
                is_staccato=e.is_staccato,
                tie_role=e.tie_role,
            )
            for e in self.events
        )
        return ScoreDocument(
            events=events,
            time_signatures=self.time_signatures,
            tempo_map=tempo_map,
            title=self.title,
            composer_name=self.composer_name,
            part_count=self.part_count,
            total_duration_quarters=self.total_duration_quarters,
        )
