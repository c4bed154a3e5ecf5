"""Statistical feature catalog for parsed compositions.

28 features in three categories (melody, pitch, rhythm). Interval-based
features are computed over the pooled interval multiset of all melody
streams; pitch features over every pitched event including chord members.
Arithmetic stays rational (ints / ``Fraction``) until the final float
conversion, so equal inputs produce bitwise-equal vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .score.melody import melodic_intervals, melodic_streams
from .score.model import ScoreDocument

CATALOG_VERSION = "1"

MELODY = "melody"
PITCH = "pitch"
RHYTHM = "rhythm"

EMPTY_SCORE_FLAG = "empty_score"

STACCATO_DURATION_SECONDS = Fraction(1, 10)
COMMON_PITCH_THRESHOLD = Fraction(9, 100)
BASS_REGISTER_MAX_PITCH = 54
HIGH_REGISTER_MIN_PITCH = 73

CONSONANT_INTERVALS = frozenset({0, 3, 4, 5, 7, 8, 9, 12})
ARPEGGIATION_INTERVALS = frozenset({0, 3, 4, 7, 10, 11, 12, 15, 16})


class UnknownFeature(KeyError):
    """Requested feature id is not in the catalog."""


@dataclass(frozen=True)
class FeatureDescriptor:
    id: str
    display_name: str
    category: str
    description: str
    unit: str


@dataclass(frozen=True)
class FeatureVector:
    """Complete per-composition (or per-group) value map over the catalog."""

    values: dict[str, float]
    flags: frozenset[str] = field(default_factory=frozenset)


_CATALOG: list[FeatureDescriptor] = [
    # Melody
    FeatureDescriptor(
        "average_melodic_interval", "Average Melodic Interval", MELODY,
        "Mean absolute size, in semitones, of the intervals between successive "
        "melody notes, pooled across all voices.", "semitones"),
    FeatureDescriptor(
        "repeated_notes", "Repeated Notes", MELODY,
        "Fraction of melodic intervals that are exact pitch repetitions "
        "(zero semitones).", "fraction"),
    FeatureDescriptor(
        "chromatic_motion", "Chromatic Motion", MELODY,
        "Fraction of melodic intervals of exactly one semitone (minor seconds).",
        "fraction"),
    FeatureDescriptor(
        "stepwise_motion", "Stepwise Motion", MELODY,
        "Fraction of melodic intervals of one or two semitones (minor or major "
        "seconds).", "fraction"),
    FeatureDescriptor(
        "melodic_thirds", "Melodic Thirds", MELODY,
        "Fraction of melodic intervals of three or four semitones (minor or "
        "major thirds).", "fraction"),
    FeatureDescriptor(
        "melodic_fifths", "Melodic Fifths", MELODY,
        "Fraction of melodic intervals of exactly seven semitones (perfect "
        "fifths).", "fraction"),
    FeatureDescriptor(
        "melodic_tritones", "Melodic Tritones", MELODY,
        "Fraction of melodic intervals of exactly six semitones (tritones), a "
        "hallmark dissonance of atonal writing.", "fraction"),
    FeatureDescriptor(
        "melodic_octaves", "Melodic Octaves", MELODY,
        "Fraction of melodic intervals of exactly twelve semitones (octave "
        "leaps).", "fraction"),
    FeatureDescriptor(
        "melodic_consonance", "Melodic Consonance", MELODY,
        "Fraction of melodic intervals that are consonant: unisons, thirds, "
        "perfect fourths and fifths, sixths, or octaves.", "fraction"),
    FeatureDescriptor(
        "size_of_melodic_arcs", "Size of Melodic Arcs", MELODY,
        "Mean semitone span between adjacent melodic peaks and troughs; runs "
        "of repeated pitches collapse to a single point and voices with fewer "
        "than three notes contribute no arcs.", "semitones"),
    FeatureDescriptor(
        "direction_of_motion", "Direction of Motion", MELODY,
        "Fraction of non-repeating melodic intervals that rise: rising / "
        "(rising + falling).", "fraction"),
    FeatureDescriptor(
        "amount_of_arpeggiation", "Amount of Arpeggiation", MELODY,
        "Fraction of melodic intervals that outline triadic motion: unisons, "
        "thirds, fifths, sevenths, octaves, or their compound tenths.",
        "fraction"),
    # Pitch
    FeatureDescriptor(
        "most_common_pitch_prevalence", "Most Common Pitch Prevalence", PITCH,
        "Fraction of all notes sounding the single most frequent MIDI pitch.",
        "fraction"),
    FeatureDescriptor(
        "most_common_pitch_class_prevalence", "Most Common Pitch Class Prevalence",
        PITCH,
        "Fraction of all notes sounding the most frequent pitch class (pitch "
        "modulo octave). Low values indicate that no pitch class is favored, "
        "as in atonal writing.", "fraction"),
    FeatureDescriptor(
        "pitch_variety", "Pitch Variety", PITCH,
        "Number of distinct MIDI pitches that occur at least once.", "count"),
    FeatureDescriptor(
        "pitch_class_variety", "Pitch Class Variety", PITCH,
        "Number of distinct pitch classes (out of twelve) that occur at least "
        "once.", "count"),
    FeatureDescriptor(
        "range", "Range", PITCH,
        "Semitone distance between the highest and the lowest pitch.",
        "semitones"),
    FeatureDescriptor(
        "number_of_common_pitches", "Number of Common Pitches", PITCH,
        "Number of MIDI pitches that individually account for at least 9% of "
        "all notes.", "count"),
    FeatureDescriptor(
        "mean_pitch", "Mean Pitch", PITCH,
        "Arithmetic mean of all MIDI pitch numbers (C4 = 60).", "semitones"),
    FeatureDescriptor(
        "bass_register_fraction", "Bass Register Fraction", PITCH,
        "Fraction of notes at or below MIDI pitch 54 (F#3).", "fraction"),
    FeatureDescriptor(
        "high_register_fraction", "High Register Fraction", PITCH,
        "Fraction of notes at or above MIDI pitch 73 (C#5).", "fraction"),
    # Rhythm
    FeatureDescriptor(
        "note_density", "Note Density", RHYTHM,
        "Average number of notes played per second of score time.",
        "per_second"),
    FeatureDescriptor(
        "average_note_duration", "Average Note Duration", RHYTHM,
        "Mean sounding length of a note in seconds.", "seconds"),
    FeatureDescriptor(
        "staccato_incidence", "Staccato Incidence", RHYTHM,
        "Fraction of notes that are staccato: marked with a staccato "
        "articulation or sounding shorter than 0.1 seconds.", "fraction"),
    FeatureDescriptor(
        "changes_of_meter", "Changes of Meter", RHYTHM,
        "1 if more than one distinct time signature occurs, else 0.",
        "boolean"),
    FeatureDescriptor(
        "triple_meter", "Triple Meter", RHYTHM,
        "1 if the initial time signature has a numerator of three, else 0.",
        "boolean"),
    FeatureDescriptor(
        "duration_seconds", "Duration", RHYTHM,
        "Total duration of the score in seconds under its tempo map.",
        "seconds"),
    FeatureDescriptor(
        "note_count", "Note Count", RHYTHM,
        "Total number of pitched note events, counting every chord member.",
        "count"),
]

_BY_ID: dict[str, FeatureDescriptor] = {d.id: d for d in _CATALOG}
assert len(_BY_ID) == 28


def catalog() -> list[FeatureDescriptor]:
    """All descriptors in display order (melody, pitch, rhythm)."""
    return list(_CATALOG)


def feature_ids() -> list[str]:
    return [d.id for d in _CATALOG]


def feature_descriptor(feature_id: str) -> FeatureDescriptor:
    try:
        return _BY_ID[feature_id]
    except KeyError:
        raise UnknownFeature(feature_id) from None


def is_known_feature(feature_id: str) -> bool:
    return feature_id in _BY_ID


def extract_features(doc: ScoreDocument) -> FeatureVector:
    """Compute the complete feature vector for one parsed composition.

    A score without pitched notes yields all-zero values plus an
    ``empty_score`` quality flag instead of raising.
    """
    notes = doc.pitched_events()
    if not notes:
        return FeatureVector(
            values={fid: 0.0 for fid in feature_ids()},
            flags=frozenset({EMPTY_SCORE_FLAG}),
        )

    values: dict[str, Fraction | int] = {}
    n = len(notes)

    streams = melodic_streams(doc)
    intervals = [iv for stream in streams for iv in melodic_intervals(stream)]
    magnitudes = [abs(iv) for iv in intervals]
    m = len(magnitudes)

    def interval_fraction(predicate) -> Fraction:
        if m == 0:
            return Fraction(0)
        return Fraction(sum(1 for a in magnitudes if predicate(a)), m)

    values["average_melodic_interval"] = (
        Fraction(sum(magnitudes), m) if m else Fraction(0)
    )
    values["repeated_notes"] = interval_fraction(lambda a: a == 0)
    values["chromatic_motion"] = interval_fraction(lambda a: a == 1)
    values["stepwise_motion"] = interval_fraction(lambda a: a in (1, 2))
    values["melodic_thirds"] = interval_fraction(lambda a: a in (3, 4))
    values["melodic_fifths"] = interval_fraction(lambda a: a == 7)
    values["melodic_tritones"] = interval_fraction(lambda a: a == 6)
    values["melodic_octaves"] = interval_fraction(lambda a: a == 12)
    values["melodic_consonance"] = interval_fraction(
        lambda a: a in CONSONANT_INTERVALS
    )
    values["amount_of_arpeggiation"] = interval_fraction(
        lambda a: a in ARPEGGIATION_INTERVALS
    )

    arcs = [span for stream in streams for span in _arc_spans(stream)]
    values["size_of_melodic_arcs"] = (
        Fraction(sum(arcs), len(arcs)) if arcs else Fraction(0)
    )

    rising = sum(1 for iv in intervals if iv > 0)
    falling = sum(1 for iv in intervals if iv < 0)
    values["direction_of_motion"] = (
        Fraction(rising, rising + falling) if rising + falling else Fraction(0)
    )

    pitches = [e.midi_pitch for e in notes]
    pitch_counts: dict[int, int] = {}
    class_counts: dict[int, int] = {}
    for p in pitches:
        pitch_counts[p] = pitch_counts.get(p, 0) + 1
        class_counts[p % 12] = class_counts.get(p % 12, 0) + 1

    values["most_common_pitch_prevalence"] = Fraction(max(pitch_counts.values()), n)
    values["most_common_pitch_class_prevalence"] = Fraction(
        max(class_counts.values()), n
    )
    values["pitch_variety"] = len(pitch_counts)
    values["pitch_class_variety"] = len(class_counts)
    values["range"] = max(pitches) - min(pitches)
    values["number_of_common_pitches"] = sum(
        1
        for count in pitch_counts.values()
        if Fraction(count, n) >= COMMON_PITCH_THRESHOLD
    )
    values["mean_pitch"] = Fraction(sum(pitches), n)
    values["bass_register_fraction"] = Fraction(
        sum(1 for p in pitches if p <= BASS_REGISTER_MAX_PITCH), n
    )
    values["high_register_fraction"] = Fraction(
        sum(1 for p in pitches if p >= HIGH_REGISTER_MIN_PITCH), n
    )

    total_seconds = doc.total_duration_seconds_exact
    values["note_density"] = (
        Fraction(n) / total_seconds if total_seconds > 0 else Fraction(0)
    )
    values["average_note_duration"] = (
        sum((e.duration_seconds_exact for e in notes), Fraction(0)) / n
    )
    values["staccato_incidence"] = Fraction(
        sum(
            1
            for e in notes
            if e.is_staccato or e.duration_seconds_exact < STACCATO_DURATION_SECONDS
        ),
        n,
    )
    meters = {(num, den) for _, num, den in doc.time_signatures}
    values["changes_of_meter"] = 1 if len(meters) > 1 else 0
    values["triple_meter"] = 1 if doc.time_signatures[0][1] == 3 else 0
    values["duration_seconds"] = total_seconds
    values["note_count"] = n

    return FeatureVector(values={fid: float(values[fid]) for fid in feature_ids()})


def _arc_spans(stream: list[int]) -> list[int]:
    """Semitone spans between adjacent local extrema of one melody stream.

    Plateaus (repeated pitches) collapse to one point; the first and last
    pitches count as extrema. Streams shorter than three notes yield nothing.
    """
    if len(stream) < 3:
        return []
    collapsed = [stream[0]]
    for p in stream[1:]:
        if p != collapsed[-1]:
            collapsed.append(p)
    if len(collapsed) < 2:
        return []
    extrema = [collapsed[0]]
    for i in range(1, len(collapsed) - 1):
        if (collapsed[i] - collapsed[i - 1] > 0) != (collapsed[i + 1] - collapsed[i] > 0):
            extrema.append(collapsed[i])
    extrema.append(collapsed[-1])
    return [abs(extrema[i + 1] - extrema[i]) for i in range(len(extrema) - 1)]
