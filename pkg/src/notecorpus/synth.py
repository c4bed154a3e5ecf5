"""Synthetic MusicXML generation: fixtures, randomized scores, demo corpora.

The builder emits plain score-partwise documents (optionally zipped into an
.mxl container) from compact note specs, which keeps test fixtures and the
bundled demo corpus free of third-party assets.
"""

from __future__ import annotations

import io
import random
import xml.etree.ElementTree as ET
import zipfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

_SHARP_STEPS = [
    ("C", 0), ("C", 1), ("D", 0), ("D", 1), ("E", 0), ("F", 0),
    ("F", 1), ("G", 0), ("G", 1), ("A", 0), ("A", 1), ("B", 0),
]


@dataclass(frozen=True)
class NoteSpec:
    """One note/rest for the builder; ``pitch`` is MIDI or None for a rest."""

    pitch: Optional[int]
    duration: Fraction = Fraction(1)
    staccato: bool = False
    chord: bool = False
    grace: bool = False
    tie: Optional[str] = None  # "start" | "stop" | "continue"


@dataclass
class MeasureSpec:
    """One measure; multiple voices are written with <backup> between them."""

    voices: dict[str, list[NoteSpec]]
    divisions: Optional[int] = None
    time: Optional[tuple[int, int]] = None
    tempo: Optional[float] = None


def build_musicxml(
    parts: Sequence[Sequence[MeasureSpec]],
    title: str = "",
    composer: str = "",
) -> bytes:
    """Serialize parts/measures into a score-partwise MusicXML document."""
    root = ET.Element("score-partwise", version="3.1")
    if title:
        work = ET.SubElement(root, "work")
        ET.SubElement(work, "work-title").text = title
    if composer:
        ident = ET.SubElement(root, "identification")
        creator = ET.SubElement(ident, "creator", type="composer")
        creator.text = composer
    part_list = ET.SubElement(root, "part-list")
    for index in range(len(parts)):
        score_part = ET.SubElement(part_list, "score-part", id=f"P{index + 1}")
        ET.SubElement(score_part, "part-name").text = f"Part {index + 1}"

    for index, measures in enumerate(parts):
        part = ET.SubElement(root, "part", id=f"P{index + 1}")
        divisions = 1
        for number, measure in enumerate(measures, start=1):
            m = ET.SubElement(part, "measure", number=str(number))
            if measure.divisions is not None or measure.time is not None:
                attributes = ET.SubElement(m, "attributes")
                if measure.divisions is not None:
                    divisions = measure.divisions
                    ET.SubElement(attributes, "divisions").text = str(divisions)
                if measure.time is not None:
                    time = ET.SubElement(attributes, "time")
                    ET.SubElement(time, "beats").text = str(measure.time[0])
                    ET.SubElement(time, "beat-type").text = str(measure.time[1])
            if measure.tempo is not None:
                direction = ET.SubElement(m, "direction")
                tempo = measure.tempo
                text = str(int(tempo)) if float(tempo) == int(tempo) else str(tempo)
                ET.SubElement(direction, "sound", tempo=text)
            for voice_index, (voice, notes) in enumerate(measure.voices.items()):
                if voice_index > 0:
                    advance = sum(
                        (n.duration for n in prev_notes if not n.chord and not n.grace),
                        Fraction(0),
                    )
                    backup = ET.SubElement(m, "backup")
                    ET.SubElement(backup, "duration").text = str(
                        _in_divisions(advance, divisions)
                    )
                for spec in notes:
                    _write_note(m, spec, voice, divisions)
                prev_notes = notes
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)


def _write_note(measure: ET.Element, spec: NoteSpec, voice: str, divisions: int) -> None:
    note = ET.SubElement(measure, "note")
    if spec.grace:
        ET.SubElement(note, "grace")
    if spec.chord:
        ET.SubElement(note, "chord")
    if spec.pitch is None:
        ET.SubElement(note, "rest")
    else:
        step, alter = _SHARP_STEPS[spec.pitch % 12]
        octave = spec.pitch // 12 - 1
        pitch = ET.SubElement(note, "pitch")
        ET.SubElement(pitch, "step").text = step
        if alter:
            ET.SubElement(pitch, "alter").text = str(alter)
        ET.SubElement(pitch, "octave").text = str(octave)
    if not spec.grace:
        ET.SubElement(note, "duration").text = str(
            _in_divisions(spec.duration, divisions)
        )
    ET.SubElement(note, "voice").text = voice
    if spec.tie in ("start", "continue"):
        ET.SubElement(note, "tie", type="start")
    if spec.tie in ("stop", "continue"):
        ET.SubElement(note, "tie", type="stop")
    if spec.staccato or spec.tie:
        notations = ET.SubElement(note, "notations")
        if spec.staccato:
            articulations = ET.SubElement(notations, "articulations")
            ET.SubElement(articulations, "staccato")
        if spec.tie in ("start", "continue"):
            ET.SubElement(notations, "tied", type="start")
        if spec.tie in ("stop", "continue"):
            ET.SubElement(notations, "tied", type="stop")


def _in_divisions(duration: Fraction, divisions: int) -> int:
    ticks = duration * divisions
    if ticks.denominator != 1:
        raise ValueError(
            f"duration {duration} is not representable at divisions={divisions}"
        )
    return int(ticks)


def make_mxl(xml_bytes: bytes, inner_name: str = "score.xml") -> bytes:
    """Wrap a MusicXML document into a compressed .mxl container."""
    container = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        "<container><rootfiles>"
        f'<rootfile full-path="{inner_name}"/>'
        "</rootfiles></container>"
    )
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
        archive.writestr("META-INF/container.xml", container)
        archive.writestr(inner_name, xml_bytes)
    return buffer.getvalue()


def simple_melody_xml(
    pitches: Sequence[Optional[int]],
    duration: Fraction = Fraction(1),
    qpm: Optional[float] = 120,
    time: tuple[int, int] = (4, 4),
    divisions: int = 4,
    title: str = "",
    composer: str = "",
) -> bytes:
    """Single-voice melody with uniform note durations, packed into measures."""
    capacity = Fraction(time[0] * 4, time[1])
    measures: list[MeasureSpec] = []
    current: list[NoteSpec] = []
    used = Fraction(0)
    for pitch in pitches:
        if used + duration > capacity and current:
            measures.append(MeasureSpec(voices={"1": current}))
            current, used = [], Fraction(0)
        current.append(NoteSpec(pitch=pitch, duration=duration))
        used += duration
    if current:
        measures.append(MeasureSpec(voices={"1": current}))
    if not measures:
        measures.append(MeasureSpec(voices={"1": []}))
    measures[0].divisions = divisions
    measures[0].time = time
    measures[0].tempo = qpm
    return build_musicxml([measures], title=title, composer=composer)


# ----------------------------------------------------------------------
# Randomized scores and demo corpora


@dataclass(frozen=True)
class MelodicProfile:
    """Random-walk parameters that caricature one stylistic register."""

    steps: tuple[int, ...]
    durations: tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1), Fraction(2))
    center: int = 66
    spread: int = 18
    staccato_prob: float = 0.0
    rest_prob: float = 0.05
    meter: tuple[int, int] = (4, 4)
    meter_change_prob: float = 0.0
    qpm_choices: tuple[int, ...] = (90, 108, 120, 132)


PROFILE_BAROQUE = MelodicProfile(
    steps=(-2, -2, -1, -1, 1, 1, 1, 2, 2, 2, 3, -3, 4, 5),
    center=65,
    meter=(4, 4),
)
PROFILE_CLASSIC = MelodicProfile(
    steps=(-4, -2, -1, 0, 0, 1, 1, 2, 2, 3, 4, 4, 5, 7, -5),
    center=67,
    meter=(3, 4),
    rest_prob=0.08,
)
PROFILE_ROMANTIC = MelodicProfile(
    steps=(-12, -7, -5, -3, -2, -1, 0, 1, 2, 3, 4, 5, 7, 8, 9, 12, 12),
    center=64,
    spread=24,
    meter=(3, 4),
    qpm_choices=(60, 72, 84, 96),
)
PROFILE_MODERN = MelodicProfile(
    steps=(-11, -10, -6, -6, -4, -1, 0, 1, 3, 6, 6, 6, 10, 11, 13, -13),
    center=66,
    spread=26,
    staccato_prob=0.25,
    meter=(4, 4),
    meter_change_prob=0.6,
    qpm_choices=(100, 120, 140, 160),
)

EPOCH_PROFILES = {
    "baroque": PROFILE_BAROQUE,
    "classic": PROFILE_CLASSIC,
    "romantic": PROFILE_ROMANTIC,
    "modern": PROFILE_MODERN,
}


def random_score_xml(
    rng: random.Random,
    profile: MelodicProfile = PROFILE_CLASSIC,
    n_measures: int = 10,
    title: str = "",
    composer: str = "",
    octave_leap_prob: float = 0.0,
) -> bytes:
    """Random-walk melody under the profile, packed into tiled measures."""
    beats, beat_type = profile.meter
    capacity = Fraction(beats * 4, beat_type)
    qpm = rng.choice(profile.qpm_choices)
    lo = max(24, profile.center - profile.spread)
    hi = min(102, profile.center + profile.spread)
    pitch = rng.randint(profile.center - 4, profile.center + 4)

    measures: list[MeasureSpec] = []
    meter_changed = False
    for measure_index in range(n_measures):
        time: Optional[tuple[int, int]] = None
        if measure_index == 0:
            time = (beats, beat_type)
        elif (
            not meter_changed
            and measure_index == n_measures // 2
            and rng.random() < profile.meter_change_prob
        ):
            beats = 3 if beats != 3 else 2
            capacity = Fraction(beats * 4, beat_type)
            time = (beats, beat_type)
            meter_changed = True

        notes: list[NoteSpec] = []
        remaining = capacity
        while remaining > 0:
            options = [d for d in profile.durations if d <= remaining]
            duration = rng.choice(options) if options else remaining
            if rng.random() < profile.rest_prob:
                notes.append(NoteSpec(pitch=None, duration=duration))
            else:
                if octave_leap_prob and rng.random() < octave_leap_prob:
                    step = 12 if rng.random() < 0.5 else -12
                else:
                    step = rng.choice(profile.steps)
                pitch = min(hi, max(lo, pitch + step))
                notes.append(
                    NoteSpec(
                        pitch=pitch,
                        duration=duration,
                        staccato=rng.random() < profile.staccato_prob,
                    )
                )
            remaining -= duration
        measures.append(
            MeasureSpec(
                voices={"1": notes},
                divisions=4 if measure_index == 0 else None,
                time=time,
                tempo=qpm if measure_index == 0 else None,
            )
        )
    return build_musicxml([measures], title=title, composer=composer)


@dataclass(frozen=True)
class DemoComposer:
    name: str
    birth_year: int
    death_year: int
    epoch: str
    octave_leap_prob: float = 0.0


DEMO_COMPOSERS: tuple[DemoComposer, ...] = (
    DemoComposer("Johann Pachelbel", 1653, 1706, "baroque"),
    DemoComposer("Johann Sebastian Bach", 1685, 1750, "baroque"),
    DemoComposer("Georg Friedrich Händel", 1685, 1759, "baroque"),
    DemoComposer("Joseph Haydn", 1732, 1809, "classic"),
    DemoComposer("Wolfgang Amadeus Mozart", 1756, 1791, "classic"),
    DemoComposer("Ludwig van Beethoven", 1770, 1827, "classic"),
    DemoComposer("Franz Schubert", 1797, 1828, "classic", octave_leap_prob=0.02),
    DemoComposer("Frédéric Chopin", 1810, 1849, "romantic"),
    DemoComposer("Franz Liszt", 1811, 1886, "romantic", octave_leap_prob=0.30),
    DemoComposer("Richard Wagner", 1813, 1883, "romantic"),
    DemoComposer("Johannes Brahms", 1833, 1897, "romantic"),
    DemoComposer("Claude Debussy", 1862, 1918, "romantic"),
    DemoComposer("Arnold Schönberg", 1874, 1951, "modern"),
    DemoComposer("Igor Stravinsky", 1882, 1971, "modern"),
    DemoComposer("Anton Webern", 1883, 1945, "modern"),
)

_EPOCH_TYPES = {
    "baroque": ("chorale", "fugue", "prelude", "suite"),
    "classic": ("sonata", "symphony", "minuet", "rondo"),
    "romantic": ("nocturne", "waltz", "etude", "rhapsody"),
    "modern": ("intermezzo", "scherzo", "soundtrack", "medley"),
}

_OPUS_PREFIX = {
    "baroque": "BWV",
    "classic": "Op.",
    "romantic": "Op.",
    "modern": "Op.",
}


@dataclass(frozen=True)
class DemoPiece:
    filename: str
    title: str
    composer: DemoComposer
    data: bytes = field(repr=False, default=b"")


def generate_demo_pieces(
    seed: int = 7, pieces_per_composer: int = 4
) -> list[DemoPiece]:
    """Deterministic synthetic corpus across all demo composers."""
    rng = random.Random(seed)
    pieces: list[DemoPiece] = []
    for composer in DEMO_COMPOSERS:
        types = _EPOCH_TYPES[composer.epoch]
        for k in range(pieces_per_composer):
            form = types[k % len(types)]
            opus = f"{_OPUS_PREFIX[composer.epoch]} {rng.randint(1, 120)}"
            title = f"{form.capitalize()} No. {k + 1} {opus}"
            data = random_score_xml(
                rng,
                EPOCH_PROFILES[composer.epoch],
                n_measures=rng.randint(8, 14),
                title=title,
                composer=composer.name,
                octave_leap_prob=composer.octave_leap_prob,
            )
            slug = composer.name.split()[-1].lower()
            pieces.append(
                DemoPiece(
                    filename=f"{slug}_{form}_{k + 1}.xml",
                    title=title,
                    composer=composer,
                    data=data,
                )
            )
    # Two song settings of the same poem by different composers, so keyword
    # search has a cross-composer hit, plus one duplicated upload.
    rng2 = random.Random(seed + 1)
    for composer_name, title in (
        ("Franz Schubert", "Erlkönig D.328"),
        ("Franz Liszt", "Erlkönig S.558"),
    ):
        composer = next(c for c in DEMO_COMPOSERS if c.name == composer_name)
        data = random_score_xml(
            rng2,
            EPOCH_PROFILES[composer.epoch],
            n_measures=12,
            title=title,
            composer=composer.name,
            octave_leap_prob=composer.octave_leap_prob,
        )
        slug = composer.name.split()[-1].lower()
        pieces.append(
            DemoPiece(
                filename=f"{slug}_erlkoenig.xml",
                title=title,
                composer=composer,
                data=data,
            )
        )
    return pieces


def write_demo_source(directory: str | Path, seed: int = 7) -> Path:
    """Write the demo pieces plus an ingest manifest into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    pieces = generate_demo_pieces(seed=seed)
    files = {}
    composers = []
    seen = set()
    for piece in pieces:
        (directory / piece.filename).write_bytes(piece.data)
        files[piece.filename] = {
            "title": piece.title,
            "composer": piece.composer.name,
            "composer_birth": piece.composer.birth_year,
            "composer_death": piece.composer.death_year,
        }
        if piece.composer.name not in seen:
            seen.add(piece.composer.name)
            composers.append(
                {
                    "name": piece.composer.name,
                    "birth_year": piece.composer.birth_year,
                    "death_year": piece.composer.death_year,
                }
            )
    manifest = {"files": files, "composers": composers}
    import json

    (directory / "manifest.json").write_text(json.dumps(manifest, indent=1))
    return directory


def seed_demo_use_cases(store) -> None:
    """Save the standard demo analysis configurations into a seeded store."""
    ids = store.filter()
    epoch_selection = ids[:51]
    store.save_use_case(
        _usecase(
            "epoch-comparison",
            epoch_selection,
            (
                "repeated_notes",
                "pitch_variety",
                "size_of_melodic_arcs",
                "chromatic_motion",
                "melodic_consonance",
                "most_common_pitch_class_prevalence",
                "note_density",
                "staccato_incidence",
            ),
        )
    )
    tonal = store.filter(epochs=["classic"])[:9]
    atonal = store.filter(epochs=["modern"])[:9]
    store.save_use_case(
        _usecase(
            "tonality-vs-atonality",
            tonal + atonal,
            (
                "melodic_tritones",
                "most_common_pitch_class_prevalence",
                "number_of_common_pitches",
                "pitch_class_variety",
                "melodic_consonance",
                "chromatic_motion",
            ),
        )
    )
    liszt_schubert = store.filter(composer_ids=["franz-liszt", "franz-schubert"])
    store.save_use_case(
        _usecase(
            "composer-comparison",
            liszt_schubert,
            (
                "melodic_octaves",
                "average_melodic_interval",
                "pitch_variety",
                "number_of_common_pitches",
            ),
            grouping="composer",
        )
    )
    store.save_use_case(
        _usecase(
            "feature-explanation",
            ids[:10],
            (
                "most_common_pitch_prevalence",
                "note_density",
                "repeated_notes",
                "melodic_octaves",
                "pitch_variety",
            ),
        )
    )


def _usecase(name, selection, selected_features, grouping="none"):
    from .corpus.store import UseCase

    return UseCase(
        name=name,
        selection=tuple(selection),
        selected_features=tuple(selected_features),
        grouping=grouping,
        eps=None,
        color_by="epoch",
    )


def seed_demo_corpus(corpus_dir: str | Path, seed: int = 7):
    """Build a ready-to-serve corpus: demo pieces, composers, use cases."""
    import tempfile

    from .corpus.store import CorpusStore

    store = CorpusStore(corpus_dir)
    with tempfile.TemporaryDirectory() as staging:
        write_demo_source(staging, seed=seed)
        report = store.ingest_directory(staging)
    seed_demo_use_cases(store)
    return store, report
