"""Feature catalog tests: fixture oracles, descriptors, and invariants."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixture_scores import FEATURE_FIXTURES
from notecorpus import extract_features, feature_descriptor, feature_ids, parse_mxl
from notecorpus.features import EMPTY_SCORE_FLAG, UnknownFeature, catalog
from notecorpus.synth import simple_melody_xml


@pytest.mark.parametrize(
    "name,builder,expected",
    FEATURE_FIXTURES,
    ids=[name for name, _, _ in FEATURE_FIXTURES],
)
def test_fixture_values_exact(name, builder, expected):
    vector = extract_features(parse_mxl(builder()))
    assert set(vector.values) == set(expected)
    for fid, want in expected.items():
        assert vector.values[fid] == pytest.approx(want, abs=1e-12), fid


def test_empty_score_sets_quality_flag():
    _, builder, _ = next(f for f in FEATURE_FIXTURES if f[0] == "empty_score")
    vector = extract_features(parse_mxl(builder()))
    assert EMPTY_SCORE_FLAG in vector.flags


class TestDescriptors:
    def test_note_density_descriptor(self):
        descriptor = feature_descriptor("note_density")
        assert descriptor.category == "rhythm"
        assert descriptor.unit == "per_second"

    def test_melodic_octaves_descriptor(self):
        descriptor = feature_descriptor("melodic_octaves")
        assert descriptor.category == "melody"
        assert descriptor.unit == "fraction"

    def test_unknown_feature(self):
        with pytest.raises(UnknownFeature):
            feature_descriptor("no_such_feature")

    def test_catalog_has_28_unique_ids_in_three_categories(self):
        descriptors = catalog()
        assert len(descriptors) == 28
        assert len({d.id for d in descriptors}) == 28
        assert {d.category for d in descriptors} == {"melody", "pitch", "rhythm"}


def _fraction_feature_ids():
    return [d.id for d in catalog() if d.unit == "fraction"]


def _count_feature_ids():
    return [d.id for d in catalog() if d.unit == "count"]


@given(
    st.lists(
        st.one_of(st.integers(min_value=30, max_value=96), st.none()),
        min_size=0,
        max_size=40,
    )
)
@settings(max_examples=60, deadline=None)
def test_value_domains(pitches):
    vector = extract_features(parse_mxl(simple_melody_xml(pitches)))
    for fid, value in vector.values.items():
        assert math.isfinite(value), fid
    for fid in _fraction_feature_ids():
        assert 0.0 <= vector.values[fid] <= 1.0, fid
    for fid in _count_feature_ids():
        assert vector.values[fid] == int(vector.values[fid]) >= 0, fid
    for fid in ("changes_of_meter", "triple_meter"):
        assert vector.values[fid] in (0.0, 1.0)
    # {1} is a subset of {1, 2}, so chromatic motion can never exceed stepwise.
    assert vector.values["chromatic_motion"] <= vector.values["stepwise_motion"]


@given(
    st.lists(st.integers(min_value=36, max_value=84), min_size=2, max_size=30),
    st.integers(min_value=-12, max_value=12),
)
@settings(max_examples=40, deadline=None)
def test_transposition_invariance(pitches, shift):
    base = extract_features(parse_mxl(simple_melody_xml(pitches)))
    moved = extract_features(
        parse_mxl(simple_melody_xml([p + shift for p in pitches]))
    )
    melody_ids = [d.id for d in catalog() if d.category == "melody"]
    for fid in melody_ids + [
        "most_common_pitch_prevalence",
        "most_common_pitch_class_prevalence",
        "pitch_variety",
        "pitch_class_variety",
        "range",
        "number_of_common_pitches",
    ]:
        assert moved.values[fid] == pytest.approx(base.values[fid], abs=1e-12), fid
    assert moved.values["mean_pitch"] == pytest.approx(
        base.values["mean_pitch"] + shift, abs=1e-12
    )


def test_tempo_scaling_halves_duration_and_doubles_density():
    rng = random.Random(5)
    pitches = [rng.randint(40, 90) for _ in range(24)]
    slow = extract_features(parse_mxl(simple_melody_xml(pitches, qpm=60)))
    fast = extract_features(parse_mxl(simple_melody_xml(pitches, qpm=120)))
    assert fast.values["duration_seconds"] == pytest.approx(
        slow.values["duration_seconds"] / 2, rel=1e-9
    )
    assert fast.values["note_density"] == pytest.approx(
        slow.values["note_density"] * 2, rel=1e-9
    )
    for descriptor in catalog():
        if descriptor.category in ("melody", "pitch"):
            assert fast.values[descriptor.id] == slow.values[descriptor.id]


def test_identical_documents_give_bitwise_equal_vectors():
    data = simple_melody_xml([64, 62, 67, 59, 71], qpm=88)
    first = extract_features(parse_mxl(data))
    second = extract_features(parse_mxl(data))
    assert first.values == second.values
    assert all(
        first.values[fid] == second.values[fid] for fid in feature_ids()
    )
