"""Correlation, distribution summary, and aggregation tests."""

import numpy as np
import pytest

from notecorpus.analytics import (
    EmptyGroup,
    EmptySelection,
    TooFewEntities,
    aggregate_group,
    correlation_matrix,
    distribution_summary,
)
from notecorpus.features import FeatureVector, feature_ids


def make_vector(**overrides) -> FeatureVector:
    values = {fid: 0.0 for fid in feature_ids()}
    values.update(overrides)
    return FeatureVector(values=values)


class TestCorrelation:
    def test_feature_with_itself(self):
        matrix = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [5.0, 5.0]])
        corr = correlation_matrix(matrix)
        assert corr[0][1] == pytest.approx(1.0)
        assert corr[0][0] == 1.0

    def test_exact_negation_gives_minus_one(self):
        x = np.array([1.0, 2.0, 4.0, 8.0])
        matrix = np.stack([x, -x], axis=1)
        corr = correlation_matrix(matrix)
        assert corr[0][1] == pytest.approx(-1.0)

    def test_hand_computed_value(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        y = np.array([1.0, 2.0, 3.0, 5.0])
        # direct formula evaluation:
        expected = float(
            ((x - x.mean()) * (y - y.mean())).sum()
            / np.sqrt(((x - x.mean()) ** 2).sum() * ((y - y.mean()) ** 2).sum())
        )
        corr = correlation_matrix(np.stack([x, y], axis=1))
        assert corr[0][1] == pytest.approx(expected, abs=1e-12)
        assert corr[1][0] == corr[0][1]

    def test_zero_variance_encoded_as_null(self):
        matrix = np.array([[1.0, 5.0], [1.0, 6.0], [1.0, 7.0]])
        corr = correlation_matrix(matrix)
        assert corr[0] == [None, None]
        assert corr[1][0] is None
        assert corr[1][1] == 1.0

    def test_symmetric_and_bounded(self):
        rng = np.random.default_rng(67)
        matrix = rng.normal(size=(12, 5))
        corr = correlation_matrix(matrix)
        for i in range(5):
            assert corr[i][i] == 1.0
            for j in range(5):
                assert corr[i][j] == corr[j][i]
                assert abs(corr[i][j]) <= 1.0

    def test_positive_semidefinite_without_nulls(self):
        rng = np.random.default_rng(71)
        matrix = rng.normal(size=(9, 4))
        corr = np.asarray(correlation_matrix(matrix), dtype=float)
        eigenvalues = np.linalg.eigvalsh(corr)
        assert eigenvalues.min() >= -1e-9

    def test_too_few_entities(self):
        with pytest.raises(TooFewEntities):
            correlation_matrix(np.ones((2, 2)))


class TestDistribution:
    def test_selection_equal_to_corpus(self):
        values = [1.0, 2.0, 3.0, 4.0]
        summary = distribution_summary("note_density", values, values)
        assert summary.selection_stats == summary.corpus_stats
        assert summary.selection_histogram == summary.corpus_histogram

    def test_singleton_selection(self):
        summary = distribution_summary("note_density", [2.5], [1.0, 2.5, 9.0])
        assert summary.selection_stats == (2.5, 2.5, 2.5)

    def test_hand_counted_masses(self):
        corpus = [float(v) for v in range(1, 11)]
        summary = distribution_summary("note_density", [1.0, 2.0, 3.0], corpus)
        assert summary.selection_stats == (1.0, 2.0, 3.0)
        assert summary.corpus_stats == (1.0, 5.5, 10.0)
        assert sum(summary.selection_histogram) == 3
        assert sum(summary.corpus_histogram) == 10
        assert len(summary.corpus_histogram) == 20
        assert len(summary.bin_edges) == 21

    def test_degenerate_corpus_range_single_bin(self):
        summary = distribution_summary("note_density", [2.0], [2.0, 2.0, 2.0])
        assert summary.bin_edges == (2.0, 2.0)
        assert summary.corpus_histogram == (3,)
        assert summary.selection_histogram == (1,)

    def test_empty_selection(self):
        with pytest.raises(EmptySelection):
            distribution_summary("note_density", [], [1.0])


class TestAggregate:
    def test_single_member_identity(self):
        vector = make_vector(melodic_octaves=0.4, note_count=7.0)
        merged = aggregate_group([vector])
        assert merged.values == vector.values

    def test_mean_of_two(self):
        a = make_vector(melodic_octaves=0.0)
        b = make_vector(melodic_octaves=0.5)
        assert aggregate_group([a, b]).values["melodic_octaves"] == 0.25

    def test_recomputed_mean_on_synthetic_members(self):
        rng = np.random.default_rng(73)
        members = [
            make_vector(**{fid: float(rng.uniform(0, 5)) for fid in feature_ids()})
            for _ in range(6)
        ]
        merged = aggregate_group(members)
        for fid in feature_ids():
            expected = sum(m.values[fid] for m in members) / 6
            assert merged.values[fid] == pytest.approx(expected, abs=1e-12)

    def test_flags_propagate(self):
        flagged = FeatureVector(
            values={fid: 0.0 for fid in feature_ids()},
            flags=frozenset({"empty_score"}),
        )
        merged = aggregate_group([make_vector(), flagged])
        assert "empty_score" in merged.flags

    def test_empty_group(self):
        with pytest.raises(EmptyGroup):
            aggregate_group([])
