import numpy as np
import pytest

from gridconvex import (EVIDENCE_INSUFFICIENT, EVIDENCE_OK, EXHAUSTIVE,
                        FIRST_WITNESS, Cluster, GridTooLargeError,
                        MarginalSet, ParameterError, analyze, build_index,
                        midpoint_test, report_to_dict)

from .oracles import scan_any_within


def assert_witness_valid(cluster, report):
    assert report.witness is not None and report.witness_pair is not None
    j, k = report.witness_pair
    assert j in report.marginal.members and k in report.marginal.members and j < k
    expected = (cluster.coords[j] + cluster.coords[k]) / 2.0
    assert np.array_equal(report.witness, expected)
    d2 = ((cluster.coords - report.witness) ** 2).sum(axis=1)
    assert (d2 > report.params.eps ** 2).all()


class TestAnalyze:
    def test_ring_is_non_convex(self, ring_cluster):
        report = analyze(ring_cluster, 0.05, eta=0.5, seed=0)
        assert report.omega is False
        assert report.evidence == EVIDENCE_OK
        assert_witness_valid(ring_cluster, report)
        # the witness falls inside the central hole
        assert np.hypot(*report.witness) < 0.45

    def test_dense_square_is_convex(self, dense_square):
        report = analyze(dense_square, 0.05)
        assert report.omega is True
        assert report.witness is None and report.witness_pair is None
        assert report.evidence == EVIDENCE_OK

    def test_single_point_reports_insufficient_evidence(self):
        report = analyze(Cluster.from_rows([[0.0, 0.0]]), 1.0)
        assert report.omega is True
        assert report.evidence == EVIDENCE_INSUFFICIENT
        assert report.counts.pairs_tested == 0

    def test_full_rate_ignores_seed(self, dense_square):
        a = report_to_dict(analyze(dense_square, 0.05, eta=1.0, seed=1))
        b = report_to_dict(analyze(dense_square, 0.05, eta=1.0, seed=999))
        a.pop("seed"), b.pop("seed")  # the echoed parameter itself differs
        assert a == b

    def test_deterministic_given_seed(self, ring_cluster):
        a = analyze(ring_cluster, 0.05, eta=0.5, seed=5)
        b = analyze(ring_cluster, 0.05, eta=0.5, seed=5)
        assert report_to_dict(a) == report_to_dict(b)

    def test_counts_are_consistent(self, ring_cluster):
        report = analyze(ring_cluster, 0.05, eta=0.5, seed=0)
        c = report.counts
        assert c.total_grid == 2025 and c.sampled == 1013
        assert c.marginal == report.marginal.size
        assert c.non_neighboring == report.diagnostics.non_neighboring.size
        assert 0 < c.marginal <= c.probe_points

    def test_grid_too_large_propagates(self, ring_cluster):
        with pytest.raises(GridTooLargeError, match="subsample"):
            analyze(ring_cluster, 1e-7)

    def test_invalid_mode(self, dense_square):
        with pytest.raises(ParameterError):
            analyze(dense_square, 0.05, mode="both")


class TestMidpointTest:
    def test_fewer_than_two_members_flags_insufficient(self, dense_square):
        index = build_index(dense_square, 0.05)
        marginal = MarginalSet(members=(3,), provenance={3: ((0, 0),)}, probes_examined=1)
        out = midpoint_test(dense_square, marginal, index, 0.05)
        assert out.omega is True
        assert out.pairs_tested == 0
        assert out.evidence == EVIDENCE_INSUFFICIENT

    def test_exhaustive_matches_first_witness(self, ring_cluster):
        first = analyze(ring_cluster, 0.05, eta=0.5, seed=3, mode=FIRST_WITNESS)
        full = analyze(ring_cluster, 0.05, eta=0.5, seed=3, mode=EXHAUSTIVE)
        assert first.omega == full.omega is False
        # exhaustive reports the violation of the smallest pair key, which is
        # exactly the pair the early break stops at
        assert first.witness_pair == full.witness_pair
        assert np.array_equal(first.witness, full.witness)
        assert full.diagnostics.violations >= 1
        assert full.counts.pairs_tested >= first.counts.pairs_tested

    def test_violation_count_zero_iff_convex(self, dense_square):
        first = analyze(dense_square, 0.05, mode=FIRST_WITNESS)
        full = analyze(dense_square, 0.05, mode=EXHAUSTIVE)
        assert first.omega is True
        assert full.diagnostics.violations == 0
        n = len(full.marginal.members)
        assert full.counts.pairs_tested == n * (n - 1) // 2

    def test_exhaustive_random_instances_agree_with_first(self):
        rng = np.random.Generator(np.random.PCG64(17))
        for trial in range(6):
            cluster = Cluster(rng.uniform(0, 1, size=(90, 2)))
            first = analyze(cluster, 0.09, mode=FIRST_WITNESS)
            full = analyze(cluster, 0.09, mode=EXHAUSTIVE)
            assert first.omega == full.omega
            assert (full.diagnostics.violations == 0) == first.omega
            if not first.omega:
                assert first.witness_pair == full.witness_pair

    def test_witness_uncovered_by_linear_scan(self, ring_cluster):
        report = analyze(ring_cluster, 0.05, eta=0.5, seed=6)
        assert report.omega is False
        assert not scan_any_within(ring_cluster.coords, report.witness, 0.05)
