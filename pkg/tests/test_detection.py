import numpy as np
import pytest

from gridconvex import (Cluster, NonNeighboringSet, ParameterError, build_index,
                        build_spec, detect_marginal, detect_non_neighboring,
                        distance, lattice_to_point, probe_indices, sample_grid)

from .oracles import literal_marginal, literal_non_neighboring


def run_detection(cluster, eps, eta=1.0, seed=0):
    spec = build_spec(cluster, eps)
    sampled = sample_grid(spec, eta, seed)
    index = build_index(cluster, eps)
    nonneigh = detect_non_neighboring(cluster, sampled, index)
    marginal = detect_marginal(cluster, nonneigh, spec, index)
    return spec, sampled, nonneigh, marginal


class TestNonNeighboring:
    def test_dense_square_leaves_only_pad_band(self, dense_square):
        eps = 0.05
        spec, sampled, nonneigh, _ = run_detection(dense_square, eps)
        assert nonneigh.members == literal_non_neighboring(
            dense_square.coords, spec, sampled.members)
        # every uncovered point lies in the pad band outside the data extent
        for g in nonneigh.members:
            point = lattice_to_point(spec, g)
            assert (point < 0.0).any() or (point > 1.0).any()
        # the outermost pad planes are always uncovered (distance 2*eps)
        last = tuple(c - 1 for c in spec.counts)
        for g in sampled.members:
            if any(v == 0 for v in g) or any(v == last[d] for d, v in enumerate(g)):
                assert g in nonneigh.members

    def test_single_point_one_dimension(self):
        cluster = Cluster.from_rows([[0.0]])
        spec, sampled, nonneigh, _ = run_detection(cluster, 1.0)
        # lattice -2..2; only the extreme planes are farther than eps
        assert nonneigh.members == {(0,), (4,)}

    def test_ring_hole_detected_at_full_rate(self, ring_cluster):
        spec, _, nonneigh, _ = run_detection(ring_cluster, 0.05)
        inside_hole = [g for g in nonneigh.members
                       if np.hypot(*lattice_to_point(spec, g)) < 0.4]
        assert inside_hole

    def test_matches_literal_scan(self, ring_cluster):
        rng = np.random.Generator(np.random.PCG64(2))
        small = Cluster(ring_cluster.coords[rng.integers(0, ring_cluster.n, 150)])
        spec, sampled, nonneigh, _ = run_detection(small, 0.12, eta=0.7, seed=3)
        assert nonneigh.members == literal_non_neighboring(small.coords, spec, sampled.members)

    def test_eps_mismatch_rejected(self, dense_square):
        spec = build_spec(dense_square, 0.05)
        sampled = sample_grid(spec, 1.0, 0)
        wrong = build_index(dense_square, 0.1)
        with pytest.raises(ParameterError):
            detect_non_neighboring(dense_square, sampled, wrong)


class TestMarginal:
    def test_empty_input_gives_empty_output(self, dense_square):
        spec = build_spec(dense_square, 0.05)
        index = build_index(dense_square, 0.05)
        got = detect_marginal(dense_square, NonNeighboringSet(frozenset()), spec, index)
        assert got.members == ()
        assert got.probes_examined == 0

    def test_one_dimensional_chain_ends(self):
        # points 0, 0.05, ..., 1: only the two chain ends are marginal
        cluster = Cluster(np.linspace(0.0, 1.0, 21).reshape(-1, 1))
        _, _, _, marginal = run_detection(cluster, 0.05)
        coords = sorted(float(cluster.coords[i][0]) for i in marginal.members)
        assert coords == [0.0, 1.0]

    def test_ring_traces_both_frontiers(self, ring_cluster):
        spec, _, _, marginal = run_detection(ring_cluster, 0.05, eta=0.5, seed=0)
        eps_band = 0.05 * np.sqrt(2)
        radii = np.hypot(*ring_cluster.coords[list(marginal.members)].T)
        near_inner = np.abs(radii - 0.5) <= eps_band
        near_outer = np.abs(radii - 1.0) <= eps_band
        assert (near_inner | near_outer).all()
        assert near_inner.any() and near_outer.any()

    def test_provenance_points_lie_within_eps(self, ring_cluster):
        spec, _, _, marginal = run_detection(ring_cluster, 0.05, eta=0.5, seed=1)
        for pid, probes in marginal.provenance.items():
            assert probes
            for probe in probes:
                d = distance(lattice_to_point(spec, probe), ring_cluster.coords[pid])
                assert d <= 0.05

    def test_members_sorted_and_bounded_by_probes(self, ring_cluster):
        spec, _, nonneigh, marginal = run_detection(ring_cluster, 0.05, eta=0.5, seed=2)
        assert list(marginal.members) == sorted(marginal.members)
        assert marginal.size <= marginal.probes_examined
        assert marginal.probes_examined == len(probe_indices(spec, nonneigh))

    def test_matches_literal_scan(self):
        rng = np.random.Generator(np.random.PCG64(8))
        cluster = Cluster(rng.uniform(0, 1, size=(120, 2)))
        spec, sampled, nonneigh, marginal = run_detection(cluster, 0.11)
        assert set(marginal.members) == literal_marginal(cluster.coords, spec,
                                                         set(nonneigh.members))


class TestSoundness:
    def test_uncovered_points_are_strictly_beyond_eps(self, ring_cluster):
        spec, _, nonneigh, _ = run_detection(ring_cluster, 0.05, eta=0.5, seed=4)
        coords = ring_cluster.coords
        for g in list(nonneigh.members)[:200]:
            point = lattice_to_point(spec, g)
            d2 = ((coords - point) ** 2).sum(axis=1)
            assert (d2 > 0.05 * 0.05).all()

    def test_full_rate_covered_points_have_neighbor(self, dense_square):
        eps = 0.05
        spec, sampled, nonneigh, _ = run_detection(dense_square, eps)
        coords = dense_square.coords
        complement = set(sampled.members) - set(nonneigh.members)
        for g in sorted(complement)[::7]:
            point = lattice_to_point(spec, g)
            d2 = ((coords - point) ** 2).sum(axis=1)
            assert (d2 <= eps * eps).any()
