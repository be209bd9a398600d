import json

import numpy as np
import pytest

from gridconvex import (Cluster, ParameterError, analyze, read_points_csv,
                        report_json, report_to_dict, write_points_csv)

REPORT_KEYS = {"omega", "witness", "witness_pair", "eps", "eta", "seed", "mode",
               "generator", "evidence", "counts", "marginal_ids", "version"}
COUNT_KEYS = {"t", "sampled", "non_neighboring", "probe_points", "marginal",
              "pairs_tested"}


class TestPointsCsv:
    def test_round_trip_is_exact(self, tmp_path):
        rng = np.random.Generator(np.random.PCG64(1))
        cluster = Cluster(rng.uniform(-1e3, 1e3, size=(200, 3)))
        path = tmp_path / "pts.csv"
        write_points_csv(path, cluster)
        back = read_points_csv(path)
        assert np.array_equal(back.coords, cluster.coords)

    def test_comment_and_header_skipped(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("# generated file\nx,y\n1.5,2.5\n3.5,4.5\n")
        cluster = read_points_csv(path)
        assert cluster.coords.tolist() == [[1.5, 2.5], [3.5, 4.5]]

    def test_alternate_delimiters(self, tmp_path):
        for text in ("1.0;2.0\n3.0;4.0\n", "1.0\t2.0\n3.0\t4.0\n", "1.0 2.0\n3.0 4.0\n"):
            path = tmp_path / "alt.csv"
            path.write_text(text)
            assert read_points_csv(path).coords.tolist() == [[1.0, 2.0], [3.0, 4.0]]

    def test_ragged_rows_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3,4,5\n")
        with pytest.raises(ParameterError, match="columns"):
            read_points_csv(path)

    def test_second_text_row_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\na,b\n1,2\n")
        with pytest.raises(ParameterError, match="not numeric"):
            read_points_csv(path)

    def test_non_finite_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\nnan,4\n")
        with pytest.raises(ParameterError, match="non-finite"):
            read_points_csv(path)

    def test_empty_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("# nothing here\n")
        with pytest.raises(ParameterError, match="no data"):
            read_points_csv(path)


class TestReportSchema:
    def test_keys_exact(self, ring_cluster):
        d = report_to_dict(analyze(ring_cluster, 0.05, eta=0.5, seed=0))
        assert set(d) == REPORT_KEYS
        assert set(d["counts"]) == COUNT_KEYS

    def test_witness_fields_mirror_verdict(self, ring_cluster, dense_square):
        non_convex = report_to_dict(analyze(ring_cluster, 0.05, eta=0.5, seed=0))
        assert non_convex["omega"] is False
        assert isinstance(non_convex["witness"], list)
        assert len(non_convex["witness_pair"]) == 2
        convex = report_to_dict(analyze(dense_square, 0.05))
        assert convex["omega"] is True
        assert convex["witness"] is None and convex["witness_pair"] is None

    def test_serialization_sorted_and_newline_terminated(self, dense_square):
        text = report_json(report_to_dict(analyze(dense_square, 0.05)))
        assert text.endswith("\n")
        parsed = json.loads(text)
        assert list(parsed) == sorted(parsed)
        assert list(parsed["counts"]) == sorted(parsed["counts"])

    def test_byte_identical_across_runs(self, ring_cluster):
        a = report_json(report_to_dict(analyze(ring_cluster, 0.05, eta=0.5, seed=3)))
        b = report_json(report_to_dict(analyze(ring_cluster, 0.05, eta=0.5, seed=3)))
        assert a == b

    def test_marginal_ids_sorted(self, ring_cluster):
        d = report_to_dict(analyze(ring_cluster, 0.05, eta=0.5, seed=0))
        assert d["marginal_ids"] == sorted(d["marginal_ids"])
        assert d["counts"]["marginal"] == len(d["marginal_ids"])
