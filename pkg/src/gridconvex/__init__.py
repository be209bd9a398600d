"""Grid-calibrated convexity analysis of a density-based cluster.

Overlay an eps-accurate lattice on the cluster's padded value space, find the
sampled lattice points the cluster does not cover, derive the marginal
cluster points from their lattice neighbors, and test midpoint convexity
between all marginal pairs.  A non-convex verdict comes with a concrete
witness midpoint.
"""

from .convexity import (EVIDENCE_INSUFFICIENT, EVIDENCE_OK, EXHAUSTIVE,
                        FIRST_WITNESS, AnalysisReport, MidpointOutcome,
                        analyze, midpoint_test)
from .datagen import ShapeSpec, generate, load_shape_spec
from .density import NOISE, DbscanResult, dbscan, select_eps
from .detection import (MarginalSet, NonNeighboringSet, detect_marginal,
                        detect_non_neighboring, probe_indices)
from .errors import (EpsilonSearchError, GridConvexError, GridTooLargeError,
                     ParameterError)
from .formats import read_points_csv, report_json, report_to_dict, write_points_csv
from .geometry import (Cluster, as_point, distance, in_eps_neighborhood,
                       midpoint, squared_distance)
from .grid import (GENERATOR_NAME, GRID_TOTAL_LIMIT, SAMPLE_POINT_LIMIT, GridSpec, SampledGrid,
                   build_spec, lattice_neighbors, lattice_points,
                   lattice_to_point, sample_grid)
from .preprocess import (ProjectionMatrix, make_projection, random_project,
                         subsample_cluster)
from .spatial import (SpatialIndex, any_within, build_index, covered_mask,
                      ids_within, nearest_within)
from .svg import render_analysis_svg
from .version import __version__

__all__ = [
    "__version__",
    "AnalysisReport", "MidpointOutcome", "analyze", "midpoint_test",
    "FIRST_WITNESS", "EXHAUSTIVE", "EVIDENCE_OK", "EVIDENCE_INSUFFICIENT",
    "ShapeSpec", "generate", "load_shape_spec",
    "NOISE", "DbscanResult", "dbscan", "select_eps",
    "MarginalSet", "NonNeighboringSet", "detect_marginal",
    "detect_non_neighboring", "probe_indices",
    "GridConvexError", "ParameterError", "GridTooLargeError", "EpsilonSearchError",
    "read_points_csv", "write_points_csv", "report_to_dict", "report_json",
    "Cluster", "as_point", "distance", "midpoint", "squared_distance",
    "in_eps_neighborhood",
    "GENERATOR_NAME", "GRID_TOTAL_LIMIT", "SAMPLE_POINT_LIMIT", "GridSpec", "SampledGrid",
    "build_spec", "sample_grid", "lattice_neighbors", "lattice_to_point",
    "lattice_points",
    "ProjectionMatrix", "make_projection", "random_project", "subsample_cluster",
    "SpatialIndex", "build_index", "any_within", "nearest_within",
    "ids_within", "covered_mask",
    "render_analysis_svg",
]
