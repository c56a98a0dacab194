"""stepdist: change-point step-function embeddings and L^p analysis of time series."""

from .changepoint import (
    Attribute,
    ChangePointSet,
    DetectionParams,
    TimeSeries,
    detect_change_points,
    segment_statistics,
)
from .clustering import (
    ClusterAssignment,
    Dendrogram,
    Linkage,
    cut_dendrogram,
    eigengap_k,
    hierarchical_cluster,
    spectral_cluster,
    to_newick,
)
from .geo import EARTH_RADIUS_KM, StationMetadata, geo_distance_matrix, haversine_km
from .matrices import (
    LabeledSquareMatrix,
    MatrixKind,
    alignment_matrix,
    consistency_matrix,
    matrix_norm,
    normalized_distance_matrix,
    read_matrix_csv,
    to_affinity,
    unscaled_distance_matrix,
    write_matrix_csv,
)
from .pipeline import PipelineConfig, compare_metrics, ingest, run_analysis
from .set_metrics import hausdorff, mj_semi_metric, modified_hausdorff
from .stepfn import (
    StepFunction,
    are_equivalent,
    embed,
    from_changepoints,
    inner_product,
    lp_distance,
    lp_norm,
    magnitude,
    normalize,
)
from .synthetic import (
    PerturbationSpec,
    RegimeSpec,
    benchmark_suite,
    benchmark_suite_specs,
    export_suite,
    generate_series,
    perturb,
)

__all__ = [
    "Attribute",
    "ChangePointSet",
    "ClusterAssignment",
    "Dendrogram",
    "DetectionParams",
    "EARTH_RADIUS_KM",
    "LabeledSquareMatrix",
    "Linkage",
    "MatrixKind",
    "PerturbationSpec",
    "PipelineConfig",
    "RegimeSpec",
    "StationMetadata",
    "StepFunction",
    "TimeSeries",
    "alignment_matrix",
    "are_equivalent",
    "benchmark_suite",
    "benchmark_suite_specs",
    "compare_metrics",
    "consistency_matrix",
    "cut_dendrogram",
    "detect_change_points",
    "eigengap_k",
    "embed",
    "export_suite",
    "from_changepoints",
    "generate_series",
    "geo_distance_matrix",
    "hausdorff",
    "haversine_km",
    "hierarchical_cluster",
    "ingest",
    "inner_product",
    "lp_distance",
    "lp_norm",
    "magnitude",
    "matrix_norm",
    "mj_semi_metric",
    "modified_hausdorff",
    "normalize",
    "normalized_distance_matrix",
    "perturb",
    "read_matrix_csv",
    "run_analysis",
    "segment_statistics",
    "spectral_cluster",
    "to_affinity",
    "to_newick",
    "unscaled_distance_matrix",
    "write_matrix_csv",
]

__version__ = "0.1.0"
