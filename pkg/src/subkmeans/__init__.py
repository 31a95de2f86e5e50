"""Two-stage k-means: landmark partitioning, per-part compression, global clustering."""

from ._backend import BACKEND
from .datasets import DataFormatError, SyntheticSpec, gen_synthetic, load_csv, load_iris, load_seeds
from .kmeans_core import (
    ClusteringModel,
    DuplicateRowsWarning,
    InvalidArgumentError,
    assign,
    init_centers,
    lloyd,
    sse,
    update_centers,
)
from .layout import COLUMN_MAJOR, ROW_MAJOR, FlatBuffer, flatten, reconstruct
from .partitioning import Landmark, PartitionSet, equal_partition, make_landmarks, unequal_partition
from .pipeline import (
    ConfigError,
    PipelineConfig,
    PipelineResult,
    local_center_count,
    run_standard,
    two_stage_cluster,
)
from .preprocessing import ScalingParams, fit_minmax, inverse_transform, transform

__version__ = "0.1.0"
