"""Classic and discriminative k-means clustering."""

from ._core import (
    Algorithm,
    BinaryLabel,
    Clustering,
    Config,
    ConfusionMatrix,
    Dataset,
    Error,
    IdentityModel,
    InitMode,
    SplitEvent,
    SsdRecord,
    Termination,
    centroid,
    classify,
    compare_leave_one_out,
    experiment_data,
    leave_one_out,
    load_csv,
    pca_project,
    pooled_mean_update,
    run_discriminative,
    run_experiment,
    run_kmeans,
    save_csv,
    squared_distance,
    ssd_of,
    three_identity_data,
    train_identity_models,
)

__all__ = [
    "Algorithm",
    "BinaryLabel",
    "Clustering",
    "Config",
    "ConfusionMatrix",
    "Dataset",
    "Error",
    "IdentityModel",
    "InitMode",
    "SplitEvent",
    "SsdRecord",
    "Termination",
    "centroid",
    "classify",
    "compare_leave_one_out",
    "experiment_data",
    "leave_one_out",
    "load_csv",
    "pca_project",
    "pooled_mean_update",
    "run_discriminative",
    "run_experiment",
    "run_kmeans",
    "save_csv",
    "squared_distance",
    "ssd_of",
    "three_identity_data",
    "train_identity_models",
]
