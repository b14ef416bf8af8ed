"""Regional stability index toolkit.

Builds a composite Region Stability (RS) index from climate and
government indicators: correlation-matrix PCA picks the informative
indexes, a small backpropagation network maps them to a 0-100
evaluation, RS = 100/output - 1 grades it, and a per-country linear
trend extrapolates the index forward.
"""

from .errors import (
    InputOutputError,
    NumericError,
    RegionStabError,
    ValidationError,
)
from .numerics import (
    ColumnStats,
    DataMatrix,
    SymmetricEigen,
    column_stats,
    correlation_matrix,
    pearson,
    standardize,
    symmetric_eigen,
)
from .pca import (
    INDEX_SELECTION,
    PROJECTION,
    PcaResult,
    contribution_rates,
    run_pca,
    select_components,
)
from .network import (
    Network,
    NetworkConfig,
    TrainReport,
    backprop_step,
    dataset_loss,
    forward,
    forward_batch,
    gradient_check,
    initialize,
    load_model,
    loss,
    save_model,
    sigmoid,
    train,
)
from .stability import (
    FRAGILE_RS_CUTOFF,
    STABLE_RS_CUTOFF,
    RsScore,
    StabilityClass,
    classify,
    normalize_labels,
    rs_transform,
)
from .forecast import (
    ForecastResult,
    LinearFit,
    TimeSeries,
    fit,
    forecast_series,
    predict,
    relativity_check,
)
from .ingest import (
    CountryYearRecord,
    SEVEN_INDEXES,
    TRAINING_INDEXES,
    load_csv,
    parse_number,
    preprocess,
    records_to_matrix,
    write_csv,
)
from .pipeline import (
    PipelineConfig,
    cmd_forecast,
    cmd_pca,
    cmd_report,
    cmd_score,
    cmd_train,
    make_config,
    read_config_file,
)
from .datasets import fixture_path, load_country_series, load_fixture

__version__ = "0.1.0"

__all__ = [
    "RegionStabError", "ValidationError", "NumericError", "InputOutputError",
    "DataMatrix", "ColumnStats", "SymmetricEigen",
    "column_stats", "standardize", "pearson", "correlation_matrix", "symmetric_eigen",
    "INDEX_SELECTION", "PROJECTION", "PcaResult",
    "contribution_rates", "select_components", "run_pca",
    "Network", "NetworkConfig", "TrainReport",
    "sigmoid", "initialize", "forward", "forward_batch", "loss",
    "backprop_step", "dataset_loss", "train", "gradient_check",
    "save_model", "load_model",
    "FRAGILE_RS_CUTOFF", "STABLE_RS_CUTOFF", "StabilityClass", "RsScore",
    "classify", "rs_transform", "normalize_labels",
    "TimeSeries", "LinearFit", "ForecastResult",
    "fit", "relativity_check", "predict", "forecast_series",
    "CountryYearRecord", "SEVEN_INDEXES", "TRAINING_INDEXES",
    "parse_number", "load_csv", "write_csv", "preprocess", "records_to_matrix",
    "PipelineConfig", "read_config_file", "make_config",
    "cmd_pca", "cmd_train", "cmd_score", "cmd_forecast", "cmd_report",
    "fixture_path", "load_fixture", "load_country_series",
    "__version__",
]
