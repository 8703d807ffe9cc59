"""Interpretable binary diagnosis with self-organizing logic networks.

The pipeline: encode each feature as one bit against a fitted
threshold, grow a layered network of two-input logic units under an
external selection criterion, read the final layer as an M-of-N
syndrome complex, and tabulate it as a diagnostic lookup table whose
signed entries carry both the decision and its vote count.
"""

from .data import Dataset, FeatureSpec, load_csv, to_csv
from .encoding import Encoder, encode_dataset, fit_feature
from .errors import (
    CatalogError,
    DataError,
    EncodingError,
    EvaluationError,
    ModelFormatError,
    MofnError,
    TableError,
    TrainingError,
)
from .logic import (
    LogicFunction,
    catalog,
    complement_id,
    eval_fn,
    eval_vector,
    function_ids,
    truth_row,
)
from .network import Network, TrainConfig, classify, train
from .rules import (
    SignedDecision,
    SyndromeComplex,
    decision_levels,
    describe_decision,
    evaluate,
    extract,
    parse_formula_table,
    to_formula_table,
    vote_decision,
)
from .tables import DiagnosticTable, detect_contradictions, make_table, render

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "FeatureSpec",
    "load_csv",
    "to_csv",
    "Encoder",
    "encode_dataset",
    "fit_feature",
    "LogicFunction",
    "catalog",
    "complement_id",
    "eval_fn",
    "eval_vector",
    "function_ids",
    "truth_row",
    "Network",
    "TrainConfig",
    "classify",
    "train",
    "SignedDecision",
    "SyndromeComplex",
    "decision_levels",
    "describe_decision",
    "evaluate",
    "extract",
    "parse_formula_table",
    "to_formula_table",
    "vote_decision",
    "DiagnosticTable",
    "detect_contradictions",
    "make_table",
    "render",
    "MofnError",
    "CatalogError",
    "DataError",
    "EncodingError",
    "EvaluationError",
    "ModelFormatError",
    "TableError",
    "TrainingError",
    "__version__",
]
