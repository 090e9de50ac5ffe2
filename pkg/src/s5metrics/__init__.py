"""Evaluation metrics for jointly separated and classified sound sources.

The package contrasts three ways of scoring a set of estimated sources with
predicted class labels against labeled references: the label-agnostic
permutation-invariant SDR, a class-aware variant that matches sources by
predicted label, and a class-and-source-aware variant that aligns signals
first and judges labels afterwards, optionally charging penalties for
misclassified sources. A deterministic scene simulator and three synthetic
studies reproduce the characteristic behaviors of each metric.
"""

from .experiments import (
    CSV_COLUMNS,
    DEFAULT_ALPHA_GRID,
    ERROR_TYPE_ORDER,
    METRIC_ORDER,
    OUT_OF_SCENE_CLASS,
    SweepResult,
    SweepRow,
    format_classification_table,
    run_classification_study,
    run_contamination_sweep,
    run_penalty_study,
    write_csv,
)
from .manifest import (
    EvaluationManifest,
    evaluate_manifest,
    format_report,
    load_manifest,
    parse_report,
)
from .metrics import (
    Application,
    ClassificationTag,
    ErrorCounts,
    MetricConfig,
    MetricReport,
    Penalty,
    SourceScore,
    Variant,
    apply_penalties,
    ca_sdr,
    casa_sdr,
    classical_sdr,
    classify_errors,
    evaluate_scene,
    input_level_penalty,
    output_level_penalty,
)
from .sdr import DEFAULT_SDR_CAP_DB, Assignment, best_assignment, sdr
from .signals import AudioSignal, LabeledSource, Scene, energy
from .simulate import (
    CLASS_VOCABULARY,
    LEVEL_STEP_DB,
    ContaminationSpec,
    Deletion,
    ErrorType,
    Substitution,
    Swapping,
    cross_contaminate,
    derive_seed,
    inject_error,
    make_scene,
    oracle_predictions,
)
from .wavio import WavFormatError, load_audio, save_audio

__all__ = [
    "Application",
    "Assignment",
    "AudioSignal",
    "CLASS_VOCABULARY",
    "CSV_COLUMNS",
    "ClassificationTag",
    "ContaminationSpec",
    "DEFAULT_ALPHA_GRID",
    "DEFAULT_SDR_CAP_DB",
    "Deletion",
    "ERROR_TYPE_ORDER",
    "ErrorCounts",
    "ErrorType",
    "EvaluationManifest",
    "LEVEL_STEP_DB",
    "LabeledSource",
    "METRIC_ORDER",
    "MetricConfig",
    "MetricReport",
    "OUT_OF_SCENE_CLASS",
    "Penalty",
    "Scene",
    "SourceScore",
    "Substitution",
    "SweepResult",
    "SweepRow",
    "Swapping",
    "Variant",
    "WavFormatError",
    "apply_penalties",
    "best_assignment",
    "ca_sdr",
    "casa_sdr",
    "classical_sdr",
    "classify_errors",
    "cross_contaminate",
    "derive_seed",
    "energy",
    "evaluate_manifest",
    "evaluate_scene",
    "format_classification_table",
    "format_report",
    "inject_error",
    "input_level_penalty",
    "load_audio",
    "load_manifest",
    "make_scene",
    "oracle_predictions",
    "output_level_penalty",
    "parse_report",
    "run_classification_study",
    "run_contamination_sweep",
    "run_penalty_study",
    "save_audio",
    "sdr",
    "write_csv",
]

__version__ = "0.1.0"
