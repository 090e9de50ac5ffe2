"""Reproducible synthetic studies contrasting the metric variants.

Three studies: the classification-error comparison (a 3x3 metric-by-error
table), the cross-contamination sweep (metric curves over the blending
factor alpha), and the penalty analysis (penalty variants across SNRs and
error types). Each study averages over a configurable number of generated
scenes and emits rows suitable for CSV export and external plotting.
"""

import csv
from dataclasses import dataclass, field

from .metrics import (
    Application,
    MetricConfig,
    Penalty,
    ca_sdr,
    casa_sdr,
    classical_sdr,
)
from .sdr import DEFAULT_SDR_CAP_DB
from .simulate import (
    ContaminationSpec,
    Deletion,
    Substitution,
    Swapping,
    cross_contaminate,
    derive_seed,
    inject_error,
    make_scene,
    oracle_predictions,
)

CSV_COLUMNS = ("study", "x", "metric", "penalty", "application", "value_db", "seed")

ERROR_TYPE_ORDER = ("deletion", "substitution", "swapping")
METRIC_ORDER = ("classical", "ca", "casa")

DEFAULT_ALPHA_GRID = tuple(round(0.05 * i, 2) for i in range(21))

# Class used for substitution errors; deliberately kept out of the scene
# vocabulary so the injected label is always out-of-scene.
OUT_OF_SCENE_CLASS = "telephone"

_PENALTY_CONFIGS = (
    (Penalty.NONE, Application.NON_TP),
    (Penalty.INPUT_LEVEL, Application.NON_TP),
    (Penalty.INPUT_LEVEL, Application.ERROR_BASED),
    (Penalty.OUTPUT_LEVEL, Application.NON_TP),
    (Penalty.OUTPUT_LEVEL, Application.ERROR_BASED),
)


@dataclass(frozen=True)
class SweepRow:
    """One (sweep point, metric configuration) result in dB."""

    x: float | str
    metric: str
    penalty: str
    application: str
    value_db: float


@dataclass(eq=False)
class SweepResult:
    study: str
    rows: list[SweepRow]
    metadata: dict = field(default_factory=dict)


def _study_errors():
    # Canonical error set on the first two targets: delete the second label,
    # substitute it with an out-of-scene class, or swap the first two.
    return {
        "deletion": Deletion(1),
        "substitution": Substitution(1, OUT_OF_SCENE_CLASS),
        "swapping": Swapping(0, 1),
    }


def run_classification_study(
    seed: int,
    snr_db: float = 10.0,
    *,
    n_scenes: int = 10,
    n_targets: int = 3,
    n_interferences: int = 2,
    duration_s: float = 10.0,
    sample_rate: int = 16000,
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> SweepResult:
    """Compare the three metrics under deletion, substitution and swapping.

    Per scene: generate sources, produce oracle predictions at ``snr_db``,
    inject each error type into the labels, then evaluate the classical,
    class-aware and class-and-source-aware (penalty-free) metrics. Returned
    values are means over ``n_scenes``.
    """
    if n_targets < 2:
        raise ValueError("the classification study needs at least two targets")
    errors = _study_errors()
    sums = {(tag, metric): 0.0 for tag in ERROR_TYPE_ORDER for metric in METRIC_ORDER}
    for i in range(n_scenes):
        scene = make_scene(
            n_targets, n_interferences, duration_s, sample_rate,
            seed=derive_seed(seed, i, 0),
        )
        predictions = oracle_predictions(scene, snr_db, seed=derive_seed(seed, i, 1))
        for tag in ERROR_TYPE_ORDER:
            corrupted = inject_error(predictions, errors[tag])
            signals = [p.signal for p in corrupted]
            targets = [t.signal for t in scene.targets]
            sums[(tag, "classical")] += classical_sdr(signals, targets, cap_db).final_db
            sums[(tag, "ca")] += ca_sdr(corrupted, scene.targets, cap_db).final_db
            sums[(tag, "casa")] += casa_sdr(
                corrupted, scene.targets, config=MetricConfig(sdr_cap_db=cap_db)
            ).final_db

    rows = [
        SweepRow(tag, metric, Penalty.NONE.value, Application.NON_TP.value,
                 sums[(tag, metric)] / n_scenes)
        for tag in ERROR_TYPE_ORDER
        for metric in METRIC_ORDER
    ]
    metadata = {
        "seed": seed, "n_scenes": n_scenes, "snr_db": snr_db,
        "n_targets": n_targets, "n_interferences": n_interferences,
        "duration_s": duration_s, "sample_rate": sample_rate,
    }
    return SweepResult("classification", rows, metadata)


def run_contamination_sweep(
    seed: int,
    alphas=None,
    *,
    n_scenes: int = 10,
    noise_snr_db: float = 60.0,
    pair: tuple[int, int] = (0, 1),
    n_targets: int = 3,
    n_interferences: int = 2,
    duration_s: float = 10.0,
    sample_rate: int = 16000,
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> SweepResult:
    """Sweep the cross-contamination factor with labels kept correct.

    At each alpha the chosen pair of estimates is blended per
    :func:`s5metrics.simulate.cross_contaminate` and all three metrics are
    evaluated; values are means over ``n_scenes``.
    """
    alphas = tuple(DEFAULT_ALPHA_GRID if alphas is None else alphas)
    for alpha in alphas:
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha grid values must lie in [0, 1], got {alpha}")
    sums = {(alpha, metric): 0.0 for alpha in alphas for metric in METRIC_ORDER}
    for i in range(n_scenes):
        scene = make_scene(
            n_targets, n_interferences, duration_s, sample_rate,
            seed=derive_seed(seed, i, 0),
        )
        targets = [t.signal for t in scene.targets]
        for j, alpha in enumerate(alphas):
            spec = ContaminationSpec(alpha=alpha, pair=pair, noise_snr_db=noise_snr_db)
            predictions = cross_contaminate(
                scene.targets, spec, seed=derive_seed(seed, i, 1 + j)
            )
            signals = [p.signal for p in predictions]
            sums[(alpha, "classical")] += classical_sdr(signals, targets, cap_db).final_db
            sums[(alpha, "ca")] += ca_sdr(predictions, scene.targets, cap_db).final_db
            sums[(alpha, "casa")] += casa_sdr(
                predictions, scene.targets, config=MetricConfig(sdr_cap_db=cap_db)
            ).final_db

    rows = [
        SweepRow(alpha, metric, Penalty.NONE.value, Application.NON_TP.value,
                 sums[(alpha, metric)] / n_scenes)
        for alpha in alphas
        for metric in METRIC_ORDER
    ]
    metadata = {
        "seed": seed, "n_scenes": n_scenes, "noise_snr_db": noise_snr_db,
        "pair": pair, "n_targets": n_targets, "n_interferences": n_interferences,
        "duration_s": duration_s, "sample_rate": sample_rate,
    }
    return SweepResult("contamination", rows, metadata)


def run_penalty_study(
    seed: int,
    snrs_db=(6.0, 30.0),
    *,
    n_scenes: int = 10,
    n_targets: int = 3,
    n_interferences: int = 2,
    duration_s: float = 10.0,
    sample_rate: int = 16000,
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> SweepResult:
    """Evaluate the penalty variants across SNRs and error types.

    For every SNR and error type, the class-and-source-aware metric is
    computed with no penalty, the input-level penalty and the output-level
    penalty, the latter two under both the per-source and per-error
    applications. Row convention: ``x`` is the SNR and the ``metric`` column
    carries the error-type tag (all values are the class-and-source-aware
    metric; the penalty/application columns identify the variant).
    """
    if n_targets < 2:
        raise ValueError("the penalty study needs at least two targets")
    snrs_db = tuple(float(s) for s in snrs_db)
    errors = _study_errors()
    keys = [
        (snr, tag, penalty, application)
        for snr in snrs_db
        for tag in ERROR_TYPE_ORDER
        for penalty, application in _PENALTY_CONFIGS
    ]
    sums = {key: 0.0 for key in keys}
    for i in range(n_scenes):
        scene = make_scene(
            n_targets, n_interferences, duration_s, sample_rate,
            seed=derive_seed(seed, i, 0),
        )
        for s, snr in enumerate(snrs_db):
            predictions = oracle_predictions(
                scene, snr, seed=derive_seed(seed, i, 1 + s)
            )
            for tag in ERROR_TYPE_ORDER:
                corrupted = inject_error(predictions, errors[tag])
                for penalty, application in _PENALTY_CONFIGS:
                    config = MetricConfig(
                        penalty=penalty, application=application, sdr_cap_db=cap_db
                    )
                    report = casa_sdr(
                        corrupted, scene.targets, mixture=scene.mixture, config=config
                    )
                    sums[(snr, tag, penalty, application)] += report.final_db

    rows = [
        SweepRow(snr, tag, penalty.value, application.value,
                 sums[(snr, tag, penalty, application)] / n_scenes)
        for snr, tag, penalty, application in keys
    ]
    metadata = {
        "seed": seed, "n_scenes": n_scenes, "snrs_db": snrs_db,
        "n_targets": n_targets, "n_interferences": n_interferences,
        "duration_s": duration_s, "sample_rate": sample_rate,
    }
    return SweepResult("penalties", rows, metadata)


def write_csv(result: SweepResult, path) -> None:
    """Write a sweep result with the fixed column order of ``CSV_COLUMNS``.

    Floats are rendered with ``repr`` so re-parsing reproduces them exactly.
    """
    seed = result.metadata.get("seed", "")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in result.rows:
            writer.writerow(
                [
                    result.study,
                    repr(float(row.x)) if isinstance(row.x, float) else str(row.x),
                    row.metric,
                    row.penalty,
                    row.application,
                    repr(row.value_db),
                    seed,
                ]
            )


def format_classification_table(result: SweepResult) -> str:
    """Render the classification study as a metric-by-error-type text table."""
    if result.study != "classification":
        raise ValueError("table formatting is defined for the classification study")
    values = {(row.metric, row.x): row.value_db for row in result.rows}
    header = f"{'metric':<12}" + "".join(f"{tag:>14}" for tag in ERROR_TYPE_ORDER)
    lines = [header]
    for metric in METRIC_ORDER:
        cells = "".join(
            f"{values[(metric, tag)]:>14.2f}" for tag in ERROR_TYPE_ORDER
        )
        lines.append(f"{metric:<12}" + cells)
    return "\n".join(lines)
