"""Label-aware separation metrics.

Three variants of the mean signal-to-distortion ratio over a set of sources:

* classical: permutation-invariant SDR that ignores class labels entirely.
* class-aware (ca): estimates are matched to references by their predicted
  class label; correctly classified sources score their SDR, the rest score
  0 dB.
* class-and-source-aware (casa): estimates are first aligned to references by
  the SDR-optimal permutation, labels travel with their signals, and only
  then are classification errors judged. Mislabeled sources score 0 dB or a
  configurable penalty.

All aggregation happens in the dB domain: the final value is the sum of
per-source contributions divided by max(#references, #predictions).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .sdr import DEFAULT_SDR_CAP_DB, Assignment, best_assignment, sdr
from .signals import AudioSignal, LabeledSource


class ClassificationTag(Enum):
    """Outcome of comparing a predicted class label against a reference label."""

    TP = "tp"
    FN = "fn"
    FP = "fp"
    FN_PLUS_FP = "fn+fp"

    @property
    def error_count(self) -> int:
        """Number of individual classification errors the tag represents."""
        return _ERROR_COUNT[self]


_ERROR_COUNT = {
    ClassificationTag.TP: 0,
    ClassificationTag.FN: 1,
    ClassificationTag.FP: 1,
    ClassificationTag.FN_PLUS_FP: 2,
}


class Variant(Enum):
    CLASSICAL = "classical"
    CA = "ca"
    CASA = "casa"


class Penalty(Enum):
    NONE = "none"
    INPUT_LEVEL = "input_level"
    OUTPUT_LEVEL = "output_level"


class Application(Enum):
    NON_TP = "non_tp"
    ERROR_BASED = "error_based"


@dataclass(frozen=True)
class MetricConfig:
    """Which metric to compute and how misclassified sources are scored.

    Penalties are defined for the casa variant only; ``application`` is
    consulted only when a penalty is active. ``sdr_cap_db`` bounds the
    degenerate zero-error SDR.
    """

    variant: Variant = Variant.CASA
    penalty: Penalty = Penalty.NONE
    application: Application = Application.NON_TP
    sdr_cap_db: float = DEFAULT_SDR_CAP_DB

    def __post_init__(self):
        if self.penalty is not Penalty.NONE and self.variant is not Variant.CASA:
            raise ValueError(
                f"penalty {self.penalty.value!r} is only defined for the casa "
                f"variant, not {self.variant.value!r}"
            )


@dataclass(frozen=True)
class SourceScore:
    """One scored slot of a metric report.

    ``estimate_index`` is None when no estimate was matched to the reference;
    ``reference_label`` is None for a spurious prediction that matched no
    reference. ``contribution_db`` is the value entering the final average
    (raw SDR for true positives, zero or a penalty otherwise).
    """

    reference_label: str | None
    estimate_label: str | None
    estimate_index: int | None
    raw_sdr_db: float | None
    tag: ClassificationTag
    contribution_db: float


@dataclass(frozen=True)
class ErrorCounts:
    tp: int
    fn: int
    fp: int


@dataclass(frozen=True, eq=False)
class MetricReport:
    """Result of one metric evaluation.

    ``final_db`` equals the sum of per-source contributions divided by
    ``denominator`` (= max(#references, #predictions)); use
    :meth:`recompute_final_db` to verify. ``assignment`` is None for the
    class-aware variant, which never aligns signals.
    """

    final_db: float
    per_source: tuple[SourceScore, ...]
    assignment: Assignment | None
    counts: ErrorCounts
    denominator: int

    def recompute_final_db(self) -> float:
        return sum(row.contribution_db for row in self.per_source) / self.denominator


def classify_errors(
    aligned: Sequence[tuple[str | None, str | None]],
) -> list[ClassificationTag]:
    """Tag aligned (reference label, predicted label) pairs.

    Either side may be None: a None reference marks a prediction that matched
    no reference source (a false positive if it named a class), and a None
    prediction marks a reference whose aligned prediction carried the
    no-class label, or no prediction at all (a false negative either way).
    A named prediction that disagrees with its reference is both errors at
    once: the reference class was missed and a wrong class was asserted.
    """
    tags = []
    for ref_label, pred_label in aligned:
        if ref_label is None and pred_label is None:
            raise ValueError(
                "an aligned pair needs at least a reference or a predicted label"
            )
        if ref_label is None:
            tags.append(ClassificationTag.FP)
        elif pred_label is None:
            tags.append(ClassificationTag.FN)
        elif pred_label == ref_label:
            tags.append(ClassificationTag.TP)
        else:
            tags.append(ClassificationTag.FN_PLUS_FP)
    return tags


def input_level_penalty(
    mixture: AudioSignal,
    reference: AudioSignal,
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> float:
    """Penalty magnitude for misclassifying a source that is salient in the mix.

    Equals SDR(mixture, reference) floored at 0 dB, so sources buried in the
    mixture cost nothing extra while prominent ones cost up to their
    mixture-level SDR. The sign is applied at aggregation time.
    """
    return max(sdr(mixture, reference, cap_db=cap_db), 0.0)


def output_level_penalty(
    reference: AudioSignal,
    matched_estimate: AudioSignal,
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> float:
    """Penalty magnitude equal to the misclassified source's own separation SDR.

    ``matched_estimate`` must be the estimate paired with ``reference`` by the
    optimal assignment. Well-separated sources cost more to mislabel. The
    magnitude is not floored: poor separation (negative SDR) yields a negative
    magnitude, which turns into a positive contribution at aggregation.
    """
    return sdr(matched_estimate, reference, cap_db=cap_db)


def apply_penalties(
    tags: Sequence[ClassificationTag],
    raw_sdrs_db: Sequence[float | None],
    penalty_magnitudes_db: Sequence[float],
    application: Application = Application.NON_TP,
) -> list[float]:
    """Turn per-slot tags, SDRs and penalty magnitudes into contributions.

    True positives keep their raw SDR (which must be present for them).
    Every other slot loses its penalty magnitude once under the non-TP
    application, or once per individual error under the error-based one, so
    a combined miss-plus-false-alarm slot is charged twice and a two-source
    swap incurs four penalties in total.
    """
    if not (len(tags) == len(raw_sdrs_db) == len(penalty_magnitudes_db)):
        raise ValueError("tags, raw SDRs and penalty magnitudes must align")
    contributions = []
    for tag, raw, magnitude in zip(tags, raw_sdrs_db, penalty_magnitudes_db):
        if tag is ClassificationTag.TP:
            contributions.append(float(raw))
        else:
            times = 1 if application is Application.NON_TP else tag.error_count
            penalty = float(magnitude) * times
            contributions.append(0.0 if penalty == 0.0 else -penalty)
    return contributions


def classical_sdr(
    estimates: Sequence[AudioSignal],
    references: Sequence[AudioSignal],
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> MetricReport:
    """Permutation-invariant mean SDR over equally many estimates and references.

    Labels play no role: estimates are aligned to references by the
    SDR-optimal permutation and every pair counts as a true positive.
    """
    if len(estimates) != len(references):
        raise ValueError(
            f"classical SDR needs equally many estimates and references, "
            f"got {len(estimates)} vs {len(references)}"
        )
    assignment = best_assignment(estimates, references, cap_db=cap_db)
    rows = []
    for e, r in assignment.pairs:
        raw = float(assignment.sdr_matrix[r, e])
        rows.append(SourceScore(None, None, e, raw, ClassificationTag.TP, raw))
    denominator = len(references)
    final = sum(row.contribution_db for row in rows) / denominator
    counts = ErrorCounts(tp=len(rows), fn=0, fp=0)
    return MetricReport(final, tuple(rows), assignment, counts, denominator)


def ca_sdr(
    predictions: Sequence[LabeledSource],
    references: Sequence[LabeledSource],
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> MetricReport:
    """Class-aware SDR: estimates are matched to references by predicted label.

    Each class present on both sides is scored by the SDR of its label-matched
    pair (when several predictions claim one class, the pairing maximizing the
    summed SDR wins and leftovers become false positives). A reference class
    absent from the predictions is a false negative scoring 0 dB; a predicted
    class absent from the references is a false positive scoring 0 dB through
    the enlarged denominator. No-class predictions match nothing.

    Note the matching never looks at the signals beyond the label-matched SDR,
    so a label swap between two sources silently scores two very poor "true
    positives" instead of flagging classification errors.
    """
    _check_reference_labels(references)
    if not predictions:
        raise ValueError("predictions must be non-empty")

    refs_by_label: dict[str, list[int]] = {}
    for r, ref in enumerate(references):
        refs_by_label.setdefault(ref.label, []).append(r)
    preds_by_label: dict[str, list[int]] = {}
    for p, pred in enumerate(predictions):
        if pred.label is not None:
            preds_by_label.setdefault(pred.label, []).append(p)

    ref_rows: list[SourceScore | None] = [None] * len(references)
    fp_rows: list[SourceScore] = []

    for label, r_idxs in refs_by_label.items():
        p_idxs = preds_by_label.get(label, [])
        if not p_idxs:
            for r in r_idxs:
                ref_rows[r] = SourceScore(
                    label, None, None, None, ClassificationTag.FN, 0.0
                )
            continue
        block = best_assignment(
            [predictions[p].signal for p in p_idxs],
            [references[r].signal for r in r_idxs],
            cap_db=cap_db,
        )
        matched_r = set()
        matched_p = set()
        for be, br in block.pairs:
            p, r = p_idxs[be], r_idxs[br]
            raw = float(block.sdr_matrix[br, be])
            ref_rows[r] = SourceScore(label, label, p, raw, ClassificationTag.TP, raw)
            matched_r.add(r)
            matched_p.add(p)
        for r in r_idxs:
            if r not in matched_r:
                ref_rows[r] = SourceScore(
                    label, None, None, None, ClassificationTag.FN, 0.0
                )
        for p in p_idxs:
            if p not in matched_p:
                fp_rows.append(
                    SourceScore(None, label, p, None, ClassificationTag.FP, 0.0)
                )

    for label, p_idxs in preds_by_label.items():
        if label not in refs_by_label:
            for p in p_idxs:
                fp_rows.append(
                    SourceScore(None, label, p, None, ClassificationTag.FP, 0.0)
                )

    fp_rows.sort(key=lambda row: row.estimate_index)
    rows = tuple(ref_rows) + tuple(fp_rows)
    counts = _count_tags([row.tag for row in rows])
    denominator = max(len(references), len(predictions))
    final = sum(row.contribution_db for row in rows) / denominator
    return MetricReport(final, rows, None, counts, denominator)


def casa_sdr(
    predictions: Sequence[LabeledSource],
    references: Sequence[LabeledSource],
    mixture: AudioSignal | None = None,
    config: MetricConfig | None = None,
) -> MetricReport:
    """Class-and-source-aware SDR: align signals first, judge labels after.

    The SDR-optimal assignment pairs estimates with references; each
    prediction's label travels with its signal through that permutation.
    Pairs whose permuted label equals the reference label are true positives
    contributing their SDR. Every other slot contributes 0 dB, or minus the
    configured penalty magnitude (once per slot or once per error, per
    ``config.application``).

    Args:
        predictions: labeled estimates (labels may be None for "no class").
        references: labeled reference targets (named labels required).
        mixture: scene mixture; required for the input-level penalty only.
        config: penalty/application/cap settings; the variant field is not
            consulted. Defaults to the penalty-free configuration.
    """
    config = config if config is not None else MetricConfig()
    _check_reference_labels(references)
    if config.penalty is Penalty.INPUT_LEVEL and mixture is None:
        raise ValueError("the input-level penalty requires the mixture signal")
    cap = config.sdr_cap_db

    assignment = best_assignment(
        [p.signal for p in predictions],
        [r.signal for r in references],
        cap_db=cap,
    )
    est_for_ref = {r: e for e, r in assignment.pairs}
    matched_estimates = {e for e, _ in assignment.pairs}

    # slot = (ref_label, est_label, est_index, ref_index, raw_sdr)
    slots: list[tuple[str | None, str | None, int | None, int | None, float | None]] = []
    for r, ref in enumerate(references):
        if r in est_for_ref:
            e = est_for_ref[r]
            slots.append(
                (ref.label, predictions[e].label, e, r, float(assignment.sdr_matrix[r, e]))
            )
        else:
            slots.append((ref.label, None, None, r, None))
    for e, pred in enumerate(predictions):
        if e not in matched_estimates and pred.label is not None:
            slots.append((None, pred.label, e, None, None))

    tags = classify_errors([(ref_label, est_label) for ref_label, est_label, *_ in slots])

    magnitudes = []
    for (ref_label, est_label, e, r, raw), tag in zip(slots, tags):
        if tag is ClassificationTag.TP or config.penalty is Penalty.NONE:
            magnitudes.append(0.0)
        elif config.penalty is Penalty.INPUT_LEVEL:
            # Slots without a reference have nothing to measure against.
            magnitudes.append(
                input_level_penalty(mixture, references[r].signal, cap_db=cap)
                if r is not None
                else 0.0
            )
        else:  # output level: the slot's own separation SDR, if it has one
            magnitudes.append(raw if raw is not None else 0.0)

    raws = [raw for *_, raw in slots]
    contributions = apply_penalties(tags, raws, magnitudes, config.application)

    rows = tuple(
        SourceScore(ref_label, est_label, e, raw, tag, contribution)
        for (ref_label, est_label, e, r, raw), tag, contribution in zip(
            slots, tags, contributions
        )
    )
    counts = _count_tags(tags)
    denominator = max(len(references), len(predictions))
    final = sum(contributions) / denominator
    return MetricReport(final, rows, assignment, counts, denominator)


def evaluate_scene(
    predictions: Sequence[LabeledSource],
    references: Sequence[LabeledSource],
    mixture: AudioSignal | None = None,
    config: MetricConfig | None = None,
) -> MetricReport:
    """Evaluate labeled predictions against labeled references.

    Dispatches on ``config.variant``; the classical variant ignores all
    labels by construction.
    """
    config = config if config is not None else MetricConfig()
    if config.variant is Variant.CLASSICAL:
        return classical_sdr(
            [p.signal for p in predictions],
            [r.signal for r in references],
            cap_db=config.sdr_cap_db,
        )
    if config.variant is Variant.CA:
        return ca_sdr(predictions, references, cap_db=config.sdr_cap_db)
    return casa_sdr(predictions, references, mixture=mixture, config=config)


def _check_reference_labels(references: Sequence[LabeledSource]) -> None:
    if not references:
        raise ValueError("references must be non-empty")
    for r, ref in enumerate(references):
        if ref.label is None:
            raise ValueError(f"reference {r} must carry a named class label")


def _count_tags(tags: Sequence[ClassificationTag]) -> ErrorCounts:
    tp = sum(tag is ClassificationTag.TP for tag in tags)
    fn = sum(tag in (ClassificationTag.FN, ClassificationTag.FN_PLUS_FP) for tag in tags)
    fp = sum(tag in (ClassificationTag.FP, ClassificationTag.FN_PLUS_FP) for tag in tags)
    return ErrorCounts(tp=tp, fn=fn, fp=fp)
