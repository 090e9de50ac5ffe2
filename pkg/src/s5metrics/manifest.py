"""Line-oriented evaluation manifests and key/value metric reports.

Manifest format (one field per line, ``#`` comments and blank lines ignored)::

    variant casa                    # classical | ca | casa (default casa)
    penalty output_level            # none | input_level | output_level
    application error_based         # non_tp | error_based
    cap_db 100
    mixture audio/mixture.wav       # required for the input-level penalty
    reference cough audio/ref0.wav
    reference dishes audio/ref1.wav
    prediction cough audio/est0.wav
    prediction none audio/est1.wav  # 'none' = the no-class label

Labels are whitespace-free names; ``none`` is reserved for the no-class
label and ``-`` for absent values in reports. Paths may contain spaces.
All referenced files must exist and share one sample rate and length;
mismatches are errors, never resampled.
"""

from dataclasses import dataclass

from .metrics import (
    Application,
    MetricConfig,
    MetricReport,
    Penalty,
    Variant,
    evaluate_scene,
)
from .signals import LabeledSource
from .wavio import load_audio

NONE_LABEL_TOKEN = "none"
_ABSENT = "-"

_VARIANTS = {v.value: v for v in Variant}
_PENALTIES = {p.value: p for p in Penalty}
_APPLICATIONS = {a.value: a for a in Application}


@dataclass
class EvaluationManifest:
    """Parsed manifest: labeled file references plus the metric configuration."""

    references: list[tuple[str, str]]  # (label, path)
    predictions: list[tuple[str | None, str]]  # (label or None, path)
    mixture_path: str | None
    config: MetricConfig


def load_manifest(path) -> EvaluationManifest:
    """Parse and validate a manifest file (audio files are not loaded yet).

    Raises:
        ValueError: with the line number and field name on any schema
            violation.
    """
    references: list[tuple[str, str]] = []
    predictions: list[tuple[str | None, str]] = []
    mixture_path = None
    settings: dict[str, str] = {}

    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()

    for lineno, raw_line in enumerate(lines, start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        key = parts[0]
        rest = parts[1].strip() if len(parts) > 1 else ""
        where = f"{path}:{lineno}"
        if key in ("variant", "penalty", "application", "cap_db"):
            if key in settings:
                raise ValueError(f"{where}: duplicate field {key!r}")
            if not rest:
                raise ValueError(f"{where}: field {key!r} needs a value")
            settings[key] = rest
        elif key == "mixture":
            if mixture_path is not None:
                raise ValueError(f"{where}: duplicate field 'mixture'")
            if not rest:
                raise ValueError(f"{where}: field 'mixture' needs a path")
            mixture_path = rest
        elif key in ("reference", "prediction"):
            entry = rest.split(None, 1)
            label = entry[0] if entry else ""
            file_path = entry[1].strip() if len(entry) > 1 else ""
            if not label or not file_path:
                raise ValueError(
                    f"{where}: field {key!r} needs '<label> <path>'"
                )
            if label == _ABSENT:
                raise ValueError(f"{where}: {_ABSENT!r} is not a valid class label")
            if key == "reference":
                if label == NONE_LABEL_TOKEN:
                    raise ValueError(
                        f"{where}: reference labels must be named classes, "
                        f"not {NONE_LABEL_TOKEN!r}"
                    )
                references.append((label, file_path))
            else:
                predictions.append(
                    (None if label == NONE_LABEL_TOKEN else label, file_path)
                )
        else:
            raise ValueError(f"{where}: unknown manifest field {key!r}")

    if not references:
        raise ValueError(f"{path}: manifest declares no 'reference' entries")
    if not predictions:
        raise ValueError(f"{path}: manifest declares no 'prediction' entries")

    config = _build_config(settings, path)
    return EvaluationManifest(references, predictions, mixture_path, config)


def _build_config(settings: dict[str, str], path) -> MetricConfig:
    def lookup(field, table, default):
        token = settings.get(field)
        if token is None:
            return default
        try:
            return table[token]
        except KeyError:
            raise ValueError(
                f"{path}: field {field!r} must be one of "
                f"{sorted(table)}, got {token!r}"
            ) from None

    variant = lookup("variant", _VARIANTS, Variant.CASA)
    penalty = lookup("penalty", _PENALTIES, Penalty.NONE)
    application = lookup("application", _APPLICATIONS, Application.NON_TP)
    cap_token = settings.get("cap_db")
    if cap_token is None:
        cap_db = MetricConfig().sdr_cap_db
    else:
        try:
            cap_db = float(cap_token)
        except ValueError:
            raise ValueError(
                f"{path}: field 'cap_db' must be a number, got {cap_token!r}"
            ) from None
    return MetricConfig(
        variant=variant, penalty=penalty, application=application, sdr_cap_db=cap_db
    )


def evaluate_manifest(
    manifest: EvaluationManifest, channel: int | None = None
) -> MetricReport:
    """Load the manifest's audio and run the configured metric.

    Raises:
        ValueError: if the loaded signals disagree on sample rate or length
            (the message names the offending file).
    """
    loaded: list[tuple[str, object]] = []

    def load(file_path):
        signal = load_audio(file_path, channel=channel)
        loaded.append((file_path, signal))
        return signal

    references = [LabeledSource(load(p), label) for label, p in manifest.references]
    predictions = [LabeledSource(load(p), label) for label, p in manifest.predictions]
    mixture = load(manifest.mixture_path) if manifest.mixture_path else None

    first_path, first = loaded[0]
    for file_path, signal in loaded[1:]:
        if signal.sample_rate != first.sample_rate:
            raise ValueError(
                f"{file_path}: sample rate {signal.sample_rate} Hz does not match "
                f"{first_path} ({first.sample_rate} Hz); resampling is not performed"
            )
        if len(signal) != len(first):
            raise ValueError(
                f"{file_path}: length {len(signal)} does not match "
                f"{first_path} ({len(first)} samples)"
            )

    return evaluate_scene(predictions, references, mixture, manifest.config)


def format_report(report: MetricReport, config: MetricConfig) -> str:
    """Serialize a metric report as machine-readable key/value text.

    Floats are rendered with ``repr`` so re-parsing reproduces them bit for
    bit; in particular ``final_db`` always equals the sum of the per-source
    contributions divided by the denominator.
    """
    lines = [
        f"variant {config.variant.value}",
        f"penalty {config.penalty.value}",
        f"application {config.application.value}",
        f"cap_db {config.sdr_cap_db!r}",
        f"final_db {report.final_db!r}",
        f"denominator {report.denominator}",
        f"tp {report.counts.tp}",
        f"fn {report.counts.fn}",
        f"fp {report.counts.fp}",
    ]
    if report.assignment is not None:
        pairs = " ".join(f"{e}:{r}" for e, r in report.assignment.pairs)
        lines.append(f"assignment {pairs}")
    for row in report.per_source:
        ref = row.reference_label if row.reference_label is not None else _ABSENT
        if row.estimate_index is None:
            est, index = _ABSENT, _ABSENT
        else:
            est = row.estimate_label if row.estimate_label is not None else NONE_LABEL_TOKEN
            index = str(row.estimate_index)
        raw = repr(row.raw_sdr_db) if row.raw_sdr_db is not None else _ABSENT
        lines.append(
            "source "
            f"ref_label={ref} est_label={est} est_index={index} "
            f"raw_sdr_db={raw} tag={row.tag.value} "
            f"contribution_db={row.contribution_db!r}"
        )
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    """Parse :func:`format_report` output back into a dictionary.

    Returns keys ``variant``, ``penalty``, ``application``, ``cap_db``,
    ``final_db``, ``denominator``, ``tp``, ``fn``, ``fp``, ``assignment``
    (list of (estimate, reference) pairs or None) and ``sources`` (list of
    per-source dicts).
    """
    result: dict = {"assignment": None, "sources": []}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, rest = line.partition(" ")
        if key in ("variant", "penalty", "application"):
            result[key] = rest
        elif key in ("cap_db", "final_db"):
            result[key] = float(rest)
        elif key in ("denominator", "tp", "fn", "fp"):
            result[key] = int(rest)
        elif key == "assignment":
            result["assignment"] = [
                tuple(int(part) for part in token.split(":")) for token in rest.split()
            ]
        elif key == "source":
            fields = dict(token.split("=", 1) for token in rest.split())
            result["sources"].append(
                {
                    "ref_label": None if fields["ref_label"] == _ABSENT else fields["ref_label"],
                    "est_label": None
                    if fields["est_label"] in (_ABSENT, NONE_LABEL_TOKEN)
                    else fields["est_label"],
                    "est_index": None
                    if fields["est_index"] == _ABSENT
                    else int(fields["est_index"]),
                    "raw_sdr_db": None
                    if fields["raw_sdr_db"] == _ABSENT
                    else float(fields["raw_sdr_db"]),
                    "tag": fields["tag"],
                    "contribution_db": float(fields["contribution_db"]),
                }
            )
        else:
            raise ValueError(f"unknown report line {key!r}")
    return result
