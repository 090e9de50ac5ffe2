"""Command-line interface: evaluate WAV manifests and run synthetic studies.

Exit codes: 0 success, 1 data error (bad manifest, bad audio, incompatible
signals), 2 usage error.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .experiments import (
    format_classification_table,
    run_classification_study,
    run_contamination_sweep,
    run_penalty_study,
    write_csv,
)
from .manifest import evaluate_manifest, format_report, load_manifest
from .sdr import DEFAULT_SDR_CAP_DB


def _float_list(text: str) -> list[float]:
    return [float(token) for token in text.split(",") if token.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="s5metrics",
        description=(
            "Evaluate separated-and-classified sound sources (classical, "
            "class-aware and class-and-source-aware SDR) or run the "
            "synthetic studies."
        ),
    )
    parser.add_argument(
        "--cap-db",
        type=float,
        default=None,
        metavar="DB",
        help="zero-error SDR cap; overrides the manifest value (default 100)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    evaluate = sub.add_parser("evaluate", help="score a manifest of WAV files")
    evaluate.add_argument("--manifest", required=True, help="manifest file path")
    evaluate.add_argument("--out", required=True, help="report output path")
    evaluate.add_argument(
        "--channel",
        type=int,
        default=None,
        help="channel to extract from multichannel WAV files",
    )
    evaluate.set_defaults(handler=_cmd_evaluate)

    study = sub.add_parser("study", help="run a synthetic study and write its CSV")
    study.add_argument(
        "--name",
        required=True,
        choices=("classification", "contamination", "penalties"),
        help="which study to run",
    )
    study.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    study.add_argument(
        "--snr",
        type=_float_list,
        default=None,
        metavar="DB[,DB...]",
        help="oracle SNR (classification: one value, default 10; "
        "penalties: list, default 6,30)",
    )
    study.add_argument(
        "--alphas",
        type=_float_list,
        default=None,
        metavar="A[,A...]",
        help="contamination grid (default 0.0,0.05,...,1.0)",
    )
    study.add_argument("--out", required=True, help="CSV output path")
    study.add_argument(
        "--n-scenes", type=int, default=10, help="scenes to average over (default 10)"
    )
    study.add_argument(
        "--duration", type=float, default=10.0, help="scene duration in seconds"
    )
    study.add_argument(
        "--sample-rate", type=int, default=16000, help="scene sample rate in Hz"
    )
    study.set_defaults(handler=_cmd_study)
    return parser


def _cmd_evaluate(args) -> int:
    manifest = load_manifest(args.manifest)
    if args.cap_db is not None:
        manifest.config = replace(manifest.config, sdr_cap_db=args.cap_db)
    report = evaluate_manifest(manifest, channel=args.channel)
    Path(args.out).write_text(format_report(report, manifest.config), encoding="utf-8")
    print(f"final_db {report.final_db!r}")
    return 0


def _cmd_study(args) -> int:
    cap = args.cap_db if args.cap_db is not None else DEFAULT_SDR_CAP_DB
    common = dict(
        n_scenes=args.n_scenes,
        duration_s=args.duration,
        sample_rate=args.sample_rate,
        cap_db=cap,
    )
    if args.name == "classification":
        snrs = args.snr if args.snr else [10.0]
        if len(snrs) != 1:
            print(
                "error: the classification study takes a single --snr value",
                file=sys.stderr,
            )
            return 2
        result = run_classification_study(args.seed, snrs[0], **common)
    elif args.name == "contamination":
        result = run_contamination_sweep(args.seed, args.alphas, **common)
    else:
        snrs = tuple(args.snr) if args.snr else (6.0, 30.0)
        result = run_penalty_study(args.seed, snrs, **common)

    write_csv(result, args.out)
    if args.name == "classification":
        print(format_classification_table(result))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
