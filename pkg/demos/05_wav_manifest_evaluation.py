"""Evaluate real files: synthesize WAVs, describe them in a manifest, score.

This is the workflow for scoring an actual system's output: write references,
estimates and (optionally) the mixture as mono WAV files, list them in a
manifest with their class labels, and evaluate. The same manifest drives the
command line: ``s5metrics evaluate --manifest manifest.txt --out report.txt``.
"""

import tempfile
from pathlib import Path

from s5metrics import (
    Swapping,
    evaluate_manifest,
    format_report,
    inject_error,
    load_manifest,
    make_scene,
    oracle_predictions,
    save_audio,
)

workdir = Path(tempfile.mkdtemp(prefix="s5metrics_demo_"))
scene = make_scene(3, 2, duration_s=1.0, sample_rate=16000, seed=11)
predictions = inject_error(oracle_predictions(scene, 10.0, seed=12), Swapping(0, 1))

lines = ["variant casa", "penalty output_level", "application error_based"]
save_audio(scene.mixture, workdir / "mixture.wav", encoding="float32")
lines.append("mixture mixture.wav")
for i, target in enumerate(scene.targets):
    save_audio(target.signal, workdir / f"reference_{i}.wav", encoding="float32")
    lines.append(f"reference {target.label} reference_{i}.wav")
for i, pred in enumerate(predictions):
    save_audio(pred.signal, workdir / f"estimate_{i}.wav", encoding="float32")
    lines.append(f"prediction {pred.label or 'none'} estimate_{i}.wav")

manifest_path = workdir / "manifest.txt"
manifest_path.write_text("\n".join(lines) + "\n")
print(f"manifest at {manifest_path}:\n")
print(manifest_path.read_text())

import os

os.chdir(workdir)  # manifest paths are relative to the working directory
report = evaluate_manifest(load_manifest(manifest_path))
print("report:\n")
print(format_report(report, load_manifest(manifest_path).config))
