"""Deterministic synthetic scenes and controlled corruption of oracle outputs.

Everything here is referentially transparent in (inputs, seed): the same call
returns bit-identical signals every time, which is what makes the studies in
:mod:`s5metrics.experiments` reproducible.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .signals import AudioSignal, LabeledSource, Scene

CLASS_VOCABULARY = (
    "cough",
    "dishes",
    "pour",
    "speech",
    "footsteps",
    "music",
    "bell",
    "knock",
    "laughter",
    "water_tap",
)

# Each source occupies its own frequency band and sits this many dB below the
# previous one. Band-disjoint sources of equal energy bottom out near -3 dB
# cross-SDR, which is not enough to drive a label-swapped, class-matched score
# negative; the level ladder is what pushes the swapped pair's combined
# cross-SDR well below -10 dB.
LEVEL_STEP_DB = 12.0
_LOUDEST_RMS = 0.2


def derive_seed(master_seed: int, *key: int) -> int:
    """Stable 64-bit sub-seed for a (master seed, index...) tuple.

    Sub-seeds depend only on the key, not on how many were derived before,
    so parallel sweeps get order-independent streams.
    """
    seq = np.random.SeedSequence(
        entropy=int(master_seed), spawn_key=tuple(int(k) for k in key)
    )
    return int(seq.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class Deletion:
    """Erase one predicted label: the source is reported with no class."""

    index: int


@dataclass(frozen=True)
class Substitution:
    """Replace one predicted label with a class absent from the scene."""

    index: int
    new_label: str


@dataclass(frozen=True)
class Swapping:
    """Exchange the predicted labels of two sources."""

    first: int
    second: int


ErrorType = Union[Deletion, Substitution, Swapping]


@dataclass(frozen=True)
class ContaminationSpec:
    """Gradual blending of two estimated sources.

    At ``alpha=0`` each estimate is its clean reference (plus the noise
    floor); at ``alpha=1`` the pair is fully swapped. ``noise_snr_db`` sets
    the additive white-noise floor of every estimate relative to its own
    reference, which keeps SDR finite at the endpoints.
    """

    alpha: float
    pair: tuple[int, int] = (0, 1)
    noise_snr_db: float = 60.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if len(self.pair) != 2 or self.pair[0] == self.pair[1]:
            raise ValueError(f"pair must hold two distinct indices, got {self.pair}")


def make_scene(
    n_targets: int,
    n_interferences: int = 0,
    duration_s: float = 10.0,
    sample_rate: int = 16000,
    seed: int = 0,
) -> Scene:
    """Generate a deterministic scene of band-disjoint noise sources.

    Each source is seeded Gaussian noise shaped into its own frequency band
    (so sources are mutually orthogonal) and placed ``LEVEL_STEP_DB`` below
    the previous one. Targets get distinct class names from a fixed
    vocabulary; the mixture is the exact sample-wise sum of all sources.

    Raises:
        ValueError: for non-positive duration/rate, fewer than one target, or
            a duration too short to give every source its own band.
    """
    if n_targets < 1:
        raise ValueError("a scene needs at least one target source")
    if n_interferences < 0:
        raise ValueError("the number of interference sources cannot be negative")
    if duration_s <= 0:
        raise ValueError(f"duration must be positive, got {duration_s}")
    if sample_rate <= 0:
        raise ValueError(f"sample rate must be positive, got {sample_rate}")

    n_samples = int(round(duration_s * sample_rate))
    n_total = n_targets + n_interferences
    n_bins = n_samples // 2 + 1
    if n_bins - 1 < n_total:
        raise ValueError(
            f"{duration_s} s at {sample_rate} Hz gives {n_bins - 1} usable "
            f"frequency bins, not enough for {n_total} band-disjoint sources"
        )

    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    signals = []
    for k in range(n_total):
        white = rng.standard_normal(n_samples)
        spectrum = np.fft.rfft(white)
        # Band k spans [lo, hi) over bins 1..n_bins-1 (DC excluded).
        lo = 1 + k * (n_bins - 1) // n_total
        hi = 1 + (k + 1) * (n_bins - 1) // n_total
        mask = np.zeros(n_bins, dtype=bool)
        mask[lo:hi] = True
        spectrum[~mask] = 0.0
        shaped = np.fft.irfft(spectrum, n_samples)
        target_rms = _LOUDEST_RMS * 10.0 ** (-LEVEL_STEP_DB * k / 20.0)
        shaped *= target_rms * math.sqrt(n_samples) / np.linalg.norm(shaped)
        signals.append(shaped)

    labels = _target_labels(n_targets)
    targets = [
        LabeledSource(AudioSignal(signals[k], sample_rate), labels[k])
        for k in range(n_targets)
    ]
    interferences = [
        AudioSignal(signals[k], sample_rate) for k in range(n_targets, n_total)
    ]
    mixture_samples = np.zeros(n_samples)
    for sig in signals:
        mixture_samples += sig
    return Scene(
        targets=targets,
        interferences=interferences,
        mixture=AudioSignal(mixture_samples, sample_rate),
    )


def _target_labels(n_targets: int) -> list[str]:
    labels = list(CLASS_VOCABULARY[:n_targets])
    for k in range(len(CLASS_VOCABULARY), n_targets):
        labels.append(f"class{k:02d}")
    return labels


def oracle_predictions(
    scene: Scene, noise_snr_db: float, seed: int = 0
) -> list[LabeledSource]:
    """Oracle separation: each target plus white noise at an exact SNR.

    The noise of prediction ``i`` is scaled so that
    ``||u_i||^2 / ||n_i||^2 == 10**(noise_snr_db / 10)`` holds exactly, hence
    the per-source SDR equals ``noise_snr_db`` to within float rounding.
    Labels are copied from the references.
    """
    if not math.isfinite(noise_snr_db):
        raise ValueError(f"noise SNR must be finite, got {noise_snr_db}")
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    rate = scene.mixture.sample_rate
    predictions = []
    for target in scene.targets:
        u = target.signal.samples
        noise = rng.standard_normal(u.size)
        gain = math.sqrt(
            float(np.dot(u, u))
            / (float(np.dot(noise, noise)) * 10.0 ** (noise_snr_db / 10.0))
        )
        predictions.append(
            LabeledSource(AudioSignal(u + gain * noise, rate), target.label)
        )
    return predictions


def inject_error(
    predictions: Sequence[LabeledSource], error: ErrorType
) -> list[LabeledSource]:
    """Apply one labeling error to a prediction list; signals are untouched.

    Deletion replaces the target's label with the no-class label, substitution
    replaces it with an out-of-scene class, swapping exchanges two labels.
    """
    labels = [p.label for p in predictions]
    named = {label for label in labels if label is not None}

    if isinstance(error, Deletion):
        _check_index(error.index, len(labels))
        labels[error.index] = None
    elif isinstance(error, Substitution):
        _check_index(error.index, len(labels))
        if error.new_label in named:
            raise ValueError(
                f"substitution class {error.new_label!r} already appears in the scene"
            )
        if not error.new_label:
            raise ValueError("substitution class must be a non-empty name")
        labels[error.index] = error.new_label
    elif isinstance(error, Swapping):
        _check_index(error.first, len(labels))
        _check_index(error.second, len(labels))
        if error.first == error.second:
            raise ValueError("swapping needs two distinct indices")
        labels[error.first], labels[error.second] = (
            labels[error.second],
            labels[error.first],
        )
    else:
        raise TypeError(f"unknown error type: {error!r}")

    return [
        LabeledSource(pred.signal, label) for pred, label in zip(predictions, labels)
    ]


def _check_index(index: int, n: int) -> None:
    if not 0 <= index < n:
        raise ValueError(f"target index {index} out of range for {n} predictions")


def cross_contaminate(
    references: Sequence[LabeledSource],
    spec: ContaminationSpec,
    seed: int = 0,
) -> list[LabeledSource]:
    """Blend two reference sources into each other's estimates.

    For the chosen pair (i, j):
    ``est_i = (1-alpha)*u_i + alpha*u_j + eps_i`` and symmetrically for j;
    every other estimate is its reference plus noise. Each noise term is
    scaled to ``spec.noise_snr_db`` relative to its own clean reference, and
    all labels are kept correct.
    """
    n = len(references)
    a, b = spec.pair
    for index in (a, b):
        _check_index(index, n)
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    predictions = []
    for i, ref in enumerate(references):
        u = ref.signal.samples
        if i == a:
            base = (1.0 - spec.alpha) * u + spec.alpha * references[b].signal.samples
        elif i == b:
            base = (1.0 - spec.alpha) * u + spec.alpha * references[a].signal.samples
        else:
            base = u
        noise = rng.standard_normal(u.size)
        gain = math.sqrt(
            float(np.dot(u, u))
            / (float(np.dot(noise, noise)) * 10.0 ** (spec.noise_snr_db / 10.0))
        )
        predictions.append(
            LabeledSource(
                AudioSignal(base + gain * noise, ref.signal.sample_rate), ref.label
            )
        )
    return predictions
