"""Core signal containers shared by the metric, simulation and I/O layers."""

from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class AudioSignal:
    """A mono sample buffer with its sample rate.

    Samples are stored as float64. The buffer must be non-empty and free of
    NaN/Inf values; amplitudes are dimensionless (typically within [-1, 1]).
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError(
                f"expected a mono (1-D) sample buffer, got shape {samples.shape}"
            )
        if samples.size == 0:
            raise ValueError("sample buffer is empty")
        if not np.all(np.isfinite(samples)):
            raise ValueError("sample buffer contains NaN or Inf values")
        rate = int(self.sample_rate)
        if rate != self.sample_rate or rate <= 0:
            raise ValueError(
                f"sample rate must be a positive integer, got {self.sample_rate!r}"
            )
        self.samples = samples
        self.sample_rate = rate

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


def energy(signal: AudioSignal) -> float:
    """Total energy of a signal (sum of squared samples)."""
    x = signal.samples
    return float(np.dot(x, x))


@dataclass(eq=False)
class LabeledSource:
    """An audio signal plus its class label.

    ``label`` is either a named class (any non-empty string) or ``None``,
    the distinguished no-class label a system emits when it separates a
    source but does not assign it any class.
    """

    signal: AudioSignal
    label: str | None = None

    def __post_init__(self):
        if self.label is not None and (
            not isinstance(self.label, str) or not self.label
        ):
            raise ValueError(
                f"class label must be a non-empty string or None, got {self.label!r}"
            )


@dataclass(eq=False)
class Scene:
    """Reference target sources, interference sources, and their summed mixture.

    All signals must share one sample rate and one length, every target must
    carry a named class label, and the mixture must equal the sample-wise sum
    of all target and interference signals to within 1e-9 relative to peak.
    """

    targets: list[LabeledSource]
    interferences: list[AudioSignal] = field(default_factory=list)
    mixture: AudioSignal = None

    _SUM_RTOL = 1e-9

    def __post_init__(self):
        if not self.targets:
            raise ValueError("a scene needs at least one target source")
        for i, target in enumerate(self.targets):
            if target.label is None:
                raise ValueError(
                    f"target {i} carries no class label; reference targets must be labeled"
                )
        if self.mixture is None:
            raise ValueError("a scene needs a mixture signal")
        signals = [t.signal for t in self.targets] + list(self.interferences)
        signals.append(self.mixture)
        rates = {s.sample_rate for s in signals}
        if len(rates) > 1:
            raise ValueError(f"scene signals disagree on sample rate: {sorted(rates)}")
        lengths = {len(s) for s in signals}
        if len(lengths) > 1:
            raise ValueError(f"scene signals disagree on length: {sorted(lengths)}")

        total = np.zeros(len(self.mixture))
        for t in self.targets:
            total += t.signal.samples
        for s in self.interferences:
            total += s.samples
        peak = max(np.max(np.abs(total)), np.max(np.abs(self.mixture.samples)))
        if np.max(np.abs(self.mixture.samples - total)) > self._SUM_RTOL * peak:
            raise ValueError(
                "mixture does not equal the sum of target and interference signals"
            )

    @property
    def n_targets(self) -> int:
        return len(self.targets)

    @property
    def n_sources(self) -> int:
        return len(self.targets) + len(self.interferences)
