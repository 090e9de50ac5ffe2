"""Shared helpers: tiny exact-arithmetic fixtures built from unit impulses.

Impulses at distinct positions are exactly orthogonal, so every energy in
these fixtures is known in closed form and expected metric values can be
derived analytically, independent of the code under test.
"""

import numpy as np
import pytest

from s5metrics import AudioSignal, LabeledSource

RATE = 8000
N = 64


def impulse(position, amplitude=1.0, n=N, rate=RATE):
    """A signal that is zero everywhere except for one sample."""
    x = np.zeros(n)
    x[position] = amplitude
    return AudioSignal(x, rate)


def impulse_with_noise(position, snr_db, noise_position, amplitude=1.0, n=N, rate=RATE):
    """Impulse source plus an orthogonal 'noise' impulse at an exact SNR."""
    x = np.zeros(n)
    x[position] = amplitude
    x[noise_position] = amplitude * 10.0 ** (-snr_db / 20.0)
    return AudioSignal(x, rate)


def laddered_references(levels_db=(0.0, -12.0, -24.0), labels=("cough", "dishes", "pour")):
    """Orthogonal impulse references on an energy ladder, with labels."""
    return [
        LabeledSource(impulse(k, 10.0 ** (level / 20.0)), label)
        for k, (level, label) in enumerate(zip(levels_db, labels))
    ]


def noisy_predictions(references, snr_db, labels=None):
    """Reference copies plus orthogonal noise at an exact per-source SNR."""
    labels = [r.label for r in references] if labels is None else labels
    predictions = []
    for k, (ref, label) in enumerate(zip(references, labels)):
        amplitude = float(np.max(np.abs(ref.signal.samples)))
        predictions.append(
            LabeledSource(
                impulse_with_noise(k, snr_db, noise_position=32 + k, amplitude=amplitude),
                label,
            )
        )
    return predictions


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)
