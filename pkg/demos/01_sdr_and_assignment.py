"""Walk through the building blocks: pairwise SDR and optimal source matching.

The signal-to-distortion ratio compares an estimate against a reference:
10*log10(reference energy / error energy). When a separation system outputs
several sources in arbitrary order, the fair score is the one under the
estimate-to-reference permutation that maximizes the summed SDR.
"""

import numpy as np

from s5metrics import AudioSignal, best_assignment, sdr

rng = np.random.default_rng(0)
RATE = 16000

# A reference and an estimate with noise at a known level.
reference = AudioSignal(rng.standard_normal(RATE), RATE)
noise = rng.standard_normal(RATE)
noise *= np.sqrt(np.dot(reference.samples, reference.samples) / (10.0 * np.dot(noise, noise)))
estimate = AudioSignal(reference.samples + noise, RATE)

print("SDR of a 10 dB-noise estimate:", round(sdr(estimate, reference), 3), "dB")
print("SDR of a perfect estimate (capped):", sdr(reference, reference), "dB")

# Three references; the system returns them shuffled and degraded.
references = [AudioSignal(rng.standard_normal(RATE), RATE) for _ in range(3)]
estimates = [
    AudioSignal(references[i].samples + 0.2 * rng.standard_normal(RATE), RATE)
    for i in (2, 0, 1)
]

assignment = best_assignment(estimates, references)
print("\nrecovered pairing (estimate -> reference):")
for e, r in assignment.pairs:
    print(f"  estimate {e} -> reference {r}   "
          f"SDR {assignment.sdr_matrix[r, e]:6.2f} dB")
print("total SDR over the matching:", round(assignment.total_sdr_db, 2), "dB")
