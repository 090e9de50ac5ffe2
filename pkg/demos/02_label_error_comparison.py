"""Compare the three metrics when only the class labels are wrong.

Setup: a synthetic scene of three labeled targets plus two interferences,
oracle separation at exactly 10 dB per-source SDR, and three kinds of label
corruption on otherwise perfect classifications:

  deletion      one source is reported with no class
  substitution  one source is reported as a class absent from the scene
  swapping      two sources exchange their classes

The classical metric cannot see any of this. The class-aware variant matches
sources by label, so a swap silently scores two terrible pairings. The
class-and-source-aware variant aligns signals first and flags the swap as two
classification errors while keeping the separation score meaningful.
"""

from s5metrics import format_classification_table, run_classification_study, write_csv

result = run_classification_study(
    seed=42, snr_db=10.0, n_scenes=3, duration_s=2.0, sample_rate=16000
)

print("mean metric values in dB at 10 dB per-source SNR "
      f"({result.metadata['n_scenes']} scenes):\n")
print(format_classification_table(result))

write_csv(result, "classification_study.csv")
print("\nwrote classification_study.csv")
print("""
Reading the table: every metric sees the same signals; only labels differ.
A deletion or substitution zeroes one of three slots (2/3 of 10 dB = 6.67).
Under a swap the class-aware variant pairs each source with the wrong
reference and goes negative, while the signal-first variant keeps the one
correctly labeled source at 10 dB and zeroes the other two (3.33 dB).
""")
