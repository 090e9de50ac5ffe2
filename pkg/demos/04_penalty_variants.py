"""Penalties: make misclassification cost more than a zeroed slot.

Two penalty magnitudes for a mislabeled source:

  input level   max(SDR(mixture, reference), 0) - salient sources cost more
  output level  the slot's own separation SDR - well-separated sources cost
                more (and at high SNR this can push the total negative)

and two ways to charge them: once per mislabeled source (non_tp) or once per
individual error (error_based), under which a substituted slot pays twice and
a two-source swap pays four times in total. A lone deletion is a single error
either way, so there the two applications coincide exactly.
"""

from s5metrics import run_penalty_study, write_csv

result = run_penalty_study(
    seed=3, snrs_db=(6.0, 30.0), n_scenes=2, duration_s=2.0, sample_rate=16000
)
values = {
    (row.x, row.metric, row.penalty, row.application): row.value_db
    for row in result.rows
}

configs = [
    ("none", "non_tp", "no penalty"),
    ("input_level", "non_tp", "input level"),
    ("input_level", "error_based", "input level, per error"),
    ("output_level", "non_tp", "output level"),
    ("output_level", "error_based", "output level, per error"),
]

for snr in (6.0, 30.0):
    print(f"\nestimates at {snr:g} dB SNR:")
    print(f"{'configuration':<26}{'deletion':>10}{'substitution':>14}{'swapping':>10}")
    for penalty, application, label in configs:
        row = [
            values[(snr, error_type, penalty, application)]
            for error_type in ("deletion", "substitution", "swapping")
        ]
        print(f"{label:<26}" + "".join(f"{v:>10.2f}" if i != 1 else f"{v:>14.2f}"
                                       for i, v in enumerate(row)))

write_csv(result, "penalty_study.csv")
print("\nwrote penalty_study.csv")
