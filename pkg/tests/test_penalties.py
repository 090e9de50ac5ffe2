"""Input- and output-level penalties and their two application modes."""

import numpy as np
import pytest

from s5metrics import (
    Application,
    AudioSignal,
    ClassificationTag,
    LabeledSource,
    MetricConfig,
    Penalty,
    apply_penalties,
    casa_sdr,
    input_level_penalty,
    output_level_penalty,
)

from conftest import RATE, impulse, laddered_references, noisy_predictions

TP = ClassificationTag.TP
FN = ClassificationTag.FN
FP = ClassificationTag.FP
FNFP = ClassificationTag.FN_PLUS_FP


class TestInputLevelPenalty:
    def test_source_alone_in_scene_hits_the_cap(self):
        reference = impulse(0)
        assert input_level_penalty(reference, reference) == 100.0

    def test_buried_source_is_floored_at_zero(self):
        # interference 3x the reference amplitude: SDR(x, u) well below 0
        reference = impulse(0)
        mixture = AudioSignal(reference.samples + impulse(1, 3.0).samples, RATE)
        assert input_level_penalty(mixture, reference) == 0.0

    def test_equal_energy_interference_sits_on_the_boundary(self):
        # orthogonal interference with exactly the reference energy makes
        # SDR(x, u) = 10*log10(E/E) = 0, so max(0, 0) = 0
        reference = impulse(0)
        mixture = AudioSignal(reference.samples + impulse(1).samples, RATE)
        assert input_level_penalty(mixture, reference) == 0.0


class TestOutputLevelPenalty:
    @pytest.mark.parametrize("snr_db", [6.0, 30.0])
    def test_magnitude_equals_the_separation_sdr(self, snr_db):
        references = laddered_references()
        predictions = noisy_predictions(references, snr_db=snr_db)
        magnitude = output_level_penalty(references[0].signal, predictions[0].signal)
        assert magnitude == pytest.approx(snr_db, abs=1e-9)

    def test_negative_magnitude_is_not_clamped(self):
        # an estimate worse than silence: SDR < 0, magnitude stays negative
        reference = impulse(0)
        estimate = AudioSignal(impulse(1, 2.0).samples, RATE)
        assert output_level_penalty(reference, estimate) < 0.0


class TestApplyPenalties:
    def test_tp_keeps_raw_sdr(self):
        out = apply_penalties([TP, FN], [7.5, None], [0.0, 3.0], Application.NON_TP)
        assert out == [7.5, -3.0]

    def test_error_based_multiplies_by_error_count(self):
        out = apply_penalties(
            [TP, FN, FNFP, FP], [5.0, None, None, None], [0.0, 4.0, 4.0, 4.0],
            Application.ERROR_BASED,
        )
        assert out == [5.0, -4.0, -8.0, -4.0]

    def test_zero_magnitude_gives_plain_zero(self):
        out = apply_penalties([FNFP], [None], [0.0], Application.ERROR_BASED)
        assert out == [0.0]
        assert str(out[0]) == "0.0"  # not -0.0

    def test_negative_magnitude_rewards(self):
        out = apply_penalties([FNFP], [None], [-2.0], Application.ERROR_BASED)
        assert out == [4.0]

    def test_misaligned_inputs_are_an_error(self):
        with pytest.raises(ValueError, match="align"):
            apply_penalties([TP], [1.0, 2.0], [0.0])


class TestPenaltyArithmetic:
    """Full-metric arithmetic at SNR S on three targets, derived from the
    definitions: the wrongly labeled slot is charged its own SDR (= S exactly
    for oracle predictions) once or error_count times."""

    @pytest.mark.parametrize("snr_db", [6.0, 30.0])
    def test_swap_output_level(self, snr_db):
        references = laddered_references()
        predictions = noisy_predictions(
            references, snr_db=snr_db, labels=("dishes", "cough", "pour")
        )
        non_tp = casa_sdr(
            predictions, references,
            config=MetricConfig(penalty=Penalty.OUTPUT_LEVEL),
        ).final_db
        error_based = casa_sdr(
            predictions, references,
            config=MetricConfig(
                penalty=Penalty.OUTPUT_LEVEL, application=Application.ERROR_BASED
            ),
        ).final_db
        assert non_tp == pytest.approx((snr_db - 2 * snr_db) / 3.0, abs=0.01)
        assert error_based == pytest.approx((snr_db - 4 * snr_db) / 3.0, abs=0.01)

    def test_substitution_output_level_at_6db(self):
        references = laddered_references()
        predictions = noisy_predictions(
            references, snr_db=6.0, labels=("cough", "telephone", "pour")
        )
        non_tp = casa_sdr(
            predictions, references,
            config=MetricConfig(penalty=Penalty.OUTPUT_LEVEL),
        ).final_db
        error_based = casa_sdr(
            predictions, references,
            config=MetricConfig(
                penalty=Penalty.OUTPUT_LEVEL, application=Application.ERROR_BASED
            ),
        ).final_db
        assert non_tp == pytest.approx(2.0, abs=0.01)
        assert error_based == pytest.approx(0.0, abs=0.01)

    @pytest.mark.parametrize("snr_db", [6.0, 30.0])
    def test_deletion_applications_coincide_exactly(self, snr_db):
        # a lone miss is one error either way: bit-identical results
        references = laddered_references()
        predictions = noisy_predictions(
            references, snr_db=snr_db, labels=("cough", None, "pour")
        )
        non_tp = casa_sdr(
            predictions, references,
            config=MetricConfig(penalty=Penalty.OUTPUT_LEVEL),
        ).final_db
        error_based = casa_sdr(
            predictions, references,
            config=MetricConfig(
                penalty=Penalty.OUTPUT_LEVEL, application=Application.ERROR_BASED
            ),
        ).final_db
        assert non_tp == error_based

    @pytest.mark.parametrize("penalty", [Penalty.INPUT_LEVEL, Penalty.OUTPUT_LEVEL])
    @pytest.mark.parametrize(
        "labels",
        [("dishes", "cough", "pour"), ("cough", None, "pour"), ("cough", "telephone", "pour")],
    )
    def test_error_based_never_beats_non_tp(self, penalty, labels):
        # with non-negative magnitudes (positive-SNR estimates), charging per
        # error can only lower the score
        references = laddered_references()
        mixture = AudioSignal(
            sum(r.signal.samples for r in references), RATE
        )
        predictions = noisy_predictions(references, snr_db=10.0, labels=labels)
        non_tp = casa_sdr(
            predictions, references, mixture=mixture,
            config=MetricConfig(penalty=penalty),
        ).final_db
        error_based = casa_sdr(
            predictions, references, mixture=mixture,
            config=MetricConfig(penalty=penalty, application=Application.ERROR_BASED),
        ).final_db
        no_penalty = casa_sdr(predictions, references, mixture=mixture).final_db
        assert error_based <= non_tp + 1e-12
        assert non_tp <= no_penalty + 1e-12

    def test_poor_separation_flips_the_output_penalty_sign(self):
        # the mislabeled slot's SDR is negative, so the "penalty" rewards;
        # kept as defined rather than clamped
        references = laddered_references()
        noisy = [
            LabeledSource(
                AudioSignal(ref.signal.samples + impulse(40 + k, 2.0).samples, RATE),
                label,
            )
            for k, (ref, label) in enumerate(
                zip(references, ("dishes", "cough", "pour"))
            )
        ]
        report = casa_sdr(
            noisy, references, config=MetricConfig(penalty=Penalty.OUTPUT_LEVEL)
        )
        mislabeled = [r for r in report.per_source if r.tag is FNFP]
        assert mislabeled and all(r.raw_sdr_db < 0.0 for r in mislabeled)
        assert all(r.contribution_db > 0.0 for r in mislabeled)
