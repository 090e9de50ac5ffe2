"""The three studies: reference values, curve shapes, determinism, CSV."""

import csv

import pytest

from s5metrics import (
    CSV_COLUMNS,
    run_classification_study,
    run_contamination_sweep,
    run_penalty_study,
    write_csv,
)

FAST = dict(n_scenes=2, duration_s=1.0, sample_rate=8000)


def by_key(result):
    return {(row.x, row.metric, row.penalty, row.application): row.value_db for row in result.rows}


def metric_values(result, metric):
    return {row.x: row.value_db for row in result.rows if row.metric == metric}


class TestClassificationStudy:
    def test_reference_values_at_10db(self):
        result = run_classification_study(seed=42, snr_db=10.0, **FAST)
        values = {(row.x, row.metric): row.value_db for row in result.rows}
        for error_type in ("deletion", "substitution", "swapping"):
            assert values[(error_type, "classical")] == pytest.approx(10.0, abs=0.01)
        assert values[("deletion", "ca")] == pytest.approx(6.67, abs=0.01)
        assert values[("substitution", "ca")] == pytest.approx(6.67, abs=0.01)
        assert values[("swapping", "ca")] < 0.0
        assert values[("deletion", "casa")] == pytest.approx(6.67, abs=0.01)
        assert values[("substitution", "casa")] == pytest.approx(6.67, abs=0.01)
        assert values[("swapping", "casa")] == pytest.approx(3.33, abs=0.01)

    def test_swap_casa_generalizes_to_other_snrs(self):
        result = run_classification_study(seed=1, snr_db=30.0, **FAST)
        values = {(row.x, row.metric): row.value_db for row in result.rows}
        assert values[("swapping", "casa")] == pytest.approx(10.0, abs=0.01)

    def test_zero_snr_classical_is_zero(self):
        result = run_classification_study(seed=2, snr_db=0.0, **FAST)
        values = {(row.x, row.metric): row.value_db for row in result.rows}
        for error_type in ("deletion", "substitution", "swapping"):
            assert values[(error_type, "classical")] == pytest.approx(0.0, abs=0.01)

    def test_row_coverage_and_determinism(self):
        a = run_classification_study(seed=3, snr_db=10.0, **FAST)
        b = run_classification_study(seed=3, snr_db=10.0, **FAST)
        assert len(a.rows) == 9
        assert [(r.x, r.metric) for r in a.rows] == [(r.x, r.metric) for r in b.rows]
        assert [r.value_db for r in a.rows] == [r.value_db for r in b.rows]


@pytest.fixture(scope="module")
def contamination_result():
    return run_contamination_sweep(seed=4, **FAST)


@pytest.fixture(scope="module")
def penalty_result():
    return run_penalty_study(seed=5, snrs_db=(6.0, 30.0), **FAST)


class TestContaminationSweep:
    @pytest.fixture
    def result(self, contamination_result):
        return contamination_result

    def test_default_grid_coverage(self, result):
        alphas = sorted({row.x for row in result.rows})
        assert len(alphas) == 21
        assert alphas[0] == 0.0 and alphas[-1] == 1.0
        assert len(result.rows) == 63

    def test_classical_recovers_past_the_crossover(self, result):
        classical = metric_values(result, "classical")
        assert classical[0.9] > classical[0.5]
        assert classical[1.0] == pytest.approx(classical[0.0], abs=0.1)

    def test_ca_keeps_decreasing(self, result):
        ca = metric_values(result, "ca")
        assert ca[0.9] < ca[0.6] < ca[0.5]

    def test_casa_plateaus_at_a_third_of_the_clean_source(self, result):
        casa = metric_values(result, "casa")
        plateau = [casa[round(0.05 * i, 2)] for i in range(11, 21)]
        assert max(plateau) - min(plateau) < 0.1
        assert plateau[-1] == pytest.approx(60.0 / 3.0, abs=0.1)

    def test_everything_decreases_up_to_the_crossover(self, result):
        for metric in ("classical", "ca", "casa"):
            values = metric_values(result, metric)
            assert values[0.5] < values[0.0]

    def test_alpha_grid_is_validated(self):
        with pytest.raises(ValueError, match="alpha"):
            run_contamination_sweep(seed=0, alphas=[0.0, 1.2], **FAST)


class TestPenaltyStudy:
    @pytest.fixture
    def result(self, penalty_result):
        return penalty_result

    def test_row_coverage(self, result):
        assert len(result.rows) == 2 * 3 * 5

    def test_input_level_never_raises_the_score(self, result):
        values = by_key(result)
        for snr in (6.0, 30.0):
            baseline = values[(snr, "swapping", "none", "non_tp")]
            assert values[(snr, "swapping", "input_level", "non_tp")] <= baseline + 1e-9

    def test_output_level_drives_the_swap_negative_at_30db(self, result):
        values = by_key(result)
        assert values[(30.0, "swapping", "output_level", "non_tp")] < 0.0

    def test_substitution_values_at_6db(self, result):
        values = by_key(result)
        assert values[(6.0, "substitution", "output_level", "non_tp")] == pytest.approx(2.0, abs=0.01)
        assert values[(6.0, "substitution", "output_level", "error_based")] == pytest.approx(0.0, abs=0.01)

    def test_deletion_applications_coincide(self, result):
        values = by_key(result)
        for snr in (6.0, 30.0):
            assert (
                values[(snr, "deletion", "output_level", "non_tp")]
                == values[(snr, "deletion", "output_level", "error_based")]
            )

    def test_error_based_dominance_chain(self, result):
        values = by_key(result)
        for snr in (6.0, 30.0):
            for error_type in ("deletion", "substitution", "swapping"):
                baseline = values[(snr, error_type, "none", "non_tp")]
                for penalty in ("input_level", "output_level"):
                    non_tp = values[(snr, error_type, penalty, "non_tp")]
                    error_based = values[(snr, error_type, penalty, "error_based")]
                    assert error_based <= non_tp + 1e-9
                    assert non_tp <= baseline + 1e-9

    def test_determinism(self):
        a = run_penalty_study(seed=6, snrs_db=(6.0,), **FAST)
        b = run_penalty_study(seed=6, snrs_db=(6.0,), **FAST)
        assert [r.value_db for r in a.rows] == [r.value_db for r in b.rows]


class TestCsvOutput:
    def test_column_order_and_roundtrip(self, tmp_path):
        result = run_classification_study(seed=7, snr_db=10.0, **FAST)
        path = tmp_path / "out.csv"
        write_csv(result, path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert len(rows) == 1 + len(result.rows)
        parsed = {(r[1], r[2]): float(r[5]) for r in rows[1:]}
        for row in result.rows:
            assert parsed[(str(row.x), row.metric)] == row.value_db
        assert all(r[6] == "7" for r in rows[1:])
