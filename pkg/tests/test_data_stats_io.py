import math

import pytest

from learning_machine.data import (
    Dataset,
    Outcome,
    OutcomeEvent,
    SyntheticConfig,
    default_schema,
    descriptive_stats,
    generate_synthetic_cohort,
    load_csv_dataset,
    write_csv_dataset,
)
from learning_machine.data.io import dataset_to_csv, read_csv_dataset
from learning_machine.data.stats import StatsSummary
from learning_machine.errors import ValidationError

from test_data_schema import make_record


class TestDescriptiveStats:
    def test_single_record_degenerate(self):
        ds = Dataset(default_schema(), (make_record(size=12.0),))
        s = descriptive_stats(ds).continuous["tumour_size"]
        assert s.mean == s.min == s.max == 12.0
        assert s.std == 0.0

    def test_two_record_population_std(self):
        # hand oracle: mean (10+20)/2 = 15, population std sqrt(((10-15)^2+(20-15)^2)/2) = 5
        ds = Dataset(default_schema(), (make_record(pid="a", size=10.0), make_record(pid="b", size=20.0)))
        s = descriptive_stats(ds).continuous["tumour_size"]
        assert s.mean == 15.0
        assert s.std == 5.0

    def test_histogram_counts_sum_to_count(self):
        ds = generate_synthetic_cohort(SyntheticConfig(years=2, patients_per_year=100, seed=3))
        summary = descriptive_stats(ds)
        for s in summary.continuous.values():
            assert sum(s.bin_counts) == s.count == len(ds)
            assert len(s.bin_counts) == 20
            assert len(s.bin_edges) == 21

    def test_categorical_frequencies_sum_to_record_count(self):
        ds = generate_synthetic_cohort(SyntheticConfig(years=1, patients_per_year=250, seed=4))
        summary = descriptive_stats(ds)
        for s in summary.categorical.values():
            assert sum(s.frequencies.values()) == len(ds)

    def test_survival_rate_over_definitive_labels_only(self):
        ds = Dataset(
            default_schema(),
            (
                make_record(pid="a", outcome=Outcome(80, OutcomeEvent.ALIVE_OR_CENSORED)),
                make_record(pid="b", outcome=Outcome(10, OutcomeEvent.DIED_OF_DISEASE)),
                make_record(pid="c", outcome=Outcome(10, OutcomeEvent.ALIVE_OR_CENSORED)),  # censored
            ),
        )
        summary = descriptive_stats(ds)
        assert summary.survived_5y_rate == 0.5
        assert summary.n_labeled == 2

    def test_empty_dataset_rejected(self):
        with pytest.raises(ValidationError):
            descriptive_stats(Dataset(default_schema(), ()))

    def test_summary_dict_roundtrip(self):
        ds = generate_synthetic_cohort(SyntheticConfig(years=1, patients_per_year=50, seed=9))
        summary = descriptive_stats(ds)
        assert StatsSummary.from_dict(summary.to_dict()) == summary

    def test_reference_value_mean_and_mode(self):
        ds = Dataset(
            default_schema(),
            (make_record(pid="a", size=10.0, grade="3"), make_record(pid="b", size=30.0, grade="3")),
        )
        summary = descriptive_stats(ds)
        assert summary.reference_value("tumour_size") == 20.0
        assert summary.reference_value("grade") == "3"


class TestCsv:
    def test_well_formed_file(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text(
            "patient_id,diagnosis_year,age,tumour_size,grade,stage,er_status,survival_months,event,decision\n"
            "p1,1985,60,22.5,2,II,pos,72,alive_or_censored,surgery\n"
            "p2,1986,55,18.0,1,I,neg,30,died_of_disease,chemo\n"
            "p3,1987,70,40.0,4,IV,pos,,,\n"
        )
        ds = load_csv_dataset(path, default_schema())
        assert len(ds) == 3
        assert ds.records[0].outcome.survival_months == 72
        assert ds.records[2].outcome is None
        assert [r.patient_id for r in ds.records] == ["p1", "p2", "p3"]

    def test_out_of_category_value_names_row_and_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            "patient_id,diagnosis_year,age,tumour_size,grade,stage,er_status,survival_months,event,decision\n"
            "p1,1985,60,22.5,7,II,pos,,,\n"
        )
        with pytest.raises(ValidationError, match=r"row 1.*grade|grade.*row 1"):
            load_csv_dataset(path, default_schema())

    def test_missing_column_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("patient_id,diagnosis_year,age\np1,1985,60\n")
        with pytest.raises(ValidationError, match="header"):
            load_csv_dataset(path, default_schema())

    def test_unparseable_value_names_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            "patient_id,diagnosis_year,age,tumour_size,grade,stage,er_status,survival_months,event,decision\n"
            "p1,1985,sixty,22.5,2,II,pos,,,\n"
        )
        with pytest.raises(ValidationError, match="age"):
            load_csv_dataset(path, default_schema())

    def test_roundtrip_equality(self, tmp_path):
        ds = generate_synthetic_cohort(SyntheticConfig(years=3, patients_per_year=40, seed=11))
        path = tmp_path / "round.csv"
        write_csv_dataset(ds, path)
        back = load_csv_dataset(path, default_schema())
        assert len(back) == len(ds)
        for a, b in zip(ds.records, back.records):
            assert a.patient_id == b.patient_id
            assert a.diagnosis_year == b.diagnosis_year
            assert a.features == b.features
            assert a.outcome == b.outcome


class TestSyntheticGenerator:
    def test_same_seed_byte_identical(self):
        cfg = SyntheticConfig(years=2, patients_per_year=50, seed=42)
        a = dataset_to_csv(generate_synthetic_cohort(cfg))
        b = dataset_to_csv(generate_synthetic_cohort(cfg))
        assert a == b

    def test_different_seed_differs(self):
        a = dataset_to_csv(generate_synthetic_cohort(SyntheticConfig(years=1, patients_per_year=50, seed=1)))
        b = dataset_to_csv(generate_synthetic_cohort(SyntheticConfig(years=1, patients_per_year=50, seed=2)))
        assert a != b

    def test_cohort_sizes(self):
        cfg = SyntheticConfig(years=4, patients_per_year=30, seed=5)
        ds = generate_synthetic_cohort(cfg)
        for y in range(cfg.base_year, cfg.base_year + 4):
            assert sum(1 for r in ds.records if r.diagnosis_year == y) == 30

    def test_tumour_size_trend_moves_the_mean(self):
        # Monte Carlo oracle: mean(year 9) - mean(year 0) should be about -4.5 mm,
        # within 3 standard errors of the difference of two n-sized means.
        n = 4000
        cfg = SyntheticConfig(years=10, patients_per_year=n, seed=7, tumour_size_trend=-0.5)
        ds = generate_synthetic_cohort(cfg)
        y0 = [r.features["tumour_size"] for r in ds.records if r.diagnosis_year == cfg.base_year]
        y9 = [r.features["tumour_size"] for r in ds.records if r.diagnosis_year == cfg.base_year + 9]
        diff = sum(y9) / n - sum(y0) / n
        se = cfg.tumour_size_std * math.sqrt(2.0 / n)
        assert abs(diff - (-4.5)) < 3 * se

    def test_survival_logit_trend_raises_survival_rate(self):
        cfg = SyntheticConfig(years=10, patients_per_year=3000, seed=8, survival_logit_trend=0.15)
        ds = generate_synthetic_cohort(cfg)
        def rate(year):
            labeled = [r for r in ds.records if r.diagnosis_year == year and r.outcome.survival_months >= 60 or
                       (r.diagnosis_year == year and r.outcome.event.value == "died_of_disease")]
            wins = sum(1 for r in labeled if r.outcome.survival_months >= 60)
            return wins / len(labeled)
        assert rate(cfg.base_year + 9) > rate(cfg.base_year) + 0.1

    def test_invalid_counts_rejected(self):
        with pytest.raises(Exception):
            SyntheticConfig(years=0)
        with pytest.raises(Exception):
            SyntheticConfig(patients_per_year=-5)

    def test_config_json_roundtrip(self, tmp_path):
        cfg = SyntheticConfig(years=3, seed=123, tumour_size_trend=-0.25)
        path = tmp_path / "cfg.json"
        import json

        path.write_text(json.dumps(cfg.to_dict()))
        assert SyntheticConfig.from_json_file(path) == cfg
