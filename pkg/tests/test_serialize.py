import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from symfock.experiments import run_fourier_comparison, run_mean_probabilities, CensusConfig
from symfock.fock import ParticleType
from symfock.linalg import haar_random_unitary
from symfock.permutations import Permutation
from symfock.serialize import (
    check_experiment_config,
    matrix_from_json,
    matrix_to_json,
    parse_occupation,
    parse_permutation,
    read_fit_csv,
    read_verdict_csv,
    spec_from_json,
    spec_to_json,
    write_fit_csv,
    write_verdict_csv,
)
from symfock.svg import bar_chart, write_verdict_svg
from symfock.unitaries import UnitarySpec


class TestMatrixJson:
    def test_roundtrip(self):
        rng = np.random.default_rng(0)
        m = haar_random_unitary(4, rng)
        again = matrix_from_json(matrix_to_json(m))
        assert np.array_equal(again, m)

    def test_format_fields(self):
        payload = matrix_to_json(np.array([[1 + 2j, 3j]]))
        assert payload == {"rows": 1, "cols": 2, "data": [[1.0, 2.0], [0.0, 3.0]]}

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="entries"):
            matrix_from_json({"rows": 2, "cols": 2, "data": [[1, 0]]})

    def test_missing_keys_rejected(self):
        with pytest.raises(ValueError, match="rows/cols/data"):
            matrix_from_json({"rows": 1})


class TestOccupationAndPermutationParsing:
    def test_occupation(self):
        assert parse_occupation("[1,1,1,0,0,0,1,1]") == (1, 1, 1, 0, 0, 0, 1, 1)

    def test_occupation_rejects_floats(self):
        with pytest.raises(ValueError, match="integers"):
            parse_occupation("[1.5, 0]")

    def test_occupation_rejects_garbage(self):
        with pytest.raises(ValueError, match="parse"):
            parse_occupation("not json")

    def test_permutation_cycles(self):
        assert parse_permutation("(1 2 3)(4 5 6)(7 8)").one_line() == (2, 3, 1, 5, 6, 4, 8, 7)

    def test_permutation_one_line_json(self):
        assert parse_permutation("[2,3,1]").one_line() == (2, 3, 1)

    def test_permutation_list(self):
        assert parse_permutation([2, 1]).one_line() == (2, 1)


class TestSpecJson:
    def test_minimal(self):
        spec = spec_from_json({"permutation": "(1 2)"})
        assert spec.permutation.one_line() == (2, 1)
        assert spec.theta_phases is None
        assert spec.rotation_seed is None

    def test_full_roundtrip(self):
        spec = UnitarySpec(
            Permutation.parse("(1 2 3)"),
            theta_phases=(0.1, 0.2, 0.3),
            sigma_phases=(0.0, 0.0, 1.0),
            rotation_seed=12345,
            column_order=(2, 1, 3),
        )
        again = spec_from_json(spec_to_json(spec))
        assert again == spec

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValueError, match="unknown"):
            spec_from_json({"permutation": "(1 2)", "rotations": 5})

    def test_missing_permutation_rejected(self):
        with pytest.raises(ValueError, match="permutation"):
            spec_from_json({"seed": 3})


class TestVerdictCsv:
    @pytest.fixture()
    def census_rows(self):
        cfg = CensusConfig(Permutation.parse("(1 2)"), (1, 1), num_bases=2, seed=0)
        return run_mean_probabilities(cfg).tables[ParticleType.BOSON]

    def test_roundtrip(self, tmp_path, census_rows):
        path = tmp_path / "verdicts.csv"
        write_verdict_csv(path, census_rows)
        table = read_verdict_csv(path)
        assert table.verdicts == tuple(census_rows)
        assert table.old_fermion_flags is None

    def test_header_and_separator(self, tmp_path, census_rows):
        path = tmp_path / "verdicts.csv"
        write_verdict_csv(path, census_rows)
        lines = path.read_text().splitlines()
        assert lines[0] == (
            "s;lambda_phases;boson_suppressed;fermion_suppressed;"
            "p_boson;p_fermion;p_dist;class"
        )
        cells = lines[2].split(";")
        assert cells[0] == "[1,1]"
        assert cells[1] == "0/1,1/2"
        assert cells[2] == "true"
        assert cells[7] == "III"

    def test_old_law_column_roundtrip(self, tmp_path):
        comparison = run_fourier_comparison(8, 2, (1, 0, 1, 0, 1, 0, 1, 0))
        path = tmp_path / "fermion.csv"
        write_verdict_csv(path, comparison.fermion_rows, comparison.old_fermion_flags)
        table = read_verdict_csv(path)
        assert table.old_fermion_flags == comparison.old_fermion_flags
        assert table.verdicts == comparison.fermion_rows

    def test_float_cells_roundtrip_exactly(self, tmp_path, census_rows):
        path = tmp_path / "verdicts.csv"
        write_verdict_csv(path, census_rows)
        table = read_verdict_csv(path)
        for parsed, original in zip(table.verdicts, census_rows):
            assert parsed.p_boson == original.p_boson  # bitwise through repr

    def test_fit_csv_roundtrip(self, tmp_path):
        from symfock.experiments import RobustnessFit
        fit = RobustnessFit(
            grid=(1e-3, 2e-3), measured=(1.23e-6, 0.5e-5), exponent=2.0,
            prefactor=1.0, predicted_prefactor=1.0, theory_exponent=2.0,
            samples=10, metadata={},
        )
        path = tmp_path / "fit.csv"
        write_fit_csv(path, fit)
        grid, measured = read_fit_csv(path)
        assert grid == fit.grid
        assert measured == fit.measured


class TestExperimentConfigCheck:
    def test_valid_census(self):
        payload = {
            "kind": "mean-probabilities",
            "permutation": "(1 2)",
            "input_state": [1, 1],
        }
        assert check_experiment_config(payload) == []

    def test_unknown_kind(self):
        problems = check_experiment_config({"kind": "teleportation"})
        assert any("kind" in p for p in problems)

    def test_problems_are_collected_exhaustively(self):
        payload = {
            "kind": "unitary-robustness",
            "grid": [0.0, -1.0],
            "particle": "anyon",
        }
        problems = check_experiment_config(payload)
        assert len(problems) >= 4  # state, target, grid, particle, source

    def test_fourier_pair_checked(self):
        payload = {
            "kind": "distinguishability-robustness",
            "input_state": [1, 0, 1, 0],
            "target_output": [1, 1, 0, 0],
            "grid": [1e-3, 2e-3, 5e-3, 1e-2],
            "fourier": [4],
        }
        problems = check_experiment_config(payload)
        assert any("fourier" in p for p in problems)


class TestSvg:
    def test_valid_xml_with_one_rect_per_value(self, tmp_path):
        doc = bar_chart([0.1, 0.0, 0.4], ["I", "III", "IV"], title="demo")
        root = ET.fromstring(doc)
        bars = [el for el in root.iter() if el.tag.endswith("rect") and el.get("class") == "bar"]
        assert len(bars) == 3

    def test_verdict_chart_orders_suppressed_first(self, tmp_path):
        cfg = CensusConfig(Permutation.parse("(1 2)"), (1, 1), num_bases=1, seed=0)
        rows = run_mean_probabilities(cfg).tables[ParticleType.BOSON]
        path = tmp_path / "chart.svg"
        write_verdict_svg(path, rows, title="hom")
        root = ET.parse(path).getroot()
        bars = [el for el in root.iter() if el.tag.endswith("rect") and el.get("class") == "bar"]
        assert len(bars) == len(rows)
        heights = [float(b.get("height")) for b in bars]
        assert heights[0] == pytest.approx(0.0)  # the suppressed event leads

    def test_empty_chart_is_still_valid(self):
        ET.fromstring(bar_chart([]))
