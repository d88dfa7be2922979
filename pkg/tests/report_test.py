import json

import pytest
from fractions import Fraction

from hyperdet.core import InputError
from hyperdet.grassmann import Hypermatrix
from hyperdet.report import Check, HypermatrixFile, Report, load_hypermatrix
from hyperdet.scalar import POLY, UniPoly


class TestHypermatrixFile:
    """
    The JSON input format of `hyperdet det`.
    """

    def test_load_rational(self):
        tensor = load_hypermatrix('{"order": 2, "dim": 2, "entries": ["1", "1/2", 3, "-2/4"]}')
        assert tensor.as_matrix() == [[1, Fraction(1, 2)], [3, Fraction(-1, 2)]]

    def test_load_polynomial(self):
        tensor = load_hypermatrix('{"order": 2, "dim": 1, "scalar": "poly", "entries": [["0", "1"]]}')
        assert tensor.ring is POLY
        assert tensor[(0, 0)] == UniPoly.y()

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            '{"order": 2, "dim": 2, "entries": ["1", "2", "3"]}',
            '{"order": 0, "dim": 2, "entries": []}',
            '{"order": 1, "dim": 1, "scalar": "complex", "entries": ["1"]}',
            '{"order": 1, "dim": 2, "entries": ["1", "x"]}',
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(InputError):
            load_hypermatrix(text)

    def test_from_hypermatrix(self):
        tensor = Hypermatrix.from_nested([[1, Fraction(2, 3)], [0, -1]])
        model = HypermatrixFile.from_hypermatrix(tensor)
        assert model.entries == ["1", "2/3", "0", "-1"]
        assert load_hypermatrix(model.model_dump_json()) == tensor


@pytest.fixture
def report():
    report = Report(command="selberg", params={"a": "1", "b": "1", "k": "1", "n": "2"})
    report.add_result("closed_form", Fraction(1, 12))
    report.add_check("Det = closed form", True, Fraction(1, 12), Fraction(1, 12))
    return report


class TestReport:
    def test_check_alias(self):
        check = Check.model_validate({"name": "x", "pass": False})
        assert check.passed is False
        assert check.model_dump(by_alias=True)["pass"] is False

    def test_json_uses_pass_and_exact_strings(self, report):
        data = json.loads(report.to_json())
        assert data["results"] == {"closed_form": "1/12"}
        assert data["checks"][0]["pass"] is True
        assert data["checks"][0]["lhs"] == "1/12"
        assert "table" not in data

    def test_json_round_trip(self, report):
        assert Report.from_json(report.to_json()) == report

    def test_ok(self, report):
        assert report.ok
        report.add_check("broken", False)
        assert not report.ok

    def test_timed(self, report):
        with report.timed("closed_form"):
            pass
        assert report.timing_ms["closed_form"] >= 0
        assert report.results_frame().loc[0, "ms"] >= 0

    def test_timed_records_on_error(self, report):
        with pytest.raises(RuntimeError):
            with report.timed("boom"):
                raise RuntimeError
        assert "boom" in report.timing_ms

    def test_untimed_results_render_blank(self, report):
        report.add_result("top_coefficient", 15)
        frame = report.results_frame()
        assert frame.loc[1, "ms"] == ""
        assert "NaN" not in report.render()

    def test_frames(self, report):
        assert list(report.results_frame().columns) == ["name", "value", "ms"]
        checks = report.checks_frame()
        assert list(checks.columns) == ["name", "pass", "lhs", "rhs"]
        assert bool(checks.loc[0, "pass"])

    def test_render_shares_value_strings(self, report):
        text = report.render()
        assert text.startswith("selberg  a=1 b=1 k=1 n=2")
        assert "1/12" in text
        assert text.rstrip().endswith("all checks passed")

    def test_render_failed_and_table(self, report):
        report.add_check("broken", False, "1", "2")
        report.table = [{"lambda": [0, 2], "coeff": "1"}]
        text = report.render()
        assert "CHECKS FAILED" in text
        assert "coeff" in text

    def test_render_polynomial_result(self):
        report = Report(command="aomoto")
        report.add_result("polynomial", UniPoly([Fraction(1, 12), Fraction(-1, 2), 1]))
        assert "y^2 - 1/2*y + 1/12" in report.render()
