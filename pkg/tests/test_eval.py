"""Confusion matrices, recognition rate, P/R/F, and table rendering."""

import numpy as np
import pytest

from veintex import (
    EvalReport,
    build_report,
    confusion_matrix,
    f_measure,
    precision_recall_f,
    recognition_rate,
    render_report,
    report_doc,
)


class TestConfusionMatrix:
    def test_counts_rows_are_truth(self):
        cm = confusion_matrix(["a", "a", "b"], ["a", "b", "b"], ["a", "b"])
        assert cm.counts.tolist() == [[1, 1], [0, 1]]
        assert cm.total == 3

    def test_label_outside_class_set_rejected(self):
        with pytest.raises(ValueError):
            confusion_matrix(["a"], ["x"], ["a", "b"])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            confusion_matrix(["a", "b"], ["a"], ["a", "b"])


class TestRecognitionRate:
    def test_170_of_200_is_85_exactly(self):
        truth = ["a"] * 100 + ["b"] * 100
        pred = ["a"] * 85 + ["b"] * 15 + ["b"] * 85 + ["a"] * 15
        cm = confusion_matrix(truth, pred, ["a", "b"])
        assert recognition_rate(cm) == 85.0

    def test_perfect_is_100(self):
        cm = confusion_matrix(["a", "b"], ["a", "b"], ["a", "b"])
        assert recognition_rate(cm) == 100.0


class TestPrf:
    def test_f_measure_harmonic_mean(self):
        assert f_measure(0.848, 0.845) == pytest.approx(0.846, abs=0.0005)
        assert f_measure(0.0, 0.0) == 0.0
        assert f_measure(1.0, 1.0) == 1.0

    def test_hand_worked_two_class(self):
        # truth a,a,a,b; pred a,a,b,b: P(a)=1, R(a)=2/3, P(b)=1/2, R(b)=1
        cm = confusion_matrix(["a", "a", "a", "b"], ["a", "a", "b", "b"], ["a", "b"])
        prf = precision_recall_f(cm)
        assert prf.per_class["a"]["precision"] == pytest.approx(1.0)
        assert prf.per_class["a"]["recall"] == pytest.approx(2 / 3)
        assert prf.per_class["b"]["precision"] == pytest.approx(0.5)
        assert prf.per_class["b"]["recall"] == pytest.approx(1.0)
        assert prf.macro_precision == pytest.approx(0.75)
        assert prf.macro_recall == pytest.approx(5 / 6)
        assert prf.per_class["a"]["f"] == pytest.approx(f_measure(1.0, 2 / 3))

    def test_zero_division_flags(self):
        # class b never predicted -> precision undefined, scored 0 and flagged
        cm = confusion_matrix(["a", "b"], ["a", "a"], ["a", "b"])
        prf = precision_recall_f(cm)
        assert prf.per_class["b"]["precision"] == 0.0
        assert prf.zero_division["precision"] == ["b"]
        assert prf.zero_division["recall"] == []

    def test_empty_inputs_rejected(self):
        with pytest.raises(ValueError):
            confusion_matrix([], [], ["a"])


class TestReports:
    def _report(self, config=None):
        truth = ["a", "a", "b", "b"]
        pred = ["a", "a", "b", "a"]
        return build_report(truth, pred, ["a", "b"], config or {"descriptor": "LPQ"})

    def test_build_report_fields(self):
        rep = self._report()
        assert isinstance(rep, EvalReport)
        assert rep.rate == 75.0
        assert rep.confusion.total == 4
        assert rep.config["descriptor"] == "LPQ"

    def test_report_doc_structure(self):
        doc = report_doc(self._report())
        assert doc["config"]["descriptor"] == "LPQ"
        assert doc["confusion"]["class_set"] == ["a", "b"]
        assert doc["metrics"]["recognition_rate"] == 75.0
        assert set(doc["metrics"]["macro"]) == {"precision", "recall", "f"}

    def test_render_single_descriptor_grids(self):
        reports = [
            self._report({"classifier": "knn", "metric": m, "descriptor": d})
            for m in ("euclidean", "cosine")
            for d in ("LBP", "HAAR")
        ]
        text = render_report(reports, "table1")
        assert "euclidean" in text and "cosine" in text
        assert "LBP" in text and "HAAR" in text

    def test_render_svm_grid(self):
        reports = [
            self._report({"classifier": "svm", "kernel": k, "descriptor": "LPQ"})
            for k in ("rbf", "polynomial")
        ]
        text = render_report(reports, "table2")
        assert "rbf" in text and "polynomial" in text

    def test_render_fused_layouts_have_prf_columns(self):
        reports = [
            self._report({"classifier": "knn", "metric": "euclidean", "descriptor": "LPQ+HAAR"})
        ]
        text = render_report(reports, "table3")
        for column in ("recall", "precision", "f-measure"):
            assert column in text

    def test_unknown_layout_rejected(self):
        with pytest.raises(ValueError):
            render_report([self._report()], "table9")
