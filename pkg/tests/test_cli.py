import json

import numpy as np
import pytest

from hyperprop.cli import main
from hyperprop.io import load_signal

CHAIN = "nodeId,edgeId\nu1,v1\nu2,v1\nu2,v2\nu3,v2\n"


@pytest.fixture
def chain_incidence(tmp_path):
    path = tmp_path / "incidence.csv"
    path.write_text(CHAIN)
    return path


@pytest.fixture
def cliques(tmp_path):
    """Separable two-component toy dataset."""
    per_side = 10
    inc = ["nodeId,edgeId"]
    lab = ["nodeId,label"]
    for i in range(per_side):
        inc.append(f"a{i},EA")
        lab.append(f"a{i},art")
        inc.append(f"b{i},EB")
        lab.append(f"b{i},bio")
    incidence = tmp_path / "toy_incidence.csv"
    labels = tmp_path / "toy_labels.csv"
    incidence.write_text("\n".join(inc) + "\n")
    labels.write_text("\n".join(lab) + "\n")
    return incidence, labels


def mean_from_stdout(capsys):
    out = capsys.readouterr().out.strip().splitlines()
    line = [l for l in out if l.startswith("mean_metric=")][-1]
    return float(line.split("=", 1)[1])


class TestPropagate:
    def test_signal_file(self, chain_incidence, tmp_path, capsys):
        signal = tmp_path / "signal.csv"
        signal.write_text("nodeId,value\nu1,1\nu2,0\nu3,0\n")
        out = tmp_path / "out.csv"
        code = main(["propagate", "--incidence", str(chain_incidence),
                     "--signal", str(signal), "--output", str(out)])
        assert code == 0
        ids, values = load_signal(out)
        assert ids == ["u1", "u2", "u3"]
        np.testing.assert_allclose(values[:, 0], [0.5, 0.25, 0.0])

    def test_constant_signal_is_returned_unchanged(self, chain_incidence,
                                                   tmp_path):
        signal = tmp_path / "signal.csv"
        signal.write_text("nodeId,value\nu1,2\nu2,2\nu3,2\n")
        out = tmp_path / "out.csv"
        assert main(["propagate", "--incidence", str(chain_incidence),
                     "--signal", str(signal), "--layers", "3",
                     "--output", str(out)]) == 0
        _, values = load_signal(out)
        np.testing.assert_allclose(values[:, 0], 2.0, atol=1e-12)

    def test_label_derived_signal(self, cliques, tmp_path):
        incidence, labels = cliques
        out = tmp_path / "out.csv"
        assert main(["propagate", "--incidence", str(incidence),
                     "--labels", str(labels), "--output", str(out)]) == 0
        ids, values = load_signal(out)
        assert values.shape == (20, 2)  # one column per class
        np.testing.assert_allclose(values.sum(axis=1), 1.0)

    def test_zero_layers_rejected(self, chain_incidence, tmp_path, capsys):
        signal = tmp_path / "signal.csv"
        signal.write_text("nodeId,value\nu1,1\nu2,0\nu3,0\n")
        code = main(["propagate", "--incidence", str(chain_incidence),
                     "--signal", str(signal), "--layers", "0",
                     "--output", str(tmp_path / "out.csv")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_requires_signal_or_labels(self, chain_incidence, tmp_path):
        assert main(["propagate", "--incidence", str(chain_incidence),
                     "--output", str(tmp_path / "out.csv")]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["propagate", "--incidence", str(tmp_path / "nope.csv"),
                     "--signal", str(tmp_path / "nope2.csv"),
                     "--output", str(tmp_path / "out.csv")]) == 2


class TestClassify:
    def test_separable_toy(self, cliques, tmp_path, capsys):
        incidence, labels = cliques
        report_path = tmp_path / "report.json"
        code = main(["classify", "--incidence", str(incidence),
                     "--labels", str(labels), "--output", str(report_path)])
        assert code == 0
        assert mean_from_stdout(capsys) == 1.0
        doc = json.loads(report_path.read_text())
        assert doc["mean_auc"] == 1.0
        assert doc["method"] == "propagation"

    def test_naive_bayes_method(self, cliques, capsys):
        incidence, labels = cliques
        code = main(["classify", "--incidence", str(incidence),
                     "--labels", str(labels), "--method", "naive-bayes"])
        assert code == 0
        assert mean_from_stdout(capsys) == 1.0

    def test_csv_report(self, cliques, tmp_path):
        incidence, labels = cliques
        report_path = tmp_path / "report.csv"
        assert main(["classify", "--incidence", str(incidence),
                     "--labels", str(labels), "--output", str(report_path),
                     "--format", "csv"]) == 0
        lines = report_path.read_text().splitlines()
        assert lines[0] == "class,fold,metric,value,micros"
        assert lines[-1].startswith("mean,mean,auc,")

    def test_single_class_dataset_is_degenerate(self, tmp_path, capsys):
        (tmp_path / "i.csv").write_text("nodeId,edgeId\na,e\nb,e\nc,e\nd,e\n")
        (tmp_path / "l.csv").write_text(
            "nodeId,label\na,x\nb,x\nc,x\nd,x\n")
        code = main(["classify", "--incidence", str(tmp_path / "i.csv"),
                     "--labels", str(tmp_path / "l.csv"), "--folds", "2"])
        assert code == 3
        assert "degenerate" in capsys.readouterr().err

    def test_reports_identical_across_jobs(self, cliques, tmp_path):
        incidence, labels = cliques
        outs = []
        for jobs in ("1", "3"):
            path = tmp_path / f"report_{jobs}.json"
            assert main(["classify", "--incidence", str(incidence),
                         "--labels", str(labels), "--jobs", jobs,
                         "--output", str(path)]) == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]


class TestRetrieve:
    def test_separable_toy(self, cliques, tmp_path, capsys):
        incidence, labels = cliques
        report_path = tmp_path / "report.json"
        code = main(["retrieve", "--incidence", str(incidence),
                     "--labels", str(labels), "--folds", "2",
                     "--top-k", "3", "--layers", "3",
                     "--output", str(report_path)])
        assert code == 0
        assert mean_from_stdout(capsys) == 1.0
        doc = json.loads(report_path.read_text())
        assert doc["metric"] == "p_at_3"
        assert doc["params"]["top_k"] == 3


class TestBench:
    def test_synthetic_default_repetitions(self, tmp_path, capsys):
        out = tmp_path / "bench.json"
        code = main(["bench", "--synthetic", "300", "40", "900", "7",
                     "--output", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["repetitions"] == 20
        assert {c["cell"] for c in doc["cells"]} == {
            "propagation_layers_1", "propagation_layers_2",
            "propagation_layers_3", "naive_bayes_fit_score"}
        for cell in doc["cells"]:
            assert len(cell["micros"]) == 20
        stdout = capsys.readouterr().out
        assert "median_micros=" in stdout

    def test_incidence_source(self, chain_incidence, tmp_path):
        out = tmp_path / "bench.csv"
        assert main(["bench", "--incidence", str(chain_incidence),
                     "--repetitions", "2", "--output", str(out),
                     "--format", "csv"]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "cell,rep,micros"
        assert any(",median," in line for line in lines)

    def test_requires_a_source(self, capsys):
        assert main(["bench"]) == 2
        assert "error" in capsys.readouterr().err


class TestArgumentErrors:
    def test_unknown_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--bogus"])
        assert exc.value.code == 2

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["transmogrify"])
        assert exc.value.code == 2
