from pathlib import Path
import pytest
from Sumprod.Sumprod.main import main
from Sumprod.Tool.set_core.finite_set import make_set
from Sumprod.Tool.set_core.set_io import write_set_file, read_set_file
from Sumprod.Tool.sweep_management.records import read_records, SCHEMA_LINE


@pytest.fixture
def set_file(tmp_path):
    def factory(values, name="A.txt"):
        path = tmp_path / name
        write_set_file(path, make_set(values))
        return str(path)
    return factory


def run(capsys, *args):
    code = main([str(arg) for arg in args])
    return code, capsys.readouterr()


class TestSetCommands:

    def test_measure_sum(self, capsys, set_file):
        code, output = run(capsys, "measure", "--set", set_file([1, 2, 3]), "--op", "sum")
        assert code == 0
        assert output.out.strip() == "size=5"

    def test_measure_elements(self, capsys, set_file):
        code, output = run(capsys, "measure", "--set", set_file([1, 2, 4]), "--op", "prod", "--elements")
        assert code == 0
        assert output.out.split() == ["size=5", "1", "2", "4", "8", "16"]

    def test_measure_rational_ratio(self, capsys, set_file):
        code, output = run(capsys, "measure", "--set", set_file(["1/2", 1]), "--op", "ratio", "--elements")
        assert code == 0
        assert output.out.split() == ["size=3", "1/2", "1", "2"]

    def test_measure_aa_plus_a(self, capsys, set_file):
        code, output = run(capsys, "measure", "--set", set_file([1, 2]), "--op", "aa+a")
        assert code == 0
        # {1, 2, 4} + {1, 2}
        assert output.out.strip() == "size=5"

    def test_measure_with_second_set(self, capsys, set_file):
        A, B = set_file([1, 2]), set_file([10, 20], "B.txt")
        code, output = run(capsys, "measure", "--set", A, "--b", B, "--op", "diff")
        assert code == 0
        assert output.out.strip() == "size=4"

    def test_energy(self, capsys, set_file):
        code, output = run(capsys, "energy", "--set", set_file([1, 2, 3]))
        assert code == 0
        assert output.out.strip() == "additive_energy=19"

    def test_energy_report(self, capsys, set_file):
        code, output = run(capsys, "energy", "--set", set_file([1, 2, 4]), "--report")
        assert code == 0
        assert "e_mult=" in output.out

    def test_slopes(self, capsys, set_file, tmp_path):
        code, output = run(capsys, "slopes", "--set", set_file([1, 2]))
        assert code == 0
        assert output.out.split("\n")[:3] == ["1/2 1", "1/1 2", "2/1 1"]
        out = tmp_path / "slopes.txt"
        code, _ = run(capsys, "slopes", "--set", set_file([1, 2]), "--out", out)
        assert code == 0 and out.read_text(encoding="utf-8").splitlines() == ["1/2 1", "1/1 2", "2/1 1"]

    def test_cluster(self, capsys, set_file):
        code, output = run(capsys, "cluster", "--set", set_file([1, 2, 4]), "--m", 1)
        assert code == 0
        assert output.out.startswith("M,cluster_index,")

    def test_bigratio(self, capsys, set_file):
        code, output = run(capsys, "bigratio", "--set", set_file([1, 2]))
        assert code == 0
        assert "|AX+AX|=6" in output.out.splitlines()

    def test_construct(self, capsys, tmp_path):
        out = tmp_path / "constructed.txt"
        code, output = run(capsys, "construct", "--n", 10, "--no-measure", "--set-out", out)
        assert code == 0
        assert "q=2" in output.out.splitlines()
        assert [int(value) for value in read_set_file(out)] == list(range(1, 11))

    def test_moment(self, capsys):
        code, output = run(capsys, "moment", "--y", 5, "--superadditivity-limit", 30)
        assert code == 0
        lines = output.out.splitlines()
        assert "product_formula=28/9" in lines and "equal=True" in lines
        assert "superadditivity_violations=0/900" in lines

    def test_markov(self, capsys):
        code, output = run(capsys, "markov", "--y", 5)
        assert code == 0
        assert "holds=True" in output.out.splitlines()

    def test_list_knobs(self, capsys):
        code, output = run(capsys, "--list-knobs")
        assert code == 0
        assert "memory_budget_bytes" in output.out and "streamed_count" in output.out


class TestExitCodes:

    def test_missing_file(self, capsys, tmp_path):
        code, output = run(capsys, "measure", "--set", tmp_path / "missing.txt", "--op", "sum")
        assert code == 1
        assert "missing.txt" in output.err

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1\n2\n2.5e\n", encoding="utf-8")
        code, output = run(capsys, "measure", "--set", path, "--op", "sum")
        assert code == 1
        assert ":3" in output.err

    @pytest.mark.parametrize("args", [[], ["measure", "--op", "sum"], ["measure", "--set", "A.txt", "--op", "pow"],
                                      ["markov", "--y", "2"], ["construct", "--n", "0"]])
    def test_usage_errors(self, capsys, args):
        code, _ = run(capsys, *args)
        assert code == 1

    def test_bad_knob_definitions(self, capsys, set_file):
        A = set_file([1, 2])
        assert run(capsys, "measure", "--set", A, "--op", "sum", "-D", "memory_budget_bytes")[0] == 1
        assert run(capsys, "measure", "--set", A, "--op", "sum", "-D", "colour=red")[0] == 1
        assert run(capsys, "measure", "--set", A, "--op", "sum", "-D", "workers=many")[0] == 1

    def test_no_primorial(self, capsys):
        assert run(capsys, "construct", "--n", 4)[0] == 1

    def test_resource_limit(self, capsys, set_file):
        A = set_file(range(1, 40))
        code, output = run(capsys, "measure", "--set", A, "--op", "sum",
                           "-D", "memory_budget_bytes=1", "-D", "streamed_count=false")
        assert code == 2
        assert "ResourceLimit" not in output.out

    def test_streamed_by_default(self, capsys, set_file):
        A = set_file(range(1, 40))
        code, output = run(capsys, "measure", "--set", A, "--op", "sum", "-D", "memory_budget_bytes=1")
        assert code == 0
        assert output.out.strip() == "size=77"

    def test_runs_are_independent(self, capsys, set_file):
        A = set_file([1, 2, 3])
        assert run(capsys, "measure", "--set", A, "--op", "sum", "-D", "memory_budget_bytes=1",
                   "-D", "streamed_count=false")[0] == 2
        assert run(capsys, "measure", "--set", A, "--op", "sum")[0] == 0


SWEEP_CONFIG = """\
sweep:
  sizes: "4, 8, 16"
  measurements: "sumset, productset"

family gp:
  kind: geometric
  ratio: 2

family interval:
  kind: interval
"""


class TestSweepPipeline:

    @pytest.fixture
    def config(self, tmp_path):
        path = tmp_path / "sweep.yaml"
        path.write_text(SWEEP_CONFIG, encoding="utf-8")
        return path

    def test_sweep_fit_report(self, capsys, tmp_path, config):
        out = tmp_path / "sweep.csv"
        code, output = run(capsys, "sweep", "--config", config, "--out", out)
        assert code == 0 and "wrote 6 records" in output.out
        assert out.read_text(encoding="utf-8").splitlines()[0] == SCHEMA_LINE
        assert len(read_records(out)) == 6

        code, output = run(capsys, "fit", "--csv", out, "--x", "n", "--y", "sumset")
        assert code == 0
        slope = float(output.out.splitlines()[0].split("=")[1])
        # the interval rows grow linearly, the geometric rows quadratically
        assert 1.0 < slope < 2.0

        svg = tmp_path / "sweep.svg"
        code, _ = run(capsys, "report", "--csv", out, "--format", "svg", "--out", svg, "--y", "productset")
        assert code == 0 and svg.read_text(encoding="utf-8").count('id="record-') == 6

    def test_sweep_with_workers(self, capsys, tmp_path, config):
        single, pooled = tmp_path / "single.csv", tmp_path / "pooled.csv"
        assert run(capsys, "sweep", "--config", config, "--out", single)[0] == 0
        assert run(capsys, "sweep", "--config", config, "--out", pooled, "--workers", 2)[0] == 0
        assert single.read_bytes() == pooled.read_bytes()

    def test_sweep_records_budget_overruns(self, capsys, tmp_path, config):
        out = tmp_path / "tight.csv"
        code, _ = run(capsys, "sweep", "--config", config, "--out", out,
                      "-D", "memory_budget_bytes=1", "-D", "streamed_count=false")
        assert code == 0
        assert all(record.resource_limited for record in read_records(out))

    def test_fit_errors(self, capsys, tmp_path):
        plain = tmp_path / "plain.csv"
        plain.write_text("n,sumset\n1,1\n", encoding="utf-8")
        assert run(capsys, "fit", "--csv", plain, "--x", "n", "--y", "sumset")[0] == 1
        assert run(capsys, "fit", "--csv", plain, "--x", "n", "--y", "sumset", "--min", 5, "--max", 2)[0] == 1

    def test_bad_config(self, capsys, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("sweep:\n  sizes: 0.5\nfamily a:\n  kind: interval\n", encoding="utf-8")
        assert run(capsys, "sweep", "--config", path, "--out", tmp_path / "x.csv")[0] == 1

    def test_output_directory_logs(self, capsys, tmp_path, set_file):
        logs = tmp_path / "logs"
        code, _ = run(capsys, "measure", "--set", set_file([1, 2]), "--op", "sum", "--output", logs)
        assert code == 0
        assert (logs / "debug.log").exists() and (logs / "summary.log").exists()
        assert Path(logs / "summary.log").read_text(encoding="utf-8")


@pytest.mark.slow
class TestAcceptance:

    def fitted_slope(self, capsys, tmp_path, config_text):
        config = tmp_path / "acceptance.yaml"
        config.write_text(config_text, encoding="utf-8")
        out = tmp_path / "acceptance.csv"
        assert run(capsys, "sweep", "--config", config, "--out", out)[0] == 0
        code, output = run(capsys, "fit", "--csv", out, "--x", "n", "--y", "aa_plus_a")
        assert code == 0
        return float(output.out.splitlines()[0].split("=")[1])

    def test_geometric_aa_plus_a_exponent(self, capsys, tmp_path):
        slope = self.fitted_slope(capsys, tmp_path,
                                  'sweep:\n  sizes: "256, 512, 1024, 2048"\n  measurements: "aa_plus_a"\n'
                                  'budgets:\n  memory_budget_bytes: 512M\n'
                                  'family gp:\n  kind: geometric\n  ratio: 2\n')
        # (3n^2 - n) / 2 fits at 2 + O(1/n), read at two decimals
        assert 1.97 <= round(slope, 2) <= 2.00

    def test_interval_aa_plus_a_exponent(self, capsys, tmp_path):
        slope = self.fitted_slope(capsys, tmp_path,
                                  'sweep:\n  sizes: "256, 512, 1024, 2048, 4096"\n  measurements: "aa_plus_a"\n'
                                  'family interval:\n  kind: interval\n')
        assert slope >= 1.5
