import json
from fractions import Fraction as F

import pytest

import metastable as ms
import metastable.henson as h
from metastable.cli import main


@pytest.fixture
def workdir(tmp_path):
    seq = ms.SequenceSpec(
        prefix=(0, F(3, 10), F(1, 2), F(3, 5), F(13, 20)), tail=ms.Constant()
    )
    (tmp_path / "s.json").write_text(json.dumps(ms.sequence_to_json(seq)))

    sig = h.Signature(sorts=("X",), constants={"b": "X"}, anchors={"X": "a"})
    data = h.line_sort({"pa": 0, "pb": 1}, anchor="pa")
    M = h.FiniteStructure(sig, {"X": data}, {"a": "pa", "b": "pb"})
    (tmp_path / "m.json").write_text(json.dumps(h.structure_to_json(M)))

    mu = ms.MeasureStructure(("w1", "w2"), {"w1": "1/3", "w2": "2/3"},
                             "probability")
    (tmp_path / "mu.json").write_text(json.dumps(ms.measure_to_json(mu)))
    f = ms.LInfFunction({"w1": 3, "w2": 0})
    (tmp_path / "f.json").write_text(json.dumps(ms.linf_to_json(f)))

    fam = ms.DirectedFamily(
        measure=ms.MeasureStructure(("w1", "w2"),
                                    {"w1": "1/2", "w2": "1/2"}, "probability"),
        slices={
            "w1": ms.SequenceSpec(prefix=(1, -1), tail=ms.Periodic(2)),
            "w2": ms.SequenceSpec(prefix=(-1, 1), tail=ms.Periodic(2)),
        },
    )
    (tmp_path / "fam.json").write_text(json.dumps(ms.family_to_json(fam)))
    return tmp_path


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestAnalyze:
    def test_holds(self, workdir, capsys):
        code, out = run(["analyze", "--seq", str(workdir / "s.json"),
                         "--eps", "1/2", "--F", "n+1", "--E", "0..2"], capsys)
        assert code == 0
        assert "rate holds, witness i=0" in out

    def test_fails(self, workdir, capsys):
        code, out = run(["analyze", "--seq", str(workdir / "s.json"),
                         "--eps", "0", "--F", "n+1", "--E", "0,1"], capsys)
        assert code == 1
        assert "rate fails" in out

    def test_json_roundtrip_through_rate(self, workdir, capsys, tmp_path):
        code, out = run(["rate", "monotone", "--eps", "1/2", "--F", "n+1",
                         "--json"], capsys)
        assert code == 0
        rate_file = tmp_path / "rate.json"
        rate_file.write_text(out)
        code, out = run(["analyze", "--seq", str(workdir / "s.json"),
                         "--eps", "1/2", "--F", "n+1",
                         "--E", f"@{rate_file}", "--json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["holds"] is True and report["E"] == [0, 1, 2]

    def test_missing_file_usage_error(self, workdir, capsys):
        code = main(["analyze", "--seq", str(workdir / "nope.json"),
                     "--eps", "1", "--F", "n+1", "--E", "0"])
        assert code == 2

    def test_inline_explicit_sampling(self, workdir, capsys):
        eta = json.dumps({"sampling": {"0": [0, 1], "1": [1, 2], "2": [2, 3]}})
        code, out = run(["analyze", "--seq", str(workdir / "s.json"),
                         "--eps", "1/2", "--F", eta, "--E", "0..2"], capsys)
        assert code == 0 and "witness i=0" in out

    def test_affine_json_sampling(self, workdir, capsys):
        code, _ = run(["analyze", "--seq", str(workdir / "s.json"),
                       "--eps", "1/2", "--F", '{"F": {"affine": {"w": 2}}}',
                       "--E", "0..3"], capsys)
        assert code == 0

    def test_csv_ingestion(self, tmp_path, capsys):
        csv_file = tmp_path / "seq.csv"
        csv_file.write_text("0\n1/3\n1/2\n1/2\n")
        code, out = run(["analyze", "--seq", str(csv_file),
                         "--eps", "1/3", "--F", "n+1", "--E", "0..3"], capsys)
        assert code == 0 and "rate holds" in out


class TestRate:
    def test_monotone_print(self, capsys):
        code, out = run(["rate", "monotone", "--eps", "2/5", "--F", "2n+1"],
                        capsys)
        assert code == 0
        assert "E={0..7}" in out

    def test_bad_f_spec(self, capsys):
        code = main(["rate", "monotone", "--eps", "1/2", "--F", "n"])
        assert code == 2


class TestLogic:
    def test_check_approx(self, workdir, capsys):
        code, _ = run(["logic", "check", "--structure", str(workdir / "m.json"),
                       "--formula", "d(b,a) <= 1", "--mode", "approx"], capsys)
        assert code == 0

    def test_check_fails(self, workdir, capsys):
        code, _ = run(["logic", "check", "--structure", str(workdir / "m.json"),
                       "--formula", "d(b,a) <= 1/2", "--mode", "discrete"],
                      capsys)
        assert code == 1

    def test_assignment(self, workdir, capsys):
        code, _ = run(["logic", "check", "--structure", str(workdir / "m.json"),
                       "--formula", "d(x,a) >= 1", "--assign", "x=pb"], capsys)
        assert code == 0

    def test_parse_roundtrip(self, workdir, capsys):
        code, out = run(["logic", "parse", "--structure",
                         str(workdir / "m.json"),
                         "--formula", "(d(x,a)<=1 & d(x,a)>=1)"], capsys)
        assert code == 0
        assert out.strip() == "(d(x, a) <= 1 & d(x, a) >= 1)"

    def test_parse_error_exit_2(self, workdir, capsys):
        code = main(["logic", "check", "--structure", str(workdir / "m.json"),
                     "--formula", "d(x, a) <="])
        assert code == 2


class TestMeasure:
    def test_audit(self, workdir, capsys):
        code, out = run(["measure", "audit", "--file", str(workdir / "mu.json")],
                        capsys)
        assert code == 0
        assert "PASS modularity" in out

    def test_integrate(self, workdir, capsys):
        code, out = run(["measure", "integrate", "--file",
                         str(workdir / "mu.json"),
                         "--function", str(workdir / "f.json")], capsys)
        assert code == 0
        assert "I(f) = 1" in out

    def test_measurable(self, workdir, capsys):
        code, out = run(["measure", "measurable", "--file",
                         str(workdir / "mu.json"),
                         "--function", str(workdir / "f.json"),
                         "--u", "1", "--v", "2"], capsys)
        assert code == 0
        assert "w2" in out


class TestDct:
    def test_check(self, workdir, capsys):
        code, out = run(["dct", "check", "--family", str(workdir / "fam.json"),
                         "--json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["holds"] and report["lhs"] == "0" and report["rhs"] == "2"

    def test_search(self, capsys):
        code, out = run(["dct", "search", "--F", "n+1", "--eps", "1,1/2",
                         "--count", "10", "--horizon", "8", "--seed", "4",
                         "--json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["feasible"]
        assert report["rates"]["1/2"] == [0, 1]

    def test_search_infeasible(self, capsys):
        code, out = run(["dct", "search", "--F", "n+1", "--eps", "1/10",
                         "--count", "0", "--horizon", "2", "--seed", "4"],
                        capsys)
        assert code == 1
        assert "infeasible" in out

    def test_seed_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("METASTABLE_SEED", "4")
        code, from_env = run(["dct", "search", "--F", "n+1", "--eps", "1/2",
                              "--count", "10", "--horizon", "8", "--json"],
                             capsys)
        assert code == 0
        code, from_flag = run(["dct", "search", "--F", "n+1", "--eps", "1/2",
                               "--count", "10", "--horizon", "8",
                               "--seed", "4", "--json"], capsys)
        assert code == 0
        assert json.loads(from_env) == json.loads(from_flag)
