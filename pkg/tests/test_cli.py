import io
import json
import subprocess
import sys

import pytest

from tailcodes.cli import main
from tailcodes.code_a import CodeParamsA, encode_a

SIGMA = [9, 1, 4, 2, 5, 8, 3, 6, 7]


def run(args, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "tailcodes", *args], input=stdin,
                          capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout, proc.stderr


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


class TestParams:
    def test_threshold_violation(self):
        code, out, _ = run(["params", "--model", "A", "--n", "9", "--t", "3", "--m", "3"])
        report = json.loads(out)
        assert code == 2 and not report["valid"] and report["t_prime"] == 3
        assert "m >= t'+2" in report["error"]

    def test_model_b(self):
        code, out, _ = run(["params", "--model", "B", "--n", "12", "--t", "2"])
        report = json.loads(out)
        assert code == 0 and report["length"] == 12 + report["t_prime"] + 1

    def test_model_c(self):
        code, out, _ = run(["params", "--model", "C", "--n", "13", "--t", "1"])
        report = json.loads(out)
        assert code == 0 and report["t_prime"] <= 5 and report["constraints"]["t' <= 5"]

    def test_missing_flags(self):
        assert run(["params", "--model", "A"])[0] == 2


class TestPipeline:
    def test_explicit_round_trip(self):
        line = json.dumps({"perm": SIGMA}) + "\n"
        code, enc, _ = run(["encode", "--model", "A", "--n", "9", "--t", "3", "--m", "5"], line)
        assert code == 0
        code, bad, _ = run(["corrupt", "--positions", "1,4,11"], enc)
        assert code == 0 and lines(bad)[0]["word"] != lines(enc)[0]["word"]
        code, dec, _ = run(["decode"], bad)
        assert code == 0 and lines(dec) == [{"perm": SIGMA}]

    def test_random_round_trip(self):
        for model, n, t in (("A", 7, 1), ("B", 12, 2), ("C", 13, 1)):
            data = (json.dumps({"perm": list(range(n, 0, -1))}) + "\n") * 3
            _, enc, _ = run(["encode", "--model", model, "--n", str(n), "--t", str(t)], data)
            _, bad, _ = run(["corrupt", "--seed", "4"], enc)
            code, dec, _ = run(["decode"], bad)
            assert code == 0 and all(r["perm"] == list(range(n, 0, -1)) for r in lines(dec))

    def test_capacity_error(self):
        params = CodeParamsA(9, 1, 4)
        word = encode_a(SIGMA, params)
        hits = ",".join(str(p) for p in range(1, params.length + 1) if word[p - 1] in (7, 10))
        line = json.dumps({"perm": SIGMA}) + "\n"
        _, enc, _ = run(["encode", "--model", "A", "--n", "9", "--t", "1", "--m", "4"], line)
        _, bad, _ = run(["corrupt", "--positions", hits], enc)
        code, dec, _ = run(["decode"], bad)
        assert code == 1 and lines(dec) == [{"error": "capacity"}]

    def test_inadmissible_pattern(self):
        line = json.dumps({"perm": SIGMA}) + "\n"
        _, enc, _ = run(["encode", "--model", "A", "--n", "9", "--t", "3", "--m", "5"], line)
        code, out, _ = run(["corrupt", "--positions", "1,5,9"], enc)
        assert code == 1 and lines(out)[0]["error"] == "pattern"

    def test_empty_input(self):
        assert run(["decode"], "") == (0, "", "")

    def test_bad_json(self):
        code, out, _ = run(["decode"], "{nope\n")
        assert code == 1 and lines(out)[0]["error"] == "format"


class TestVerify:
    def test_model_a(self):
        code, out, err = run(["verify", "A", "--n", "6", "--t", "1", "--exhaustive"])
        assert code == 0 and json.loads(out)["verified"] and err.startswith("PASS")

    def test_model_c_sampled(self):
        code, out, _ = run(["verify", "C", "--n", "13", "--t", "1", "--samples", "200", "--seed", "1"])
        assert code == 0

    def test_bad_params(self):
        assert run(["verify", "B", "--n", "5", "--t", "2"])[0] == 2

    def test_lemma_exit_codes(self):
        assert run(["lemmas", "L7", "--n", "6", "--t", "0"])[0] == 0
        assert run(["lemmas", "--lemma", "L4", "--n", "12", "--t", "2", "--samples", "100"])[0] == 3


def test_in_process_output_file(tmp_path):
    src = tmp_path / "in.jsonl"
    dst = tmp_path / "out.jsonl"
    src.write_text(json.dumps({"perm": [2, 1, 3, 4, 5, 6]}) + "\n")
    assert main(["encode", "--model", "A", "--n", "6", "--t", "1", "--in", str(src), "--out", str(dst)]) == 0
    rec = lines(dst.read_text())[0]
    assert rec["codec"]["model"] == "A" and len(rec["word"]) == 7


def test_missing_input_file(tmp_path, capsys):
    assert main(["decode", "--in", str(tmp_path / "nope")]) == 1


@pytest.mark.parametrize("argv", [["encode", "--model", "A", "--n", "6", "--t", "1"]])
def test_stdin_in_process(argv, monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"perm": [1, 2, 3, 4, 5, 6]}) + "\n"))
    assert main(argv) == 0
    assert lines(capsys.readouterr().out)[0]["codec"]["t"] == 1
