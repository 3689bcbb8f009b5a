"""CLI paths: golden outputs, exit codes, determinism."""
import json
import os
import pathlib
import subprocess
import sys

import pytest

from permcat.cli import run_command

ROOT = pathlib.Path(__file__).resolve().parent.parent
DOCS = ROOT / "documents"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"

REGEN = os.environ.get("PERMCAT_REGEN_GOLDEN") == "1"


def doc(name: str) -> str:
    return str(DOCS / name)


def run(capsys, argv):
    code = run_command(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def assert_golden(name: str, text: str):
    path = GOLDEN / name
    if REGEN:
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(text, encoding="utf-8")
    assert path.read_text(encoding="utf-8") == text


GOLDEN_COMMANDS = {
    "validate-mterm3.txt": ["validate", doc("mterm3.json")],
    "validate-sign.txt": ["validate", doc("sign.json")],
    "validate-swap.txt": ["validate", doc("swap-operad.json")],
    "free-two-object-hom.txt": ["free", doc("two-object.json"),
                                "--hom", "a,b", "a"],
    "free-initial-validate.txt": ["free", doc("initial.json"), "--max-len", "3"],
    "endo-sign-ops.txt": ["endo", doc("sign.json"), "--ops", "0", "1,1"],
    "endo-bool-validate.txt": ["endo", doc("bool-or.json"), "--max-arity", "2"],
    "tensor-s-images.txt": ["tensor-s", doc("sign-operad2.json"),
                            doc("two-object.json"),
                            "--objects", "*,*", "a,b", "--constraint", "1", "*"],
    "check-ring-biperm.txt": ["check-ring", "--level", "biperm",
                              doc("sign-biperm.json")],
    "check-ring-en-mutant.txt": ["check-ring", "--level", "en",
                                 doc("mutant-en-zero-exchange.json")],
    "validate-multicat-mutant.txt": ["validate", doc("mutant-multicat-unity.json")],
}

EXPECTED_EXIT = {
    "check-ring-en-mutant.txt": 1,
    "validate-multicat-mutant.txt": 1,
}


class TestGoldenOutputs:
    @pytest.mark.parametrize("name", sorted(GOLDEN_COMMANDS))
    def test_command_output(self, capsys, name):
        code, out, err = run(capsys, GOLDEN_COMMANDS[name])
        assert code == EXPECTED_EXIT.get(name, 0), err
        assert_golden(name, out)


class TestHeavySuites:
    def test_check_s(self, capsys):
        code, out, err = run(capsys, [
            "check-s", doc("mterm3.json"), doc("two-object.json"),
            "--max-len", "2"])
        assert code == 0, out + err
        assert "preserves-composition" in out
        assert_golden("check-s-mterm-two.txt", out)

    def test_check_adjunction(self, capsys):
        code, out, err = run(capsys, [
            "check-adjunction", doc("two-object.json"), doc("bool-or.json"),
            "--max-len", "3", "--max-arity", "3"])
        assert code == 0, out + err
        assert "counit-after-free-unit" in out
        assert_golden("check-adjunction-two-bool.txt", out)


class TestExitCodes:
    def test_unknown_flag_is_input_error(self, capsys):
        code, out, err = run(capsys, ["validate", "--frobnicate", "x.json"])
        assert code == 2

    def test_unknown_command(self, capsys):
        code, out, err = run(capsys, ["transmogrify"])
        assert code == 2

    def test_missing_file(self, capsys):
        code, out, err = run(capsys, ["validate", "no-such-file.json"])
        assert code == 2
        assert "cannot read" in err

    def test_unresolved_reference(self, capsys):
        code, out, err = run(capsys, ["validate", doc("mutant-unresolved.json")])
        assert code == 2
        assert "unknown operation" in err

    def test_kind_mismatch(self, capsys):
        code, out, err = run(capsys, ["check-ring", "--level", "ring",
                                      doc("sign.json")])
        assert code == 2

    def test_bound_exceeded_hom(self, capsys):
        code, out, err = run(capsys, ["free", doc("two-object.json"),
                                      "--hom", "a,a,a", "a"])
        assert code == 2


class TestReports:
    def test_report_file_matches_golden(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, _, _ = run(capsys, ["validate", doc("sign.json"),
                                  "--report", str(out_path)])
        assert code == 0
        text = out_path.read_text(encoding="utf-8")
        payload = json.loads(text)
        assert payload["verdict"] == "pass"
        assert_golden("report-validate-sign.json", text)

    def test_reports_byte_identical_across_processes(self, tmp_path):
        # determinism across interpreter runs with different hash seeds
        outputs = []
        for seed in ("0", "42"):
            out_path = tmp_path / f"report-{seed}.json"
            env = dict(os.environ, PYTHONHASHSEED=seed,
                       PYTHONPATH=str(ROOT / "src"))
            result = subprocess.run(
                [sys.executable, "-m", "permcat.cli", "check-ring",
                 "--level", "en", doc("sign-e2.json"),
                 "--report", str(out_path)],
                capture_output=True, text=True, env=env, cwd=str(ROOT))
            assert result.returncode == 0, result.stderr
            outputs.append((out_path.read_bytes(), result.stdout))
        assert outputs[0] == outputs[1]
