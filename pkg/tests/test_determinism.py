"""Golden-file checks: every fixture build must reproduce its stored trace,
audit report and output digest byte for byte.

Regenerate after an intentional change with ``python tests/test_determinism.py``.
"""

import hashlib
import json
import sys
from pathlib import Path

import pytest

from marstrand.cli import main

GOLDEN = Path(__file__).parent / "golden"

FIXTURES = {
    "thm1_paper_n4": ["construct1", "--schedule", "paper", "--stages", "4",
                      "--cond", "1/2", "--oracle-seed", "7"],
    "thm1_scaled16_projection": ["construct1", "--schedule", "scaled:16", "--stages", "3",
                                 "--theta", "2/7 pi", "--direction", "1/9 pi",
                                 "--oracle-seed", "2"],
    "thm2_scaled8_n4": ["construct2", "--schedule", "scaled:8", "--stages", "4",
                        "--cond", "1/2", "--cond", "3/5", "--eps", "1/2", "--seed", "3"],
    "thm2_scaled16_cos": ["construct2", "--schedule", "scaled:16", "--stages", "3",
                          "--theta", "1/3 pi", "--direction", "0", "--eps", "1/4",
                          "--seed", "8"],
}

ARTIFACTS = ("trace.json", "audit.json", "run.json")


def produce(name, out):
    code = main(FIXTURES[name] + ["--out", str(out), "--format", "json", "--format", "csv"])
    files = {a: (out / a).read_bytes() for a in ARTIFACTS + ("profiles.csv",)}
    files["x.sha256"] = (hashlib.sha256((out / "x.txt").read_bytes()).hexdigest() + "\n").encode()
    return code, files


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_matches_golden_and_repeats(name, tmp_path, capsys):
    code1, first = produce(name, tmp_path / "a")
    code2, second = produce(name, tmp_path / "b")
    assert code1 == code2 == 0
    assert first == second
    for fname, data in first.items():
        golden = GOLDEN / name / fname
        assert golden.read_bytes() == data, f"{name}/{fname} differs from golden"


def test_golden_audits_passed():
    for name in FIXTURES:
        rep = json.loads((GOLDEN / name / "audit.json").read_text())
        assert rep["passed"], name


def regenerate():
    import tempfile
    for name in sorted(FIXTURES):
        with tempfile.TemporaryDirectory() as tmp:
            code, files = produce(name, Path(tmp))
        if code != 0:
            sys.exit(f"{name}: exit {code}")
        target = GOLDEN / name
        target.mkdir(parents=True, exist_ok=True)
        for fname, data in files.items():
            (target / fname).write_bytes(data)
        print(f"wrote {target}")


if __name__ == "__main__":
    regenerate()
