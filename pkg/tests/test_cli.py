import io
import os
import re
from pathlib import Path

import pytest

from lcif.cli import main, parse_range, UsageError

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "enumerate-r2": ["enumerate", "--r", "2"],
    "enumerate-r3": ["enumerate", "--r", "3"],
    "count-23": ["count", "--r", "3", "--n", "10", "--gens", "2,3", "--x", "2,3,9", "--oracle"],
    "count-star": ["count", "--r", "3", "--n", "10", "--gens", "1", "--x", "2,3,9"],
    "count-empty": ["count", "--r", "2", "--n", "4", "--gens", "2,3", "--x", "4"],
    "classify-23k": ["classify", "--r", "3", "--n", "10", "--x", "2,3,9"],
    "classify-3j": ["classify", "--r", "3", "--n", "10", "--x", "3,9"],
    "classify-evens": ["classify", "--r", "3", "--n", "8", "--x", "2,4,6"],
    "classify-large": ["classify", "--r", "3", "--n", "8", "--x", "2,3,4,5"],
    "eventual-5": ["classify-eventual", "--r", "3", "--x", "5"],
    "eventual-234": ["classify-eventual", "--r", "3", "--x", "2,3,4"],
    "eventual-246": ["classify-eventual", "--r", "3", "--x", "2,4,6"],
    "minimal-r3": ["minimal-good", "--r", "3", "--n", "6", "--size", "3"],
    "verify-ekr": ["verify", "--suite", "ekr", "--r", "2..3"],
    "verify-borg": ["verify", "--suite", "borg", "--r", "2", "--n", "4,5"],
}


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("LCIF_CACHE_DIR", str(tmp_path / "cache"))


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("fmt", ["human", "structured"])
@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, fmt):
    code, text = run(CASES[name] + ["--format", fmt])
    assert code == 0
    path = GOLDEN / f"{name}.{fmt}.txt"
    if os.environ.get("LCIF_REGEN_GOLDEN"):
        path.parent.mkdir(exist_ok=True)
        path.write_text(text)
    assert text == path.read_text()


def _fields(line):
    return dict(part.split("=", 1) for part in line.split("; "))


def _decisions(name, fmt, text):
    """The decision content of one output, in a format-neutral shape."""
    lines = text.splitlines()
    cmd = CASES[name][0]
    if fmt == "structured":
        if cmd == "enumerate":
            return [_fields(ln)["gens"] for ln in lines[1:]]
        recs = [_fields(ln) for ln in lines]
        if cmd == "count":
            return recs[0]["count"], recs[0].get("oracle")
        if cmd in ("classify", "classify-eventual"):
            head = recs[0]
            return head["verdict"], head.get("threshold"), [w["gens"] for w in recs[1:]]
        if cmd == "minimal-good":
            return [rec["x"] for rec in recs[1:]]
        return [(rec["claim"], rec["status"]) for rec in recs if rec["record"] == "claim"]

    def gens(pretty):
        return "|".join(s.strip("{} ").replace(" ", "") for s in pretty.split("}, {"))

    if cmd == "enumerate":
        return [gens(ln) for ln in lines]
    if cmd == "count":
        oracle = re.match(r"oracle (\d+)", lines[2]).group(1) if len(lines) > 2 else None
        return lines[1], oracle
    if cmd in ("classify", "classify-eventual"):
        verdict = lines[1].split(":")[0].split(" ")[0]
        m = re.search(r"n >= (\d+)", lines[1])
        witnesses = [gens(re.match(r"witness (.*?):", ln).group(1)) for ln in lines[2:]]
        return verdict, m.group(1) if m else None, witnesses
    if cmd == "minimal-good":
        return lines[1:]
    return [(ln.split()[1], ln.split()[0].lower()) for ln in lines
            if ln.startswith(("PASS", "FAIL"))]


@pytest.mark.parametrize("name", sorted(CASES))
def test_human_and_structured_agree(name):
    _, human = run(CASES[name])
    _, structured = run(CASES[name] + ["--format", "structured"])
    assert _decisions(name, "human", human) == _decisions(name, "structured", structured)


@pytest.mark.parametrize("name", ["enumerate-r3", "classify-23k", "eventual-246", "verify-ekr"])
def test_deterministic(name):
    args = CASES[name] + ["--format", "structured"]
    assert run(args) == run(args)


def test_enumerate_uses_cache(tmp_path):
    args = ["enumerate", "--r", "3", "--format", "structured", "--cache-dir", str(tmp_path)]
    first = run(args)
    assert (tmp_path / "mlcif-r3-v1.txt").read_text() == first[1]
    assert run(args) == first


@pytest.mark.parametrize("argv", [
    ["count", "--r", "3", "--n", "5", "--gens", "1", "--x", "2"],
    ["count", "--r", "3", "--n", "8", "--gens", "1", "--x", "1,2"],
    ["count", "--r", "3", "--n", "8", "--gens", "1", "--x", ""],
    ["count", "--r", "3", "--n", "8", "--gens", "1,2|3,4", "--x", "2"],
    ["count", "--r", "3", "--n", "8", "--gens", "1", "--x", "3,2"],
    ["classify", "--r", "3", "--n", "8", "--x", "2,9"],
    ["enumerate", "--r", "7"],
    ["enumerate", "--r", "1"],
    ["minimal-good", "--r", "5", "--n", "22", "--size", "2"],
    ["verify", "--suite", "ekr", "--r", "a..b"],
    ["verify", "--suite", "nope", "--r", "3"],
    ["bogus"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    err = capsys.readouterr().err
    assert "error" in err


def test_guard_message_names_the_flag(capsys):
    run(["enumerate", "--r", "7"])
    assert "--override-guard" in capsys.readouterr().err


def test_verify_failure_exits_1(monkeypatch):
    import lcif.goodness as goodness

    def failing(report, rs, ns):
        report.add("always-fails", False, "{2}", r=rs[0])

    monkeypatch.setitem(goodness.SUITES, "ekr", (failing, lambda r: [2 * r]))
    code, text = run(["verify", "--suite", "ekr", "--r", "3", "--format", "structured"])
    assert code == 1
    assert "status=fail; counterexample={2}" in text
    assert text.endswith("record=summary; suite=ekr; status=fail\n")


def test_oracle_mismatch_exits_1(monkeypatch):
    import lcif.cli as cli
    monkeypatch.setattr(cli, "oracle_count", lambda *a: -1)
    code, text = run(["count", "--r", "3", "--n", "8", "--gens", "1", "--x", "2", "--oracle"])
    assert code == 1
    assert "DISAGREES" in text


def test_parse_range():
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("3") == [3]
    assert parse_range("2,4") == [2, 4]
    with pytest.raises(UsageError):
        parse_range("x")


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "lcif", "enumerate", "--r", "2"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "{1}\n{2,3}\n"
