import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from rootsign.cli import EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY, main

GOLDEN = Path(__file__).parent / "golden" / "tables_all.txt"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def value(text):
    first = text.splitlines()[0].split()
    assert first[0] == "sign"
    return int(first[1])


@pytest.mark.parametrize("argv,expected", [
    (("sign", "--system", "B4", "--class", "cox", "--num", "norm:4:3"), -1),
    (("sign", "--system", "E8", "--class", "D8a3", "--num", "norm:4+4:-3"), 1),
    (("sign", "--system", "A:5", "--class", "cox", "--num", "id"), 1),
    (("sign", "--system", "A:5", "--class", "cox", "--num", "norm:5:2"), -1),
    (("sign", "--system", "F4", "--class", "-1", "--num", "s1"), -1),
    (("sign", "--system", "G2", "--class", "-1", "--num", "s2"), 1),
    (("sign", "--system", "B4", "--class", "2+2", "--num", "p(0 2)p(1 3)"), -1),
    (("sign", "--system", "E8", "--class", "A7xA1", "--num", "norm3"), 1),
    (("sign", "--system", "E8", "--class", "A7xA1", "--num", "norm-3"), -1),
    (("legendre", "--n", "8", "--q", "3", "--eps", "+"), -1),
    (("legendre", "--n", "8", "--q", "3", "--eps", "-"), -1),
])
def test_values(argv, expected):
    code, text = run(*argv)
    assert code == EXIT_OK
    assert value(text) == expected


def test_sign_reports_evidence():
    code, text = run("sign", "--system", "B4", "--class", "cox", "--num", "norm:4:3", "--format", "json")
    data = json.loads(text)
    assert (data["orbits_w"], data["orbits_vw"], data["provenance"]) == (4, 3, "computed")
    assert (-1) ** (data["orbits_w"] - data["orbits_vw"]) == int(data["sign"])


def test_classify_f4():
    code, text = run("classify", "--system", "F4")
    assert code == EXIT_OK
    assert text.rstrip().endswith("4 classes")
    code, text = run("classify", "--system", "F4", "--format", "csv")
    assert len(text.strip().splitlines()) == 5


def test_classify_classical():
    code, text = run("classify", "--system", "B4", "--format", "json")
    assert [r["class"] for r in json.loads(text)] == ["4", "2+2", "2+1+1", "1+1+1+1"]


def test_tables_e6_and_formats():
    code, text = run("tables", "E6")
    assert code == EXIT_OK and text.count("\nclass ") + text.startswith("class ") == 2
    code, text = run("tables", "E6", "--format", "json")
    assert len(json.loads(text)) == 2
    code, text = run("tables", "E6", "--format", "csv")
    assert text.startswith("system,class,")


def test_tables_all_matches_golden():
    code, text = run("tables", "all")
    assert code == EXIT_OK
    assert text == GOLDEN.read_text(encoding="utf-8")


def test_dump():
    code, text = run("dump", "--system", "A:3")
    assert code == EXIT_OK and text.startswith("label: A2\n")
    code, text = run("dump", "--system", "G2", "--format", "json")
    assert len(json.loads(text)["roots"]) == 12


@pytest.mark.parametrize("argv", [
    ("sign", "--system", "X7", "--class", "cox", "--num", "id"),
    ("sign", "--system", "B4", "--class", "2+1", "--num", "id"),
    ("sign", "--system", "B4", "--class", "cox", "--num", "norm:4"),
    ("sign", "--system", "B4", "--class", "cox", "--num", "q(0 1)"),
    ("sign", "--system", "E8", "--class", "E8(a1)", "--num", "id"),
    ("sign", "--system", "B4", "--class", "cox", "--num", "s9"),
    ("tables", "H3"),
    ("legendre", "--n", "8", "--q", "3", "--eps", "x"),
    ("verify", "nonsense"),
    ("frobnicate",),
])
def test_parse_errors(argv):
    code, _ = run(*argv)
    assert code == EXIT_PARSE


@pytest.mark.parametrize("argv", [
    ("sign", "--system", "B4", "--class", "cox", "--num", "n(0)"),
    ("sign", "--system", "B4", "--class", "p(0 1)n(2)n(3)", "--num", "id"),
    ("sign", "--system", "B4", "--class", "cox", "--num", "norm:4:2"),
    ("legendre", "--n", "8", "--q", "4", "--eps", "+"),
])
def test_precondition_errors(argv):
    code, _ = run(*argv)
    assert code == EXIT_PRECONDITION


def test_verify_pass_and_fail_codes():
    code, text = run("verify", "perm-sign")
    assert code == EXIT_OK and text.startswith("[PASS]")
    code, text = run("verify", "10")
    assert code == EXIT_VERIFY and text.startswith("[FAIL]")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rootsign", "legendre", "--n", "5", "--q", "2", "--eps", "+"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.split()[1] == "-1"
