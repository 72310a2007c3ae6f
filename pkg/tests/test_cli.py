import io
import json
import subprocess
import sys

import pytest

from wakatilt import cli, fixtures
from wakatilt.indec import enumerate_indecomposables
from wakatilt.rep import rep_to_json


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def test_wtilt_a1():
    code, text = run("wtilt", "--kupisch", "3,4,4,4")
    assert code == 0
    assert text.splitlines()[0] == "6 Wakamatsu tilting modules; poset: yes; tilting: 2; cotilting: 2"


def test_wtilt_a3_reports_witness():
    code, text = run("wtilt", "--kupisch", "5,6,5,6,6,6")
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == "36 Wakamatsu tilting modules; poset: NO; tilting: 4; cotilting: 4"
    assert lines[1].startswith("witness: ") and "but not" in lines[1]


def test_wtilt_a5_file():
    code, text = run("wtilt", "--algebra", "a5.json")
    assert code == 0
    assert text.startswith("5 Wakamatsu tilting modules; poset: yes (totally ordered)")


def test_wtilt_json_and_dot(tmp_path):
    dot = tmp_path / "a1.dot"
    code, text = run("wtilt", "--example", "A1", "--json", "--dot", str(dot))
    data = json.loads(text)
    assert code == 0 and data["count"] == 6 and data["is_poset"] and data["tilting"] == 2
    assert len(data["hasse"]["edges"]) == 7
    assert dot.read_text().count("->") == 7


def test_reports_are_deterministic():
    assert run("wtilt", "--kupisch", "3,4,3,4", "--json") == run("wtilt", "--kupisch", "3,4,3,4", "--json")


def test_unsupported_algebra_exit_2():
    code, _ = run("wtilt", "--example", "A7")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["wtilt", "--kupisch", "3,3,1"],
        ["wtilt", "--kupisch", "1,x"],
        ["wtilt"],
        ["wtilt", "--kupisch", "2,2", "--example", "A1"],
        ["wtilt", "--example", "nope"],
        ["wtilt", "--algebra", "/does/not/exist.json"],
        ["wtilt", "--kupisch", "2,2", "--field", "100"],
        ["wtilt", "--kupisch", "2,2", "--dim-cap", "0"],
        ["bongartz", "--kupisch", "2,2"],
        ["bongartz", "--kupisch", "2,2", "--module", "Q7"],
        ["bogus"],
    ],
)
def test_invalid_input_exit_3(argv):
    assert run(*argv)[0] == 3


def test_bongartz():
    code, text = run("bongartz", "--kupisch", "3,4,4,4", "--module", "P2")
    assert code == 0 and "(4 summands)" in text
    code, text = run("bongartz", "--kupisch", "3,4,4,4", "--module", "ΛΛ", "--json")
    data = json.loads(text)
    assert data["added"] == [] and data["completion"] == ["P1", "P2", "P3", "P4"]


def test_bongartz_not_self_orthogonal(capsys):
    code, _ = run("bongartz", "--kupisch", "2,2", "--module", "S1")
    assert code == 3
    assert "Ext^2" in capsys.readouterr().err


def test_check():
    code, text = run("check", "--kupisch", "3,4,4,4")
    assert code == 0
    assert all(line.split(":")[1].strip().startswith("pass") for line in text.splitlines())
    code, text = run("check", "--kupisch", "2,2", "--json")
    data = json.loads(text)
    assert code == 0 and data["weakly_gorenstein"]["passed"]


def test_check_a7_finite_pd():
    code, text = run("check", "--example", "A7", "--module", "S1", "--finite-pd-only")
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == "self-orthogonal: yes; pd = 2; Wakamatsu tilting: no"
    assert "[1, 0, 0]" in lines[1] and "[3, 4, 2]" in lines[1]


def test_check_module_classification():
    code, text = run("check", "--kupisch", "3,4,4,4", "--module", "P2+P3+P4+M(1,1)", "--json")
    data = json.loads(text)
    assert data["module"]["cotilting"] and not data["module"]["tilting"]


def test_ext_table():
    code, text = run("ext-table", "--kupisch", "2,2", "--json")
    data = json.loads(text)
    s1, s2 = data["names"].index("M(1,1)"), data["names"].index("M(2,1)")
    assert data["ext"][s1][s2] == 1 and data["ext"][s1][s1] == 0
    code, text = run("ext-table", "--kupisch", "2,2", "--degree", "2", "--json")
    assert json.loads(text)["ext"][s1][s1] == 1
    code, text = run("ext-table", "--example", "A1")
    assert code == 0 and text.startswith("dim Ext^1")


def test_indec():
    code, text = run("indec", "--example", "A5", "--json")
    data = json.loads(text)
    assert len(data["modules"]) == 13 and data["complete"]
    code, text = run("indec", "--kupisch", "3,4,4,4")
    assert "15 indecomposables (nakayama)" in text


def test_hasse():
    code, text = run("hasse", "--kupisch", "3,4,4,4")
    assert code == 0 and text.startswith("digraph") and text.count("->") == 7
    code, text = run("hasse", "--kupisch", "3,4,4,4", "--json")
    assert len(json.loads(text)["nodes"]) == 6


def test_user_module_list(tmp_path):
    r = enumerate_indecomposables(fixtures.load("K2"))
    path = tmp_path / "mods.json"
    path.write_text(json.dumps([rep_to_json(m) for m in r.modules]))
    code, text = run("wtilt", "--kupisch", "2,2", "--modules", str(path), "--complete")
    assert code == 0 and text.startswith("1 Wakamatsu tilting modules")
    # without --complete enumeration is refused
    code, _ = run("wtilt", "--kupisch", "2,2", "--modules", str(path))
    assert code == 2
    path.write_text(json.dumps([rep_to_json(r.modules[0])] * 2))
    assert run("indec", "--kupisch", "2,2", "--modules", str(path))[0] == 3


def test_cyclic_kupisch_series():
    assert cli.cyclic_kupisch_series(2, 2) == [[2, 2]]
    got = cli.cyclic_kupisch_series(3, 3)
    assert [2, 2, 2] in got and [2, 3, 3] in got
    # rotations are collapsed
    assert [3, 2, 3] not in got and [3, 3, 2] not in got
    for c in got:
        assert all(c[(k + 1) % 3] >= c[k] - 1 for k in range(3))


def test_sweep_small():
    code, text = run("sweep", "--rank", "2", "--max-c", "2", "--jobs", "1")
    assert code == 0 and text.strip() == "1 series checked, 0 matches (non-poset)"
    code, text = run("sweep", "--rank", "3", "--max-c", "4", "--predicate", "all", "--jobs", "1", "--json")
    data = json.loads(text)
    assert data["checked"] == len(data["matches"]) == len(cli.cyclic_kupisch_series(3, 4))
    assert all(m["is_poset"] for m in data["matches"])


def test_sweep_parallel_matches_serial():
    serial = list(cli.sweep(3, 4, "all", jobs=1))
    assert list(cli.sweep(3, 4, "all", jobs=2)) == serial


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "wakatilt", "wtilt", "--kupisch", "2,2"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout.startswith("1 Wakamatsu tilting modules")
