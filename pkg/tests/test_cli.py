import io
import json
import subprocess
import sys

import jsonschema
import pytest

from wtop.cli import OUTPUT_SCHEMA, run_command


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, OUTPUT_SCHEMA)
    return code, doc


@pytest.fixture
def m3_file(data_dir):
    return data_dir / "m3.mon"


def test_omega(m3_file):
    code, doc = run_json("omega", m3_file)
    assert code == 0
    assert doc["result"]["ideals"] == [[], ["0"], ["0", "s"], ["1", "0", "s"]]
    assert doc["result"]["global_elements"] == [[], ["1", "0", "s"]]
    code, out, _ = run("omega", m3_file)
    assert "ideals: [{}, {0}, {0,s}, {1,0,s}]" in out


def test_ideals(m3_file):
    code, doc = run_json("ideals", m3_file)
    assert code == 0 and doc["result"]["center"] == ["1", "0", "s"]


def test_topology_table(m3_file):
    code, doc = run_json("topology", m3_file, "--ideal", "0,s", "--show-table")
    assert code == 0
    (t,) = doc["result"]["topologies"]
    assert [row["out"] for row in t["table"]] == [[], ["0", "s"], ["1", "0", "s"], ["1", "0", "s"]]
    assert t["productive"] and not t["idempotent"]
    _, out, _ = run("topology", m3_file, "--ideal", "0,s", "--show-table")
    assert "{0} -> {0,s}" in out and "idempotent: no" in out


def test_topology_flags_keep_order(m3_file):
    code, doc = run_json("topology", m3_file, "--not-not", "--ideal", "0,s", "--central", "s", "--identity", "--top")
    names = [t["name"] for t in doc["result"]["topologies"]]
    assert names == ["notnot", "j^{0,s}", "alpha_s", "id", "top"]
    code, doc = run_json("topology", m3_file, "--ideal", "0,s", "--ideal", "0,s", "--compose", "1,2", "--show-table")
    (t,) = doc["result"]["topologies"]
    assert t["idempotent"]
    assert [row["out"] for row in t["table"]] == [[], ["1", "0", "s"], ["1", "0", "s"], ["1", "0", "s"]]


def test_open_and_closed(m3_file):
    code, doc = run_json("topology", m3_file, "--open", "", "--closed", "")
    assert code == 0
    assert [t["idempotent"] for t in doc["result"]["topologies"]] == [True, True]
    code, _, err = run("topology", m3_file, "--open", "0")
    assert code == 2 and "error" in err


def test_closure(m3_file):
    code, doc = run_json("closure", m3_file, "--ideal", "0,s", "--subset", "0")
    r = doc["result"]
    assert code == 0 and r["closure"] == ["0", "s"] and r["dense"] is False and r["closed"] is False


def test_check_and_reflect(m3_file, data_dir):
    s_file = data_dir / "m3_s.mset"
    code, doc = run_json("check", m3_file, "--ideal", "0,s", "--mset", s_file)
    r = doc["result"]
    assert code == 0 and r["consistent"] and r["in_c_j"] and not r["separated"]
    code, doc = run_json("reflect", m3_file, "--ideal", "0,s", "--mset", s_file)
    r = doc["result"]
    assert code == 0 and r["in_c_j"]
    assert r["separated_reflection"]["object"]["carrier"] == ["[0,s]"]
    code, doc = run_json("reflect", m3_file, "--ideal", "0,s")
    r = doc["result"]
    assert len(r["delta_bar"]) == 5 and len(r["delta_bar_bar"]) == 9
    assert r["iterative"]["rounds"] == [3, 2, 1]


def test_sheafify(m3_file, data_dir):
    code, doc = run_json("sheafify", m3_file, "--ideal", "0,s", "--mset", data_dir / "m3_s.mset")
    assert code == 0 and doc["result"]["sheaf_size"] == 1


def test_lattice(m3_file, data_dir):
    code, doc = run_json("lattice", m3_file)
    assert code == 0 and doc["result"]["count"] == 4
    code, doc = run_json("lattice", m3_file, "--lt")
    assert doc["result"]["count"] == 3
    code, doc = run_json("lattice", data_dir / "trivial.mon")
    assert doc["result"]["count"] == 2


def test_laws():
    code, doc = run_json("laws", "--max-order", "3")
    assert code == 0 and not doc["result"]["failed"]
    assert len(doc["result"]["laws"]) == 14
    code, doc = run_json("laws", "--max-order", "2", "--only", "LAW-5.5-DIAG")
    assert [law["id"] for law in doc["result"]["laws"]] == ["LAW-5.5-DIAG"]


def test_text_and_json_agree(m3_file):
    _, out, _ = run("closure", m3_file, "--ideal", "0,s", "--subset", "0")
    _, doc = run_json("closure", m3_file, "--ideal", "0,s", "--subset", "0")
    assert "closure: {" + ",".join(doc["result"]["closure"]) + "}" in out
    assert "dense: no" in out


def test_deterministic(m3_file):
    a = run("lattice", m3_file, "--show-table")
    b = run("lattice", m3_file, "--show-table")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["omega", "missing.mon"],
        ["bogus"],
        ["topology", "{m3}", "--ideal", "q"],
        ["topology", "{m3}", "--ideal", "s"],
        ["topology", "{m3}", "--ideal", "0,s", "--compose", "1,3"],
        ["closure", "{m3}", "--ideal", "0,s", "--subset", "s"],
        ["sheafify", "{m3}", "--central", "s", "--mset", "{z2}"],
    ],
)
def test_usage_errors(argv, data_dir):
    argv = [a.replace("{m3}", str(data_dir / "m3.mon")).replace("{z2}", str(data_dir / "z2.mon")) for a in argv]
    code, _, _ = run(*argv)
    assert code == 2


def test_bad_file(tmp_path):
    p = tmp_path / "bad.mon"
    p.write_text("elements: 1 0\nidentity: 1\ntable:\n1 0\n0\n")
    code, _, err = run("omega", p)
    assert code == 2 and "line 5" in err


def test_guard_exit_code(m3_file, data_dir):
    code, _, err = run("sheafify", m3_file, "--ideal", "0,s", "--mset", data_dir / "m3_s.mset", "--guard-exp", "1")
    assert code == 3 and "guard" in err


def test_module_entry_point(m3_file):
    proc = subprocess.run([sys.executable, "-m", "wtop", "omega", str(m3_file)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("command: omega")
