from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from quons.cli import cli_main
from quons.graphs import tetrahedron_graph
from quons.io import mtc_to_file, serialize_map, serialize_mtc
from quons.mtc import ising


def run(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    code = cli_main(list(argv), buf)
    return code, buf.getvalue()


def test_verify_fibonacci():
    code, out = run("verify", "fibonacci")
    assert code == 0
    for check in ("S-unitary", "verlinde-recovery", "d-equals-delta-S", "pentagon"):
        assert check in out


def test_selfdual_ising_tetrahedron():
    code, out = run("selfdual", "ising", "--graph", "tetrahedron")
    assert code == 0
    line = next(x for x in out.splitlines() if x.startswith("max residual"))
    assert float(line.split("=")[1]) < 1e-8


def test_verlinde_table():
    code, out = run("verlinde", "fibonacci", "--n", "2", "--g", "1")
    assert code == 0
    rows = [x for x in out.splitlines() if x.startswith("dim(")]
    assert len(rows) == 4
    for row in rows:
        dim = int(row.split(") = ")[1].split()[0])
        s_sum = float(row.split("S-sum =")[1])
        assert abs(dim - s_sum) < 1e-6


@pytest.mark.parametrize("argv", [["subcategories", "ising"], ["ghz-max", "semion"],
                                  ["genfun", "fibonacci", "--n", "2"], ["selfdual", "fibonacci", "--graph", "wheel:3"],
                                  ["selfdual", "fibonacci", "--graph", "cycle:3", "--threads", "2"]])
def test_commands_pass(argv):
    assert run(*argv)[0] == 0


def test_json_lines():
    code, out = run("verify", "ising", "--format", "json-lines", "--seed", "3")
    assert code == 0
    recs = [json.loads(x) for x in out.splitlines()]
    checks = [r for r in recs if r["record"] == "check"]
    assert checks and all(r["passed"] for r in checks)
    for key in ("check_id", "category", "parameters", "max_error", "sampled", "version", "seed", "tol",
                "fingerprint"):
        assert key in checks[0]
    assert {r["seed"] for r in recs} == {3}
    ids = [r["check_id"] for r in checks]
    assert ids == sorted(ids)


def test_json_lines_independent_of_threads():
    one = run("selfdual", "fibonacci", "--graph", "tetrahedron", "--format", "json-lines")[1]
    four = run("selfdual", "fibonacci", "--graph", "tetrahedron", "--format", "json-lines", "--threads", "4")[1]
    assert one == four


def test_sampled_is_flagged():
    code, out = run("selfdual", "su2_3", "--graph", "wheel:5", "--samples", "20")
    assert code == 0
    assert "SAMPLED" in out


@pytest.mark.parametrize("argv", [["verify", "nonsense"], ["bogus"], ["verify"], ["genfun", "ising"],
                                  ["verlinde", "ising", "--n", "-1"], ["selfdual", "ising", "--graph", "moebius"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_failing_file_exits_1(tmp_path):
    f = mtc_to_file(ising())
    row = list(f.S["sigma"])
    row[1] = 0.1
    f.S["sigma"] = tuple(row)
    path = tmp_path / "bad.mtc"
    path.write_text(serialize_mtc(f))
    assert run("verify", str(path))[0] == 1


def test_malformed_file_exits_2(tmp_path):
    path = tmp_path / "bad.mtc"
    path.write_text("mtc x\nN a b c 1\n")
    assert run("verify", str(path))[0] == 2


def test_dual_graph(tmp_path):
    path = tmp_path / "tet.map"
    path.write_text(serialize_map(tetrahedron_graph()))
    code, out = run("dual-graph", str(path))
    assert code == 0
    assert sum(1 for x in out.splitlines() if x.startswith("vertex")) == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quons", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "quons" in proc.stdout
