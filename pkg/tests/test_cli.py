import io
import json
import subprocess
import sys

import pytest

from cli_cases import all_commands, write_inputs
from hyperexp import generators as gen
from hyperexp.cli import run
from hyperexp.graph import load_graph


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def paths(tmp_path):
    return write_inputs(tmp_path)


def test_every_command_succeeds_and_repeats_identically(paths):
    for argv in all_commands(paths):
        first = _run(argv)
        assert first[0] == 0, (argv, first[2])
        assert _run(argv) == first


def test_json_reports_parse(paths):
    for argv in all_commands(paths):
        if argv[0] == "gen" or "table" in argv:
            continue
        report = json.loads(_run(argv)[1])
        assert report["command"] == argv[0]


def test_gen_round_trip():
    code, text, _ = _run(["gen", "grid", "3", "4"])
    assert code == 0
    g = load_graph(text)
    assert set(g.edges) == set(gen.grid(3, 4).edges)


def test_reports_use_file_labels(tmp_path):
    f = tmp_path / "lab.txt"
    f.write_text("10 20\n20 30\n30 40\n")
    report = json.loads(_run(["ehssc", "--graph", str(f), "--s", "10", "--t", "40", "--k", "1"])[1])
    assert report["hit_edges"] == [[10, 20], [20, 30], [30, 40]]
    code, _, err = _run(["ehssc", "--graph", str(f), "--s", "1", "--t", "40", "--k", "1"])
    assert code == 2 and "--s 1" in err


def test_known_report_values(paths):
    delta = json.loads(_run(["delta", "--graph", paths["c8"]])[1])
    assert delta["delta"] == "2" and delta["exact"] is True
    cuts = json.loads(_run(["cuts", "--graph", paths["p200"], "--s", "0", "--t", "199"])[1])
    assert len(cuts["cuts"]) == 6 and cuts["certified"] is True
    uumv = json.loads(_run(["uumv", "--graph", paths["trap"], "--s", "0", "--t", "21",
                            "--r", "1", "--kappa", "2"])[1])
    assert uumv["shared"] == 0


@pytest.mark.parametrize("argv, code", [
    (["cuts", "--graph", "missing-file.txt", "--s", "0", "--t", "1"], 1),
    (["frobnicate"], 64),
    (["ehssc", "--graph", "x"], 64),
    (["gen", "path", "1"], 2),
    (["gen", "erdos-renyi", "10", "0.3"], 2),
])
def test_exit_codes(argv, code):
    assert _run(argv)[0] == code


def test_domain_error_exit(paths):
    code, _, err = _run(["cuts", "--graph", paths["p20"], "--s", "0", "--t", "19"])
    assert code == 2 and "precondition" in err
    code, _, _ = _run(["sse", "--graph", paths["p20"], "--epsilon", "1/2", "--zeta", "1/3"])
    assert code == 2


def test_oracle_missing_arguments(paths):
    assert _run(["oracle", "ehssc", "--graph", paths["c8"], "--s", "0"])[0] == 64


def test_bad_edge_list(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("0 1\n1 banana\n")
    assert _run(["delta", "--graph", str(f)])[0] in (1, 2)


def test_seed_is_echoed(paths):
    report = json.loads(_run(["delta", "--graph", paths["c8"], "--seed", "5"])[1])
    assert report["seed"] == 5


def test_module_entry_point(paths):
    proc = subprocess.run([sys.executable, "-m", "hyperexp.cli", "delta", "--graph", paths["c8"]],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["delta"] == "2"
