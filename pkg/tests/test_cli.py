import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from atreason.cli import EXIT_ERROR, EXIT_NO, EXIT_UNDEFINED, EXIT_YES, main

from conftest import data


def schema(name):
    return json.loads((resources.files("atreason") / "schemas" / f"{name}.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, command, *argv):
    code, out, err = run(capsys, command, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, schema(command))
    return code, payload


def test_check(capsys):
    assert run(capsys, "check", "switch_power.atd")[:2] == (EXIT_YES, "Switch-Power: ok\n")
    code, payload = run_json(capsys, "check", "nested.plp")
    assert code == EXIT_ERROR and not payload["ok"]
    assert "P(f(f(0)))" in payload["diagnostics"][0]


def test_check_illegal_domain(capsys, tmp_path):
    f = tmp_path / "bad.atd"
    f.write_text("domain X\nlevel AT0\nfluents F\nactions A\nF is observed after A\n")
    code, payload = run_json(capsys, "check", str(f))
    assert code == EXIT_ERROR and "not allowed in AT0" in payload["diagnostics"][0]


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "switch_power.atd")
    assert code == EXIT_YES
    assert "N4: Caused+(On,s) <- Holds(Switch,s), not -Holds(On,s)." in out
    assert "% schema map" in out
    code, payload = run_json(capsys, "translate", "switch_power.atd")
    assert payload["schema_map"]["e1"] == ["N6"]
    code, payload = run_json(capsys, "translate", "switch_power.atd", "--ground", "--depth", "1")
    assert payload["depth"] == 1 and "Result(Cut-Power,S0)" in payload["program"]


def test_solve_plp(capsys):
    code, out, _ = run(capsys, "solve", "p2.plp")
    assert code == EXIT_YES
    assert "answer set 1: {A, B, D}" in out and "answer set 2: {A, C, D}" in out
    assert out.count("reduct ") == 2
    code, payload = run_json(capsys, "solve", "p3.plp")
    assert payload["answer_sets"] == [["B", "C"]]
    code, payload = run_json(capsys, "solve", "tweety.plp")
    assert payload["answer_sets"] == [["-Fly(Tweety)", "Bird(Tweety)", "Penguin(Tweety)"]]


def test_solve_domain(capsys):
    code, payload = run_json(capsys, "solve", "switch_power.atd", "--depth", "1")
    assert code == EXIT_YES and len(payload["answer_sets"]) == 1
    assert "-Holds(On,Result(Cut-Power,S0))" in payload["answer_sets"][0]


def test_solve_no_answer_set(capsys, tmp_path):
    f = tmp_path / "odd.plp"
    f.write_text("N1: A <- not A.\n")
    code, out, _ = run(capsys, "solve", str(f))
    assert code == EXIT_UNDEFINED and "no answer set" in out


def test_ask(capsys):
    assert run(capsys, "ask", "switch_power.atd", "-On after Cut-Power")[:2] == (EXIT_YES, "true\n")
    assert run(capsys, "ask", "switch_power.atd", "On after Cut-Power")[:2] == (EXIT_NO, "false\n")
    code, out, _ = run(capsys, "ask", "shooting3.atd", "Fly after Shoot")
    assert code == EXIT_NO and out == "false (unknown)\n"
    code, payload = run_json(capsys, "ask", "switch_power2.atd", "-On after Turn-On, Cut-Power")
    assert payload == {"query": "-On after Turn-On, Cut-Power", "entailed": True, "value": "true",
                       "models": 1, "depth": 2}


def test_ask_several(capsys):
    code, out, _ = run(capsys, "ask", "switch_power.atd", "-Power after Cut-Power", "initially On")
    assert code == EXIT_YES
    assert out == "-Power after Cut-Power: true\ninitially On: true\n"
    code, payload = run_json(capsys, "ask", "switch_power.atd", "-Power after Cut-Power", "On after Cut-Power")
    assert code == EXIT_NO and [x["value"] for x in payload] == ["true", "false"]


def test_ask_jobs_deterministic(capsys):
    qs = ["-Power after Cut-Power", "On after Cut-Power", "initially Switch"]
    _, seq = run_json(capsys, "ask", "switch_power.atd", *qs)
    _, par = run_json(capsys, "ask", "switch_power.atd", *qs, "--jobs", "2")
    assert seq == par


def test_ask_undefined(capsys, tmp_path):
    f = tmp_path / "bad.atd"
    f.write_text("domain X\nfluents F\nactions A\ninitially F\ninitially -F\n")
    code, _, err = run(capsys, "ask", str(f), "initially F")
    assert code == EXIT_UNDEFINED and "undefined" in err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "shooting3.atd")
    assert code == EXIT_YES
    assert "temporal definiteness (depth 1): indefinite" in out
    code, payload = run_json(capsys, "analyze", "switch_power.atd")
    assert payload["normal"]["holds"] is False
    code, payload = run_json(capsys, "analyze", "door.atd")
    assert payload["o_monotonic"] is None


@pytest.mark.parametrize("argv", [
    ["check", "missing.atd"],
    ["ask", "switch_power.atd", "Light after Cut-Power"],
    ["ask", "switch_power.atd", "-On after"],
    ["solve", "switch_power.atd", "--depth", "-1"],
    ["frobnicate"],
])
def test_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_ERROR


def test_parse_error_message(capsys, tmp_path):
    f = tmp_path / "bad.atd"
    f.write_text("domain X\nfluents F\nactions A\nF is frobbed\n")
    code, _, err = run(capsys, "check", str(f))
    assert code == EXIT_ERROR and err.startswith("error: 4:")


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "atreason", "ask", str(data("switch_power.atd")),
                        "Switch after Cut-Power"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "true\n"


def test_ground_dump_size(capsys):
    # 3 initial, 2 + 2 causal, 1 effect, 4 * 6 Holds schemas, 2 * 3 inertia
    _, payload = run_json(capsys, "translate", "switch_power.atd", "--ground", "--depth", "1")
    assert payload["rules"] == 38


def test_translate_empty_domain(capsys, tmp_path):
    f = tmp_path / "empty.atd"
    f.write_text("domain E\nfluents F\nactions A\n")
    _, payload = run_json(capsys, "translate", str(f))
    assert payload["independent_rules"] == ["N1", "N2", "N3", "N4", "N5", "N6"]
    assert payload["schema_map"] == {}
