import json

import pytest

from octkernel.cli import EXIT_CEILING, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, main
from octkernel.generators import random_instance
from octkernel.graph import Graph, cycle_graph
from octkernel.instances import OctInstance, parse_instance, write_instance
from octkernel.kernel import kernelize
from octkernel.solvers import solve_instance

TRIANGLE = "p oct 3 3\ne 0 1\ne 1 2\ne 0 2\nx 0\nl {}\n"


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_triangle(tmp_path, capsys):
    code, out, _ = _run(["solve", _write(tmp_path, "t1.oct", TRIANGLE.format(1))], capsys)
    assert code == EXIT_OK
    parts = out.split()
    assert parts[:2] == ["YES", "1"] and len(parts) == 3 and parts[2] in {"0", "1", "2"}
    code, out, _ = _run(["solve", _write(tmp_path, "t0.oct", TRIANGLE.format(0))], capsys)
    assert code == EXIT_OK and out == "NO\n"


def test_parse_error_exit_1(tmp_path, capsys):
    code, _, err = _run(["solve", _write(tmp_path, "bad.oct", "garbage\n")], capsys)
    assert code == EXIT_USAGE and "error" in err


def test_missing_file_and_bad_flags_exit_1(tmp_path, capsys):
    assert _run(["solve", str(tmp_path / "none.oct")], capsys)[0] == EXIT_USAGE
    assert _run(["kernelize", "-w", "0", _write(tmp_path, "t.oct", TRIANGLE.format(1))], capsys)[0] == EXIT_USAGE
    assert _run(["frobnicate"], capsys)[0] == EXIT_USAGE


def test_bad_seed_env_exit_1(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("OCTKERNEL_SEED", "abc")
    assert _run(["generate", "random", "-n", "5"], capsys)[0] == EXIT_USAGE


def test_missing_modulator_exit_2(tmp_path, capsys):
    path = _write(tmp_path, "nomod.oct", "p oct 3 3\ne 0 1\ne 1 2\ne 0 2\nl 1\n")
    code, out, err = _run(["kernelize", "-w", "1", path], capsys)
    assert code == EXIT_PRECONDITION and out == "" and "modulator" in err


def test_enumeration_ceiling_exit_3(tmp_path, capsys):
    inst = random_instance(5, 14, p=0.5, w=2, k=3, budget=2)
    path = _write(tmp_path, "big.oct", write_instance(inst))
    code, _, err = _run(["kernelize", "-w", "2", "--ceiling-enum", "1", path], capsys)
    assert code == EXIT_CEILING and "ceiling" in err


def test_kernelize_output_and_trace(tmp_path, capsys):
    inst = random_instance(3, 14, w=1, k=3, budget=2)
    src = _write(tmp_path, "in.oct", write_instance(inst))
    dst = tmp_path / "out.oct"
    code, _, err = _run(["kernelize", "-w", "1", src, "-o", str(dst), "--trace"], capsys)
    assert code == EXIT_OK
    kern = parse_instance(dst.read_text())
    assert (solve_instance(kern) is None) == (solve_instance(inst) is None)
    assert err.strip()
    # every trace line with a bound keeps non-negative slack
    assert kernelize(inst, 1).violations() == []


def test_kernelized_verdict_matches(tmp_path, capsys):
    for seed in range(12):
        inst = random_instance(seed, 12, w=1 + seed % 2, k=3, budget=seed % 3)
        src = _write(tmp_path, f"in{seed}.oct", write_instance(inst))
        dst = str(tmp_path / f"out{seed}.oct")
        assert main(["kernelize", "-w", str(1 + seed % 2), src, "-o", dst]) == EXIT_OK
        _, before, _ = _run(["solve", src], capsys)
        _, after, _ = _run(["solve", dst], capsys)
        assert before.split()[0] == after.split()[0]


def test_generate_random_deterministic(tmp_path, capsys):
    a = _run(["generate", "random", "--seed", "7", "-n", "12", "-w", "2"], capsys)[1]
    b = _run(["generate", "random", "--seed", "7", "-n", "12", "-w", "2"], capsys)[1]
    c = _run(["generate", "random", "--seed", "8", "-n", "12", "-w", "2"], capsys)[1]
    assert a == b and a != c
    assert write_instance(parse_instance(a)) == a


def test_generate_seed_from_env(capsys, monkeypatch):
    a = _run(["generate", "random", "--seed", "11", "-n", "9"], capsys)[1]
    monkeypatch.setenv("OCTKERNEL_SEED", "11")
    assert _run(["generate", "random", "-n", "9"], capsys)[1] == a


def test_generate_random_bad_params_exit_1(capsys):
    assert _run(["generate", "random", "-n", "0"], capsys)[0] == EXIT_USAGE
    assert _run(["generate", "random", "-n", "5", "-k", "9"], capsys)[0] == EXIT_USAGE


@pytest.mark.parametrize("kind", ["outerplanar", "cluster", "cocluster", "weighted-vc"])
def test_generate_composition_with_sidecar(tmp_path, capsys, kind):
    a = OctInstance(cycle_graph(6), frozenset(), 2)
    b = OctInstance(Graph(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]), frozenset(), 2)
    pa, pb = _write(tmp_path, "a.oct", write_instance(a)), _write(tmp_path, "b.oct", write_instance(b))
    out = tmp_path / f"{kind}.oct"
    code, _, _ = _run(["generate", kind, pa, pb, "-o", str(out)], capsys)
    assert code == EXIT_OK
    text = out.read_text()
    inst = parse_instance(text)
    assert write_instance(inst) == text
    side = json.loads((tmp_path / f"{kind}.oct.roles.json").read_text())
    assert side["t"] == 2 and side["parameter"] == len(inst.modulator) and side["budget"] == inst.budget


def test_generate_composition_rejects_mismatch(tmp_path, capsys):
    pa = _write(tmp_path, "a.oct", write_instance(OctInstance(cycle_graph(5), frozenset(), 1)))
    pb = _write(tmp_path, "b.oct", write_instance(OctInstance(cycle_graph(6), frozenset(), 1)))
    code, _, err = _run(["generate", "cluster", pa, pb], capsys)
    assert code == EXIT_USAGE and "R-equivalent" in err


def test_round_trip_of_every_output(tmp_path, capsys):
    for seed in range(20):
        text = _run(["generate", "random", "--seed", str(seed), "-n", "10", "--strategy", "computed"], capsys)[1]
        src = _write(tmp_path, f"r{seed}.oct", text)
        kern = _run(["kernelize", src], capsys)[1]
        assert write_instance(parse_instance(kern)) == kern


def test_verify_small(tmp_path, capsys):
    inst = random_instance(1, 10, w=1, k=2, budget=1)
    src = _write(tmp_path, "v.oct", write_instance(inst))
    report = tmp_path / "report.json"
    code, _, err = _run(["verify", src, "-o", str(report)], capsys)
    assert code == EXIT_OK
    data = json.loads(report.read_text())
    assert data["passed"] and data["schema"] == 1
    assert all(line.startswith("PASS") for line in err.splitlines())
