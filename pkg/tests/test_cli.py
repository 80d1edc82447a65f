import csv
import io
import subprocess
import sys

import numpy as np

from sbsim.cli import CSV_HEADER, main, parse_sizes
from sbsim.instances import parse_instance
from sbsim.oracles import bfs_leaf_parity


def gen(tmp_path, name, *args):
    path = tmp_path / name
    assert main(["gen", *args, "--out", str(path)]) == 0
    return path


def node_outputs(text):
    return {int(line.split()[1]): line.split()[2] for line in text.splitlines() if line.startswith("node ")}


def test_gen_yes_path(tmp_path):
    path = gen(tmp_path, "y.txt", "yes-path", "--i", "2")
    assert parse_instance(path.read_text()).n == 33


def test_gen_gadget_pipeline():
    cmd = [sys.executable, "-m", "sbsim"]
    tree = subprocess.run(
        cmd + ["gen", "pseudotree", "--shape", "balanced", "--nodes", "7", "--seed", "1"],
        capture_output=True, text=True, check=True,
    )
    gadget = subprocess.run(cmd + ["gen", "gadget"], input=tree.stdout, capture_output=True, text=True, check=True)
    assert parse_instance(gadget.stdout).n == 37


def test_gen_cycle_not_orientable(capsys):
    assert main(["gen", "cycle", "--word", "_0_1", "--consistent"]) == 2
    assert "LengthNotOrientable" in capsys.readouterr().err


def test_run_yes_and_no(tmp_path, capsys):
    yes = gen(tmp_path, "y.txt", "yes-path", "--i", "3")
    assert main(["run", str(yes), "--algorithm", "thue-morse"]) == 0
    out = capsys.readouterr().out
    assert set(node_outputs(out).values()) == {"yes"}
    no = gen(tmp_path, "n.txt", "no-path", "--word", "_0_1_1_0_1_0_0_1_1_0_1_0_0_1_")
    assert main(["run", str(no)]) == 1


def test_run_leaf_parity(tmp_path, capsys):
    tree = gen(tmp_path, "t.txt", "pseudotree", "--shape", "random", "--nodes", "21", "--seed", "4")
    inst_path = tmp_path / "g.txt"
    assert main(["gen", "gadget", "--input", str(tree), "--out", str(inst_path)]) == 0
    capsys.readouterr()
    assert main(["run", str(inst_path), "--algorithm", "leaf-parity"]) == 0
    outputs = node_outputs(capsys.readouterr().out)
    parity = bfs_leaf_parity(parse_instance(inst_path.read_text()).graph)
    assert outputs == {v: str(p) for v, p in parity.items()}


def test_run_trace(tmp_path, capsys):
    path = gen(tmp_path, "y.txt", "yes-path", "--i", "0")
    assert main(["run", str(path), "--trace"]) == 0
    out = capsys.readouterr().out
    assert out.count("round ") == 6


def test_run_non_halting(tmp_path, capsys):
    path = tmp_path / "c.txt"
    # leafless graph on which the leaf-parity verifier never aborts
    from test_leafparity import leafless_mixed_orientation_graph

    from sbsim.instances import Instance, serialize_instance

    path.write_text(serialize_instance(Instance(leafless_mixed_orientation_graph())))
    assert main(["run", str(path), "--max-rounds", "50"]) == 3
    assert "NonHalting" in capsys.readouterr().err


def test_verify(tmp_path, capsys):
    assert main(["verify", "--random", "150", "--seed", "9"]) == 0
    assert main(["verify", "--random", "30", "--seed", "2", "--algorithm", "leaf-parity"]) == 0
    assert "pass 30/30" in capsys.readouterr().out
    path = gen(tmp_path, "y.txt", "yes-path", "--i", "1")
    assert main(["verify", str(path)]) == 0


def test_verify_corrupted_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("sbsim-instance v1\nn 3\ne 0 1\ne 1 2\ni 0 A _\ni 1 B 7\ni 2 C _\n")
    assert main(["verify", str(path)]) == 2
    assert "ParseError" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.txt")]) == 2


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bench_yes_path(capsys):
    assert main(["bench", "yes-path", "--sizes", "0..4", "--no-timing"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    rows = read_csv(text)
    assert [int(r["n"]) for r in rows] == [3, 9, 33, 129, 513]
    for r in rows:
        assert r["decision"] == "yes" and int(r["rounds"]) <= 16 * int(r["n"])
        assert int(r["space_bits"]) == int(np.ceil(np.log2(int(r["distinct_states"]))))
        assert r["wall_ms"] == "0"


def test_bench_is_deterministic(capsys):
    main(["bench", "random-gadget", "--sizes", "31,63", "--seed", "5", "--no-timing"])
    first = capsys.readouterr().out
    main(["bench", "random-gadget", "--sizes", "31,63", "--seed", "5", "--no-timing"])
    assert capsys.readouterr().out == first


def test_bench_balanced_gadget_log_fit(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "balanced-gadget", "--sizes", "2..8", "--out", str(out)]) == 0
    rows = read_csv(out.read_text())
    logn = np.log2([int(r["n"]) for r in rows])
    rounds = np.array([int(r["rounds"]) for r in rows])
    fit = np.polyval(np.polyfit(logn, rounds, 1), logn)
    assert np.max(np.abs(fit - rounds)) < 1
    assert {r["decision"] for r in rows} == {"ok"}


def test_bench_edge_cases(capsys):
    assert main(["bench", "yes-path", "--sizes", ""]) == 0
    assert capsys.readouterr().out == ",".join(CSV_HEADER) + "\n"
    assert main(["bench", "random-gadget", "--sizes", "4"]) == 2
    assert main(["bench", "balanced-gadget", "--sizes", "1"]) == 2


def test_parse_sizes():
    assert parse_sizes("2..4,7") == [2, 3, 4, 7]
    assert parse_sizes(" ") == []
