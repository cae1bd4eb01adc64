import json
import subprocess
import sys

import pytest

from nwsparse import Instance, Property, WeightedGraph, feedback_edge_parameter
from nwsparse.cli import auto_select, main
from nwsparse.formats import format_instance, parse_instance

TREE = "p nws 3 2 2\ne 1 2 3\ne 2 3 1/2\ns 2 1 2\ns 2 2 3\nl 2\n"
K4_CONN = "p nws 4 6 1\n" + "".join(f"e {u} {v}\n" for u, v in
                                    [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]) + "s 4 1 2 3 4\nl 4\n"
TRIANGLE_STARS = "p nws 3 3 1\nw stars\ne 1 2\ne 2 3\ne 1 3\ns 3 1 2 3\nl 1\n"


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return put


def test_solve_tree_support(files, capsys):
    code = main(["solve", files("t.nws", TREE), "--algo", "tree-support"])
    assert code == 0
    assert capsys.readouterr().out == "SOLUTION 2 3.5\ne 1 2\ne 2 3\ncert 1 connected\ncert 2 connected\n"


def test_solve_exit_codes(files, capsys):
    assert main(["solve", files("k4.nws", K4_CONN), "--algo", "tree-support"]) == 3
    assert "inapplicable" in capsys.readouterr().err
    assert main(["solve", files("tri.nws", TRIANGLE_STARS)]) == 1
    assert capsys.readouterr().out == "NO\n"
    assert main(["solve", files("bad.nws", "p nws 2 1 0\ne 1 2 0\n")]) == 2
    assert main(["solve", files("k4b.nws", K4_CONN), "--algo", "magic"]) == 2
    assert main(["solve", str(files("x", "")) + ".missing"]) == 2


def test_timeout_exit_code(files):
    big = Instance(WeightedGraph.complete(9), (frozenset(range(9)),), Property.CONNECTIVITY, 9)
    path = files("big.nws", format_instance(big))
    assert main(["solve", path, "--algo", "branch-ell", "--timeout", "0"]) == 4


def test_solve_then_verify_round_trip(files, tmp_path, capsys):
    inst_path = files("k4.nws", K4_CONN)
    sol_path = str(tmp_path / "k4.sol")
    assert main(["solve", inst_path, "--mode", "optimize", "-o", sol_path]) == 0
    assert main(["verify", inst_path, sol_path]) == 0
    assert capsys.readouterr().out == "VALID 3 3\n"


def test_verify_rejects_tampered_solution(files, capsys):
    inst_path = files("k4.nws", K4_CONN)
    bad = files("bad.sol", "SOLUTION 2 2\ne 1 2\ne 3 4\ncert 1 center 1\n")
    assert main(["verify", inst_path, bad]) == 1
    out = capsys.readouterr().out
    assert out.startswith("INVALID") and "community 0 is not connected" in out
    assert "vertex 1 is not a center" in out


def test_generate_writes_sidecar(files, tmp_path):
    cnf = files("f.cnf", "p cnf 1 1\n1 1 1 0\n")
    out = str(tmp_path / "sat.nws")
    assert main(["generate", "--kind", "3sat-stars", "--dimacs-cnf", cnf, "-o", out]) == 0
    inst = parse_instance(open(out).read())
    assert inst.n == 7 and inst.ell == 18
    meta = json.load(open(out + ".meta.json"))
    assert meta["kind"] == "3sat-stars" and set(meta["theta"]) == {"1", "-1"}


def test_generate_other_kinds(files, tmp_path, capsys):
    graph = files("c4.gr", "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n")
    assert main(["generate", "--kind", "hamcycle", "--graph", graph]) == 0
    assert parse_instance(capsys.readouterr().out).c == 4
    assert main(["generate", "--kind", "mcc", "--graph", graph, "--colors", "1,3;2,4", "--padding", "12"]) == 0
    assert parse_instance(capsys.readouterr().out).n == 28
    assert main(["generate", "--kind", "hitting-set", "--universe", "2", "--sets", "1;2", "--k", "2"]) == 0
    assert parse_instance(capsys.readouterr().out).ell == 20
    assert main(["generate", "--kind", "random", "--seed", "3", "--n", "5"]) == 0
    captured = capsys.readouterr()
    assert "seed=3" in captured.err and captured.out.startswith("c generated")
    assert main(["generate", "--kind", "3sat-conn"]) == 2


def test_bench_is_reproducible(files, tmp_path):
    paths = [files("tree.nws", TREE), files("k4.nws", K4_CONN)]
    outs = []
    for k in range(2):
        out = str(tmp_path / f"b{k}.csv")
        args = ["bench", *paths, "--algo", "oracle,tree-support", "--random", "3", "--seed", "9",
                "--no-timing", "-o", out]
        assert main(args) == 0
        outs.append(open(out, "rb").read())
    assert outs[0] == outs[1]
    lines = outs[0].decode().splitlines()
    assert lines[0] == "instance,algo,answer,edges,weight,millis"
    assert lines[1] == "tree.nws,oracle,yes,2,3.5,0"
    assert "k4.nws,tree-support,inapplicable,,,0" in lines
    assert len(lines) == 1 + 5 * 2


def test_bench_jobs_match_serial(files, tmp_path):
    base = ["bench", files("k4.nws", K4_CONN), "--algo", "oracle,branch-ell", "--random", "4", "--no-timing"]
    serial, parallel = str(tmp_path / "s.csv"), str(tmp_path / "p.csv")
    assert main(base + ["-o", serial]) == 0
    assert main(base + ["--jobs", "2", "-o", parallel]) == 0
    assert open(serial).read() == open(parallel).read()


def test_auto_select_examples():
    path = WeightedGraph.from_edges(3, [(0, 1), (1, 2)])
    tree = Instance(path, (frozenset({0, 1, 2}),), Property.CONNECTIVITY, 2)
    assert auto_select(tree)[0] == "tree-support"

    n = 30
    edges = [(0, v) for v in range(1, n)] + [(1, 2)]
    hub = WeightedGraph.from_edges(n, edges)
    comms = tuple(frozenset({0, v, v + 1}) for v in range(1, 21))
    stars = Instance(hub, comms, Property.STARS, 22)
    assert stars.c == 20 and feedback_edge_parameter(stars) == 1
    assert auto_select(stars)[0] == "stars-xp"

    k6 = WeightedGraph.complete(6)
    unit = Instance(k6, (frozenset(range(6)), frozenset({0, 1}), frozenset({2, 3})), Property.STARS, 15)
    assert auto_select(unit) == ("stars-fpt-c", "unit weights and c = 3")


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "nwsparse", "solve", files("t.nws", TREE)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("SOLUTION 2")
