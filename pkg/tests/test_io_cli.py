import json
import subprocess
import sys

import numpy as np
import pytest

from branchpoly import io
from branchpoly.cli import main
from branchpoly.exceptions import DomainError, StructureError
from branchpoly.geometry import RootedTree, WeightedGraph
from branchpoly.sampler2d import Polymer2D, sample_gpolymer, sample_polymer_2d
from branchpoly.sampler3d import sample_polymer_3d


def test_json_round_trip_2d():
    p = sample_polymer_2d(6, [1, 2, 0.5, 1, 1, 3], rng=1)
    q = io.loads(io.dumps(p))
    assert np.array_equal(p.positions, q.positions)
    assert q.tree.parent == p.tree.parent and q.radii == p.radii and q.seed == 1


def test_json_round_trip_gpolymer_and_3d():
    g = WeightedGraph((1, 2, 3, 4), {(1, 2): 1.0, (2, 3): 0.5, (3, 4): 2.0, (1, 4): 1.5})
    p = sample_gpolymer(g, rng=2)
    q = io.loads(io.dumps(p))
    assert q.graph.lengths == g.lengths and q.tangency_edges == p.tangency_edges
    r = sample_polymer_3d(5, rng=3, beta=2.0)
    s = io.loads(io.dumps(r))
    assert np.array_equal(r.positions, s.positions)
    assert s.beta == r.beta and s.root == r.root


def test_malformed_record():
    with pytest.raises(StructureError):
        io.loads('{"kind": "polymer2d", "positions": [[0, 0]]}')


def test_csv():
    p = sample_polymer_2d(3, rng=4)
    rows = io.to_csv(p).strip().splitlines()
    assert rows[0] == "label,x,y,radius,parent"
    assert len(rows) == 4
    assert io.to_csv(sample_polymer_3d(2, rng=4)).splitlines()[0] == "label,x,y,z,parent"


def test_svg_counts():
    one = sample_polymer_2d(1, rng=0)
    assert io.svg_counts(io.render_svg(one)) == {"circle": 1, "line": 0, "panel": 1}
    three = sample_polymer_2d(3, rng=0)
    assert io.svg_counts(io.render_svg(three)) == {"circle": 3, "line": 2, "panel": 1}
    ten = sample_polymer_3d(10, rng=0)
    c = io.svg_counts(io.render_svg(ten))
    assert c["panel"] == 2 and c["circle"] == 20 and c["line"] == 9


def test_graph_file_parsing():
    g = io.parse_graph_file("# square\n1 2\n2 3 0.5\n3 4 1 2.0\n1 4  # closing edge\n")
    assert g.vertices == (1, 2, 3, 4)
    assert g.length(2, 3) == 0.5 and g.beta_of(3, 4) == 2.0
    for bad in ("", "1\n", "1 2\n2 1\n", "1 x\n", "1 1\n"):
        with pytest.raises(StructureError):
            io.parse_graph_file(bad)


def test_graph_families():
    assert io.parse_graph_spec("Kn:4").m == 6
    assert io.parse_graph_spec("Cn:5").m == 5
    assert io.parse_graph_spec("Pn:3").m == 2
    assert io.parse_graph_spec("Kmn:2,3").m == 6
    for bad in ("K4", "Kmn:3", "Cn:3,4"):
        with pytest.raises(StructureError):
            io.parse_graph_spec(bad)


def test_check_polymer_detects_overlap():
    p = Polymer2D((1, 2), np.array([[0.0, 0.0], [1.5, 0.0]]), RootedTree(1, {2: 1}), (1.0, 1.0))
    with pytest.raises(DomainError):
        io.check_polymer(p)


# -- command line ------------------------------------------------------------


@pytest.mark.parametrize("spec, value", [("Kn:5", "24"), ("Kn:4", "6"), ("Cn:4", "3")])
def test_cli_mu(capsys, spec, value):
    assert main(["mu", spec, "--check"]) == 0
    assert capsys.readouterr().out.strip() == value


def test_cli_mu_from_file(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("1 2\n2 3\n3 1\n")
    assert main(["mu", str(f)]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_cli_sample_is_deterministic(tmp_path, capsys):
    out = tmp_path / "a.json"
    assert main(["sample2d", "--n", "8", "--seed", "5", "--out", str(out), "--svg", "--csv"]) == 0
    assert "seed: 5" in capsys.readouterr().err
    assert (tmp_path / "a.svg").exists() and (tmp_path / "a.csv").exists()
    assert main(["sample2d", "--n", "8", "--seed", "5"]) == 0
    assert json.loads(capsys.readouterr().out) == json.loads(out.read_text())


def test_cli_sample3d_and_graph(capsys):
    assert main(["sample3d", "--n", "4", "--seed", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "polymer3d"
    assert main(["sample2d", "--graph", "Cn:5", "--seed", "1"]) == 0
    assert len(json.loads(capsys.readouterr().out)["graph"]) == 5


def test_cli_errors(capsys):
    assert main(["sample2d", "--n", "3", "--radii", "1,-1,1", "--seed", "0"]) == 2
    assert main(["mu", "Xn:3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_verify_exit_codes(capsys):
    assert main(["verify", "walk", "--n", "3", "--trials", "20000", "--seed", "1"]) == 0
    assert capsys.readouterr().out.startswith("PASS")
    # a label-increasing share below 99% makes the check fail
    assert main(["verify", "limit", "--n", "3", "--eps", "0.5", "--quick"]) == 1
    assert main(["verify", "accept2d", "--n", "3", "--trials", "20000", "--json"]) == 0
    line = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert line["passed"] is True


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "branchpoly", "mu", "Cn:6"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "5"
