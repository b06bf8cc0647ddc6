import json

from hypmult.cli import main
from hypmult.itree import dump_forest, p4_example


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mult(capsys):
    code, out, _ = run(capsys, "mult", "--field", "7", "--n", "2", "--poly", "T1^2*T2 - T0^3", "--point", "0:0:1")
    assert code == 0 and "mu = 2" in out


def test_hilbert_samuel_and_grassmann(capsys):
    assert run(capsys, "hilbert-samuel", "4", "3", "1")[1].strip() == "4"
    assert run(capsys, "hilbert-samuel", "2", "2", "2")[1].strip() == "2"
    assert run(capsys, "grassmann", "2", "4", "2")[1].strip() == "35"


def test_singdim_and_reduced(capsys):
    code, out, _ = run(capsys, "singdim", "--field", "5", "--n", "3", "--poly", "T0*T1")
    assert code == 0 and "s = 1" in out
    code, out, _ = run(capsys, "reduced", "--field", "2", "--n", "2", "--poly", "T0^2 + T1^2")
    assert code == 0 and "reduced = false" in out


def test_verify_bound(capsys, tmp_path):
    poly = tmp_path / "f.poly"
    poly.write_text("T1^3 - T1*T2^2\n")
    code, out, _ = run(capsys, "verify-bound", "--field", "5", "--n", "3", "--poly", str(poly), "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["lhs"] == "36" and data["rhs"] == "48"


def test_cylinder_fulton_bezout(capsys):
    assert run(capsys, "cylinder", "--field", "3", "--n", "4", "--delta", "3")[0] == 0
    code, out, _ = run(capsys, "fulton", "--field", "7", "--poly", "T1^2*T2 - T0^3", "--closed-points")
    assert code == 0 and "sum over closed points = 2" in out
    code, out, _ = run(capsys, "bezout", "--field", "5", "--poly1", "T0*T2 - T1^2", "--poly2", "T0")
    assert code == 0 and "sum i*deg = 2" in out


def test_corpus(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "--field", "3", "--n", "2", "--delta", "3", "--count", "4", "--seed", "1",
                       "--out", str(tmp_path))
    assert code == 0 and len(list(tmp_path.glob("member_*.poly"))) == 4
    assert json.loads((tmp_path / "corpus.json").read_text())["seed"] == "1"


def test_tree(capsys, tmp_path):
    path = tmp_path / "t.json"
    dump_forest(p4_example(), path)
    assert run(capsys, "tree", "validate", str(path))[0] == 0
    code, out, _ = run(capsys, "tree", "descendant-weight", str(path), "--target", "Y121")
    assert code == 0 and "lhs = 3" in out
    assert run(capsys, "tree", "descendant-weight", str(path), "--target", "Y121", "--mu-product", "4")[0] == 1
    assert run(capsys, "tree", "descendant-weight", str(path), "--target", "nope")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "mult", "--field", "6", "--n", "2", "--poly", "T0", "--point", "1:0:0")[0] == 2
    code, _, err = run(capsys, "mult", "--field", "5", "--n", "2", "--poly", "T0 +* T1", "--point", "1:0:0")
    assert code == 2 and "error" in err
    assert run(capsys, "mult", "--field", "5", "--n", "2", "--poly", "T0", "--point", "1:0:0")[0] == 2
    assert run(capsys, "verify-bound", "--field", "3", "--n", "2", "--poly", "T0^2*T1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "cylinder", "--field", "2", "--n", "3", "--delta", "4")[0] == 2
    assert run(capsys, "tree", "validate", "/nonexistent.json")[0] == 2
