import csv
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from ietgroups.cli import main
from ietgroups.iet import Iet, compose
from ietgroups.relation import Certificate
from ietgroups.scalar import A

from conftest import fig2, rot


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    return {
        "rot13": write(tmp_path / "rot13.json", rot(F(1, 3)).to_json()),
        "rot15": write(tmp_path / "rot15.json", {"lengths": ["4/5", "1/5"], "perm": [2, 1]}),
        "fig2": write(tmp_path / "fig2.json", fig2().to_json()),
        "cubic": write(tmp_path / "cubic.json", Iet([A, 1 - A], [2, 1]).to_json()),
        "bad": write(tmp_path / "bad.json", {"lengths": ["1/2"], "perm": [1]}),
        "junk": str(tmp_path / "junk.json"),
        "dir": tmp_path,
    }


def test_iet_commands(capsys, files):
    code, out, _ = run(capsys, "iet", "compose", files["rot13"], files["fig2"])
    assert code == 0
    assert Iet.from_json(json.loads(out)) == compose(rot(F(1, 3)), fig2())

    code, out, _ = run(capsys, "iet", "eval", files["rot13"], "1/2")
    assert json.loads(out)["image"] == {"Q": "5/6"}

    code, out, _ = run(capsys, "iet", "power", files["rot15"], "5")
    assert Iet.from_json(json.loads(out)).is_identity()

    code, out, _ = run(capsys, "iet", "info", files["fig2"], "--decimal")
    info = json.loads(out)
    assert info["support"] == [[{"Q": "0", "decimal": "0"}, {"Q": "1/2", "decimal": "0.5"}]]
    assert Iet.from_json(info["iet"]) == fig2()

    code, out, _ = run(capsys, "iet", "xq", files["fig2"], "--q", "5")
    assert json.loads(out)["alpha_q"] == {"Q": "1/10"}


def test_random_is_seeded(capsys):
    _, a, _ = run(capsys, "iet", "random", "--seed", "4", "--n", "4", "--cubic")
    _, b, _ = run(capsys, "iet", "random", "--seed", "4", "--n", "4", "--cubic")
    assert a == b
    Iet.from_json(json.loads(a))


def test_malformed_input(capsys, files):
    (files["dir"] / "junk.json").write_text("{not json")
    assert run(capsys, "iet", "info", files["junk"])[0] == 2
    assert run(capsys, "iet", "info", files["bad"])[0] == 2
    assert run(capsys, "iet", "info", str(files["dir"] / "missing.json"))[0] == 2
    assert run(capsys, "iet", "eval", files["rot13"], "1")[0] == 2
    assert run(capsys, "relation", "verify", files["rot13"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["iet", "power", files["rot13"], "two"])
    assert exc.value.code == 2


def test_certify_verify_and_tamper(capsys, files):
    cert = str(files["dir"] / "cert.json")
    code, _, err = run(capsys, "relation", "certify", "--s", files["fig2"], "--t0", files["rot15"], "--q", "5", "--out", cert)
    assert code == 0 and "certified" in err
    code, out, _ = run(capsys, "relation", "verify", cert)
    assert code == 0 and all(json.loads(out).values())

    data = json.loads(open(cert).read())
    assert Certificate.from_json(data).to_json() == data
    data["epsilon"] = {"Q": "1/7"}
    bad = write(files["dir"] / "tampered.json", data)
    assert run(capsys, "relation", "verify", bad)[0] == 1


def test_certify_failures(capsys, files):
    t0 = write(files["dir"] / "t0.json", {"lengths": ["1/5", "2/5", "2/5"], "perm": [1, 3, 2]})
    assert run(capsys, "relation", "certify", "--s", files["fig2"], "--t0", t0, "--q", "5")[0] == 1
    assert run(capsys, "relation", "certify", "--s", files["rot15"], "--t0", files["rot15"], "--q", "5")[0] == 1


def test_rational_commands(capsys, files):
    code, out, _ = run(capsys, "rational", "nearest", files["rot13"], "--q", "5")
    res = json.loads(out)
    assert code == 0 and res["delta"] == {"Q": "2/15"}
    code, out, _ = run(capsys, "rational", "order", files["fig2"], "--q", "10")
    assert code == 0 and json.loads(out)["order"] == 5
    assert run(capsys, "rational", "order", files["fig2"], "--q", "5")[0] == 1
    code, out, _ = run(capsys, "rational", "nearest", files["cubic"], "--q", "7", "--decimal")
    assert "decimal" in json.loads(out)["delta"]


def test_ay_sweep(capsys, files):
    out_csv = files["dir"] / "sweep.csv"
    svg = files["dir"] / "plots"
    code, _, err = run(capsys, "ay", "sweep", "--qmin", "20", "--qmax", "100", "--out", str(out_csv), "--svg", str(svg))
    # exit code 0 means every row passed the exact delta <= 5/q check
    assert code == 0 and "81 rows" in err
    rows = list(csv.DictReader(out_csv.open()))
    assert len(rows) == 81
    assert all(r["bound_lt_1"] == "false" for r in rows)
    assert sorted(p.name for p in svg.iterdir()) == ["bound.svg", "delta.svg", "order.svg"]
    assert run(capsys, "ay", "sweep", "--qmin", "3", "--qmax", "10")[0] == 2


def test_aiet_pingpong(capsys, files):
    code, out, _ = run(capsys, "aiet", "pingpong", "--standard")
    res = json.loads(out)
    assert code == 0 and res["passed"]
    inst = write(files["dir"] / "pp.json", res["instance"])
    code, out, _ = run(capsys, "aiet", "pingpong", "--check", inst)
    assert code == 0 and json.loads(out)["passed"]
    broken = dict(res["instance"], X=res["instance"]["V"])
    code, _, _ = run(capsys, "aiet", "pingpong", "--check", write(files["dir"] / "b.json", broken))
    assert code == 1
    code, _, _ = run(capsys, "aiet", "pingpong", "--check", write(files["dir"] / "c.json", {"f": {}}))
    assert code == 2


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "ietgroups", "iet", "eval", files["rot13"], "2/3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["image"] == {"Q": "0"}
