import json
import subprocess
import sys

import numpy as np
import pytest

from heisenfield import CopyIso, HGroup, field_make, relabel, wrap
from heisenfield.cli import main

from oracles import cyclic_table, direct_product, quaternion_table


def run(capsys, *argv, **kw):
    code = main(list(argv), **kw)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv, **kw):
    code, out = run(capsys, *argv, "--format", "json", **kw)
    return code, json.loads(out)


def group_file(tmp_path, name, table):
    t = np.asarray(table)
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps({"order": len(t), "mul": t.ravel().tolist()}))
    return str(path)


def test_build_gf3(capsys):
    code, out = run(capsys, "build", "--field", "gf:3")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 27 and data["schema"] == 1
    assert len(data["mul"]) == 27 * 27
    assert out.count("\n") == 1


def test_build_gf4_to_file(capsys, tmp_path):
    out = tmp_path / "h4.json"
    code, printed = run(capsys, "build", "--field", "gf:4:x^2+x+1", "--out", str(out))
    assert code == 0 and printed == ""
    assert json.loads(out.read_text())["order"] == 64


@pytest.mark.parametrize("spec", ["gf:6", "gf:4", "gf:4:x^2+1", "banana", "q:2"])
def test_bad_field_spec(capsys, spec):
    code, data = run_json(capsys, "build", "--field", spec)
    assert code == 2
    assert data["pass"] is False and data["error"]["message"]


def test_size_bound(capsys):
    code, data = run_json(capsys, "build", "--field", "gf:5", "--max-order", "100")
    assert code == 2 and data["error"]["type"] == "SizeBoundError"


def test_roundtrip_gf5_seed7(capsys):
    code, data = run_json(capsys, "roundtrip", "--field", "gf:5", "--seed", "7")
    assert code == 0 and data["pass"]
    assert data["phi"]["iso_to_input_field"] and data["phi"]["violations"] == []
    assert data["quotient"]["classes"] == 5


def test_roundtrip_gf2_two_classes(capsys):
    code, data = run_json(capsys, "roundtrip", "--field", "gf:2", "--seed", "0")
    assert code == 0
    assert data["quotient"]["classes"] == 2 and data["quotient"]["domain_size"] == 48


def test_roundtrip_text(capsys):
    code, out = run(capsys, "roundtrip", "--field", "gf:3")
    assert code == 0
    assert "pass: true" in out and "classes: 3" in out


def test_roundtrip_built_group_file(capsys, tmp_path):
    path = tmp_path / "h3.json"
    path.write_text(HGroup(field_make("prime", 3)).dumps())
    code, data = run_json(capsys, "roundtrip", "--field", "gf:3", "--group", str(path))
    assert code == 0 and data["order"] == 27


def test_corrupted_group_file(capsys, tmp_path):
    table = HGroup(field_make("prime", 2)).mul_table().copy()
    table[3, 5] = (table[3, 5] + 1) % 8
    path = group_file(tmp_path, "bad", table)
    code, data = run_json(capsys, "roundtrip", "--field", "gf:2", "--group", path)
    assert code == 2
    assert data["error"]["type"] == "NotAGroupError"


def test_unreadable_group_file(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, data = run_json(capsys, "roundtrip", "--field", "gf:2", "--group", str(path))
    assert code == 2 and data["error"]["type"] == "NotAGroupError"
    code, data = run_json(capsys, "roundtrip", "--field", "gf:2",
                          "--group", str(tmp_path / "missing.json"))
    assert code == 2


def test_group_file_of_wrong_order(capsys, tmp_path):
    path = group_file(tmp_path, "z4", cyclic_table(4))
    code, data = run_json(capsys, "roundtrip", "--field", "gf:2", "--group", path)
    assert code == 2 and "order" in data["error"]["message"]


def test_abelian_group_file(capsys, tmp_path):
    path = group_file(tmp_path, "z8", cyclic_table(8))
    code, data = run_json(capsys, "roundtrip", "--field", "gf:2", "--group", path)
    assert code == 2 and data["error"]["type"] == "AbelianGroupError"


def test_quaternion_group_file_passes(capsys, tmp_path):
    path = group_file(tmp_path, "q8", quaternion_table())
    code, data = run_json(capsys, "roundtrip", "--field", "gf:2", "--group", path)
    assert code == 0


def test_group_without_field_center(capsys, tmp_path):
    d4 = HGroup(field_make("prime", 2)).mul_table()
    path = group_file(tmp_path, "d4z8", direct_product(d4, cyclic_table(8)))
    code, data = run_json(capsys, "roundtrip", "--field", "gf:4:x^2+x+1", "--group", path)
    assert code == 2 and data["error"]["type"] == "InterpretationError"


def test_functor_gf2(capsys):
    code, data = run_json(capsys, "functor", "--field", "gf:2", "--seeds", "1,2,3")
    assert code == 0
    assert data["identity_law"]["ok"] and data["composition_law"]["ok"]
    assert data["homomorphism"]["ok"]


def test_functor_same_seeds_identity(capsys):
    code, data = run_json(capsys, "functor", "--field", "gf:3", "--seeds", "0,0,0")
    assert code == 0 and data["q_maps_identity"] == [True, True]


def test_functor_broken_iso(capsys):
    g = wrap(HGroup(field_make("prime", 2)))
    groups = [relabel(g, s)[0] for s in (1, 2, 3)]
    bad = np.arange(8)
    bad[[1, 2]] = bad[[2, 1]]
    isos = [CopyIso(groups[0], groups[1], bad), CopyIso(groups[1], groups[2], bad)]
    code, data = run_json(capsys, "functor", "--field", "gf:2", isos=isos)
    assert code == 1 and data["pass"] is False
    assert data["homomorphism"]["ok"] is False
    assert any(v["law"] == "homomorphism" for v in data["homomorphism"]["violations"])


@pytest.mark.parametrize("seeds", ["1,2", "a,b,c"])
def test_functor_bad_seeds(capsys, seeds):
    code, _ = run_json(capsys, "functor", "--field", "gf:2", "--seeds", seeds)
    assert code == 2


def test_autos_gf2(capsys):
    # every automorphism of H(GF(2)) fixes h(0,0,1), so the rigidity check fails
    code, data = run_json(capsys, "autos", "--field", "gf:2")
    assert code == 1
    assert data["automorphisms"] == 8
    assert data["fixed_tuples"]["1"] == 2
    assert data["checks"]["all_valid"] and data["checks"]["quotient_invariant"]
    assert not data["checks"]["only_identity_fixed"]


def test_autos_gf3(capsys):
    code, data = run_json(capsys, "autos", "--field", "gf:3")
    assert code == 0 and data["automorphisms"] == 432
    assert all(data["checks"].values())


def test_biinterp(capsys):
    code, data = run_json(capsys, "biinterp", "--field", "gf:5")
    assert code == 0 and len(data["k"]) == 5
    code, data = run_json(capsys, "biinterp", "--field", "q", "--sample", "9")
    assert code == 0 and data["checked"]["multiplicative"] == 81


def test_oracle_gf2(capsys):
    code, data = run_json(capsys, "oracle", "--field", "gf:2")
    assert code == 0 and data["exhaustive"]


def test_rationals_rejected_for_finite_commands(capsys):
    code, data = run_json(capsys, "roundtrip", "--field", "q")
    assert code == 2 and "finite" in data["error"]["message"]


@pytest.mark.parametrize("argv", [["roundtrip", "--field", "gf:2", "--budget", "0"],
                                  ["biinterp", "--field", "gf:2", "--sample", "-1"]])
def test_bad_numbers(capsys, argv):
    assert main(argv) == 2
    capsys.readouterr()


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as err:
        main(["roundtrip"])
    assert err.value.code == 2
    with pytest.raises(SystemExit):
        main(["frobnicate", "--field", "gf:2"])
    capsys.readouterr()


def test_byte_identical_json(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(["roundtrip", "--field", "gf:3", "--seed", "4", "--format", "json",
                     "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "heisenfield", "build", "--field", "gf:2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["order"] == 8
