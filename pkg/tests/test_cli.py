import json

from catembed.cli import main
from catembed.companion import catalog_get, entry_to_json
from catembed.serialize import matrix_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_catalog_passes(capsys):
    code, out, err = run(capsys, "verify-catalog")
    assert code == 0
    assert out.count("[PASS]") >= 9


def test_verify_catalog_json(capsys):
    code, out, err = run(capsys, "--format", "json", "verify-catalog")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True


def test_verify_catalog_detects_corruption(capsys, tmp_path):
    entry = entry_to_json(catalog_get("sqrt5/Q"))
    entry["lambda"]["entries"][0]["coeffs"] = [[0, "2/1"]]
    path = tmp_path / "cat.json"
    path.write_text(json.dumps([entry]))
    code, out, err = run(capsys, "verify-catalog", "--catalog", str(path))
    assert code == 1
    assert "FAIL" in out and "NotAnnihilated" in out


def test_verify_catalog_empty_is_vacuous(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    code, out, err = run(capsys, "verify-catalog", "--catalog", str(path))
    # the built-in tower levels are still checked; catalog part is vacuous
    assert code == 0


def test_embed_matrix(capsys, tmp_path):
    sqrt5 = {"conductor": 5, "coeffs": [[0, "1/1"], [1, "2/1"], [4, "2/1"]]}
    mat = {"rows": 1, "cols": 1, "conductor": 5, "entries": [sqrt5]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(mat))
    code, out, err = run(capsys, "--format", "json", "embed", str(path), "--embedding", "sqrt5/Q")
    assert code == 0
    data = json.loads(out)
    entries = data["phi"]["entries"]
    values = [e["coeffs"][0][1] if e["coeffs"] else "0" for e in entries]
    assert values == ["1/1", "2/1", "2/1", "-1/1"]
    assert data["catalytic_law"] is True


def test_embed_omega_concat(capsys, tmp_path):
    omega = {"conductor": 8, "coeffs": [[1, "1/1"]]}
    mat = {"rows": 1, "cols": 1, "conductor": 8, "entries": [omega]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(mat))
    code, out, err = run(capsys, "--format", "json", "embed", str(path), "--embedding", "omega/D (concat)")
    assert code == 0
    data = json.loads(out)
    assert data["phi"]["rows"] == 4


def test_embed_membership_failure(capsys, tmp_path):
    half = {"conductor": 1, "coeffs": [[0, "1/2"]]}
    mat = {"rows": 1, "cols": 1, "conductor": 1, "entries": [half]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(mat))
    # 1/2 is not in Z[zeta_4] (the tower base of zeta2k/tower(2) has no denominators)
    code, out, err = run(capsys, "embed", str(path), "--embedding", "zeta2k/tower(2)")
    assert code == 1
    assert "membership" in err


def test_embed_circuit_mode(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"circuit": "(seq (par E I2) CX)"}))
    code, out, err = run(capsys, "--format", "json", "embed", str(path), "--embedding", "omega3/Domega8")
    assert code == 0
    data = json.loads(out)
    assert data["catalytic_law"] is True
    assert "lifted_circuit" in data


def test_qft_simulate(capsys):
    code, out, err = run(capsys, "--format", "json", "qft", "2", "--simulate")
    assert code == 0
    data = json.loads(out)
    assert data["simulation"]["ok"] is True
    assert len(data["catalysts"]) == 2


def test_qft_inverse_simulate(capsys):
    code, out, err = run(capsys, "--format", "json", "qft", "2", "--inverse", "--simulate")
    assert code == 0
    assert json.loads(out)["simulation"]["ok"] is True


def test_qft_expand_simulate(capsys):
    code, out, err = run(capsys, "--format", "json", "qft", "2", "--expand", "--simulate")
    assert code == 0
    assert json.loads(out)["simulation"]["ok"] is True


def test_egate_simulate(capsys):
    code, out, err = run(capsys, "--format", "json", "egate", "--simulate")
    assert code == 0
    data = json.loads(out)
    assert data["t_count"] == 6
    assert data["simulation"]["ok"] is True


def test_cost_reduction(capsys):
    code, out, err = run(capsys, "--format", "json", "cost", "egate", "-m", "1048576", "--epsilon", "1e-15")
    assert code == 0
    data = json.loads(out)
    assert 97.0 <= float(data["reduction_percent"]) <= 99.0


def test_cost_csv(capsys):
    code, out, err = run(capsys, "cost", "qft", "--size", "8", "--epsilon", "1/1000", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("kind,size,epsilon")
    assert lines[1].startswith("qft,8,")


def test_cost_invalid_epsilon(capsys):
    code, out, err = run(capsys, "cost", "egate", "-m", "4", "--epsilon", "2")
    assert code == 1


def test_classify_builtins(capsys):
    verdicts = {}
    for i in (1, 2, 3):
        code, out, err = run(capsys, "--format", "json", "classify", "--builtin", str(i))
        assert code == 0
        verdicts[i] = json.loads(out)["verdict"]
    assert verdicts == {
        1: "not_strong",
        2: "strong_not_linear",
        3: "linear_consistent",
    }


def test_classify_bundle_file(capsys, tmp_path):
    from catembed.companion import order3_rotation_candidate

    candidate, pi = order3_rotation_candidate(1)
    bundle = {
        "gates": {name: matrix_to_json(m) for name, m in candidate.items()},
        "projector": matrix_to_json(pi),
    }
    path = tmp_path / "bundle.json"
    path.write_text(json.dumps(bundle))
    code, out, err = run(capsys, "--format", "json", "classify", str(path), "--max-len", "3")
    assert code == 0
    assert json.loads(out)["verdict"] == "not_strong"


def test_simulate_roundtrip(capsys, tmp_path):
    code, out, err = run(capsys, "--format", "json", "qft", "2")
    program = tmp_path / "prog.json"
    program.write_text(out)
    code, out, err = run(capsys, "--format", "json", "simulate", str(program))
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_exit_code_contract_on_corrupt_program(capsys, tmp_path):
    code, out, err = run(capsys, "--format", "json", "qft", "2")
    data = json.loads(out)
    # corrupt a catalyst: swapping psi_2's components gives the conjugate
    # eigenvector, which fails the forward law (psi_1 would only flip sign)
    vec = data["catalysts"][0]["vector"]["entries"]
    vec[0], vec[1] = vec[1], vec[0]
    bad = data.copy()
    program = tmp_path / "prog.json"
    program.write_text(json.dumps(bad))
    code, out, err = run(capsys, "--format", "json", "simulate", str(program))
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_catalog_env_var(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps([entry_to_json(catalog_get("sqrt5/Q"))]))
    monkeypatch.setenv("CATEMBED_CATALOG", str(path))
    import catembed.companion as companion

    assert companion.catalog_ids() == ["sqrt5/Q"]
