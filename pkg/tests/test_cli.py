import json

import pytest

from kenmotsu.cli import main
from kenmotsu.manifold import dump_document, example_text


@pytest.fixture
def k3_path(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(example_text("kenmotsu3"))
    return str(path)


@pytest.fixture
def flat_path(tmp_path):
    path = tmp_path / "flat.json"
    path.write_text(example_text("flat3"))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_example_prints_document(capsys):
    code, out, _ = run(capsys, "example", "kenmotsu3")
    assert code == 0 and out == example_text("kenmotsu3")


def test_unknown_example_lists_catalog(capsys):
    code, _, err = run(capsys, "example", "bogus")
    assert code == 2 and "kenmotsu3" in err and "flat3" in err


def test_verify_k3(capsys, k3_path):
    code, out, _ = run(capsys, "verify", k3_path)
    assert code == 0
    assert "nabla_e1 e1 = -e3" in out and "R(e1,e3)e3 = -e1" in out
    assert out.rstrip().splitlines()[-1].startswith("PASS")


def test_verify_flat_fails(capsys, flat_path):
    code, out, _ = run(capsys, "verify", flat_path, "--format", "structured")
    report = json.loads(out)
    assert code == 1
    status = {r["identity"]: r["status"] for r in report["verification"]["records"]}
    assert status["kenmotsu-nabla-xi"] == "fail"
    assert status["ricci-xi"] == "skipped"


def test_verify_flat_forced(capsys, flat_path):
    code, out, _ = run(capsys, "verify", flat_path, "--format", "structured", "--force")
    status = {r["identity"]: r["status"] for r in json.loads(out)["verification"]["records"]}
    assert code == 1 and status["ricci-xi"] == "fail"


def test_analyze_k3(capsys, k3_path):
    code, out, _ = run(capsys, "analyze", k3_path, "--p=-2/3", "--format", "structured")
    report = json.loads(out)
    assert code == 0
    assert report["soliton"]["parameters"] == {"lambda": "-2", "mu": "1", "p": "-2/3", "variant": "conformal-eta-einstein"}
    assert report["curvature"]["scalar"] == "-6"


def test_structured_output_is_deterministic(capsys, k3_path):
    first = run(capsys, "analyze", k3_path, "--p", "1/2", "--format", "structured")[1]
    second = run(capsys, "analyze", k3_path, "--p", "1/2", "--format", "structured")[1]
    assert first == second


def test_verify_and_analyze_share_tables(capsys, k3_path):
    v = json.loads(run(capsys, "verify", k3_path, "--format", "structured")[1])
    a = json.loads(run(capsys, "analyze", k3_path, "--p=0", "--format", "structured")[1])
    for key in ("connection", "curvature", "spec", "verification"):
        assert v[key] == a[key]


def test_out_file(capsys, tmp_path, k3_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "analyze", k3_path, "--p=-2/3", "--out", str(target))
    assert code == 0 and out.startswith("PASS")
    assert "lambda = -2" in target.read_text()


def test_p_from_document_and_override(capsys, tmp_path, k3):
    path = tmp_path / "k3p.json"
    path.write_text(dump_document(k3.with_p(0)))
    doc_only = json.loads(run(capsys, "analyze", str(path), "--format", "structured")[1])
    assert doc_only["soliton"]["parameters"]["lambda"] == "-7/3"
    overridden = json.loads(run(capsys, "analyze", str(path), "--p=-2/3", "--format", "structured")[1])
    assert overridden["soliton"]["parameters"]["lambda"] == "-2"


def test_missing_p_is_input_error(capsys, k3_path):
    code, _, err = run(capsys, "analyze", k3_path)
    assert code == 2 and "needs p" in err


def test_non_conformal_variant_needs_no_p(capsys, k3_path):
    code, out, _ = run(capsys, "analyze", k3_path, "--variant", "eta-einstein")
    assert code == 0 and "mu = 1" in out


def test_infeasible_variant_exits_one(capsys, k3_path):
    code, out, _ = run(capsys, "analyze", k3_path, "--variant", "einstein")
    assert code == 1 and "slot (3, 3)" in out


def test_skewed_analyze_exits_one(capsys, tmp_path, skewed):
    path = tmp_path / "skewed.json"
    path.write_text(dump_document(skewed))
    code, out, _ = run(capsys, "analyze", str(path), "--p=0")
    assert code == 1 and "infeasible" in out


def test_flat_analyze_not_applicable(capsys, flat_path):
    code, out, _ = run(capsys, "analyze", flat_path, "--p=-2/3", "--format", "structured")
    report = json.loads(out)
    assert code == 0
    assert {c["status"] for c in report["classification"]["checks"]} == {"not-applicable"}


def test_missing_field_names_it(capsys, tmp_path):
    doc = json.loads(example_text("kenmotsu3"))
    del doc["xi"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "xi" in err


def test_invariant_violation(capsys, tmp_path):
    doc = json.loads(example_text("kenmotsu3"))
    doc["metric"][2][2] = 2
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "g(xi,xi)" in err


def test_malformed_and_missing_files(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "verify", str(path))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "nope.json"))[0] == 2


def test_bad_rational_flag(capsys, k3_path):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", k3_path, "--p", "0.5"])
    assert exc.value.code == 2
