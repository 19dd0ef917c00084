import json

import pytest

from wakkit.harness import CHECKS, InstanceError, golden, parse_instance, run_suite
from wakkit.harness.cli import main

MINIMAL = {
    "name": "minimal",
    "field": 2,
    "algebra": {"dim": 1, "table": [[[1]]]},
    "bimodule": {"left": {"regular": True}},
    "backend": {"variant": "classical_tilting", "ext_bound": 2},
    "samples": {"a_modules": "standard", "b_modules": "standard", "pairs": "standard"},
    "settings": {"random_sequences": 2, "pair_sequences": 2, "random_morphisms": 1},
}


def _text(**changes):
    raw = json.loads(json.dumps(MINIMAL))
    for k, v in changes.items():
        raw[k] = v
    return json.dumps(raw)


def test_minimal_instance_parses_and_passes():
    inst = parse_instance(_text())
    assert inst.a.dim == 1 and inst.t.dim == 1 and inst.backend_b is None
    rep = run_suite(inst)
    assert rep.ok
    assert rep["good.conditions"].status == "skipped"


def test_golden_a2_shape():
    inst = golden("i2_a2_apr")
    assert inst.a.dim == 3 and inst.t.dim == 3 and inst.b.dim == 3


def test_non_prime_field_rejected():
    with pytest.raises(InstanceError, match="not a prime"):
        parse_instance(_text(field=4))


def test_syntax_error_has_position():
    with pytest.raises(InstanceError) as exc:
        parse_instance('{\n  "field": 2,\n  "algebra": }', source="bad.json")
    assert "bad.json:3:" in str(exc.value)


@pytest.mark.parametrize("change, where", [
    ({"algebra": {"dim": 2, "table": [[[1]]]}}, "algebra.dim"),
    ({"algebra": {"dim": 1, "table": [[1]]}}, "algebra.table"),
    ({"algebra": {"quiver": {"vertices": [1]}}}, "algebra.quiver"),
    ({"backend": {"variant": "finite_type", "ext_bound": 2}}, "backend"),
    ({"modules": {"T": {"regular": True}}}, "modules"),
    ({"samples": {"a_modules": ["nope"]}}, "samples.a_modules"),
])
def test_semantic_errors_are_located(change, where):
    with pytest.raises(InstanceError) as exc:
        parse_instance(_text(**change), source="x")
    assert where in str(exc.value)


def test_report_body_is_deterministic():
    one = run_suite(golden("i1_field"), seed=5).body()
    two = run_suite(golden("i1_field"), seed=5).body()
    assert json.dumps(one) == json.dumps(two)
    assert [c["name"] for c in one["checks"]] == sorted(c["name"] for c in one["checks"])


def test_every_check_listed_once():
    rep = run_suite(golden("i1_field"))
    names = [r.name for r in rep.results]
    assert len(names) == len(set(names))
    assert set(CHECKS) <= set(names)
    assert rep.body()["ext_bound"] == 4


def test_selection_by_prefix():
    rep = run_suite(golden("i1_field"), ["trivext", "algebra.axioms"])
    assert {r.name for r in rep.results} == {"trivext.symmetric", "trivext.projective_injective",
                                             "trivext.pairs", "algebra.axioms"}


def test_failures_carry_witnesses():
    rep = run_suite(golden("neg_sign"), ["trivext.pairs", "wakfun.dt_tensor_square_zero"])
    assert not rep.ok
    for r in rep.results:
        assert r.status == "fail" and r.witness


def test_dimension_cap(monkeypatch):
    from wakkit.algmod import DimensionCapError
    monkeypatch.setenv("WAKKIT_MAX_DIM", "3")
    with pytest.raises(DimensionCapError):
        golden("i2_a2_apr")
    monkeypatch.setenv("WAKKIT_MAX_DIM", "64")
    golden("i2_a2_apr")


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["validate", "i1_field"]) == 0
    assert main(["verify", "i1_field", "--checks", "trivext", "algebra"]) == 0
    out = tmp_path / "r.json"
    assert main(["verify", "neg_sign", "--checks", "trivext.pairs", "--format", "json", "--output", str(out)]) == 1
    body = json.loads(out.read_text())
    assert body["ok"] is False and "timing" in body
    assert main(["report", str(out)]) == 1
    assert main(["preenv", "i2_a2_apr", "--module", "S2"]) == 0
    assert "V (dim 2)" in capsys.readouterr().out
    assert main(["apply-s", "i2_a2_apr", "--pair", "S1"]) == 0
    assert main(["triangle", "i2_a2_apr", "--ses", "xi"]) == 0
    assert main(["preenv", "i2_a2_apr", "--module", "nope"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(_text(field=4))
    assert main(["validate", str(bad)]) == 2


def test_report_matches_schema(tmp_path):
    from pathlib import Path
    schema = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())
    body = run_suite(golden("i1_field"), ["trivext"]).to_json()
    assert set(schema["required"]) <= set(body) <= set(schema["properties"])
    item = schema["properties"]["checks"]["items"]
    for c in body["checks"]:
        assert set(item["required"]) <= set(c) <= set(item["properties"])
        assert c["status"] in item["properties"]["status"]["enum"]
