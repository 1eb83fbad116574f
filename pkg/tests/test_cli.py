import io
import json

import pytest

from czcriterion.cli import EXIT_NOT_CONTROLLED, EXIT_OK, EXIT_USAGE, run

def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def xy_triple_numerators():
    from conftest import xy_triple_specs
    from czcriterion.poly import to_json_obj

    return [json.dumps(to_json_obj(s.expansion.numerator())) for s in xy_triple_specs()]


def test_check_exit_codes():
    fail, ok, zero = xy_triple_numerators()
    assert call("check", "--numerator", ok)[0] == EXIT_OK
    assert call("check", "--numerator", fail)[0] == EXIT_NOT_CONTROLLED
    code, out, _ = call("check", "--numerator", zero)
    assert code == EXIT_NOT_CONTROLLED and json.loads(out)["reason"]["kind"] == "zero_on_sphere"


def test_input_errors():
    ok = xy_triple_numerators()[1]
    assert call("check")[0] == EXIT_USAGE
    assert call("check", "--numerator", ok, "--expansion", ok)[0] == EXIT_USAGE
    assert call("check", "--numerator", "{not json")[0] == EXIT_USAGE
    bad = json.dumps({"n_vars": 2, "terms": [{"exp": [1, 0], "coeff": "1"}, {"exp": [2, 0], "coeff": "1"}]})
    code, _, err = call("check", "--numerator", bad)
    assert code == EXIT_USAGE and err.startswith("error")
    assert call("check", "--numerator", ok, "--dim", "3")[0] == EXIT_USAGE
    assert call("nonsense")[0] == EXIT_USAGE


def test_decompose_check_round_trip(tmp_path):
    ok = xy_triple_numerators()[1]
    code, out, _ = call("decompose", "--numerator", ok)
    assert code == EXIT_OK
    path = tmp_path / "exp.json"
    path.write_text(out)
    code2, out2, _ = call("check", "--expansion", "@" + str(path))
    code1, out1, _ = call("check", "--numerator", ok)
    assert code1 == code2 == EXIT_OK and out1 == out2


def test_determinism():
    ok = xy_triple_numerators()[1]
    for argv in (("check", "--numerator", ok), ("constants", "--N", "3", "--dim", "3"),
                 ("probe", "scan", "--numerator", ok, "--directions", "50")):
        assert call(*argv) == call(*argv)


def test_gamma_and_constants():
    code, out, _ = call("gamma", "--degree", "2", "4")
    doc = json.loads(out)
    assert code == EXIT_OK and set(doc["gamma"]) == {"2", "4"}
    code, out, _ = call("constants", "--N", "2")
    doc = json.loads(out)
    assert doc["b"] == {"0": "(4)*pi^(-2/2)", "1": "-(6)*pi^(-2/2)"}
    assert doc["C2j"]["1"] == "1/16"


def test_identities_quick():
    code, out, _ = call("identities", "--sweep", "quick")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["failures"] == 0 and doc["count"] > 0
    code, out, _ = call("identities", "--sweep", "quick", "--jsonl")
    lines = out.strip().splitlines()
    assert code == EXIT_OK and all(json.loads(l)["identity"] for l in lines)


def test_probe_commands():
    xy = json.dumps({"n_vars": 2, "terms": [{"exp": [1, 1], "coeff": "1"}]})
    code, out, _ = call("probe", "reconstruct", "--numerator", xy, "--point", "2,1")
    assert code == EXIT_OK and json.loads(out)["pass"]
    code, out, _ = call("probe", "growth", "--N", "4", "--csv")
    assert code == EXIT_OK and out.splitlines()[0] == "N,sup" and len(out.splitlines()) == 5
    code, out, _ = call("probe", "zeros", "--numerator", xy_triple_numerators()[1])
    assert code == EXIT_OK


def test_xy_family():
    code, out, _ = call("xy-family", "--j-max", "4")
    doc = json.loads(out)
    assert code == EXIT_OK and all(p["harmonic"] for p in doc["polynomials"])


def test_json_csv_exclusive():
    assert call("gamma", "--json", "--csv")[0] == EXIT_USAGE
