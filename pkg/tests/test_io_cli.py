import json

import pytest

from hfcone import cli, contact, fixtures
from hfcone.errors import DecisionMismatch, ParseError, ValidationError
from hfcone.io import complex_from_dict, complex_to_dict, dump_complex, parse_complex


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixture_files_match_builders(name):
    assert fixtures.load(name) == fixtures.build(name)
    assert parse_complex(fixtures.path(name)) == fixtures.build(name)


def test_roundtrip(tmp_path, fx):
    for name, c in fx.items():
        p = tmp_path / f"{name}.json"
        dump_complex(c, p)
        assert parse_complex(p) == c
        assert complex_from_dict(complex_to_dict(c)) == c


def test_unknot_file():
    c = parse_complex(fixtures.path("unknot"))
    assert len(c) == 1


def test_parse_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        parse_complex(p)
    with pytest.raises(ParseError):
        parse_complex(tmp_path / "missing.json")
    d = complex_to_dict(fixtures.build("trefoil"))
    d["colour"] = "red"
    with pytest.raises(ParseError, match="unknown keys"):
        complex_from_dict(d)
    d = complex_to_dict(fixtures.build("trefoil"))
    d["generators"][0]["alexander"] = "1"
    with pytest.raises(ParseError):
        complex_from_dict(d)
    d = complex_to_dict(fixtures.build("trefoil"))
    del d["differential"]
    with pytest.raises(ParseError, match="missing"):
        complex_from_dict(d)


def test_d_squared_fault_is_named():
    d = {
        "name": "broken",
        "generators": [{"name": "a", "alexander": 0, "maslov": 0},
                       {"name": "b", "alexander": 0, "maslov": -1},
                       {"name": "c", "alexander": 0, "maslov": -2}],
        "differential": [{"from": "a", "to": "b", "u_power": 0},
                         {"from": "b", "to": "c", "u_power": 0}],
    }
    with pytest.raises(ValidationError) as e:
        complex_from_dict(d)
    assert any("d^2" in m and "a" in m and "c" in m for m in e.value.diagnostics)


def test_cli_invariants(capsys):
    code, out, _ = run(capsys, "invariants", fixtures.path("trefoil"))
    assert code == 0
    assert json.loads(out) == {"tau": 1, "nu": 1, "epsilon": 1, "width": 1}
    code, out, _ = run(capsys, "invariants", fixtures.path("trefoil"), "--mirror")
    assert json.loads(out)["tau"] == -1


def test_cli_contact(capsys):
    code, out, _ = run(capsys, "contact", fixtures.path("cable"), "--tb", 2, "--rot", -1, "--x", 3, "--y", 2)
    assert code == 0
    rep = json.loads(out)
    assert rep["nonzero"] is True and (rep["k"], rep["p"], rep["q"]) == (-3, 7, 2)


def test_cli_dinv_dgs_hkm_cone_validate(capsys):
    code, out, _ = run(capsys, "dinv", "--q", 2, "--r", 1)
    assert code == 0 and json.loads(out) == [{"num": -1, "den": 4}, {"num": 1, "den": 4}]
    code, out, _ = run(capsys, "dgs", "--tb", 0, "--rot", -1, "--x", 2)
    assert code == 0 and json.loads(out)["chern_on_S"] == 0
    code, out, _ = run(capsys, "hkm", "--coeffs", "3,2")
    assert code == 0 and json.loads(out)["strong"] is True
    code, out, _ = run(capsys, "cone", fixtures.path("unknot"), "--p", 5, "--q", 2)
    assert code == 0 and json.loads(out)["total_dim"] == 5
    code, out, _ = run(capsys, "validate", fixtures.path("cable"))
    assert code == 0 and json.loads(out)["valid"] is True


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "nosuch")[0] == 1
    assert run(capsys, "dinv", "--q", 2)[0] == 1
    assert run(capsys, "hkm", "--coeffs", "a,b")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("[")
    assert run(capsys, "invariants", bad)[0] == 2
    assert run(capsys, "dinv", "--q", 4, "--r", 2)[0] == 2
    assert run(capsys, "contact", fixtures.path("unknot"), "--tb", 1, "--rot", 0, "--x", 1)[0] == 2
    assert run(capsys, "contact", fixtures.path("unknot"), "--tb", -1, "--rot", 0, "--x", 1, "--y", 2)[0] == 2


def test_validate_reports_diagnostics(capsys, tmp_path):
    d = complex_to_dict(fixtures.build("trefoil"))
    d["differential"][0]["u_power"] = -1
    p = tmp_path / "neg.json"
    p.write_text(json.dumps(d))
    code, out, err = run(capsys, "validate", p)
    assert code == 2 and json.loads(out)["valid"] is False and err


def test_disagreement_exits_3(capsys, monkeypatch):
    real = contact.decide_contact_invariant

    def flipped(*a, **k):
        v = real(*a, **k)
        return v.__class__(not v.nonzero, v.reason, v.k, v.slope, v.tau, v.epsilon)

    monkeypatch.setattr(contact, "decide_contact_invariant", flipped)
    with pytest.raises(DecisionMismatch):
        contact.contact_report(contact.LegendrianData(-1, 0, fixtures.build("unknot")), contact.ContactCoefficient(1))
    code, _, err = run(capsys, "contact", fixtures.path("unknot"), "--tb", -1, "--rot", 0, "--x", 1)
    assert code == 3 and "disagreement" in err


def test_output_is_deterministic(capsys):
    argv = ("contact", fixtures.path("cable"), "--tb", 2, "--rot", -1, "--x", 3, "--y", 2)
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
    argv = ("cone", fixtures.path("cable"), "--p", -15, "--q", 2, "--mirror")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first
