import csv
import io
import json

import pytest

from genus2covers.cli import RunConfig, build_parser, main, run
from genus2covers.errors import ParseError


def call(argv):
    out = io.StringIO()
    cfg = RunConfig.from_argv(argv)
    return run(cfg, out), out.getvalue()


def test_construct_verify_f5():
    code, text = call(["construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,2,3", "--sigma", "2,1,3", "--verify"])
    assert code == 0
    assert "lambda      4" in text
    assert "(4*t^2+1)(4*t^2+4)(4*t^2+3)" in text
    assert "FAIL" not in text and text.count("PASS") >= 15


def test_construct_json_schema():
    code, text = call(["verify", "--field", "q", "--e", "0,1,-1", "--eprime", "0,1,3", "--format", "json"])
    assert code == 0
    rep = json.loads(text)
    for key in ("gamma", "a", "b", "lambda", "sextic", "f", "fprime", "checks"):
        assert key in rep
    assert rep["a"] == "3/2" and rep["b"] == "-1/2" and rep["lambda"] == "3/8"
    assert rep["f"]["x"] == "((-1/2)*t^2-2)/t^2"
    assert rep["f"]["y"] == "y*((8/3)/t^3)"
    assert set(rep["checks"].values()) == {"pass"}


def test_moebius_identity():
    code, text = call(["moebius", "--ring", "z:15", "--from", "0,1,2", "--to", "0,1,2"])
    assert code == 0 and text.splitlines()[0] == "[[1, 0], [0, 1]]"


def test_moebius_with_infinity():
    code, text = call(["moebius", "--ring", "fp:5", "--from", "inf,0,1", "--to", "1,2,0", "--format", "json"])
    assert code == 0
    assert json.loads(text)["matrix"][1][0] != "0"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["construct", "--field", "fp:x", "--e", "0,1,2", "--eprime", "0,1,3"], 2),
        (["construct", "--field", "fp:4", "--e", "0,1,2", "--eprime", "0,1,3"], 3),
        (["construct", "--field", "fp:5", "--e", "0,1,x", "--eprime", "0,1,3"], 2),
        (["construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,2,3", "--sigma", "1,2"], 2),
        (["bogus"], 2),
        (["construct", "--field", "fp:5", "--e", "0,1,1", "--eprime", "0,2,3"], 3),
        (["construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,2,3"], 3),
        (["moebius", "--ring", "z:15", "--from", "0,5,1", "--to", "0,1,2"], 3),
        (["family", "--p", "7", "--e", "0,1,s", "--eprime", "0,1,s"], 0),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_census_f5(capsys):
    assert main(["census", "--field", "fp:5"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert tuple(rows[0]) == ("e1", "e2", "e3", "ep1", "ep2", "ep3", "sigma", "j", "jp", "theta_smooth", "sextic")
    assert len(rows) - 1 == 21600
    for r in rows[1:]:
        if r[7] != r[8]:
            assert r[9] == "true"


def test_family_output():
    code, text = call(["family", "--p", "7", "--var", "s", "--e", "0,1,s", "--eprime", "0,1,s+1", "--sigma", "1,2,3"])
    assert code == 0
    assert "s = 0 [F_p]: collision" in text and "s = 6 [F_p]: collision" in text
    assert "theta-degeneration" not in text


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,2,3", "--sigma", "2,1,3", "--verify"],
        ["verify", "--field", "q", "--e", "0,1,-1", "--eprime", "0,1,3", "--format", "json"],
        ["census", "--field", "fp:7", "--construct", "--workers", "2"],
        ["family", "--p", "7", "--var", "u", "--e", "0,1,u", "--eprime", "0,1,u+1", "--max-degree", "2"],
        ["moebius", "--ring", "z:15", "--from", "0,1,inf", "--to", "0,1,2"],
    ],
)
def test_runconfig_roundtrip(argv):
    cfg = RunConfig.from_argv(argv)
    assert RunConfig.from_argv(cfg.to_argv()) == cfg
    assert RunConfig.from_json(cfg.to_json()) == cfg
    assert RunConfig.from_dict(cfg.to_dict()) == cfg


def test_runconfig_rejects_garbage():
    with pytest.raises(ParseError):
        RunConfig(command="nope")
    with pytest.raises(ParseError):
        RunConfig.from_dict({"command": "census", "colour": "red"})
    with pytest.raises(ParseError):
        build_parser().parse_args(["census"])
