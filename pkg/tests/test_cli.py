import json

import pytest

from adelic_p1 import adelic
from adelic_p1.cli import main
import fixtures as fx


def _write(tmp_path, name, D):
    path = tmp_path / name
    path.write_text(adelic.serialize(D))
    return str(path)


def _fields(out):
    return dict(line.split(": ", 1) for line in out.splitlines() if ": " in line)


def test_height(tmp_path, capsys):
    spec = _write(tmp_path, "h.json", fx.naive())
    assert main(["height", "--spec", spec, "--point", "2/3"]) == 0
    f = _fields(capsys.readouterr().out)
    assert f["height"] == "1·log3"
    assert f["height_float"].startswith("1.0986122886681")
    assert f["input"].startswith("sha256:")


def test_intersect_defaults_to_self(tmp_path, capsys):
    spec = _write(tmp_path, "c.json", fx.chain2())
    assert main(["intersect", "--spec", spec]) == 0
    assert _fields(capsys.readouterr().out)["degree"] == "3·log2"


def test_volume_table_and_svg(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", fx.shrunk())
    svg = tmp_path / "g.svg"
    assert main(["volume", "--spec", spec, "--mmax", "3", "--svg", str(svg)]) == 0
    out = capsys.readouterr().out
    f = _fields(out)
    assert f["vol"] == "9/8" and f["vol_chi"] == "1"
    assert sum(1 for line in out.splitlines() if line[:1].isdigit()) == 3
    assert "homogeneity a=2: PASS" in out
    assert svg.read_text().lstrip().startswith("<?xml")


def test_zariski_round_trip(tmp_path, capsys):
    spec = _write(tmp_path, "z.json", fx.shrunk())
    prefix = str(tmp_path / "dec")
    assert main(["zariski", "--spec", spec, "--out", prefix]) == 0
    f = _fields(capsys.readouterr().out)
    assert f["mu_inf"] == "1/4" and f["mu_0"] == "0"
    Qd, N = adelic.zariski_decomposition(fx.shrunk())
    assert adelic.parse(open(prefix + ".Q.json").read()) == Qd
    assert adelic.parse(open(prefix + ".N.json").read()) == N
    assert Qd + N == fx.shrunk()


def test_zariski_local_to_stdout(tmp_path, capsys):
    D = fx.zariski_family()["naive+E+tent"]
    spec = _write(tmp_path, "l.json", D)
    assert main(["zariski-local", "--spec", spec]) == 0
    out = capsys.readouterr().out
    body = json.loads(out[out.index("{"):])
    Qd, N = adelic.relative_zariski(D)
    assert adelic.from_json(body["Q"]) == Qd and adelic.from_json(body["N"]) == N


def test_audit_passes_on_nef_input(tmp_path, capsys):
    spec = _write(tmp_path, "a.json", fx.chain3())
    assert main(["audit", "--spec", spec]) == 0
    out = capsys.readouterr().out
    for check in ("hodge", "nef_volume", "perpendicular", "volume_preserved"):
        assert f"{check}: PASS" in out


def test_validate_fiber_and_divisor(tmp_path, capsys):
    fiber = tmp_path / "f.json"
    fiber.write_text(json.dumps(fx.CHAIN3.to_json()))
    assert main(["validate", "--spec", str(fiber)]) == 0
    assert "FAIL" not in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"prime": 2, "mult": [1, 1], "ix": [[-2, 1], [1, -2]]}))
    assert main(["validate", "--spec", str(bad)]) == 2
    spec = _write(tmp_path, "d.json", fx.chain2())
    assert main(["validate", "--spec", spec]) == 0
    assert "divisor: PASS" in capsys.readouterr().out


@pytest.mark.parametrize("argv,code", [
    (["height", "--spec", "MISSING.json", "--point", "1"], 1),
    (["frobnicate", "--spec", "x"], 1),
    (["height", "--spec", "SPEC"], 1),
    (["height", "--spec", "SPEC", "--point", "two"], 1),
    (["height", "--spec", "SPEC", "--point", "0"], 0),
    (["zariski", "--spec", "NEG"], 3),
    (["height", "--spec", "NONTORIC", "--point", "1"], 2),
])
def test_exit_codes(tmp_path, capsys, argv, code):
    files = {
        "SPEC": _write(tmp_path, "n.json", fx.naive()),
        "NEG": _write(tmp_path, "neg.json", fx.naive_plus(-1)),
        "NONTORIC": str(tmp_path / "nt.json"),
    }
    (tmp_path / "nt.json").write_text(json.dumps({
        "horizontal": {"1": "1"},
        "arch": {"pieces": [{"u": "0", "value": "0"}], "leftSlope": "0", "rightSlope": "0"}}))
    argv = [files.get(a, a) for a in argv]
    assert main(argv) == code


def test_malformed_json_reports_position(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text('{"horizontal": ')
    assert main(["volume", "--spec", str(p)]) == 1
    assert "broken.json:1:" in capsys.readouterr().err


def test_zariski_output_is_already_nef(tmp_path, capsys):
    spec = _write(tmp_path, "z.json", fx.zariski_family()["chain3+vert+tent"])
    prefix = str(tmp_path / "first")
    assert main(["zariski", "--spec", spec, "--out", prefix]) == 0
    capsys.readouterr()
    assert main(["zariski", "--spec", prefix + ".Q.json", "--out", str(tmp_path / "second")]) == 0
    assert _fields(capsys.readouterr().out)["negative_is_zero"] == "True"
    text = open(prefix + ".Q.json").read()
    assert adelic.serialize(adelic.parse(text)) == text


@pytest.mark.parametrize("point,expected", [("2/3", "1·log3"), ("1", "0"), ("5", "1·log5"), ("inf", "0")])
def test_naive_height_examples(tmp_path, capsys, point, expected):
    spec = _write(tmp_path, "n.json", fx.naive())
    assert main(["height", "--spec", spec, "--point", point]) == 0
    assert _fields(capsys.readouterr().out)["height"] == expected
