"""CLI behaviour: output formats, exit codes, config handling, determinism."""

import json

import numpy as np
import pytest

from adsbh import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, err = run(capsys, "classify", "--dim", "3",
                         "--point", "0.7071,0.7071,0,0")
    assert code == 0
    body = json.loads(out)
    assert body["cls"] == "InteriorFuture"
    assert "renormalized" in err


def test_classify_base_point(capsys):
    code, out, _ = run(capsys, "classify", "--point", "1,0,0,0")
    assert code == 0
    body = json.loads(out)
    assert body["cls"] == "Singular" and body["singularity_branch"] == "OnBoth"


def test_classify_bad_point_exit_2(capsys):
    code, _, err = run(capsys, "classify", "--dim", "3", "--point", "5,0,0,0")
    assert code == 2
    assert "off the hyperboloid" in err


def test_classify_unparsable_point(capsys):
    code, _, _ = run(capsys, "classify", "--dim", "3", "--point", "a,b,c,d")
    assert code == 2


def test_horizon_csv(capsys):
    code, out, _ = run(capsys, "horizon", "--dim", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "dim,c0,c1,c2,c3,class,residual_u2_x2,residual_theta"
    cells = lines[1].split(",")
    assert int(cells[0]) == 3
    assert abs(float(cells[1])) < 1e-6 and abs(float(cells[2]) - 1.0) < 1e-6
    assert cells[5] == "Horizon"
    assert float(cells[6]) < 1e-6 and float(cells[7]) < 1e-6


def test_horizon_no_bracket_exit_3(capsys):
    code, _, err = run(capsys, "horizon", "--dim", "3", "--mode", "seeds",
                       "--point-in", "0.9689,0.2474,0,0",
                       "--point-out", "0.8775,0.4794,0,0")
    assert code == 3


def test_verify_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "ads2")
    assert code == 0
    assert "failed 0" in out


def test_ads2_json(capsys):
    code, out, _ = run(capsys, "ads2", "--samples", "200", "--seed", "3")
    assert code == 0
    body = json.loads(out)
    assert body["status"] == "ok" and body["escapes"] == 0


def test_btz_csv(capsys):
    code, out, _ = run(capsys, "btz", "--count", "3", "--branch", "+", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("rho,branch,tau")
    assert len(lines) == 4


def test_dump_algebra(capsys):
    code, out, _ = run(capsys, "dump-algebra", "--dim", "4")
    assert code == 0
    body = json.loads(out)
    assert body["root_labels"]["M"] == [1, 1]
    assert len(body["families"]["W"]) == 1


def test_config_file_with_flag_override(tmp_path, capsys):
    conf = tmp_path / "scan.conf"
    conf.write_text("dim=3\npoint=1,0,0,0\nsamples=64\n# comment\nseed=4\n")
    code, out, _ = run(capsys, "classify", "--config", str(conf))
    assert code == 0
    assert json.loads(out)["cls"] == "Singular"
    code, out, _ = run(capsys, "classify", "--config", str(conf),
                       "--point", "0.7071,0.7071,0,0")
    assert code == 0
    assert json.loads(out)["cls"] == "InteriorFuture"


def test_output_to_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "horizon", "--dim", "3", "--format", "csv",
                       "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("dim,c0")


def test_byte_determinism(tmp_path, capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "horizon", "--dim", "4", "--count", "2",
                           "--seed", "11", "--format", "csv")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "classify", "--point",
                           "0.6,0.9,0.2," + repr(float(np.sqrt(0.13))))
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
