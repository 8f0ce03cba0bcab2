import json

import numpy as np

import pgframes as pg
from pgframes.cli import main


def _gen_instance(tmp_path, name="inst.json", **kwargs):
    defaults = dict(kind="riesz-pair", x2_dim=3, y_dims=[2, 1], seed=11)
    defaults.update(kwargs)
    inst = pg.gen(
        defaults.pop("kind"),
        x2_dim=defaults.pop("x2_dim"),
        y_dims=defaults.pop("y_dims"),
        seed=defaults.pop("seed"),
        **defaults,
    )
    path = tmp_path / name
    pg.save(inst, path)
    return path, inst


def test_gen_writes_parseable_instance(tmp_path, capsys):
    out = tmp_path / "gen.json"
    rc = main(
        [
            "gen",
            "--kind",
            "riesz-pair",
            "--x2-dim",
            "4",
            "--y-dims",
            "2,2",
            "--seed",
            "11",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    inst = pg.load(out)
    assert pg.classify(inst.lam_sequence()).is_riesz


def test_check_full_suite_passes(tmp_path, capsys):
    path, _ = _gen_instance(tmp_path)
    rc = main(["check", str(path), "--n-max", "10"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "overall: pass" in out


def test_check_json_deterministic_modulo_timing(tmp_path, capsys):
    path, _ = _gen_instance(tmp_path)
    docs = []
    for _ in range(2):
        rc = main(["check", str(path), "--output", "json", "--n-max", "6",
                   "--suites", "classify,bounds,multiply,invert"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        for c in doc["checks"]:
            c.pop("wall_ms")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_check_invert_skipped_for_tiny_symbol(tmp_path, capsys):
    path, inst = _gen_instance(tmp_path)
    broken = pg.Instance(
        x1=inst.x1,
        x2=inst.x2,
        components=inst.components,
        frame_exponent=inst.frame_exponent,
        lam=inst.lam,
        theta=inst.theta,
        symbol=np.zeros_like(inst.symbol),
        seed=inst.seed,
    )
    path2 = tmp_path / "tiny.json"
    pg.save(broken, path2)
    rc = main(["check", str(path2), "--suites", "invert", "--output", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0  # a skipped precondition is not a failure
    assert doc["checks"][0]["status"] == "skipped"
    assert "symbol-too-small" in doc["checks"][0]["reason"]


def test_check_rank_deficient_reports_consistently(tmp_path, capsys):
    rng = np.random.default_rng(0)
    base = rng.standard_normal((1, 2))
    inst = pg.Instance(
        x1=pg.SpaceSpec(2, 2.0),
        x2=pg.SpaceSpec(2, 2.0),
        components=(pg.SpaceSpec(1, 2.0), pg.SpaceSpec(1, 2.0)),
        frame_exponent=2.0,
        lam=(base, 2.0 * base),  # exactly dependent: riesz-shaped but singular
        theta=(rng.standard_normal((1, 2)), rng.standard_normal((1, 2))),
        symbol=np.array([1.0, 1.0]),
    )
    path = tmp_path / "deficient.json"
    pg.save(inst, path)
    rc = main(["check", str(path), "--suites", "classify,equivalences", "--output", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    classify = doc["checks"][0]
    assert classify["status"] == "pass"
    assert classify["values"]["lam.is_riesz"] is False
    equiv = doc["checks"][1]
    assert equiv["status"] == "pass"
    assert equiv["values"]["lam.conditions"] == [False, False, False]


def test_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken json", encoding="utf-8")
    rc = main(["check", str(bad)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "instance error" in err

    rc = main(["check", str(tmp_path / "missing.json")])
    assert rc == 2


def test_bounds_and_multiply_commands(tmp_path, capsys):
    path, _ = _gen_instance(tmp_path)
    rc = main(["bounds", str(path), "--output", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert doc["estimate"] <= doc["upper"] + 1e-9

    rc = main(["multiply", str(path), "--apply", "1,0,0", "--output", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert len(doc["applied"]) == 3


def test_dual_and_invert_commands(tmp_path, capsys):
    path, _ = _gen_instance(tmp_path)
    rc = main(["dual", str(path), "--output", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert doc["lam.biorthogonality_residual"] <= 1e-9

    rc = main(["invert", str(path), "--output", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert max(doc["residual_left"], doc["residual_right"]) <= 1e-8


def test_perturb_and_continuity_commands(tmp_path, capsys):
    path, _ = _gen_instance(tmp_path)
    rc = main(["perturb", str(path), "--epsilon", "0.05"])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out
    rc = main(["continuity", str(path), "--kind", "symbol", "--n-max", "8", "--output", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert len(doc["steps"]) == 8
    assert all(s["measured"] <= s["bound"] + 1e-9 for s in doc["steps"])


def test_failing_check_exits_1(tmp_path, capsys, monkeypatch):
    import pgframes.checks as checks

    path, _ = _gen_instance(tmp_path)
    monkeypatch.setattr(
        checks,
        "_check_multiply",
        lambda inst, cfg: checks.CheckResult("multiply", "fail", "forced"),
    )
    rc = main(["check", str(path), "--suites", "multiply"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "overall: fail" in out


def test_global_flags_both_positions(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["--seed", "3", "gen", "--kind", "bessel", "--x2-dim", "2",
                 "--y-dims", "1,1", "--out", str(out1)]) == 0
    assert main(["gen", "--kind", "bessel", "--x2-dim", "2",
                 "--y-dims", "1,1", "--seed", "3", "--out", str(out2)]) == 0
    assert out1.read_text() == out2.read_text()
