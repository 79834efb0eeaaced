import json
from pathlib import Path

from gadget_forge.cli import main

CUBE_ARGS = ["--alpha", "90", "--beta-l", "90", "--beta-r", "90"]


def test_validate_ok(capsys):
    assert main(["validate", *CUBE_ARGS]) == 0
    assert "valid" in capsys.readouterr().out


def test_validate_failure_names_condition(capsys):
    rc = main(["validate", "--alpha", "90", "--beta-l", "45", "--beta-r", "45"])
    assert rc == 2
    assert "(iii)" in capsys.readouterr().out


def test_frame_output(capsys):
    assert main(["frame", *CUBE_ARGS]) == 0
    out = capsys.readouterr().out
    assert "r       = 1.41421356" in out
    assert "P   = (0.707106781, 0)" in out


def test_build_third_writes_fold(tmp_path: Path):
    out = tmp_path / "cube"
    rc = main(["build", "--construction", "third", *CUBE_ARGS, "--out", str(out)])
    assert rc == 0
    doc = json.loads((tmp_path / "cube.fold").read_text())
    assert doc["file_spec"] == 1.1
    hits = [
        v
        for v in doc["vertices_coords"]
        if abs(v[0] - 1.20710678) < 1e-6 and abs(v[1] - 0.5) < 1e-6
    ]
    assert hits, "E_L missing from FOLD vertices"


def test_build_both_formats_and_sidecars(tmp_path: Path):
    out = tmp_path / "g"
    rc = main(
        ["build", "--construction", "second", *CUBE_ARGS, "--theta", "0",
         "--out", str(out), "--format", "both",
         "--plot", str(tmp_path / "g.png"), "--report", str(tmp_path / "g.csv")]
    )
    assert rc == 0
    for suffix in (".fold", ".svg", ".png", ".csv"):
        assert (tmp_path / f"g{suffix}").exists()
    report = (tmp_path / "g.csv").read_text()
    assert "scalar:theta" in report


def test_build_infeasible_exit_code():
    rc = main(["build", "--construction", "onepleat", *CUBE_ARGS, "--delta-l", "10"])
    assert rc == 3


def test_usage_error_exit_code():
    assert main(["build", *CUBE_ARGS]) == 1
    assert main(["interfere", "--left", "nonsense", "--right", "x=1", "--shared-len", "1"]) == 1


def test_interfere_cube(capsys):
    rc = main(
        ["interfere", "--left", "alpha=90,beta_l=90,beta_r=90",
         "--right", "alpha=90,beta_l=90,beta_r=90", "--shared-len", "0.5"]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "COLLIDE" in out
    assert "0.585786" in out


def test_divide_invalid_plan(capsys):
    rc = main(["divide", "--alpha", "80", "--beta-l", "70", "--beta-r", "60", "--d", "3"])
    assert rc == 2
    assert "141.06" in capsys.readouterr().out


def test_divide_builds(tmp_path: Path):
    rc = main(["divide", *CUBE_ARGS, "--d", "2", "--out", str(tmp_path / "div"),
               "--format", "fold"])
    assert rc == 0
    assert (tmp_path / "div.fold").exists()


def test_config_file(tmp_path: Path):
    cfg = tmp_path / "spec.cfg"
    cfg.write_text("alpha=90\nbeta_l=90\nbeta-r=90\n# comment\n")
    assert main(["validate", "--config", str(cfg)]) == 0


def test_env_precision_override(tmp_path: Path, monkeypatch):
    out = tmp_path / "p"
    monkeypatch.setenv("GADGET_FORGE_PRECISION", "6")
    rc = main(["build", "--construction", "third", *CUBE_ARGS, "--out", str(out)])
    assert rc == 0
    doc = json.loads((tmp_path / "p.fold").read_text())
    for x, y in doc["vertices_coords"]:
        assert round(x, 6) == x and round(y, 6) == y


def test_flip_outputs_mirrored(tmp_path: Path):
    out = tmp_path / "f"
    rc = main(["build", "--construction", "third", *CUBE_ARGS, "--out", str(out), "--flip"])
    assert rc == 0
    doc = json.loads((tmp_path / "f.fold").read_text())
    # Mirrored left ridge copy lands at (-ab/sqrt(2), +ab/sqrt(2)).
    assert any(
        abs(v[0] + 0.707106781) < 1e-6 and abs(v[1] - 0.707106781) < 1e-6
        for v in doc["vertices_coords"]
    )


def test_batch(tmp_path: Path):
    batch = tmp_path / "jobs.txt"
    batch.write_text(
        "validate --alpha 90 --beta-l 90 --beta-r 90\n"
        "# a comment line\n"
        f"build --construction third --alpha 90 --beta-l 90 --beta-r 90 --out {tmp_path/'b1'}\n"
    )
    assert main(["batch", "--batch", str(batch)]) == 0
    assert (tmp_path / "b1.fold").exists()
    batch.write_text("validate --alpha 90 --beta-l 45 --beta-r 45\n")
    assert main(["batch", "--batch", str(batch)]) == 2
