"""Command-line interface: subcommands, manifests, exit codes."""

import json
import os

import pytest

from holocode.cli import main


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_build_prints_counts(tmp_path, capsys):
    out = str(tmp_path / "code")
    rc, stdout, _ = run(["build", "--family", "heptagon", "--variant", "max",
                         "--radius", "2", "--out", out], capsys)
    assert rc == 0
    assert "n=42 k=8" in stdout
    assert os.path.exists(out + ".tab")
    assert os.path.exists(out + ".json")
    assert os.path.exists(out + ".manifest.json")


def test_build_zero_rate_five_qubit(tmp_path, capsys):
    rc, stdout, _ = run(["build", "--family", "pentagon", "--variant", "zero",
                         "--radius", "3", "--seed-code", "five_qubit"], capsys)
    assert rc == 0
    assert "n=95 k=1" in stdout


def test_build_reduced_radius_one(tmp_path, capsys):
    rc, stdout, _ = run(["build", "--family", "pentagon", "--variant",
                         "reduced", "--radius", "1", "--seed-code", "scf"],
                        capsys)
    assert rc == 0
    assert "n=5 k=1" in stdout


def test_build_bad_combination_exit_code(capsys):
    rc, _, err = run(["build", "--family", "heptagon", "--variant", "reduced",
                      "--radius", "2"], capsys)
    assert rc == 4
    assert "unsupported" in err


def test_decode_roundtrip(tmp_path, capsys):
    out = str(tmp_path / "code")
    run(["build", "--family", "heptagon", "--variant", "max", "--radius", "1",
         "--out", out], capsys)
    rc, stdout, _ = run(["decode", "--code", out, "--syndrome", "0x1"],
                        capsys)
    assert rc == 0
    assert "correction:" in stdout and "certified: True" in stdout


def test_decode_binary_syndrome(tmp_path, capsys):
    out = str(tmp_path / "code")
    run(["build", "--family", "heptagon", "--variant", "max", "--radius", "1",
         "--out", out], capsys)
    rc, stdout, _ = run(["decode", "--code", out, "--syndrome", "100000"],
                        capsys)
    assert rc == 0
    assert "weight: 1" in stdout


def test_distance_json(tmp_path, capsys):
    out = str(tmp_path / "dist.json")
    rc, stdout, _ = run(["distance", "--family", "pentagon", "--variant",
                         "reduced", "--radius", "2", "--qubit", "central",
                         "--out", out], capsys)
    assert rc == 0
    rows = json.load(open(out))
    assert rows[0]["bit_distance"] == 4
    assert rows[0]["bit_certified"] is True


def test_simulate_threshold_plotdata_pipeline(tmp_path, capsys):
    csv1 = str(tmp_path / "r1.csv")
    csv2 = str(tmp_path / "r2.csv")
    for radius, path in (("1", csv1), ("2", csv2)):
        rc, _, _ = run(["simulate", "--family", "heptagon", "--variant",
                        "max", "--radius", radius, "--weights", "all",
                        "--trials-per-weight", "40", "--seed", "3",
                        "--threads", "1", "--out", path], capsys)
        assert rc == 0
        assert os.path.exists(path)
        assert os.path.exists(path + ".manifest.json")
    outj = str(tmp_path / "th.json")
    rc, stdout, _ = run(["threshold", csv1, csv2, "--out", outj], capsys)
    report = json.loads(open(outj).read())
    if rc == 0:
        assert 0 < report["p_th"] < 0.5
    else:
        assert "error" in report
    outc = str(tmp_path / "plot.csv")
    rc, _, _ = run(["plotdata", csv2, "--p-min", "0.0", "--p-max", "0.2",
                    "--p-steps", "5", "--out", outc], capsys)
    assert rc == 0
    lines = open(outc).read().strip().splitlines()
    assert lines[0] == "p,p_failure,sigma"
    assert len(lines) == 6


def test_simulate_manifest_replay_byte_identical(tmp_path, capsys):
    first = str(tmp_path / "a.csv")
    rc, _, _ = run(["simulate", "--family", "pentagon", "--variant", "max",
                    "--radius", "1", "--seed-code", "scf", "--weights", "all",
                    "--trials-per-weight", "30", "--seed", "12",
                    "--threads", "1", "--out", first], capsys)
    assert rc == 0
    second = str(tmp_path / "b.csv")
    rc, _, _ = run(["--config", first + ".manifest.json", "simulate",
                    "--out", second], capsys)
    assert rc == 0
    assert open(first).read() == open(second).read()


def test_verify_passes(capsys):
    rc, stdout, _ = run(["verify", "--max-radius", "2"], capsys)
    assert rc == 0
    assert "FAIL" not in stdout
    assert "tiling heptagon/max R=6 n=22337" in stdout
    assert stdout.strip().endswith("0 failure(s)")


def test_reproduce_table3_small(tmp_path, capsys):
    outdir = str(tmp_path / "rep")
    rc, stdout, _ = run(["reproduce", "table3", "--max-radius", "1",
                         "--out-dir", outdir], capsys)
    assert rc == 0
    rows = json.load(open(os.path.join(outdir, "table3.json")))
    by_key = {(r["family"], r["variant"]): r for r in rows}
    assert by_key[("heptagon", "max")]["bit_distance"] == 3
    assert by_key[("pentagon", "reduced")]["bit_distance"] == 2
    assert by_key[("pentagon", "zero")]["bit_distance"] == 3


def test_reproduce_fig5_fits(tmp_path, capsys):
    outdir = str(tmp_path / "rep5")
    rc, stdout, _ = run(["reproduce", "fig5", "--max-radius", "3",
                         "--out-dir", outdir], capsys)
    assert rc == 0
    report = json.load(open(os.path.join(outdir, "fig5.json")))
    assert report["bit_points"][0][:2] == [7, 3]
    assert "bit_exponent" in report


def test_unknown_subcommand_is_bad_input(capsys):
    assert main(["frobnicate"]) == 4


def test_threads_env_fallback(monkeypatch):
    monkeypatch.setenv("HOLOCODE_THREADS", "3")
    from holocode.cli import _threads_default

    assert _threads_default() == 3
