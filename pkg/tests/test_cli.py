import json

import numpy as np
import pytest

from relaxeuler import riemann
from relaxeuler.cli import EXIT_ABORT, EXIT_INVALID, EXIT_OK, main
from relaxeuler.io import read_snapshot


def write_cfg(tmp_path, text, name="run.cfg"):
    f = tmp_path / name
    f.write_text(text.replace("OUT", str(tmp_path / "out")))
    return str(f)


def test_cases_lists_all(capsys):
    assert main(["cases"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    names = [ln.split()[0] for ln in lines]
    assert names == ["accuracy", "rarefaction", "isothermal-atmosphere", "general-steady", "perturbation",
                     "gresho-vortex"]


def test_run_isothermal_atmosphere(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "case = isothermal-atmosphere\nnx = 64\nny = 64\nt_final = 0.05\n"
                              "snapshot_every = 10\noutput_dir = OUT\n")
    assert main(["run", cfg]) == EXIT_OK
    out = capsys.readouterr().out
    assert "L1(rho)" in out
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert max(report["l1_errors"].values()) <= 1e-13
    assert report["config"]["case"] == "isothermal-atmosphere"
    final = read_snapshot(tmp_path / "out" / "final.csv")
    assert final["rho"].size == 64 * 64
    snaps = sorted((tmp_path / "out").glob("snapshot_*.csv"))
    assert snaps and snaps[0].name == "snapshot_0000010.csv"


def test_run_with_entropy_monitor(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "case = rarefaction\nnx = 16\nny = 16\nt_final = 0.02\norder = 1\n"
                              "entropy_monitor = true\noutput_dir = OUT\n")
    assert main(["run", cfg]) == EXIT_OK
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["max_entropy_residual"] <= 1e-12
    assert "entropy residual" in capsys.readouterr().out


def test_convergence_table(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "case = accuracy\noutput_dir = OUT\n")
    assert main(["convergence", cfg, "--levels", "16,32"]) == EXIT_OK
    table = json.loads((tmp_path / "out" / "convergence.json").read_text())
    assert [row["n"] for row in table["levels"]] == [16, 32]
    assert table["levels"][0]["eoc"] is None
    assert 1.5 < table["levels"][1]["eoc"]["rho"] < 2.2
    assert "EOC" in capsys.readouterr().out


@pytest.mark.parametrize("text", [
    "case = accuracy\ncolour = blue\n",          # unknown key
    "case = accuracy\neta = 0.1\n",              # key of another case
    "case = accuracy\nrho_bar = apriori\n",      # no hydrostatic profile
    "case = rarefaction\nboundary = dirichlet-exact\n",
    "case = accuracy\norder = 2\nentropy_monitor = true\n",
    "case = accuracy\ncase = rarefaction\n",     # duplicate
    "case = nowhere\n",
    "scheme = two-speed\n",                      # no case
    "case = accuracy\ncfl = -1\n",
    "case = accuracy\nnx = many\n",
])
def test_invalid_config_exit_code(tmp_path, text, capsys):
    assert main(["run", write_cfg(tmp_path, text + "output_dir = OUT\n")]) == EXIT_INVALID
    assert "error" in capsys.readouterr().err
    assert not (tmp_path / "out" / "report.json").exists()


def test_convergence_needs_exact_solution(tmp_path):
    cfg = write_cfg(tmp_path, "case = perturbation\noutput_dir = OUT\n")
    assert main(["convergence", cfg, "--levels", "8,16"]) == EXIT_INVALID
    cfg = write_cfg(tmp_path, "case = accuracy\noutput_dir = OUT\n", "b.cfg")
    assert main(["convergence", cfg, "--levels", "8"]) == EXIT_INVALID


def test_missing_file_and_bad_usage(tmp_path):
    assert main(["run", str(tmp_path / "none.cfg")]) == EXIT_INVALID
    assert main(["frobnicate"]) == EXIT_INVALID


def test_positivity_abort_exit_code(tmp_path, monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise riemann.PositivityError("intermediate density not positive", {"face": (0, 0)})

    from relaxeuler import _pykernels

    monkeypatch.setattr(_pykernels, "solve_faces", broken)
    cfg = write_cfg(tmp_path, "case = accuracy\nnx = 8\nny = 8\nbackend = python\noutput_dir = OUT\n")
    assert main(["run", cfg]) == EXIT_ABORT
    assert "aborted" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "relaxeuler", "cases"], capture_output=True, text=True)
    assert out.returncode == 0 and "gresho-vortex" in out.stdout
