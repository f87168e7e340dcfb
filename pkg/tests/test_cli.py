import subprocess
import sys

import numpy as np
import pytest

from netunfold import io as nio
from netunfold.cli import main
from netunfold.theory import poisson_delta3


def test_theory_subcommand(tmp_path):
    out = tmp_path / "curve.csv"
    code = main(["theory", "poisson_delta3", "--grid", "1:5:1", "--out", str(out)])
    assert code == 0
    curve = nio.read_statcurve_csv(out)
    np.testing.assert_allclose(curve.means, poisson_delta3(curve.L_values))
    assert curve.method == "poisson_delta3"


def test_theory_semicircle_requires_parameters(tmp_path):
    code = main([
        "theory", "semicircle_density", "--grid", "0:1:0.5",
        "--out", str(tmp_path / "x.csv"),
    ])
    assert code == 2


def test_generate_then_analyze(tmp_path):
    gen_dir = tmp_path / "gen"
    code = main([
        "generate", "--n", "150", "--p", "0.25", "--count", "1",
        "--seed", "11", "--out", str(gen_dir),
    ])
    assert code == 0
    edges = gen_dir / "member_000.edges"
    assert edges.exists()
    out_dir = tmp_path / "analysis"
    code = main([
        "analyze", str(edges), "--methods", "poly3", "--seed", "1",
        "--out", str(out_dir), "--l-grid", "0.5:8:0.5",
    ])
    assert code == 0
    assert (out_dir / "analyze_delta3_poly3.csv").exists()
    assert (out_dir / "analyze_manifest.json").exists()


def test_run_subcommand_with_config(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        "[ensemble]\ncount = 2\nn = 100\np_intra = 0.3\nseed = 7\n"
        "[unfolding]\nmethods = poly3\n"
        "[statistics]\nnnsd = true\ndelta3 = false\nl_max = 5\n"
        f"[output]\ndir = {tmp_path / 'out'}\nprefix = cli\n"
    )
    assert main(["run", "--config", str(cfg)]) == 0
    assert (tmp_path / "out" / "cli_nnsd_poly3.csv").exists()
    # CLI seed override changes the output
    assert main(["run", "--config", str(cfg), "--seed", "8",
                 "--out", str(tmp_path / "out2")]) == 0
    a = (tmp_path / "out" / "cli_nnsd_poly3.csv").read_bytes()
    b = (tmp_path / "out2" / "cli_nnsd_poly3.csv").read_bytes()
    assert a != b


def test_exit_code_missing_config(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 4


def test_exit_code_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[ensemble]\ncount = 1\nn = 50\np_intra = 0.5\nseed = 1\nwat = 1\n")
    assert main(["run", "--config", str(cfg)]) == 2


def test_exit_code_numerical_failure(tmp_path):
    tiny = tmp_path / "tiny.edges"
    tiny.write_text("0 1\n1 2\n")
    assert main(["analyze", str(tiny), "--out", str(tmp_path / "o")]) == 3


def test_exit_code_bad_figure_id():
    with pytest.raises(SystemExit) as err:
        main(["reproduce-fig", "9"])
    assert err.value.code == 2


def test_bad_grid_is_config_error(tmp_path):
    assert main(["theory", "poisson_nnsd", "--grid", "oops",
                 "--out", str(tmp_path / "x.csv")]) == 2


def test_env_var_default_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("NETUNFOLD_OUTPUT_DIR", str(tmp_path / "envout"))
    assert main(["theory", "poisson_nnsd", "--grid", "0:2:1"]) == 0
    assert (tmp_path / "envout" / "poisson_nnsd.csv").exists()


def test_console_script_runs(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "netunfold.cli", "theory", "goe_sigma2",
         "--grid", "1:3:1", "--out", str(tmp_path / "s.csv")],
        capture_output=True, text=True,
    )
    assert out.returncode == 0, out.stderr
    assert (tmp_path / "s.csv").exists()
