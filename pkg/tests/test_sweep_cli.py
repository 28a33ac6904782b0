"""Sweep orchestration, power-law fitting, and the command line front end."""

import math
import os

import numpy as np
import pytest

from slwave import (
    FitError,
    ModelParams,
    SweepConfig,
    expected_exponent,
    fit_powerlaw,
    run_sweep,
    synthetic_fit_check,
    write_fit_txt,
    write_plot_dat,
    write_sweep_csv,
)
from slwave.cli import main, read_config

SMALL_SWEEP = dict(
    params=ModelParams(2.0, 2.0, 3.0, A=0.0, B=1.0),
    family="blowup-seed",
    eps_max=0.5,
    eps_count=5,
    dx=0.04,
    t_max=150.0,
)


def test_synthetic_fit_recovers_slope():
    fit = synthetic_fit_check(k=1.75, C=3.0, noise=0.02, seed=7)
    assert fit.rel_err < 0.03


def test_fit_powerlaw_exact_on_clean_data():
    eps = 0.5 * 0.8 ** np.arange(8)
    T = 2.0 * eps**-1.4
    fit = fit_powerlaw(eps, T, 1.4, drop_largest=1)
    assert fit.slope == pytest.approx(-1.4, rel=1e-12)
    assert fit.intercept == pytest.approx(math.log(2.0), rel=1e-10)
    assert fit.stderr < 1e-12
    assert fit.n_points == 7


def test_fit_refuses_few_points():
    eps = np.array([0.5, 0.4, 0.3, 0.2])
    T = eps**-2.0
    with pytest.raises(FitError):
        fit_powerlaw(eps, T, 2.0, drop_largest=1)


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(params=ModelParams(2, 2, 6), family="bump", eps_max=0.5, eps_ratio=1.2)
    with pytest.raises(ValueError):
        SweepConfig(params=ModelParams(2, 2, 6), family="bump", eps_max=0.5, eps_count=3)
    cfg = SweepConfig(params=ModelParams(2, 2, 6), family="bump", eps_max=0.5)
    grid = cfg.eps_grid
    assert len(grid) == 8
    assert np.allclose(grid[1:] / grid[:-1], 0.8)


@pytest.mark.parametrize(
    "A,B,mean_zero,expected",
    [
        (1.0, 1.0, True, 4.0 * 5.0 / 7.0),   # combined law, (2,2,6)
        (1.0, 0.0, True, 3.0),               # derivative term only: p+q-1
        (1.0, 0.0, False, 3.0),
        (0.0, 1.0, True, 6.0 * 5.0 / 7.0),   # power term only, zero mean
        (0.0, 1.0, False, 2.5),              # power term only, nonzero mean
    ],
)
def test_expected_exponent(A, B, mean_zero, expected):
    params = ModelParams(2.0, 2.0, 6.0, A=A, B=B)
    assert expected_exponent(params, mean_zero) == pytest.approx(expected, rel=1e-14)


def test_expected_exponent_rejects_trivial_equation():
    with pytest.raises(ValueError):
        expected_exponent(ModelParams(2.0, 2.0, 6.0, A=0.0, B=0.0), True)


@pytest.fixture(scope="module")
def small_sweep():
    return run_sweep(SweepConfig(**SMALL_SWEEP))


def test_small_sweep_fits_pure_power_law(small_sweep):
    measurements, fit = small_sweep
    assert all(m.accepted for m in measurements)
    # k = r(r-1)/(r+1) = 1.5 for zero-mean data; desk-scale grid is loose
    assert fit.k_theory == pytest.approx(1.5)
    assert fit.rel_err < 0.15


def test_output_files(small_sweep, tmp_path):
    measurements, fit = small_sweep
    csv = os.path.join(tmp_path, "sweep.csv")
    txt = os.path.join(tmp_path, "fit.txt")
    dat = os.path.join(tmp_path, "plot.dat")
    write_sweep_csv(measurements, csv)
    write_fit_txt(fit, txt)
    write_plot_dat(measurements, dat)
    lines = open(csv).read().strip().splitlines()
    assert lines[0] == "eps,dx,T_num,refined_T_num,rel_change,accepted"
    assert len(lines) == len(measurements) + 1
    row = lines[1].split(",")
    assert float(row[0]) == measurements[0].eps
    assert row[5] in ("true", "false")
    keys = [line.split()[0] for line in open(txt)]
    assert keys == ["slope", "intercept", "stderr", "k_theory", "rel_err", "n_points"]
    data_rows = [l for l in open(dat) if not l.startswith("#")]
    assert len(data_rows) == sum(
        m.accepted and math.isfinite(m.refined_T_num) for m in measurements
    )


def test_run_sweep_refuses_unconverged_grid():
    # t_max too small: nothing crosses, every refined value is the sentinel
    cfg = SweepConfig(
        params=ModelParams(2.0, 2.0, 6.0),
        family="bump",
        eps_max=0.01,
        eps_count=5,
        dx=0.05,
        t_max=2.0,
    )
    with pytest.raises(FitError):
        run_sweep(cfg)


# --- command line ----------------------------------------------------------


def test_cli_exponent_report(capsys):
    assert main(["exponent", "--p", "2", "--q", "2", "--r", "6",
                 "--family", "dipole", "--table"]) == 0
    out = capsys.readouterr().out
    assert "combined-effect" in out
    assert "2.85714285714" in out       # 20/7
    assert "2.5" in out                 # general theory
    assert "0.35714" in out             # gap 5/14
    # the (m, m, 2m+1) table lists positive gaps for m = 2..5
    rows = [l for l in out.splitlines() if l.strip().startswith(("2 ", "3 ", "4 ", "5 "))]
    assert len(rows) == 4


def test_cli_rejects_bad_params(capsys):
    assert main(["exponent", "--p", "0.5"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_unknown_verify_suite(capsys):
    assert main(["verify", "bogus"]) == 2


def test_cli_verify_operators(capsys):
    assert main(["verify", "operators"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 5 and "FAIL" not in out


def test_cli_config_file_with_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("p = 3.0\nq = 2.0  # comment\nr = 6.0\nfamily = dipole\n")
    assert main(["exponent", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert "p=3.0 q=2.0" in out
    # explicit flag beats the file
    assert main(["exponent", "--config", str(cfg), "--p", "2.0"]) == 0
    out = capsys.readouterr().out
    assert "p=2.0 q=2.0" in out
    parsed = read_config(str(cfg))
    assert parsed == {"p": "3.0", "q": "2.0", "r": "6.0", "family": "dipole"}


def test_cli_picard_trace(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code = main(["picard", "--family", "bump", "--eps", "0.05",
                 "--t-max", "3.0", "--out", str(trace)])
    assert code == 0
    assert "converged" in capsys.readouterr().out
    assert open(trace).readline().strip() == "j,d_j,rho_j,n1,n2,n3,n4"


def test_cli_simulate_writes_field(tmp_path, capsys):
    out = tmp_path / "field.csv"
    code = main(["simulate", "--family", "bump", "--eps", "0.05",
                 "--t-max", "1.0", "--dx", "0.05", "--out", str(out)])
    assert code == 0
    lines = open(out).read().splitlines()
    assert lines[0].startswith("# dx=")
    assert lines[1] == "x,t,u,w"


def _cli_sweep_args(out_dir):
    return [
        "sweep", "--p", "2", "--q", "2", "--r", "3", "--A", "0", "--B", "1",
        "--family", "blowup-seed", "--eps-max", "0.5", "--eps-count", "5",
        "--dx", "0.04", "--t-max", "150", "--out", str(out_dir),
    ]


def test_cli_sweep_deterministic(tmp_path, capsys):
    d1, d2 = tmp_path / "s1", tmp_path / "s2"
    assert main(_cli_sweep_args(d1)) == 0
    assert main(_cli_sweep_args(d2)) == 0
    for name in ("sweep.csv", "fit.txt", "plot.dat"):
        b1 = open(d1 / name, "rb").read()
        b2 = open(d2 / name, "rb").read()
        assert b1 == b2 and len(b1) > 0
