"""Acceptance gate: one test per criterion, at the stated tolerances.

Criteria:
1. exponent algebra reproduces every branch, beats the general theory at
   (2,2,6) zero-mean, exact arithmetic in under a millisecond;
2. strong Huygens residual <= 1e-14 for the dipole family;
3. operator identities exact to rounding with observed order >= 1.9;
4. Picard contraction ratios <= 0.55 and iterate norms inside the
   3 M eps / 5 N eps^{min(p+q,r)} bands at half the empirically located
   convergence boundary;
5. fitted lifespan slopes within 15% of the predicted exponents for the
   derivative-only, power-only, and combined configurations, the combined
   fit at least 10% below the derivative-law fit on identical data;
6. blow-up oracles (closed forms, S_r, Z-root slope) and the inequality
   residuals of the seed/ODI/initial/characteristic checks;
7. byte-identical sweep artifacts under repetition.

The sweep criteria march a few hundred thousand steps and dominate the
runtime; everything else is seconds.
"""

import math
import os
import time

import numpy as np
import pytest

from slwave import (
    ModelParams,
    PicardDivergence,
    SweepConfig,
    c41_constant,
    check_pointwise_seed,
    evolve,
    f_functional_checks,
    free_solution_lattice,
    general_theory_exponent,
    huygens_residual,
    lifespan_exponent,
    make_data,
    make_lattice,
    measured_E,
    norms,
    op_L_lattice,
    op_Lbar_lattice,
    op_Lprime_lattice,
    picard_nonzero,
    picard_zero,
    run_sweep,
    s_constant,
    s_constant_series,
    sequence_closed_form,
    sequences,
    write_fit_txt,
    write_plot_dat,
    write_sweep_csv,
    z_root_on_ray,
    zhou_characteristic,
)


def _report(name, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_1_exponent_algebra():
    cases = [
        (ModelParams(2.0, 2.0, 6.0), False, 2.5),
        (ModelParams(1.5, 1.5, 9.0), False, 2.0),
        (ModelParams(2.0, 2.0, 6.0), True, 20.0 / 7.0),
        (ModelParams(1.1, 1.1, 6.0), True, 1.2),
        (ModelParams(4.0, 4.0, 3.0), True, 1.5),
    ]
    exact = all(
        lifespan_exponent(p, mz).exponent_k == pytest.approx(k, rel=1e-14)
        for p, mz, k in cases
    )
    params = ModelParams(2.0, 2.0, 6.0)
    beats = (
        lifespan_exponent(params, True).exponent_k == pytest.approx(20.0 / 7.0)
        and general_theory_exponent(params, True).exponent_k == pytest.approx(2.5)
    )
    t0 = time.perf_counter()
    for _ in range(1000):
        lifespan_exponent(params, True)
    per_call = (time.perf_counter() - t0) / 1000.0
    _report(
        "criterion 1 (exponent algebra)",
        exact and beats and per_call < 1e-3,
        f"branches exact={exact}, 20/7 > 5/2={beats}, {per_call * 1e6:.1f} us/call",
    )


def test_criterion_2_strong_huygens():
    t0 = time.perf_counter()
    res, zero = huygens_residual(make_data("dipole", 1.0, 1.0), 4.0, 0.02)
    dt = time.perf_counter() - t0
    _report(
        "criterion 2 (strong Huygens)",
        zero and res <= 1e-14 and dt < 1.0,
        f"residual {res:.2e} <= 1e-14, {dt:.2f} s",
    )


def test_criterion_3_operator_identities():
    t0 = time.perf_counter()
    lat = make_lattice(0.05, 2.0, 1.0)
    X, T = np.meshgrid(lat.x, lat.t)
    inside = np.abs(X) + T <= lat.x[-1] + 1e-12
    ones = np.ones_like(X)
    ident = max(
        float(np.max(np.abs((op_L_lattice(ones, lat) - T * T / 2.0)[inside]))),
        float(np.max(np.abs((op_Lprime_lattice(ones, lat) - T)[inside]))),
        float(np.max(np.abs(op_Lbar_lattice(ones, lat)[inside]))),
    )
    integrand = lambda y, s: np.exp(0.3 * y - 0.2 * s)
    errs = []
    for dx in (0.1, 0.05, 0.025):
        lc, lf = make_lattice(dx, 2.0, 1.0), make_lattice(dx / 2.0, 2.0, 1.0)
        Xc, Tc = np.meshgrid(lc.x, lc.t)
        Xf, Tf = np.meshgrid(lf.x, lf.t)
        c, f = op_L_lattice(integrand(Xc, Tc), lc), op_L_lattice(integrand(Xf, Tf), lf)
        errs.append(
            max(
                abs(c[lc.t_index(t), lc.x_index(x)] - f[lf.t_index(t), lf.x_index(x)])
                for x, t in [(0.0, 1.0), (0.5, 1.5), (-0.5, 2.0)]
            )
        )
    order = min(math.log2(errs[i] / errs[i + 1]) for i in range(2))
    dt = time.perf_counter() - t0
    _report(
        "criterion 3 (operator identities)",
        ident < 1e-12 and order >= 1.9 and dt < 10.0,
        f"identity residual {ident:.2e}, observed order {order:.3f}, {dt:.1f} s",
    )


def _boundary_eps(scheme, family, params, k, dx=0.1, c=0.02):
    """Smallest doubling eps at which the scaled-window iteration fails."""
    eps = 0.025
    while eps < 64.0:
        T = min(max(c * eps**-k, 1.0), 8.0)
        T = round(T / dx) * dx
        data = make_data(family, 1.0, eps)
        lat = make_lattice(dx, T, 1.0)
        try:
            _, trace = scheme(data, params, T, lat)
            ok = trace.converged
        except PicardDivergence:
            ok = False
        if not ok:
            return eps
        eps *= 2.0
    raise AssertionError("no convergence boundary found below eps = 64")


def test_criterion_4_picard_contraction():
    t0 = time.perf_counter()
    params = ModelParams(2.0, 2.0, 6.0)
    dx, c = 0.05, 0.02
    details = []
    ok = True

    # nonzero-mean scheme on bump data
    k = lifespan_exponent(params, False).exponent_k
    eps = 0.5 * _boundary_eps(picard_nonzero, "bump", params, k, c=c)
    T = round(min(max(c * eps**-k, 1.0), 8.0) / dx) * dx
    data = make_data("bump", 1.0, eps)
    lat = make_lattice(dx, T, 1.0)
    fld, trace = picard_nonzero(data, params, T, lat)
    rep = norms(fld.u, fld.w, lat, 1.0, T)
    rho = max(trace.rho)
    band = rep.n1 + rep.n2 <= 3.0 * trace.M * eps
    ok &= trace.converged and rho <= 0.55 and band
    details.append(f"nonzero eps={eps:g} rho={rho:.3f} band={band}")

    # zero-mean scheme on dipole data, with the measured constant E
    k = lifespan_exponent(params, True).exponent_k
    eps = 0.5 * _boundary_eps(picard_zero, "dipole", params, k, c=c)
    T = round(min(max(c * eps**-k, 1.0), 8.0) / dx) * dx
    data = make_data("dipole", 1.0, eps)
    lat = make_lattice(dx, T, 1.0)
    E = measured_E(params)
    fld, trace = picard_zero(data, params, T, lat, E=E)
    u0, u0_t = free_solution_lattice(data, lat)
    rep = norms(fld.u - eps * u0, fld.w - eps * u0_t, lat, 1.0, T)
    rho = max(trace.rho)
    band = rep.n3 + rep.n4 <= 5.0 * trace.N * eps ** min(params.pq, params.r)
    ok &= trace.converged and rho <= 0.55 and band
    details.append(f"zero eps={eps:g} rho={rho:.3f} band={band}")

    dt = time.perf_counter() - t0
    _report("criterion 4 (Picard contraction)", ok and dt < 120.0,
            "; ".join(details) + f"; {dt:.1f} s")


def _sweep(params, family, eps_max, dx):
    cfg = SweepConfig(params=params, family=family, eps_max=eps_max,
                      dx=dx, t_max=2000.0)
    return run_sweep(cfg)


def test_criterion_5a_derivative_law():
    _, fit = _sweep(ModelParams(1.5, 1.5, 3.0, A=1.0, B=0.0), "bump", 0.5, 0.02)
    _report(
        "criterion 5a (A only, nonzero mean, k = p+q-1 = 2)",
        fit.rel_err <= 0.15,
        f"slope {fit.slope:.4f} vs -2, rel err {fit.rel_err:.1%} <= 15%",
    )


def test_criterion_5b_power_law():
    _, fit = _sweep(ModelParams(2.0, 2.0, 3.0, A=0.0, B=1.0), "blowup-seed", 0.5, 0.02)
    _report(
        "criterion 5b (B only, zero mean, k = r(r-1)/(r+1) = 1.5)",
        fit.rel_err <= 0.15,
        f"slope {fit.slope:.4f} vs -1.5, rel err {fit.rel_err:.1%} <= 15%",
    )


def test_criterion_5c_combined_law():
    # strict combined-regime triple: (r+1)/2 = 2 < p+q = 2.6 < r = 3
    _, fit_ab = _sweep(ModelParams(1.3, 1.3, 3.0, A=1.0, B=1.0), "dipole", 0.09, 0.04)
    _, fit_a = _sweep(ModelParams(1.3, 1.3, 3.0, A=1.0, B=0.0), "dipole", 0.09, 0.04)
    k_ab, k_a = -fit_ab.slope, -fit_a.slope
    separation = (k_a - k_ab) / k_a
    _report(
        "criterion 5c (combined, zero mean, k = (p+q)(r-1)/(r+1) = 1.3)",
        fit_ab.rel_err <= 0.15 and separation >= 0.10,
        f"slope {fit_ab.slope:.4f} vs -1.3 (rel err {fit_ab.rel_err:.1%} <= 15%), "
        f"A-only fit {fit_a.slope:.4f}, separation {separation:.1%} >= 10%",
    )


def test_criterion_6_blowup_oracles():
    t0 = time.perf_counter()
    params = ModelParams(2.0, 2.0, 6.0)
    seq = sequences(params, 60)
    err_seq = max(
        abs(seq.a[n] - sequence_closed_form(params.pq, n + 1))
        / max(1.0, abs(seq.a[n]))
        for n in range(seq.n_max)
    )
    err_s = max(abs(s_constant(r) - s_constant_series(r, 400)) for r in (1.5, 2.0, 3.0, 6.0))
    seed_data = make_data("blowup-seed", 1.0, 1.0)
    eps_grid = np.geomspace(1e-8, 1e-6, 8)
    roots = [z_root_on_ray(params, seed_data, e) for e in eps_grid]
    err_slope = abs(np.polyfit(np.log(eps_grid), np.log(roots), 1)[0] + params.pq - 1.0)
    err_c41 = abs(c41_constant(2.0, 1.0, 1.0, 1.0) - 256.0)

    # inequality residuals on an accepted short run
    run_params = ModelParams(1.5, 1.5, 3.0)
    data = make_data("blowup-seed", 1.0, 0.3)
    fld = evolve(data, run_params, 3.0, 0.02, storage="full").to_field()
    seed_margin = check_pointwise_seed(fld, data)
    frep = f_functional_checks(fld, data, run_params)
    err_init = abs(frep.F0 - frep.F0_expected)
    bump = make_data("bump", 1.0, 0.1)
    zfld = evolve(bump, params, 5.0, 0.02, storage="full").to_field()
    zrep = zhou_characteristic(zfld, bump, params)
    tol = lambda scale: -1e-6 * scale
    residuals_ok = (
        seed_margin >= tol(data.f0 * data.eps)
        and frep.odi_residual_min >= tol(abs(frep.F0_expected))
        and frep.quad_residual_min >= tol(abs(frep.F0_expected))
        and err_init <= 1e-3 * abs(frep.F0_expected)
        and zrep.residual_min >= tol(zrep.G * bump.eps)
    )
    dt = time.perf_counter() - t0
    _report(
        "criterion 6 (blow-up oracles)",
        err_seq <= 1e-12 and err_s <= 1e-12 and err_slope <= 1e-6
        and err_c41 <= 1e-10 and residuals_ok and dt < 120.0,
        f"closed form {err_seq:.1e}, S_r {err_s:.1e}, Z-root slope {err_slope:.1e}, "
        f"residuals seed={seed_margin:+.1e} odi={frep.odi_residual_min:+.1e} "
        f"quad={frep.quad_residual_min:+.1e} char={zrep.residual_min:+.1e}; {dt:.0f} s",
    )


def test_criterion_7_determinism(tmp_path):
    cfg = SweepConfig(
        params=ModelParams(2.0, 2.0, 3.0, A=0.0, B=1.0),
        family="blowup-seed", eps_max=0.5, eps_count=5, dx=0.04, t_max=150.0,
    )
    blobs = []
    for tag in ("first", "second"):
        d = tmp_path / tag
        os.makedirs(d)
        measurements, fit = run_sweep(cfg)
        write_sweep_csv(measurements, str(d / "sweep.csv"))
        write_fit_txt(fit, str(d / "fit.txt"))
        write_plot_dat(measurements, str(d / "plot.dat"))
        blobs.append({n: open(d / n, "rb").read()
                      for n in ("sweep.csv", "fit.txt", "plot.dat")})
    same = all(blobs[0][n] == blobs[1][n] and len(blobs[0][n]) > 0 for n in blobs[0])
    _report("criterion 7 (determinism)", same,
            "repeated sweep artifacts byte-identical")
