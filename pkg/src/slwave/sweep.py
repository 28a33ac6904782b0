"""Lifespan sweeps over amplitude grids and power-law exponent fits.

A sweep measures the numerical lifespan T_num(eps) over a geometric eps grid
(parallel across grid points), fits log T = -k log eps + b by least squares
over accepted measurements, and compares the slope against the predicted
exponent.  Output files: sweep.csv (one row per measurement), fit.txt (the
fitted slope and its comparison), plot.dat (gnuplot-ready columns).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exponents import ModelParams, lifespan_exponent
from .profiles import make_data
from .solver import LifespanMeasurement, measure_lifespan


class FitError(RuntimeError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    params: ModelParams
    family: str
    eps_max: float
    eps_ratio: float = 0.8
    eps_count: int = 8
    dx: float = 0.02
    R: float = 1.0
    t_max: float = 2000.0
    threshold: float | None = None
    tol_refine: float = 0.05
    drop_largest: int = 1     # pre-asymptotic points removed from the fit
    seed: int = 0             # recorded in outputs; measurements are deterministic
    n_jobs: int = 1           # python-level workers; the marching kernel is
                              # internally multithreaded, so 1 is the default

    def __post_init__(self):
        if not 0.0 < self.eps_ratio < 1.0:
            raise ValueError(f"eps_ratio must lie in (0,1), got {self.eps_ratio}")
        if self.eps_count < 4:
            raise ValueError(f"need at least 4 grid points for fitting, got {self.eps_count}")

    @property
    def eps_grid(self) -> np.ndarray:
        return self.eps_max * self.eps_ratio ** np.arange(self.eps_count)


@dataclass(frozen=True)
class FitResult:
    slope: float       # fitted d log T / d log eps (negative)
    intercept: float
    stderr: float
    k_theory: float
    rel_err: float     # |slope + k_theory| / k_theory
    n_points: int


def expected_exponent(params: ModelParams, mean_zero: bool) -> float:
    """Predicted lifespan exponent, honoring degenerate A = 0 or B = 0.

    With both coefficients positive this is the sharp combined law; with one
    term absent the law of the surviving term applies.
    """
    s, r = params.pq, params.r
    if params.A > 0.0 and params.B > 0.0:
        return lifespan_exponent(params, mean_zero).exponent_k
    if params.B == 0.0 and params.A > 0.0:
        return s - 1.0
    if params.A == 0.0 and params.B > 0.0:
        return r * (r - 1.0) / (r + 1.0) if mean_zero else (r - 1.0) / 2.0
    raise ValueError("expected_exponent needs at least one positive coefficient")


def fit_powerlaw(
    eps: np.ndarray, T: np.ndarray, k_theory: float, drop_largest: int = 1
) -> FitResult:
    """Least-squares fit of log T against log eps after dropping the largest
    eps values (pre-asymptotic); refuses to fit fewer than 4 points."""
    eps = np.asarray(eps, dtype=float)
    T = np.asarray(T, dtype=float)
    order = np.argsort(eps)[::-1]
    keep = order[drop_largest:]
    if len(keep) < 4:
        raise FitError(
            f"only {len(keep)} points remain after dropping {drop_largest}; need >= 4"
        )
    x = np.log(eps[keep])
    y = np.log(T[keep])
    n = len(x)
    A = np.vstack([x, np.ones(n)]).T
    coef, res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    slope, intercept = float(coef[0]), float(coef[1])
    if n > 2 and res.size:
        s2 = float(res[0]) / (n - 2)
        sxx = float(np.sum((x - x.mean()) ** 2))
        stderr = math.sqrt(s2 / sxx)
    else:
        stderr = 0.0
    rel_err = abs(slope + k_theory) / k_theory
    return FitResult(slope, intercept, stderr, k_theory, rel_err, n)


def run_sweep(config: SweepConfig) -> tuple[list[LifespanMeasurement], FitResult]:
    """Measure T_num over the eps grid and fit the power law.

    Only accepted finite measurements enter the fit; fewer than 4 of them is
    a FitError carrying the measurement list in its message.
    """
    params = config.params

    def one(eps: float) -> LifespanMeasurement:
        data = make_data(config.family, config.R, float(eps))
        return measure_lifespan(
            data, params, config.dx, config.t_max,
            threshold=config.threshold, tol_refine=config.tol_refine,
        )

    with ThreadPoolExecutor(max_workers=config.n_jobs) as pool:
        measurements = list(pool.map(one, config.eps_grid))

    data0 = make_data(config.family, config.R, config.eps_max)
    k_theory = expected_exponent(params, data0.mean_zero)
    good = [m for m in measurements if m.accepted and math.isfinite(m.refined_T_num)]
    if len(good) < 4 + config.drop_largest:
        raise FitError(
            f"{len(good)} accepted finite measurements of {len(measurements)}; "
            f"need {4 + config.drop_largest} "
            f"(rel_changes: {[round(m.rel_change, 4) for m in measurements]})"
        )
    fit = fit_powerlaw(
        np.array([m.eps for m in good]),
        np.array([m.refined_T_num for m in good]),
        k_theory,
        config.drop_largest,
    )
    return measurements, fit


def write_sweep_csv(measurements: list[LifespanMeasurement], path: str) -> None:
    with open(path, "w") as fh:
        fh.write("eps,dx,T_num,refined_T_num,rel_change,accepted\n")
        for m in measurements:
            fh.write(
                f"{m.eps:.17g},{m.dx:.17g},{m.T_num:.17g},{m.refined_T_num:.17g},"
                f"{m.rel_change:.17g},{str(m.accepted).lower()}\n"
            )


def write_fit_txt(fit: FitResult, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"slope {fit.slope:.17g}\n")
        fh.write(f"intercept {fit.intercept:.17g}\n")
        fh.write(f"stderr {fit.stderr:.17g}\n")
        fh.write(f"k_theory {fit.k_theory:.17g}\n")
        fh.write(f"rel_err {fit.rel_err:.17g}\n")
        fh.write(f"n_points {fit.n_points}\n")


def write_plot_dat(measurements: list[LifespanMeasurement], path: str) -> None:
    """Two whitespace columns (eps, refined T_num) for log-log plotting."""
    with open(path, "w") as fh:
        fh.write("# eps  T_num (refined); accepted measurements only\n")
        for m in measurements:
            if m.accepted and math.isfinite(m.refined_T_num):
                fh.write(f"{m.eps:.17g} {m.refined_T_num:.17g}\n")


def synthetic_fit_check(
    k: float = 1.75, C: float = 3.0, noise: float = 0.02, seed: int = 7
) -> FitResult:
    """Recover the slope from synthetic T = C eps^{-k} with multiplicative
    noise; sanity oracle for the fitting path."""
    rng = np.random.default_rng(seed)
    eps = 0.5 * 0.8 ** np.arange(10)
    T = C * eps ** (-k) * (1.0 + noise * rng.standard_normal(eps.size))
    return fit_powerlaw(eps, T, k, drop_largest=1)
