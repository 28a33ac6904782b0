"""Blow-up machinery: iteration sequences, the Z threshold, ordinary
differential inequality checks for F(t), and the characteristic functional.

Everything operates either on closed forms (sequences, Z, the upper-bound
witness time) or as post-processing of an evolved field (the discrete
inequality checks).  The double-exponential amplitude sequence M_n is kept in
log scale throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exponents import ModelParams
from .profiles import InitialData
from .wave_core import Field


def s_constant(r: float) -> float:
    """S_r = sum_{j>=0} (j+1)/r^{j+1} = r/(r-1)^2, the derivative of the
    geometric series at 1/r."""
    if not r > 1.0:
        raise ValueError(f"the series requires r > 1, got r={r}")
    return r / (r - 1.0) ** 2


def s_constant_series(r: float, n_terms: int = 200) -> float:
    """Truncated series for S_r; cross-check for the closed form."""
    # cap the terms before r**(j+1) overflows; the tail is below underflow
    n = min(n_terms, int(700.0 / math.log(r)))
    j = np.arange(n)
    return float(np.sum((j + 1.0) / r ** (j + 1.0)))


def sequence_closed_form(pq: float, n: int) -> float:
    """a_n = ((p+q)^{n-1} - 1)/(p+q - 1)."""
    return (pq ** (n - 1) - 1.0) / (pq - 1.0)


@dataclass(frozen=True)
class BlowupSequences:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    logM: np.ndarray
    n_max: int
    C5: float
    S: float
    C6: float
    truncated: bool = False   # set when a_n overflowed before n_max


def sequences(
    params: ModelParams, n_max: int, f0: float = 1.0, eps: float = 1.0
) -> BlowupSequences:
    """Unroll the iteration sequences a, b, c and log M up to n_max.

    a_{n+1} = (p+q)a_n + 1, b_{n+1} = q b_n + p c_n + 1, c_{n+1} = q b_n + p c_n,
    log M_{n+1} = log(A C5) - 2n log(p+q) + (p+q) log M_n, M_1 = f0*eps/2.
    """
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    pq = params.pq
    C5 = (pq - 1.0) ** 2 / 4.0
    S = s_constant(pq)
    C6 = (params.A * C5) ** (-2.0 / (pq - 1.0))
    a = np.zeros(n_max)
    b = np.zeros(n_max)
    c = np.zeros(n_max)
    logM = np.zeros(n_max)
    logM[0] = math.log(0.5 * f0 * eps)
    truncated = False
    n_eff = n_max
    log_AC5 = math.log(params.A * C5)
    for n in range(n_max - 1):
        a[n + 1] = pq * a[n] + 1.0
        b[n + 1] = params.q * b[n] + params.p * c[n] + 1.0
        c[n + 1] = params.q * b[n] + params.p * c[n]
        logM[n + 1] = log_AC5 - 2.0 * (n + 1) * math.log(pq) + pq * logM[n]
        if not (math.isfinite(a[n + 1]) and math.isfinite(logM[n + 1])):
            truncated = True
            n_eff = n + 1
            break
    return BlowupSequences(
        a=a[:n_eff], b=b[:n_eff], c=c[:n_eff], logM=logM[:n_eff],
        n_max=n_eff, C5=C5, S=S, C6=C6, truncated=truncated,
    )


def in_sigma(x, t, R: float):
    """Membership in the blow-up set {x >= 0, t+x >= R, 0 < t-x < R/2}."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return (x >= 0.0) & (t + x >= R) & (t - x > 0.0) & (t - x < R / 2.0)


def z_function(
    params: ModelParams, data: InitialData, eps: float, x, t
) -> np.ndarray:
    """Z(x,t) whose positivity at a single point of Sigma forces blow-up.

    Z = (1/(p+q-1)) log{(t+x-R)^2 (t-x)} + (2/(p+q-1)) log(A C5)
        - 4 S_{p+q} log(p+q) + 2 log(f0 eps / 2).
    """
    if data.f0 <= 0.0:
        raise ValueError("z_function needs data with a positive plateau constant f0")
    if params.A <= 0.0:
        raise ValueError("z_function needs A > 0")
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if not np.all(in_sigma(x, t, data.R)):
        raise ValueError("all points must lie in the blow-up set Sigma")
    pq, R = params.pq, data.R
    C5 = (pq - 1.0) ** 2 / 4.0
    S = s_constant(pq)
    out = (
        np.log((t + x - R) ** 2 * (t - x)) / (pq - 1.0)
        + 2.0 / (pq - 1.0) * math.log(params.A * C5)
        - 4.0 * S * math.log(pq)
        + 2.0 * math.log(0.5 * data.f0 * eps)
    )
    return out if out.shape else float(out)


def z_root_on_ray(params: ModelParams, data: InitialData, eps: float) -> float:
    """The root t0 of Z = 0 along the ray t = x + R/4.

    On the ray, (t+x-R)^2 (t-x) = (2t - 5R/4)^2 (R/4), so the root is
    t0 = 5R/8 + sqrt((4/R) exp(-(p+q-1) K)) / 2 with K the t-independent
    part of Z; t0 scales as eps^{-(p+q-1)}.
    """
    pq, R = params.pq, data.R
    C5 = (pq - 1.0) ** 2 / 4.0
    S = s_constant(pq)
    K = (
        2.0 / (pq - 1.0) * math.log(params.A * C5)
        - 4.0 * S * math.log(pq)
        + 2.0 * math.log(0.5 * data.f0 * eps)
    )
    # log((R/4)(2t - 5R/4)^2) = -(pq-1) K
    half_span = 0.5 * math.sqrt((4.0 / R) * math.exp(-(pq - 1.0) * K))
    return 5.0 * R / 8.0 + half_span


def c41_constant(pq: float, A: float, R: float, f0: float) -> float:
    """C41 = (2/sqrt(R)) (p+q)^{2(p+q-1) S_{p+q}} / (A C5 (f0/2)^{p+q-1})."""
    C5 = (pq - 1.0) ** 2 / 4.0
    S = s_constant(pq)
    return (
        2.0 / math.sqrt(R)
        * pq ** (2.0 * (pq - 1.0) * S)
        / (A * C5 * (0.5 * f0) ** (pq - 1.0))
    )


def upper_bound_T(params: ModelParams, data: InitialData, eps: float) -> float:
    """Theoretical witness time C41 * eps^{-(p+q-1)}, floored at 5R/4."""
    if params.A <= 0.0:
        raise ValueError("the upper bound requires A > 0 (derivative-type term)")
    if data.f0 <= 0.0:
        raise ValueError("upper_bound_T needs data with a positive plateau constant f0")
    C41 = c41_constant(params.pq, params.A, data.R, data.f0)
    return max(C41 * eps ** -(params.pq - 1.0), 5.0 * data.R / 4.0)


def check_pointwise_seed(field: Field, data: InitialData) -> float:
    """min over Sigma lattice points of min(u, w) - f0*eps/2; >= -O(dx^2)."""
    if data.f0 <= 0.0:
        raise ValueError("check_pointwise_seed needs blowup-seed style data")
    lat = field.lattice
    nt = field.u.shape[0]
    X, T = np.meshgrid(lat.x, lat.t[:nt])
    mask = in_sigma(X, T, data.R)
    if not np.any(mask):
        raise ValueError("the field horizon does not reach the blow-up set Sigma")
    floor = 0.5 * data.f0 * data.eps
    return float(np.min(np.minimum(field.u[:nt][mask], field.w[:nt][mask]) - floor))


@dataclass(frozen=True)
class FCheckReport:
    F0: float
    F0_expected: float        # eps * integral of f
    Fprime0: float
    odi_residual_min: float   # min_t [F'' - 2^{1-r} B (t+R)^{-(r-1)} |F|^r]
    quad_residual_min: float  # min_{t>=2R} [F - (A R f0^{p+q}/2^{p+q+4}) eps^{p+q} t^2]
    odi_skipped: bool
    quad_skipped: bool


def f_functional_checks(
    field: Field, data: InitialData, params: ModelParams
) -> FCheckReport:
    """Discrete checks of the ordinary differential inequality for F(t) = int u dx.

    F'' by centered second differences (endpoints excluded).  The ODI check
    is skipped when B = 0, the quadratic lower bound when the horizon stays
    below 2R or A = 0.
    """
    lat = field.lattice
    nt = field.u.shape[0]
    t = lat.t[:nt]
    dx = lat.dx
    F = np.sum(field.u[:nt], axis=1) * dx
    eps, R, r = data.eps, data.R, params.r
    Fpp = (F[2:] - 2.0 * F[1:-1] + F[:-2]) / dx**2
    odi_skipped = params.B == 0.0 or nt < 3
    if odi_skipped:
        odi_min = math.inf
    else:
        rhs = 2.0 ** (1.0 - r) * params.B * (t[1:-1] + R) ** -(r - 1.0) * np.abs(F[1:-1]) ** r
        odi_min = float(np.min(Fpp - rhs))
    quad_skipped = params.A == 0.0 or data.f0 <= 0.0 or t[-1] < 2.0 * R
    if quad_skipped:
        quad_min = math.inf
    else:
        late = t >= 2.0 * R
        pq = params.pq
        coef = params.A * R * data.f0**pq / 2.0 ** (pq + 4.0) * eps**pq
        quad_min = float(np.min(F[late] - coef * t[late] ** 2))
    Fp0 = (F[1] - F[0]) / dx if nt >= 2 else 0.0
    return FCheckReport(
        F0=float(F[0]),
        F0_expected=eps * data.f_mean,
        Fprime0=float(Fp0),
        odi_residual_min=odi_min,
        quad_residual_min=quad_min,
        odi_skipped=odi_skipped,
        quad_skipped=quad_skipped,
    )


@dataclass(frozen=True)
class ZhouReport:
    residual_min: float   # min_{x>=R} [P(x) - G eps - C7 int_R^x |P|^{p+q}]
    x_star: float         # blow-up abscissa of the comparison ODE
    C7: float
    G: float


def zhou_x_star(pq: float, C7: float, G: float, eps: float, R: float) -> float:
    """Blow-up abscissa of y' = C7 y^{p+q}, y(R) = G eps:
    x* = R + ((p+q-1) C7 (G eps)^{p+q-1})^{-1}."""
    return R + 1.0 / ((pq - 1.0) * C7 * (G * eps) ** (pq - 1.0))


def zhou_characteristic(
    field: Field, data: InitialData, params: ModelParams
) -> ZhouReport:
    """Check P(x) = u(x, x+R) >= G eps + C7 int_R^x |P|^{p+q} dy discretely.

    G = half the integral of g (must be positive), C7 = (A/2)(p/(p+q))^p (2R)^{1-p}.
    The running integral uses the trapezoid rule on the lattice abscissas.
    """
    G = 0.5 * data.g_mean
    if G <= 0.0:
        raise ValueError("the characteristic functional needs data with positive mean speed")
    if params.A <= 0.0:
        raise ValueError("the characteristic functional needs A > 0")
    lat = field.lattice
    nt = field.u.shape[0]
    R, eps, pq = data.R, data.eps, params.pq
    C7 = 0.5 * params.A * (params.p / pq) ** params.p * (2.0 * R) ** (1.0 - params.p)
    # lattice points on t = x + R with x >= R, t below the horizon
    i_R = lat.x_index(R)
    n_pts = min(lat.nx - i_R, nt - lat.t_index(2.0 * R))
    if n_pts < 2:
        raise ValueError("the field horizon does not reach the characteristic x >= R")
    xs = lat.x[i_R : i_R + n_pts]
    P = np.array([field.u[lat.t_index(x + R), lat.x_index(x)] for x in xs])
    integrand = np.abs(P) ** pq
    cum = np.concatenate(
        ([0.0], np.cumsum(0.5 * (integrand[1:] + integrand[:-1]) * lat.dx))
    )
    residual = P - G * eps - C7 * cum
    return ZhouReport(
        residual_min=float(np.min(residual)),
        x_star=zhou_x_star(pq, C7, G, eps, R),
        C7=C7,
        G=G,
    )


def export_check_report(rows: list, path: str) -> None:
    """CSV rows (check name, residual, tolerance, pass)."""
    with open(path, "w") as fh:
        fh.write("check,residual,tolerance,pass\n")
        for name, residual, tol in rows:
            ok = residual >= -tol
            fh.write(f"{name},{residual:.17g},{tol:.17g},{str(ok).lower()}\n")
