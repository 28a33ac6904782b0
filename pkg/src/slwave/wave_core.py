"""Characteristic lattice, free solution, Duhamel operators and weighted norms.

The lattice uses dt = dx exactly, so lattice lines coincide with light rays
and the linear wave update is exact on it.  The backward-light-triangle
operator L is evaluated by a diamond recursion whose per-cell quadrature is
the midpoint rule; that composite rule is exact for integrands affine in
(y, s) and second-order accurate otherwise.  The characteristic operators
L' and Lbar' are composite trapezoids along the two light rays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .profiles import InitialData


@dataclass(frozen=True)
class Lattice:
    """Uniform space-time grid with spacing dx in both directions.

    x runs over ``half_width`` cells on each side of x = 0, t from 0 to
    ``n_steps * dx``; x = 0 and t = 0 are lattice points.
    """

    dx: float
    half_width: int
    n_steps: int

    def __post_init__(self):
        if self.dx <= 0.0:
            raise ValueError(f"spacing must be positive, got dx={self.dx}")

    @property
    def x(self) -> np.ndarray:
        return self.dx * np.arange(-self.half_width, self.half_width + 1)

    @property
    def t(self) -> np.ndarray:
        return self.dx * np.arange(self.n_steps + 1)

    @property
    def nx(self) -> int:
        return 2 * self.half_width + 1

    @property
    def T(self) -> float:
        return self.n_steps * self.dx

    @property
    def center(self) -> int:
        return self.half_width

    def x_index(self, x: float) -> int:
        i = round(x / self.dx) + self.half_width
        if not 0 <= i < self.nx or abs(x - (i - self.half_width) * self.dx) > 1e-9 * max(1.0, abs(x)):
            raise ValueError(f"x={x} is not a lattice point")
        return i

    def t_index(self, t: float) -> int:
        k = round(t / self.dx)
        if not 0 <= k <= self.n_steps or abs(t - k * self.dx) > 1e-9 * max(1.0, t):
            raise ValueError(f"t={t} is not on the lattice or beyond its horizon")
        return k


def make_lattice(dx: float, T: float, R: float, pad: float = 0.0) -> Lattice:
    """Lattice wide enough that the support cone |x| <= t+R never reaches the edge."""
    n_steps = int(np.ceil(T / dx - 1e-12))
    half_width = int(np.ceil((n_steps * dx + R + pad) / dx)) + 2
    return Lattice(dx=dx, half_width=half_width, n_steps=n_steps)


@dataclass
class Field:
    """Values of (u, w = u_t) on the lattice, shape (n_steps+1, nx)."""

    lattice: Lattice
    u: np.ndarray
    w: np.ndarray

    @property
    def horizon(self) -> float:
        return (self.u.shape[0] - 1) * self.lattice.dx


@dataclass(frozen=True)
class NormReport:
    """The four weighted lattice sup-norms over a time window."""

    n1: float  # sup |u|
    n2: float  # sup (t - |x| + 2R) |w|
    n3: float  # sup (t + |x| + R)^{-1} |U|
    n4: float  # sup |W| on D = {t-|x| >= R}, (t+|x|+R)^{-1}|W| off D
    T_window: float


def free_solution(data: InitialData, x, t):
    """Closed-form free solution of the unit-amplitude data (f, g).

    Returns (u0, u0_t, u0_x, u0_tx); the running integral of g is exact, so
    no quadrature error enters.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    xp, xm = x + t, x - t
    u0 = 0.5 * (data.f(xp) + data.f(xm)) + 0.5 * (data.g_int(xp) - data.g_int(xm))
    u0_t = 0.5 * (data.f1(xp) - data.f1(xm) + data.g(xp) + data.g(xm))
    u0_x = 0.5 * (data.f1(xp) + data.f1(xm) + data.g(xp) - data.g(xm))
    u0_tx = 0.5 * (data.f2(xp) - data.f2(xm) + data.g1(xp) + data.g1(xm))
    return u0, u0_t, u0_x, u0_tx


def free_solution_lattice(data: InitialData, lat: Lattice):
    """(u0, u0_t) sampled on the whole lattice; shape (n_steps+1, nx)."""
    X, T = np.meshgrid(lat.x, lat.t)
    u0, u0_t, _, _ = free_solution(data, X, T)
    return u0, u0_t


def op_L_lattice(v: np.ndarray, lat: Lattice) -> np.ndarray:
    """L(v)(x,t) = 1/2 int_0^t ds int_{x-t+s}^{x+t-s} v(y,s) dy on the lattice.

    Diamond recursion: L at the top of each lattice diamond equals the sum
    over its east/west corners minus the south corner plus half the diamond
    integral of v (midpoint rule, exact for affine v).  Requires v to vanish
    near the lateral lattice edges (cone-supported input).
    """
    nt, nx = v.shape
    h = lat.dx
    out = np.zeros_like(v)
    if nt < 2:
        return out
    # first level: exact for v affine in (y, s)
    out[1, :] = h * h * (v[0, :] / 3.0 + v[1, :] / 6.0)
    for n in range(1, nt - 1):
        out[n + 1, 1:-1] = (
            out[n, 2:] + out[n, :-2] - out[n - 1, 1:-1] + h * h * v[n, 1:-1]
        )
    return out


def _characteristic_integrals(v: np.ndarray, lat: Lattice):
    """Trapezoids of v along the two light rays through each lattice point.

    Ip(x,t) = 1/2 int_0^t v(x+t-s, s) ds,  Im the same along the other ray.
    """
    nt, nx = v.shape
    h = lat.dx
    Ip = np.zeros_like(v)
    Im = np.zeros_like(v)
    for n in range(nt - 1):
        Ip[n + 1, :-1] = Ip[n, 1:] + (h / 4.0) * (v[n, 1:] + v[n + 1, :-1])
        Im[n + 1, 1:] = Im[n, :-1] + (h / 4.0) * (v[n, :-1] + v[n + 1, 1:])
    return Ip, Im


def op_Lprime_lattice(v: np.ndarray, lat: Lattice) -> np.ndarray:
    """L'(v)(x,t) = 1/2 int_0^t {v(x+t-s,s) + v(x-t+s,s)} ds on the lattice."""
    Ip, Im = _characteristic_integrals(v, lat)
    return Ip + Im


def op_Lbar_lattice(v: np.ndarray, lat: Lattice) -> np.ndarray:
    """Lbar'(v)(x,t) = 1/2 int_0^t {v(x+t-s,s) - v(x-t+s,s)} ds on the lattice."""
    Ip, Im = _characteristic_integrals(v, lat)
    return Ip - Im


def op_L(v: np.ndarray, lat: Lattice, x: float, t: float) -> float:
    return float(op_L_lattice(v, lat)[lat.t_index(t), lat.x_index(x)])


def op_Lprime(v: np.ndarray, lat: Lattice, x: float, t: float) -> float:
    return float(op_Lprime_lattice(v, lat)[lat.t_index(t), lat.x_index(x)])


def op_Lbar(v: np.ndarray, lat: Lattice, x: float, t: float) -> float:
    return float(op_Lbar_lattice(v, lat)[lat.t_index(t), lat.x_index(x)])


def _cone_mask(lat: Lattice, R: float, nt: int) -> np.ndarray:
    X, T = np.meshgrid(lat.x, lat.t[:nt])
    return np.abs(X) <= T + R + 1e-12


def norms(u: np.ndarray, w: np.ndarray, lat: Lattice, R: float, T: float | None = None) -> NormReport:
    """Lattice suprema of the four weighted quantities over [0, T].

    ``u``/``w`` play the roles of (u, w) for the first two norms and of
    (U, W) for the last two; suprema are restricted to the support cone
    |x| <= t + R.
    """
    if T is None:
        T = (u.shape[0] - 1) * lat.dx
    nt = min(u.shape[0], lat.t_index(T) + 1)
    X, Tg = np.meshgrid(lat.x, lat.t[:nt])
    cone = np.abs(X) <= Tg + R + 1e-12
    absx = np.abs(X)
    uu, ww = np.abs(u[:nt]), np.abs(w[:nt])
    n1 = float(np.max(np.where(cone, uu, 0.0)))
    n2 = float(np.max(np.where(cone, (Tg - absx + 2.0 * R) * ww, 0.0)))
    inv_weight = 1.0 / (Tg + absx + R)
    n3 = float(np.max(np.where(cone, inv_weight * uu, 0.0)))
    in_D = Tg - absx >= R - 1e-12
    w4 = np.where(in_D, 1.0, inv_weight)
    n4 = float(np.max(np.where(cone, w4 * ww, 0.0)))
    return NormReport(n1=n1, n2=n2, n3=n3, n4=n4, T_window=float(T))


def field_norms(field: Field, data: InitialData, T: float | None = None) -> NormReport:
    return norms(field.u, field.w, field.lattice, data.R, T)


def huygens_residual(data: InitialData, T: float, dx: float) -> tuple[float, bool]:
    """max |u0| over the interior region D = {t - |x| >= R}, t <= T.

    For zero-mean g this must vanish to rounding (exact antiderivatives).
    Returns (residual, mean_was_zero); called with nonzero-mean data the
    residual is still computed, flagged by the second entry.
    """
    lat = make_lattice(dx, T, data.R)
    u0, _ = free_solution_lattice(data, lat)
    X, Tg = np.meshgrid(lat.x, lat.t)
    in_D = Tg - np.abs(X) >= data.R - 1e-12
    if not np.any(in_D):
        return 0.0, data.mean_zero
    return float(np.max(np.abs(u0[in_D]))), data.mean_zero


def support_cone_violation(u: np.ndarray, lat: Lattice, R: float, cells_slack: int = 1) -> float:
    """max |u| outside |x| <= t + R (with one-cell slack by default)."""
    nt = u.shape[0]
    X, Tg = np.meshgrid(lat.x, lat.t[:nt])
    outside = np.abs(X) > Tg + R + cells_slack * lat.dx + 1e-12
    if not np.any(outside):
        return 0.0
    return float(np.max(np.abs(u[:nt][outside])))


def export_field_csv(field: Field, path: str, every: int = 1) -> None:
    """Snapshot CSV with columns x,t,u,w; lattice metadata as header comments."""
    lat = field.lattice
    with open(path, "w") as fh:
        fh.write(f"# dx={lat.dx!r} half_width={lat.half_width} n_steps={field.u.shape[0] - 1}\n")
        fh.write("x,t,u,w\n")
        for n in range(0, field.u.shape[0], every):
            t = lat.t[n]
            for i in range(0, lat.nx, every):
                fh.write(f"{lat.x[i]:.17g},{t:.17g},{field.u[n, i]:.17g},{field.w[n, i]:.17g}\n")
