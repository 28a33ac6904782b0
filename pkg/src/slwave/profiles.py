"""Compactly supported initial-data families (f, g) on [-R, R].

All profiles are piecewise polynomials so supports are exactly compact and
the running integral of g has a closed form; the free solution then needs no
numerical quadrature and the strong Huygens property of zero-mean data holds
to rounding.

Families
--------
``bump``         f and g are even polynomial bumps; integral of g is 16R/15 > 0.
``dipole``       g is the exact derivative of a bump, so its integral is 0.
``blowup-seed``  g = 0 and f >= 0 with a reported plateau constant f0 > 0 such
                 that f >= f0 and -f' >= f0 on (-R/2, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

FAMILIES = ("bump", "dipole", "blowup-seed")


def _bump3(z):
    """(1 - z^2)^3 on |z| <= 1, C^2 when extended by zero."""
    z = np.asarray(z, dtype=float)
    inside = np.abs(z) <= 1.0
    w = np.where(inside, 1.0 - z * z, 0.0)
    return w * w * w


def _bump3_d1(z):
    z = np.asarray(z, dtype=float)
    inside = np.abs(z) <= 1.0
    w = np.where(inside, 1.0 - z * z, 0.0)
    return -6.0 * z * w * w * inside


def _bump3_d2(z):
    z = np.asarray(z, dtype=float)
    inside = np.abs(z) <= 1.0
    w = np.where(inside, 1.0 - z * z, 0.0)
    return (-6.0 * w * w + 24.0 * z * z * w) * inside


def _bump2(z):
    """(1 - z^2)^2 on |z| <= 1, C^1 when extended by zero."""
    z = np.asarray(z, dtype=float)
    inside = np.abs(z) <= 1.0
    w = np.where(inside, 1.0 - z * z, 0.0)
    return w * w


def _bump2_d1(z):
    z = np.asarray(z, dtype=float)
    inside = np.abs(z) <= 1.0
    w = np.where(inside, 1.0 - z * z, 0.0)
    return -4.0 * z * w * inside


def _bump2_int(z):
    """Running integral of (1 - z^2)^2 from -inf; equals 16/15 at z >= 1."""
    z = np.asarray(z, dtype=float)
    zc = np.clip(z, -1.0, 1.0)
    prim = zc - 2.0 * zc**3 / 3.0 + zc**5 / 5.0  # antiderivative, odd
    return prim + 8.0 / 15.0


def _smoothstep(s):
    """s^3 (10 - 15 s + 6 s^2) clipped to [0, 1]; C^2 with flat ends."""
    s = np.asarray(s, dtype=float)
    sc = np.clip(s, 0.0, 1.0)
    return sc**3 * (10.0 - 15.0 * sc + 6.0 * sc * sc)


def _smoothstep_d1(s):
    s = np.asarray(s, dtype=float)
    inside = (s >= 0.0) & (s <= 1.0)
    sc = np.clip(s, 0.0, 1.0)
    return 30.0 * sc * sc * (1.0 - sc) ** 2 * inside


def _smoothstep_d2(s):
    s = np.asarray(s, dtype=float)
    inside = (s >= 0.0) & (s <= 1.0)
    sc = np.clip(s, 0.0, 1.0)
    return (60.0 * sc - 180.0 * sc * sc + 120.0 * sc**3) * inside


@dataclass(frozen=True)
class InitialData:
    """Scaled data (eps*f, eps*g): callables give the UNSCALED profiles."""

    family: str
    R: float
    eps: float
    f: Callable = field(repr=False)
    f1: Callable = field(repr=False)
    f2: Callable = field(repr=False)
    g: Callable = field(repr=False)
    g1: Callable = field(repr=False)
    g_int: Callable = field(repr=False)  # running integral of g from -inf
    g_mean: float = 0.0                  # exact integral of g over R
    g_abs_integral: float = 0.0          # exact integral of |g|
    f_mean: float = 0.0                  # exact integral of f over R
    f0: float = 0.0                      # blowup-seed plateau constant, else 0

    @property
    def mean_zero(self) -> bool:
        return self.g_mean == 0.0

    def data_size_M(self) -> float:
        """sum_a ||f^(a)||_inf (a=0..2) + ||g||_L1 + sum_b ||g^(b)||_inf (b=0..1).

        Sup norms by dense sampling of the closed forms (the profiles are
        fixed low-degree polynomials, so 1e5 samples resolve the extrema to
        well below any tolerance used here).
        """
        x = np.linspace(-self.R, self.R, 100001)
        sups = (
            np.max(np.abs(self.f(x)))
            + np.max(np.abs(self.f1(x)))
            + np.max(np.abs(self.f2(x)))
            + np.max(np.abs(self.g(x)))
            + np.max(np.abs(self.g1(x)))
        )
        return sups + self.g_abs_integral


def make_data(family: str, R: float, eps: float) -> InitialData:
    """Build one of the standard families at support radius R and amplitude eps."""
    if R < 1.0:
        raise ValueError(f"support radius must satisfy R >= 1, got R={R}")
    if eps <= 0.0:
        raise ValueError(f"amplitude must be positive, got eps={eps}")
    if family == "bump":
        return _make_bump(R, eps)
    if family == "dipole":
        return _make_dipole(R, eps)
    if family == "blowup-seed":
        return _make_blowup_seed(R, eps)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def _make_bump(R: float, eps: float) -> InitialData:
    # f = (1-(x/R)^2)^3, g = (1-(x/R)^2)^2; integral of g is 16R/15 > 0.
    return InitialData(
        family="bump",
        R=R,
        eps=eps,
        f=lambda x: _bump3(np.asarray(x) / R),
        f1=lambda x: _bump3_d1(np.asarray(x) / R) / R,
        f2=lambda x: _bump3_d2(np.asarray(x) / R) / R**2,
        g=lambda x: _bump2(np.asarray(x) / R),
        g1=lambda x: _bump2_d1(np.asarray(x) / R) / R,
        g_int=lambda x: R * _bump2_int(np.asarray(x) / R),
        g_mean=16.0 * R / 15.0,
        g_abs_integral=16.0 * R / 15.0,
        f_mean=32.0 * R / 35.0,
    )


def _make_dipole(R: float, eps: float) -> InitialData:
    # g = d/dx (1-(x/R)^2)^3: zero mean exactly, running integral is the bump
    # itself (vanishes at both ends).
    return InitialData(
        family="dipole",
        R=R,
        eps=eps,
        f=lambda x: _bump3(np.asarray(x) / R),
        f1=lambda x: _bump3_d1(np.asarray(x) / R) / R,
        f2=lambda x: _bump3_d2(np.asarray(x) / R) / R**2,
        g=lambda x: _bump3_d1(np.asarray(x) / R) / R,
        g1=lambda x: _bump3_d2(np.asarray(x) / R) / R**2,
        g_int=lambda x: _bump3(np.asarray(x) / R),
        g_mean=0.0,
        g_abs_integral=2.0,  # total variation of the running integral (0 -> 1 -> 0)
        f_mean=32.0 * R / 35.0,
    )


def _make_blowup_seed(R: float, eps: float) -> InitialData:
    """g = 0 and f >= 0 rising on [-R, -3R/4] then descending through x = R.

    The descent is a single reversed smoothstep over [-3R/4, R], so f stays
    positive and strictly decreasing across (-R/2, 0).  The plateau constant
    f0 = min over [-R/2, 0] of min(f, -f') is evaluated on the closed forms
    and reported; both bounds hold by construction.
    """
    a, b = -3.0 * R / 4.0, R  # descent interval
    rise_w = R / 4.0

    def f(x):
        x = np.asarray(x, dtype=float)
        up = _smoothstep((x + R) / rise_w)
        down = 1.0 - _smoothstep((x - a) / (b - a))
        return np.where(x < a, up, down) * (np.abs(x) <= R)

    def f1(x):
        x = np.asarray(x, dtype=float)
        up = _smoothstep_d1((x + R) / rise_w) / rise_w
        down = -_smoothstep_d1((x - a) / (b - a)) / (b - a)
        return np.where(x < a, up, down) * (np.abs(x) <= R)

    def f2(x):
        x = np.asarray(x, dtype=float)
        up = _smoothstep_d2((x + R) / rise_w) / rise_w**2
        down = -_smoothstep_d2((x - a) / (b - a)) / (b - a) ** 2
        return np.where(x < a, up, down) * (np.abs(x) <= R)

    xs = np.linspace(-R / 2.0, 0.0, 20001)
    f0 = float(min(np.min(f(xs)), np.min(-f1(xs))))
    assert f0 > 0.0
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    # integral of f: rise contributes rise_w/2, descent (b-a)/2 (smoothstep mean 1/2)
    f_mean = rise_w / 2.0 + (b - a) / 2.0
    return InitialData(
        family="blowup-seed",
        R=R,
        eps=eps,
        f=f,
        f1=f1,
        f2=f2,
        g=zero,
        g1=zero,
        g_int=zero,
        g_mean=0.0,
        g_abs_integral=0.0,
        f_mean=f_mean,
        f0=f0,
    )
