"""Kaehler geometry of the u-plane: metric coefficient, scalar curvature,
the one-loop free energy F1 = -1/2 ln det', and the anomaly-equation check.

Derivatives in u are second-order central differences with one Richardson
level (default step 1e-4 * (1 + |u|)).  All stencil evaluations continue the
period frame from the stencil center, so tau never jumps lattice basis inside
a stencil.  F1 itself is basis-independent, which makes its Laplacian robust
even without seeding; the seeding matters for d tau / du.

The anomaly ratio constant below was fixed by symbolic differentiation before
anything here was implemented: with ln|Delta(u)| and ln|omega(u)|^2 harmonic
away from the nodes,

    F1 = -ln vol + const - (1/12) ln|Delta|^2,   vol = 4 Im(tau)|omega|^2,
    d_u d_ubar F1 = -d_u d_ubar ln Im(tau) = |tau'(u)|^2 / (4 Im^2 tau),

so with Laplace-Beltrami (1/Im tau) d_a d_abar, da = omega du, and scalar
curvature S = |d tau/d a|^2 / (8 Im^3 tau):

    (Laplace-Beltrami F1) / S = 2  exactly, at every non-isotrivial point.
"""

import math
from dataclasses import dataclass

from .curves import CurveFamily, discriminant_poly
from .errors import DivisionByZero, StencilCrossesSingularity
from .periods import Periods, periods_along_family
from .spectral import det_prime_laplacian

#: (Laplace-Beltrami of F1) / (scalar curvature), pinned pre-build (see above).
ANOMALY_RATIO = 2.0


@dataclass(frozen=True)
class UPlanePoint:
    """A base point with its period frame and tau-derivative estimates."""

    u: complex
    periods: Periods
    d_tau_du: complex
    d2_tau_du2: complex


@dataclass(frozen=True)
class KaehlerData:
    omega_form_coeff: float
    scalar_curvature: float
    f1: float


@dataclass(frozen=True)
class AnomalyRecord:
    lhs: float
    rhs: float
    ratio: float


def default_step(u: complex) -> float:
    return 1e-4 * (1.0 + abs(u))


def _delta_scale(family: CurveFamily, u: complex) -> float:
    d = discriminant_poly(family)
    return sum(abs(c) * abs(u) ** k for k, c in enumerate(d.coeffs)) + 1e-300


def _check_stencil(family: CurveFamily, points, rel_tol: float = 1e-9):
    d = discriminant_poly(family)
    for z in points:
        if abs(d(z)) < rel_tol * _delta_scale(family, z):
            raise StencilCrossesSingularity(f"stencil point {z} is on a singular fiber")


def is_isotrivial(family: CurveFamily, tol: float = 1e-10) -> bool:
    """True when j is constant in u: |dj/du| < tol at five probe points.

    dj/du = 1728 (3 g2^2 g2' Delta - g2^3 Delta') / Delta^2, evaluated from
    exact polynomial coefficients.
    """
    g2 = family.g2_poly
    d = discriminant_poly(family)
    num = 3.0 * (g2 * g2) * g2.derivative() * d - (g2 * g2 * g2) * d.derivative()
    probes = [0.37 + 0.41j, -0.83 + 0.29j, 0.52 - 0.77j, -0.31 - 0.63j, 1.11 + 0.95j]
    for z in probes:
        dz = d(z)
        tries = 0
        while abs(dz) < 1e-6 * _delta_scale(family, z) and tries < 20:
            z += 0.1 + 0.07j
            dz = d(z)
            tries += 1
        if abs(1728.0 * num(z) / dz**2) >= tol:
            return False
    return True


def kaehler_coefficient(family: CurveFamily, u: complex, prev: Periods = None) -> float:
    """Coefficient of i du ^ dubar in the Kaehler form: 8 Im(tau) |omega|^2."""
    p = periods_along_family(family, u, prev=prev)
    return 8.0 * p.tau.imag * abs(p.omega) ** 2


def uplane_point(family: CurveFamily, u: complex, h: float = None) -> UPlanePoint:
    """Periods at u plus Richardson-extrapolated d tau/du and d2 tau/du2."""
    if h is None:
        h = default_step(u)
    _check_stencil(family, [u, u + h, u - h, u + h / 2, u - h / 2])
    center = periods_along_family(family, u)

    def tau_at(z: complex) -> complex:
        return periods_along_family(family, z, prev=center).tau

    tp, tm = tau_at(u + h), tau_at(u - h)
    tp2, tm2 = tau_at(u + h / 2), tau_at(u - h / 2)
    d1_h = (tp - tm) / (2.0 * h)
    d1_h2 = (tp2 - tm2) / h
    d1 = (4.0 * d1_h2 - d1_h) / 3.0
    t0 = center.tau
    d2_h = (tp - 2.0 * t0 + tm) / h**2
    d2_h2 = (tp2 - 2.0 * t0 + tm2) / (h / 2.0) ** 2
    d2 = (4.0 * d2_h2 - d2_h) / 3.0
    return UPlanePoint(u=u, periods=center, d_tau_du=d1, d2_tau_du2=d2)


def scalar_curvature(family: CurveFamily, u: complex, h: float = None) -> float:
    """S = |d tau / d a|^2 / (8 Im^3 tau) with d tau/d a = (1/omega) d tau/du."""
    pt = uplane_point(family, u, h=h)
    p = pt.periods
    dtau_da = pt.d_tau_du / p.omega
    return abs(dtau_da) ** 2 / (8.0 * p.tau.imag**3)


def f1(family: CurveFamily, u: complex, prev: Periods = None) -> float:
    """One-loop free energy: -1/2 ln det' of the fiber Laplacian at u."""
    p = periods_along_family(family, u, prev=prev)
    return -0.5 * math.log(det_prime_laplacian(p))


def kaehler_data(family: CurveFamily, u: complex, h: float = None) -> KaehlerData:
    return KaehlerData(
        omega_form_coeff=kaehler_coefficient(family, u),
        scalar_curvature=scalar_curvature(family, u, h=h),
        f1=f1(family, u),
    )


def anomaly_check(family: CurveFamily, u: complex, h: float = None) -> AnomalyRecord:
    """Both sides of the anomaly equation at u.

    lhs = (1/Im tau) (1/|omega|^2) d_u d_ubar F1 with the mixed derivative
    from the 5-point Laplacian (d_u d_ubar = Laplacian_2d / 4) at steps h and
    h/2, Richardson-combined; rhs = scalar curvature.  For isotrivial
    families both sides vanish and the ratio is NaN; a vanishing rhs at a
    non-isotrivial point raises DivisionByZero (an isolated critical point of
    tau(u), where the ratio is 0/0).
    """
    if h is None:
        h = default_step(u)
    stencil = [u]
    for hh in (h, h / 2.0):
        stencil += [u + hh, u - hh, u + 1j * hh, u - 1j * hh]
    _check_stencil(family, stencil)

    center = periods_along_family(family, u)
    f0 = -0.5 * math.log(det_prime_laplacian(center))

    def f_at(z: complex) -> float:
        return f1(family, z, prev=center)

    def lap(hh: float) -> float:
        return (
            f_at(u + hh) + f_at(u - hh) + f_at(u + 1j * hh) + f_at(u - 1j * hh) - 4.0 * f0
        ) / hh**2

    lap_r = (4.0 * lap(h / 2.0) - lap(h)) / 3.0
    lhs = lap_r / 4.0 / (center.tau.imag * abs(center.omega) ** 2)
    rhs = scalar_curvature(family, u, h=h)
    if is_isotrivial(family):
        # both sides are exactly zero in exact arithmetic; the ratio is noise
        return AnomalyRecord(lhs=lhs, rhs=rhs, ratio=float("nan"))
    if rhs < 1e-300:
        raise DivisionByZero(f"scalar curvature vanishes at u={u} (critical point of tau)")
    return AnomalyRecord(lhs=lhs, rhs=rhs, ratio=lhs / rhs)
