import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from uplane import (
    AnnulusModel,
    FiberSpectralData,
    OddStructure,
    Periods,
    SpinStructure,
    WeierstrassCurve,
    compute_periods,
    dedekind_eta,
    det_dirichlet_annulus,
    det_dirichlet_flat,
    det_prime_laplacian,
    det_twisted,
    det_twisted_all_even,
    epstein_zeta_logdet,
    fiber_volume,
    quillen_norm_from_periods,
    quillen_norm_sigma,
    quillen_norm_sigma_hat,
    sample_family,
)
from uplane.spectral import CONTINUATION_OVER_CLOSED_FORM


def _periods(tau: complex, two_omega: complex = 1.0) -> Periods:
    omega = two_omega / 2.0
    return Periods(omega=omega, omega_prime=tau * omega, tau=tau, q=cmath.exp(2j * math.pi * tau))


def test_det_prime_at_i():
    p = _periods(1j)
    val = det_prime_laplacian(p)
    target = abs(dedekind_eta(1j)) ** 4 / (4 * math.pi**2)
    assert abs(val - target) <= 1e-14
    assert abs(val - 0.00882) < 5e-6


def test_det_prime_vs_continuation_oracle():
    for tau in (1j, 0.3 + 1.7j):
        for two_omega in (1.0, 1 + 0.5j):
            p = _periods(tau, two_omega)
            oracle = math.exp(epstein_zeta_logdet(SpinStructure(1, 1), tau, p.omega))
            assert (
                abs(oracle - CONTINUATION_OVER_CLOSED_FORM * det_prime_laplacian(p))
                <= 1e-10 * oracle
            )


def test_det_prime_scaling_in_omega():
    # at fixed tau the value scales like |2 omega|^2 relative to 2w = 1
    tau = 0.4 + 1.1j
    base = det_prime_laplacian(_periods(tau, 1.0))
    for s in (0.5, 2.0, 1.3):
        val = det_prime_laplacian(_periods(tau, s))
        assert abs(val - base * s**2) <= 1e-12 * val


def test_det_twisted_values_and_errors():
    p = _periods(1j)
    assert abs(det_twisted(SpinStructure(0, 0), p) - 2.0) < 1e-12
    prod = math.prod(det_twisted_all_even(p))
    assert abs(prod - 4.0) < 1e-10
    with pytest.raises(OddStructure):
        det_twisted(SpinStructure(1, 1), p)


def test_quillen_norm_examples():
    assert abs(quillen_norm_sigma(WeierstrassCurve(4, 0)) - math.sqrt(2)) < 1e-14
    assert quillen_norm_sigma(WeierstrassCurve(3, 1)) == 0.0


def test_quillen_norm_chart_change():
    # ||(dz_v)^{-1}|| = |v| ||(dz_u)^{-1}||: Delta_v = v^12 Delta_u makes the
    # weight-1/12 norms differ by exactly |v|
    fam = sample_family(0)
    u = 0.3 + 1.2j
    v = -1.0 / u
    du = fam.delta_at(u)
    norm_u = abs(du) ** (1.0 / 12.0)
    norm_v = abs(v**12 * du) ** (1.0 / 12.0)
    assert abs(norm_v - abs(v) * norm_u) <= 1e-12 * norm_v


def test_quillen_norm_consistency_with_det_prime():
    # (2 pi)^2 sqrt(det') / vol reproduces |Delta|^{1/12} through the periods
    g2, g3 = 2.0 + 0.7j, -0.4 + 0.3j
    curve = WeierstrassCurve(g2, g3)
    p = compute_periods(curve)
    lhs = (2 * math.pi) ** 2 * math.sqrt(det_prime_laplacian(p)) / fiber_volume(p)
    assert abs(lhs - quillen_norm_sigma(curve)) <= 1e-10 * lhs
    assert abs(quillen_norm_from_periods(p) - quillen_norm_sigma(curve)) <= 1e-9 * lhs


def test_dirichlet_squared_is_det_prime():
    rng = np.random.default_rng(31)
    for _ in range(50):
        tau = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3.0))
        p = _periods(tau, complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)))
        d = det_dirichlet_annulus(p)
        assert abs(d * d - det_prime_laplacian(p)) <= 1e-12 * d * d


def test_dirichlet_example_value():
    p = _periods(1j)
    assert abs(det_dirichlet_annulus(p) - math.sqrt(det_prime_laplacian(p))) == 0.0
    assert abs(det_dirichlet_annulus(p) - 0.09393) < 5e-6


def test_dirichlet_flat_both_routes():
    # the assertion inside det_dirichlet_flat enforces the rescaling route at
    # 1e-9; sweep 50 random fibers so both routes are exercised broadly
    rng = np.random.default_rng(41)
    for _ in range(50):
        tau = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3.0))
        p = _periods(tau, complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)))
        val = det_dirichlet_flat(p)
        target = tau.imag * abs(dedekind_eta(tau)) ** 2 * abs(p.q) ** (1.0 / 6.0)
        assert abs(val - target) <= 1e-12 * max(val, 1e-300)


def test_dirichlet_flat_example_2i():
    p = _periods(2j)
    target = 2.0 * abs(dedekind_eta(2j)) ** 2 * math.exp(-2.0 * math.pi / 3.0)
    assert abs(det_dirichlet_flat(p) - target) <= 1e-12 * target


def test_dirichlet_flat_large_im_leading_order():
    # along tau = it: |eta|^2 -> |q|^{1/12}, so det -> t |q|^{1/6+1/12} (1 + o(1))
    t = 12.0
    p = _periods(1j * t)
    q = abs(p.q)
    lead = t * q ** (1.0 / 6.0) * q ** (1.0 / 12.0)
    assert abs(det_dirichlet_flat(p) / lead - 1.0) < 1e-10


def test_sigma_hat_value_and_omega_independence():
    p = _periods(10j)
    val = quillen_norm_sigma_hat(p)
    approx = abs(p.q) ** (1.0 / 12.0) / (2 * math.pi) ** 2
    assert abs(val - approx) <= 1e-8 * approx
    p2 = _periods(10j, 3.0 - 1.0j)
    assert abs(quillen_norm_sigma_hat(p2) - val) <= 1e-14 * val


def test_q_twelfth_over_eta_squared_limit():
    # q^{1/12}/eta^2 = 1/prod(1-q^n)^2 -> 1; the deviation is 2q + 5q^2 + ...
    # evaluated at 60 digits because 2|q| is below double resolution at t = 12;
    # the product needs only three factors at these q; 100 digits so the
    # q^2 term (~1e-65 at t = 12) sits far above the arithmetic floor
    mp.mp.dps = 100
    for t in (5.0, 8.0, 12.0):
        q = mp.e ** (-2 * mp.pi * t)
        prod = (1 - q) * (1 - q**2) * (1 - q**3)
        ratio = 1 / prod**2
        # leading-order bound 2|q| plus the mathematically present 6|q|^2 term
        assert abs(ratio - 1) <= 2 * abs(q) + 6 * abs(q) ** 2
        # and the double-precision library value agrees with the oracle
        p = _periods(complex(0, t))
        ours = abs(p.q) ** (1.0 / 12.0) / abs(dedekind_eta(p.tau)) ** 2
        assert abs(ours - float(ratio)) <= 1e-12


def test_fiber_spectral_data_and_annulus_model():
    tau = 0.3 + 1.7j
    p = _periods(tau, 1 + 0.5j)
    data = FiberSpectralData.from_periods(p)
    assert abs(data.volume - 4.0 * tau.imag * abs(p.omega) ** 2) < 1e-14
    assert data.det_laplace_prime > 0
    assert data.quillen_norm_sigma > 0
    ann = AnnulusModel.from_periods(p)
    assert abs(ann.r1 - abs(p.q) ** 0.5) < 1e-15
    assert abs(ann.r1 * ann.r2 - 1.0) < 1e-12
    assert abs(ann.Lambda - abs(p.omega) / math.pi) < 1e-15
    assert abs(ann.conformal_L - 2 * math.pi**2 * tau.imag) < 1e-12


def test_quillen_asymptotics_slope():
    # ||sigma||_Q ~ c |u - u*|^{1/12} near a simple node: log-log slope 1/12
    fam = sample_family(0)
    node = 1.0
    radii = np.geomspace(1e-2, 1e-5, 16)
    angle = cmath.exp(0.7j)
    xs, ys = [], []
    for r in radii:
        u = node + r * angle
        xs.append(math.log(r))
        ys.append(math.log(quillen_norm_sigma(fam.curve_at(u))))
    slope = np.polyfit(xs, ys, 1)[0]
    assert abs(slope - 1.0 / 12.0) < 1e-3


def test_all_determinants_positive_on_smooth_fibers():
    rng = np.random.default_rng(57)
    for _ in range(20):
        tau = complex(rng.uniform(-1, 1), rng.uniform(0.3, 2.5))
        p = _periods(tau, complex(rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5)))
        assert det_prime_laplacian(p) > 0
        assert det_dirichlet_annulus(p) > 0
        assert det_dirichlet_flat(p) > 0
        assert quillen_norm_sigma_hat(p) > 0
