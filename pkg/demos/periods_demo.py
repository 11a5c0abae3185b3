# Periods of Weierstrass curves via the complex AGM, with the
# modular-discriminant identity as a built-in correctness certificate.

import numpy as np

from uplane import (
    WeierstrassCurve,
    compute_periods,
    modular_discriminant,
    periods_along_family,
    sample_family,
)

print("=== two classical lattices ===")
for g2, g3, label in [(4, 0, "square (lemniscatic)"), (0, 4, "equianharmonic")]:
    p = compute_periods(WeierstrassCurve(g2, g3))
    print(f"g2={g2}, g3={g3}  [{label}]")
    print(f"  omega  = {p.omega:.15f}")
    print(f"  omega' = {p.omega_prime:.15f}")
    print(f"  tau    = {p.tau:.15f}")
    delta = g2**3 - 27 * g3**2
    resid = abs(modular_discriminant(p) - delta) / abs(delta)
    print(f"  (2pi)^12 eta^24/(2w)^12 vs g2^3-27g3^2: rel err {resid:.2e}")

print()
print("=== walking a fiber frame around a node ===")
fam = sample_family(0)  # discriminant u^2 - 1, nodes at u = +-1
u0 = 1.0 + 0.5j
prev = periods_along_family(fam, u0)
print("half-circle above the node at u = 1, frame continued by seeding:")
for k in range(7):
    theta = np.pi * k / 6
    u = 1.0 + 0.5j * np.exp(1j * theta)
    prev = periods_along_family(fam, u, prev=prev)
    print(f"  u = {u:.3f}   tau = {prev.tau:.6f}   |q| = {abs(prev.q):.4f}")
print("(Im tau drifts smoothly; no lattice-basis jumps along the path)")
