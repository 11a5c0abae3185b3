# The one-loop anomaly equation on the u-plane: the Laplace-Beltrami operator
# applied to F1 = -1/2 ln det' tracks the scalar curvature with a constant,
# u-independent ratio (pinned to 2 by symbolic differentiation).

import numpy as np

from uplane import anomaly_check, isotrivial_family, sample_family

fam = sample_family(0)
print("family nf0: F1 Laplacian vs scalar curvature")
print(f"{'u':>14} {'lhs':>14} {'rhs':>14} {'ratio':>12}")
rng = np.random.default_rng(7)
ratios = []
for _ in range(8):
    u = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    if min(abs(u - 1), abs(u + 1)) < 0.35:
        continue
    rec = anomaly_check(fam, u)
    ratios.append(rec.ratio)
    print(f"{u:>14.3f} {rec.lhs:>14.9f} {rec.rhs:>14.9f} {rec.ratio:>12.7f}")
print(f"ratio spread: {max(ratios) - min(ratios):.2e}")

print()
print("isotrivial family (constant j): both sides vanish")
rec = anomaly_check(isotrivial_family(), 0.8 + 0.3j, h=1e-2)
print(f"  lhs = {rec.lhs:.2e}, rhs = {rec.rhs:.2e}")
