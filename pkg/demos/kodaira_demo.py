# Singular-fiber classification for the five built-in families, the allowed
# configuration table, and the signature bookkeeping.

from uplane import (
    AT_INFINITY,
    sample_family,
    surface_report,
    table1_expected,
)

print("=== fixture families ===")
for nf in range(5):
    rep = surface_report(sample_family(nf))
    parts = []
    for f in rep.fibers:
        loc = "inf" if f.location is AT_INFINITY else f"{f.location:.2f}"
        parts.append(f"{f.kodaira.label}@{loc}")
    print(f"nf={nf}: {', '.join(parts)}")
    print(
        f"       total Euler {rep.total_euler}, sign(Zbar) = {rep.sign_zbar},"
        f" sign(Z) = {rep.sign_z}"
    )

print()
print("=== allowed configurations by flavor count ===")
for nf in (4, 3, 2, 1, 0):
    rows = table1_expected(nf)
    print(f"nf={nf} ({len(rows)} configurations):")
    for row in rows:
        finite = " + ".join(k.label for k in row.finite_fibers)
        print(f"   {row.fiber_at_infinity.label:>4} | {finite:<30} | {row.constraint_label}")
