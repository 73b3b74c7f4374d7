"""Exact root systems and affine Weyl arithmetic.

Builds the classical root data, shows the Cartan pairings that drive all the
geometry, and demonstrates that affine reflections and translations satisfy
their defining identities exactly (no floats anywhere).
"""

from fractions import Fraction

from sigmabuild.root_system import (
    AffineHyperplane,
    affine_reflect,
    build_root_system,
    cartan_pairing,
    translation_action,
)

for family, rank in [("A", 2), ("C", 2), ("D", 3)]:
    datum = build_root_system(family, rank)
    print(f"{family}_{rank}: {len(datum.all_roots)} roots, "
          f"highest root {datum.ambient(datum.highest_root)}")

datum = build_root_system("A", 2)
a1, a2 = datum.simple_root_coeffs
print("\nCartan pairings in A_2:")
print("  <a1, a2> =", cartan_pairing(datum, a1, a2))
print("  <a1+a2, a1> =", cartan_pairing(datum, (Fraction(1), Fraction(1)), a1))

print("\nAffine reflection s_{a1,2} applied twice returns the input:")
h = AffineHyperplane(a1, Fraction(2))
v = (Fraction(5, 3), Fraction(-1, 2))
w = affine_reflect(datum, h, v)
print("  v  =", v)
print("  sv =", w)
print("  ssv =", affine_reflect(datum, h, w), "(involution)")

print("\nTranslation by a coroot is the composite of two parallel reflections:")
t = translation_action(datum, a1, 2, v)
h0 = AffineHyperplane(a1, Fraction(0))
hk = AffineHyperplane.make(datum, tuple(-c for c in a1), 2)
composite = affine_reflect(datum, hk, affine_reflect(datum, h0, v))
print("  t_{a1,2}(v)         =", t)
print("  s_{-a1,2} s_{a1}(v) =", composite)
assert t == composite
