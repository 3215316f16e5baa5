#!/usr/bin/env python3
"""Exact homology of finite simplicial complexes.

Builds the classical 6-vertex triangulation of the projective plane,
computes its reduced homology over Q, F_2, and Z, and shows that a
barycentric subdivision (which is always flag) carries the same homology.
"""

from raaghom import (
    SimplicialComplex,
    barycentric_subdivision,
    flag_completion,
    integral_homology,
    reduced_betti,
)
from raaghom.exact import F2, QQ, FieldSpec

F3 = FieldSpec.prime_field(3)

# ---------------------------------------------------------------------------
# The projective plane on six vertices: all 15 edges, ten triangles.
# ---------------------------------------------------------------------------

rp2 = SimplicialComplex(
    range(1, 7),
    [
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 5, 6), (3, 4, 6),
    ],
)
print("RP^2 on 6 vertices:", rp2)
print("Euler characteristic (reduced count):", rp2.euler_characteristic_reduced())

for field in (QQ, F2, F3):
    profile = reduced_betti(rp2, field)
    print(f"reduced Betti over {field.token():>2}:", list(profile.reduced_betti))

print("\nIntegral homology (free rank, torsion divisors):")
for k in range(0, 3):
    print(f"  H~_{k}(RP^2; Z) =", integral_homology(rp2, k))

# ---------------------------------------------------------------------------
# Coefficients matter: over F_2 the top class survives, over Q it does not.
# ---------------------------------------------------------------------------

print("\nb~_2 over F2:", reduced_betti(rp2, F2).betti(2), " over Q:", reduced_betti(rp2, QQ).betti(2))

# ---------------------------------------------------------------------------
# Barycentric subdivision: a flag triangulation with the same homology.
# ---------------------------------------------------------------------------

flag_rp2 = barycentric_subdivision(rp2)
print("\nsubdivision:", flag_rp2, "is flag:", flag_rp2.is_flag())
print("subdivision Betti over F2:", list(reduced_betti(flag_rp2, F2).reduced_betti))

# ---------------------------------------------------------------------------
# Links in a flag complex are full subcomplexes of the neighbours.
# ---------------------------------------------------------------------------

square = flag_completion(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
print("\n4-cycle:", square)
print("link of vertex 0:", square.link((0,)))
print("link of the empty simplex is the complex itself:", square.link(()) == square)
