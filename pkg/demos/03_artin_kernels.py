#!/usr/bin/env python3
"""Artin kernels: finiteness checking, Betti numbers, and cycle pushing.

A character (integer vertex labelling) of a flag complex determines a map
from the RAAG onto Z.  Whether the kernel is FP_n, and what its Betti
numbers are, is decided entirely by living links inside the complex.
"""

from raaghom import ChainVector, Character, flag_completion
from raaghom.complexes import chain_boundary
from raaghom.exact import QQ
from raaghom.kernels import (
    fpn_violation,
    is_fpn,
    living_link,
    partition,
    push_cycle_to_living,
    kernel_betti,
    torsion_term,
)

# ---------------------------------------------------------------------------
# The 4-cycle: the Bestvina-Brady kernel is finitely generated but not FP_2.
# ---------------------------------------------------------------------------

square = flag_completion(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
ones = Character(square, {v: 1 for v in square.vertices})
print("4-cycle, all-ones character:")
print("  FP_1 over Q:", is_fpn(square, ones, 1, QQ))
print("  FP_2 over Q:", is_fpn(square, ones, 2, QQ), " violation:", fpn_violation(square, ones, 2, QQ))
print("  kernel b_1 =", kernel_betti(square, ones, 1, QQ))

alternating = Character(square, {0: 1, 1: 0, 2: 1, 3: 0})
part = partition(square, alternating)
print("\nalternating character: living part", part.living, ", dead part", part.dead)
print("  FP_0:", is_fpn(square, alternating, 0, QQ), " FP_1:", is_fpn(square, alternating, 1, QQ))

# ---------------------------------------------------------------------------
# Pushing a cycle off the dead part.  The complex is an octahedron joined
# with a dead apex v and a living cone vertex u; one equator vertex is dead.
# ---------------------------------------------------------------------------

oct_verts = ["a0", "a1", "b0", "b1", "c0", "c1"]
edges = [(x, y) for x in oct_verts for y in oct_verts if x < y and x[0] != y[0]]
verts = ["v", "u"] + oct_verts
edges += [("v", "u")] + [("v", x) for x in oct_verts] + [("u", x) for x in oct_verts]
L = flag_completion(verts, edges)
phi = Character(L, {**{x: 1 for x in oct_verts}, "u": 1, "v": 0, "c0": 0})
print("\njoin complex:", L, " FP_2 over Q:", is_fpn(L, phi, 2, QQ))

# a 1-cycle in lk(v) running through the dead vertex c0
z = ChainVector(1, QQ, {
    ("a0", "c0"): 1, ("a1", "c0"): -1, ("a1", "c1"): 1, ("a0", "c1"): -1,
})
assert chain_boundary(z).is_zero()
result = push_cycle_to_living(L, phi, "v", z, 2)
print("pushed cycle support:", result.cycle.support())
print("witness chain support:", result.witness.support())
print("z - z' = dw checks:", z.sub(result.cycle) == chain_boundary(result.witness))
print("z' avoids dead vertices:", result.cycle.supported_in(living_link(L, phi, ("v",))))

# ---------------------------------------------------------------------------
# Torsion-flavoured invariants of the kernel.
# ---------------------------------------------------------------------------

print("\ntorsion term of the join in degree 2:", torsion_term(L, phi, 2))
