#!/usr/bin/env python3
"""Homology growth along finite covers of Salvetti complexes.

The RAAG on two isolated vertices is the free group F_2; its rank-one
skew-field Betti number predicts the limit of b_1(cover)/degree.  The
covers here come from abelian quotients, and the table shows the gap
closing at the exact rate 1/n^2.
"""

from fractions import Fraction

from raaghom import Raag, SimplicialComplex, abelian_quotient, cover_betti, dfg_betti_raag, flag_completion, gradient_sequence
from raaghom.exact import F2, QQ

# ---------------------------------------------------------------------------
# Free group: wedge of two circles.
# ---------------------------------------------------------------------------

free2 = Raag(SimplicialComplex(["a", "b"], []))
closed_form = dfg_betti_raag(free2, QQ, 1)
print("closed-form degree-1 Betti number of F_2:", closed_form)

print("\n n    N=n^2   b_1(cover)   b_1/N        gap")
for n in range(1, 7):
    q = abelian_quotient(free2, {"a": n, "b": n})
    report = cover_betti(free2, q, QQ)
    value = report.normalized[1]
    gap = value - closed_form
    print(f" {n}    {q.order:4d}   {report.betti[1]:10d}   {str(value):>8}   {str(gap):>8}")

# ---------------------------------------------------------------------------
# F_2 x F_2: the RAAG on a 4-cycle.  Degree-2 growth, Kunneth style.
# ---------------------------------------------------------------------------

square = flag_completion(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
A = Raag(square)
print("\nclosed-form degree-2 value for the 4-cycle RAAG:", dfg_betti_raag(A, F2, 2))

chain = [abelian_quotient(A, {v: n for v in square.vertices}) for n in (1, 2, 3)]
values = gradient_sequence(A, chain, F2, 2)
print("normalised b_2 along all-n quotients:", [str(v) for v in values])
print("against (n^2+1)^2/n^4:", [str(Fraction((n * n + 1) ** 2, n**4)) for n in (1, 2, 3)])

# ---------------------------------------------------------------------------
# The trivial quotient recovers the base Salvetti complex: a torus when the
# defining complex is a full simplex.
# ---------------------------------------------------------------------------

simplex = flag_completion(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])
torus = Raag(simplex)
report = cover_betti(torus, abelian_quotient(torus, {}), QQ)
print("\n4-torus Betti numbers from the trivial cover:", list(report.betti))
