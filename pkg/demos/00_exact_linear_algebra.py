#!/usr/bin/env python3
"""The exact substrate: rank, solve, kernel bases, Smith normal form.

Everything downstream (homology, covers, fibring) reduces to these four
operations over Q, F_p, or Z.  No floats anywhere.
"""

from fractions import Fraction

from raaghom.exact import (
    ExactMatrix,
    FieldSpec,
    IntMatrix,
    nullspace,
    rank,
    smith_normal_form,
    solve,
)

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime_field(2)
F5 = FieldSpec.prime_field(5)

# ---------------------------------------------------------------------------
# Rank depends on the field: specialising mod p can only lose rank.
# ---------------------------------------------------------------------------

data = [[2, 4], [6, 2]]
print("matrix", data)
print("  rank over Q: ", rank(ExactMatrix.from_rows(data, QQ)))
print("  rank over F2:", rank(ExactMatrix.from_rows(data, F2)))
print("  rank over F5:", rank(ExactMatrix.from_rows(data, F5)))

# ---------------------------------------------------------------------------
# Exact solves: either a certified solution or a certified "no solution".
# ---------------------------------------------------------------------------

m = ExactMatrix.from_rows([[2, 1], [1, 3]], QQ)
x = solve(m, [Fraction(1), Fraction(0)])
print("\nsolve [[2,1],[1,3]] x = (1,0):", x)
print("  check m x:", m.mul_vector(x))

parity = ExactMatrix.from_rows([[1, 1]], F2)
print("solve x + y = 1 over F2:", solve(parity, [1]))
print("solve 0 = 1 over F2:", solve(ExactMatrix.zeros(1, 2, F2), [1]))

# ---------------------------------------------------------------------------
# Kernel bases drive cycle spaces.
# ---------------------------------------------------------------------------

d1 = ExactMatrix.from_rows([[-1, 0, 1], [1, -1, 0], [0, 1, -1]], QQ)
print("\nkernel of a triangle boundary:", nullspace(d1))

# ---------------------------------------------------------------------------
# Smith normal form reveals torsion: diag(2, 3) ~ diag(1, 6).
# ---------------------------------------------------------------------------

sf = smith_normal_form(IntMatrix.diagonal([2, 3]))
print("\nSNF of diag(2,3): rank", sf.rank, "divisors", sf.elementary_divisors)

presentation = IntMatrix.from_rows([[2, 0], [2, 4]])
sf = smith_normal_form(presentation)
print("SNF of [[2,0],[2,4]]: divisors", sf.elementary_divisors, "-> cokernel Z/2 + Z/4")
