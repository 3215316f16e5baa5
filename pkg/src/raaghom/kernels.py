"""Artin kernels: characters, finiteness checking, and kernel invariants.

An integer labelling of the vertices of a flag complex L induces a map
from the RAAG on L onto Z; its kernel is the corresponding Artin kernel
(the Bestvina-Brady group when every label is 1).  Vertices with nonzero
label are *living*, the others *dead*, and everything about the kernel
computed here is read off from the living/dead structure:

* ``is_fpn`` decides homological finiteness FP_n over a field by testing
  acyclicity of living links of dead simplices;
* ``kernel_betti`` evaluates the closed-form kernel Betti numbers
  sum_v |phi(v)| * b~_{m-1}(lk(v));
* ``push_cycle_to_living`` constructively rewrites a cycle in the link of
  a dead vertex into a homologous cycle supported on living vertices,
  returning the bounding witness chain;
* ``torsion_term`` and ``mve_positive_criterion`` evaluate the integral
  link homology expressions used for torsion growth and minimal volume
  entropy positivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Optional

from .complexes import (
    ChainVector,
    Face,
    SimplicialComplex,
    boundary_matrix,
    chain_boundary,
    integral_homology,
    is_n_acyclic,
    oriented_face,
    reduced_betti,
)
from .exact import FieldSpec, Scalar, solve


class PreconditionError(ValueError):
    """A documented hypothesis of an operation does not hold."""


class InconsistencyError(RuntimeError):
    """An internal solve failed that the finiteness hypothesis guarantees.

    Raised instead of silently patching the computation: it means the
    claimed FP level and the complex disagree (or there is a bug).
    """


class Character:
    """An integer vertex labelling, i.e. a homomorphism from the RAAG to Z."""

    __slots__ = ("complex", "values")

    def __init__(self, complex: SimplicialComplex, values: Mapping[object, int]) -> None:
        vals = {}
        for v in complex.vertices:
            if v not in values:
                raise ValueError(f"character undefined on vertex {v!r}")
            vals[v] = int(values[v])
        for v in values:
            if v not in vals:
                raise ValueError(f"character value for unknown vertex {v!r}")
        if all(x == 0 for x in vals.values()):
            raise ValueError("character must be nonzero somewhere")
        self.complex = complex
        self.values = vals

    def __call__(self, v) -> int:
        return self.values[v]

    @property
    def is_surjective(self) -> bool:
        """True when the nonzero values have gcd 1, i.e. the image is all of Z."""
        g = 0
        for x in self.values.values():
            g = gcd(g, abs(x))
        return g == 1

    def living_vertices(self) -> list:
        return [v for v in self.complex.vertices if self.values[v] != 0]

    def dead_vertices(self) -> list:
        return [v for v in self.complex.vertices if self.values[v] == 0]

    def negate(self) -> "Character":
        return Character(self.complex, {v: -x for v, x in self.values.items()})

    def scale(self, c: int) -> "Character":
        if c == 0:
            raise ValueError("scaling a character by 0")
        return Character(self.complex, {v: c * x for v, x in self.values.items()})

    def value_tuple(self) -> tuple[int, ...]:
        return tuple(self.values[v] for v in self.complex.vertices)

    def to_json_dict(self) -> dict:
        return {"phi": {str(v): self.values[v] for v in self.complex.vertices}}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.complex == other.complex and self.values == other.values

    def __repr__(self) -> str:
        return f"Character({self.value_tuple()})"


@dataclass(frozen=True)
class LivingDeadPartition:
    living: SimplicialComplex
    dead: SimplicialComplex


def partition(L: SimplicialComplex, phi: Character) -> LivingDeadPartition:
    """Full subcomplexes spanned by the living and by the dead vertices."""
    if phi.complex != L:
        raise ValueError("character is not defined on this complex")
    return LivingDeadPartition(
        living=L.full_subcomplex(phi.living_vertices()),
        dead=L.full_subcomplex(phi.dead_vertices()),
    )


def living_link(L: SimplicialComplex, phi: Character, simplex: Iterable) -> SimplicialComplex:
    """Full subcomplex of the link of a face spanned by living vertices."""
    lk = L.link(simplex)
    return lk.full_subcomplex([v for v in lk.vertices if phi(v) != 0])


def is_fpn(L: SimplicialComplex, phi: Character, n: int, field: FieldSpec) -> bool:
    """Homological finiteness FP_n of the kernel, decided inside L.

    The kernel is FP_n over the field iff the living part of L is
    (n-1)-acyclic and for every nonempty dead simplex s the living part of
    lk(s) is (n - dim s - 1)-acyclic.
    """
    return fpn_violation(L, phi, n, field) is None


def fpn_violation(
    L: SimplicialComplex, phi: Character, n: int, field: FieldSpec
) -> Optional[Face]:
    """The first dead simplex witnessing failure of FP_n, or None.

    The empty simplex stands for the condition on the living part itself.
    Dead simplices are scanned by dimension, then lexicographically.
    """
    if not L.is_flag():
        raise ValueError("finiteness checking needs a flag complex")
    if phi.complex != L:
        raise ValueError("character is not defined on this complex")
    living = [v for v in L.vertices if phi(v) != 0]
    if not is_n_acyclic(L.full_subcomplex(living), n - 1, field):
        return ()
    dead = L.full_subcomplex(phi.dead_vertices())
    for k in range(0, dead.dim + 1):
        if n - k - 1 < -1:
            break  # deeper dead simplices impose vacuous conditions
        for s in dead.faces_of_dim(k):
            if not is_n_acyclic(living_link(L, phi, s), n - k - 1, field):
                return s
    return None


def kernel_betti(
    L: SimplicialComplex,
    phi: Character,
    m: int,
    field: FieldSpec,
    *,
    enforce: bool = True,
) -> int:
    """Kernel Betti number sum_v |phi(v)| * b~_{m-1}(lk(v); field).

    The closed form is valid when the kernel is FP_m over the field and
    the character is surjective; both are checked unless ``enforce`` is
    switched off (useful for formula-level experiments).
    """
    if enforce:
        if not phi.is_surjective:
            raise PreconditionError("character is not surjective (gcd of values != 1)")
        bad = fpn_violation(L, phi, m, field)
        if bad is not None:
            if bad == ():
                detail = f"the living part is not {m - 1}-acyclic"
            else:
                detail = (
                    f"living link of dead simplex {bad!r} is not "
                    f"{m - len(bad)}-acyclic"
                )
            raise PreconditionError(f"kernel is not FP_{m} over {field.token()}: {detail}")
    total = 0
    for v in L.vertices:
        w = abs(phi(v))
        if w:
            total += w * reduced_betti(L.link((v,)), field).betti(m - 1)
    return total


def count_vertex_orbits(L: SimplicialComplex, phi: Character, v) -> int:
    """Number of level-set components over a living vertex: |phi(v)|."""
    if phi(v) == 0:
        raise PreconditionError(f"vertex {v!r} is dead")
    return abs(phi(v))


# ---------------------------------------------------------------------------
# Constructive cycle pushing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PushResult:
    """Output of ``push_cycle_to_living``: z' and w with z - z' = dw."""

    cycle: ChainVector
    witness: ChainVector


def push_cycle_to_living(
    L: SimplicialComplex,
    phi: Character,
    v,
    z: ChainVector,
    n: int,
    *,
    enforce_fpn: bool = True,
) -> PushResult:
    """Rewrite an (n-1)-cycle in lk(v), v dead, into the living link.

    Follows the inductive rewriting that proves the statement: at stage m,
    every support simplex with exactly m living vertices shares its dead
    face lam with the other support simplices containing lam; their living
    parts assemble into an (m-1)-cycle in the living link of {v} u lam,
    which the FP hypothesis lets us fill (a cone vertex when m = 0, a
    linear solve otherwise).  Subtracting the boundary of lam joined with
    the filling raises the living count.  Dead faces are processed
    lexicographically; fillings are whatever the solver returns.

    Returns (z', w) with z' supported in the living link of v, dz' = 0 and
    z - z' = dw exactly.  Raises InconsistencyError when a filling that
    the FP hypothesis promises does not exist.
    """
    field = z.field
    if phi.complex != L:
        raise ValueError("character is not defined on this complex")
    if phi(v) != 0:
        raise PreconditionError(f"vertex {v!r} is living; pushing applies to dead vertices")
    if z.degree != n - 1:
        raise PreconditionError(f"expected a degree-{n - 1} chain, got degree {z.degree}")
    lk = L.link((v,))
    if not z.supported_in(lk):
        raise PreconditionError("cycle is not supported in the link of v")
    if not chain_boundary(z).is_zero():
        raise PreconditionError("input chain is not a cycle")
    if enforce_fpn:
        bad = fpn_violation(L, phi, n, field)
        if bad is not None:
            raise PreconditionError(
                f"kernel is not FP_{n} over {field.token()} (dead simplex {bad!r})"
            )

    def living_count(face: Face) -> int:
        return sum(1 for u in face if phi(u) != 0)

    def dead_part(face: Face) -> Face:
        return tuple(u for u in face if phi(u) == 0)

    def add_term(acc: dict, face: Face, coef: Scalar) -> None:
        new = field.add(acc.get(face, field.zero), coef)
        if new == 0:
            acc.pop(face, None)
        else:
            acc[face] = new

    def subtract_boundary(acc: dict, n_face_seq: tuple, coef: Scalar) -> None:
        """acc -= coef * d(oriented n_face_seq), skipping the augmentation."""
        face, sign = oriented_face(n_face_seq, L)
        total = field.mul(coef, field.of(sign))
        for i in range(len(face)):
            sub = face[:i] + face[i + 1 :]
            if not sub:
                continue
            term = field.mul(total, field.of((-1) ** i))
            add_term(acc, sub, field.neg(term))

    current: dict[Face, Scalar] = dict(z.coefficients)
    witness: dict[Face, Scalar] = {}

    for m in range(0, n):
        while True:
            groups: dict[Face, list[Face]] = {}
            for face in current:
                if living_count(face) == m:
                    groups.setdefault(dead_part(face), []).append(face)
            if not groups:
                break
            lam = min(groups, key=L._key)
            members = sorted(groups[lam], key=L._key)
            if m == 0:
                # cone each all-dead simplex off the least living vertex of
                # the living link of {v} u s
                for s in members:
                    coef = current[s]
                    cone = living_link(L, phi, (v,) + s)
                    if not cone.vertices:
                        raise InconsistencyError(
                            f"living link of {(v,) + s!r} is empty; FP_{n} must fail"
                        )
                    u = cone.vertices[0]
                    seq = (u,) + s
                    face, sign = oriented_face(seq, L)
                    add_term(witness, face, field.mul(coef, field.of(sign)))
                    subtract_boundary(current, seq, coef)
                continue
            # members are exactly the support simplices containing lam;
            # peel off lam and fill the living cycle that remains
            cone = living_link(L, phi, (v,) + lam)
            cycle_coeffs: dict[Face, Scalar] = {}
            for s in members:
                tau = tuple(u for u in s if phi(u) != 0)
                _, eps = oriented_face(lam + tau, L)
                add_term(cycle_coeffs, tau, field.mul(current[s], field.of(eps)))
            d_m = boundary_matrix(cone, m, augmented=False).over_field(field)
            row_faces = cone.faces_of_dim(m - 1)
            col_faces = cone.faces_of_dim(m)
            row_pos = {f: i for i, f in enumerate(row_faces)}
            rhs = [field.zero] * len(row_faces)
            for f, c in cycle_coeffs.items():
                if f not in row_pos:
                    raise InconsistencyError(
                        f"living simplex {f!r} missing from the living link of {(v,) + lam!r}"
                    )
                rhs[row_pos[f]] = c
            psi = solve(d_m, rhs)
            if psi is None:
                raise InconsistencyError(
                    f"no filling of the living cycle in the link of {(v,) + lam!r}; "
                    f"FP_{n} over {field.token()} must fail"
                )
            sign_nm = field.of((-1) ** (n - m))
            for idx, c in enumerate(psi):
                if c == 0:
                    continue
                seq = lam + col_faces[idx]
                face, sgn = oriented_face(seq, L)
                coef = field.mul(sign_nm, field.mul(c, field.of(sgn)))
                add_term(witness, face, coef)
                subtract_boundary(current, seq, field.mul(sign_nm, c))

    return PushResult(
        cycle=ChainVector(n - 1, field, current),
        witness=ChainVector(n, field, witness),
    )


# ---------------------------------------------------------------------------
# Integral link invariants
# ---------------------------------------------------------------------------


def torsion_contributions(L: SimplicialComplex, phi: Character, p: int) -> dict:
    """Per-vertex terms |phi(v)| * |tors H_{p-1}(lk(v); Z)| (dead ones are 0)."""
    out = {}
    for v in L.vertices:
        w = abs(phi(v))
        if w == 0:
            out[v] = 0
            continue
        _, torsion = integral_homology(L.link((v,)), p - 1)
        order = 1
        for d in torsion:
            order *= d
        out[v] = w * order
    return out


def torsion_term(L: SimplicialComplex, phi: Character, p: int) -> int:
    """sum_v |phi(v)| * |tors H_{p-1}(lk(v); Z)| over all vertices."""
    return sum(torsion_contributions(L, phi, p).values())


def mve_positive_criterion(L: SimplicialComplex, phi: Character, p: int) -> bool:
    """True when some living vertex has nonvanishing reduced H_{p-1}(lk(v); Z).

    Contract: the conclusion (positive minimal volume entropy of the
    kernel) also needs the kernel to be of homotopy-finite type, which the
    caller must assert; it is not checkable here.
    """
    for v in L.vertices:
        if phi(v) == 0:
            continue
        betti, torsion = integral_homology(L.link((v,)), p - 1)
        if betti or torsion:
            return True
    return False
