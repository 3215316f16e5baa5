"""Finite simplicial and flag complexes with exact reduced homology.

The empty simplex is a first-class face of every complex and reduced
homology is the default convention throughout: the profile of a complex
starts in degree -1, and the empty complex has reduced Betti number 1
there.  A global vertex order is fixed at construction and every face,
boundary sign, and matrix layout derives from it, so all outputs are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .exact import FieldSpec, IntMatrix, Scalar, rank, smith_normal_form

Label = Hashable
Face = tuple


class SimplicialComplex:
    """A finite simplicial complex on an ordered vertex list.

    Faces are stored explicitly (downward closed, including the empty
    face) as tuples sorted by the global vertex order.
    """

    __slots__ = ("vertices", "faces", "_index", "_by_dim", "_hash", "_flag")

    def __init__(
        self,
        vertices: Sequence[Label],
        faces: Iterable[Iterable[Label]] = (),
        *,
        closed: bool = False,
    ) -> None:
        self.vertices: tuple = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        face_set: set[Face] = {()}
        face_set.update((v,) for v in self.vertices)
        for f in faces:
            face_set.add(self.sort_face(f))
        if not closed:
            stack = list(face_set)
            while stack:
                f = stack.pop()
                for i in range(len(f)):
                    sub = f[:i] + f[i + 1 :]
                    if sub not in face_set:
                        face_set.add(sub)
                        stack.append(sub)
        self.faces = frozenset(face_set)
        by_dim: dict[int, list[Face]] = {}
        for f in self.faces:
            by_dim.setdefault(len(f) - 1, []).append(f)
        for k in by_dim:
            by_dim[k].sort(key=self._key)
        self._by_dim = by_dim
        self._hash: Optional[int] = None
        self._flag: Optional[bool] = None

    # -- basic queries -------------------------------------------------------

    def index(self, v: Label) -> int:
        return self._index[v]

    def _key(self, face: Face) -> tuple:
        return tuple(self._index[v] for v in face)

    def sort_face(self, verts: Iterable[Label]) -> Face:
        vs = tuple(verts)
        for v in vs:
            if v not in self._index:
                raise ValueError(f"unknown vertex {v!r}")
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in face {vs!r}")
        return tuple(sorted(vs, key=self._index.__getitem__))

    @property
    def dim(self) -> int:
        return max(self._by_dim)

    def faces_of_dim(self, k: int) -> list[Face]:
        return list(self._by_dim.get(k, ()))

    def n_faces(self, k: int) -> int:
        return len(self._by_dim.get(k, ()))

    def has_face(self, verts: Iterable[Label]) -> bool:
        try:
            return self.sort_face(verts) in self.faces
        except ValueError:
            return False

    def adjacent(self, u: Label, v: Label) -> bool:
        return u != v and self.sort_face((u, v)) in self.faces

    def edges(self) -> list[Face]:
        return self.faces_of_dim(1)

    def euler_characteristic_reduced(self) -> int:
        """Alternating face count with the empty face contributing -1."""
        return sum((-1) ** (len(f) - 1) for f in self.faces)

    # -- derived complexes -----------------------------------------------------

    def full_subcomplex(self, verts: Iterable[Label]) -> "SimplicialComplex":
        keep = set(verts)
        sub_vertices = [v for v in self.vertices if v in keep]
        sub_faces = [f for f in self.faces if all(v in keep for v in f)]
        return SimplicialComplex(sub_vertices, sub_faces, closed=True)

    def link(self, simplex: Iterable[Label]) -> "SimplicialComplex":
        """The link {t : t disjoint from s, t union s a face} of a face s."""
        s = self.sort_face(simplex)
        if s not in self.faces:
            raise ValueError(f"{s!r} is not a face")
        if not s:
            return self
        s_set = set(s)
        lk_faces = []
        for f in self.faces:
            if any(v in s_set for v in f):
                continue
            if self.sort_face(f + s) in self.faces:
                lk_faces.append(f)
        lk_vertices = sorted(
            {f[0] for f in lk_faces if len(f) == 1}, key=self._index.__getitem__
        )
        return SimplicialComplex(lk_vertices, lk_faces, closed=True)

    def is_flag(self) -> bool:
        """True when every pairwise-adjacent vertex set spans a face."""
        if self._flag is None:
            clique = flag_completion(self.vertices, self.faces_of_dim(1))
            self._flag = clique.faces == self.faces
        return self._flag

    # -- equality / hashing ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.faces == other.faces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vertices, self.faces))
        return self._hash

    def __repr__(self) -> str:
        counts = [self.n_faces(k) for k in range(self.dim + 1)] if self.dim >= 0 else []
        return f"SimplicialComplex(vertices={len(self.vertices)}, f_vector={counts})"

    # -- serialisation ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "faces": [list(f) for k in sorted(self._by_dim) if k >= 0 for f in self._by_dim[k]],
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "SimplicialComplex":
        vertices = list(obj["vertices"])
        if "edges" in obj:
            return flag_completion(vertices, [tuple(e) for e in obj["edges"]])
        return cls(vertices, [tuple(f) for f in obj.get("faces", [])])


def flag_completion(vertices: Sequence[Label], edges: Iterable[Iterable[Label]]) -> SimplicialComplex:
    """The clique complex of a simple graph: faces are exactly the cliques."""
    verts = tuple(vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj: dict[Label, set[int]] = {v: set() for v in verts}
    for e in edges:
        pair = tuple(e)
        if len(pair) != 2 or pair[0] == pair[1]:
            raise ValueError(f"not a simple edge: {pair!r}")
        u, v = pair
        if u not in index or v not in index:
            raise ValueError(f"edge {pair!r} uses unknown vertex")
        adj[u].add(index[v])
        adj[v].add(index[u])
    cliques: list[Face] = [()]

    def extend(prefix: tuple, candidates: set[int]) -> None:
        for i in sorted(candidates):
            clique = prefix + (verts[i],)
            cliques.append(clique)
            extend(clique, candidates & adj[verts[i]] & set(range(i + 1, len(verts))))

    extend((), set(range(len(verts))))
    return SimplicialComplex(verts, cliques, closed=True)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the nonempty faces of K, faces are chains under inclusion.

    The result is always flag, which is how flag triangulations of
    arbitrary complexes are produced here.
    """
    cells = [f for f in K.faces if f]
    cells.sort(key=lambda f: (len(f), K._key(f)))
    supersets: dict[Face, list[Face]] = {f: [] for f in cells}
    for g in cells:
        gs = set(g)
        for f in cells:
            if len(f) < len(g) and all(v in gs for v in f):
                supersets[f].append(g)
    chains: list[tuple[Face, ...]] = []

    def grow(chain: tuple[Face, ...]) -> None:
        chains.append(chain)
        for g in supersets[chain[-1]]:
            grow(chain + (g,))

    for f in cells:
        grow((f,))
    return SimplicialComplex(cells, chains, closed=True)


def boundary_matrix(K: SimplicialComplex, k: int, augmented: bool = True) -> IntMatrix:
    """The degree-k simplicial boundary in the global vertex order.

    Rows are (k-1)-faces, columns are k-faces.  With ``augmented`` the
    degree-0 matrix maps each vertex to the empty face with coefficient 1;
    without it the degree-0 matrix has no rows.
    """
    if not 0 <= k <= K.dim + 1:
        raise ValueError(f"degree {k} out of range for a complex of dimension {K.dim}")
    cols = K.faces_of_dim(k)
    if k == 0:
        rows = [()] if augmented else []
    else:
        rows = K.faces_of_dim(k - 1)
    row_pos = {f: i for i, f in enumerate(rows)}
    entries: dict[tuple[int, int], int] = {}
    for j, f in enumerate(cols):
        for i in range(len(f)):
            sub = f[:i] + f[i + 1 :]
            if sub in row_pos:
                entries[(row_pos[sub], j)] = (-1) ** i
    return IntMatrix(len(rows), len(cols), entries)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers b~_{-1}, b~_0, ..., b~_dim over one field."""

    field: FieldSpec
    reduced_betti: tuple[int, ...]

    def betti(self, degree: int) -> int:
        """b~_degree, with degrees outside the stored range equal to 0."""
        i = degree + 1
        if 0 <= i < len(self.reduced_betti):
            return self.reduced_betti[i]
        return 0

    def to_json_dict(self) -> dict:
        return {"field": self.field.token(), "reduced_betti": list(self.reduced_betti)}


@lru_cache(maxsize=None)
def _boundary_ranks(K: SimplicialComplex, field: FieldSpec) -> tuple[int, ...]:
    """rank of the augmented boundary in degrees 0 .. dim, over the field."""
    return tuple(
        rank(boundary_matrix(K, k, augmented=True).over_field(field))
        for k in range(K.dim + 1)
    )


def reduced_betti(K: SimplicialComplex, field: FieldSpec) -> HomologyProfile:
    """Reduced Betti numbers via augmented boundary matrices."""
    ranks = _boundary_ranks(K, field)
    values = []
    for k in range(-1, K.dim + 1):
        n_k = 1 if k == -1 else K.n_faces(k)
        r_k = 0 if k == -1 else ranks[k]
        r_k1 = ranks[k + 1] if k + 1 <= K.dim else 0
        b = n_k - r_k - r_k1
        assert b >= 0
        values.append(b)
    return HomologyProfile(field=field, reduced_betti=tuple(values))


def betti_numbers(K: SimplicialComplex, field: FieldSpec, *, reduced: bool = True) -> list[int]:
    """Betti numbers in degrees 0..dim; the unreduced ones differ only in b_0."""
    profile = reduced_betti(K, field)
    values = list(profile.reduced_betti[1:])
    if not reduced and K.dim >= 0:
        values[0] += 1 - profile.reduced_betti[0]  # put back the component lost to reduction
    return values


@lru_cache(maxsize=None)
def _integral_data(K: SimplicialComplex, k: int) -> tuple[int, tuple[int, ...]]:
    n_k = 1 if k == -1 else K.n_faces(k)
    r_k = 0 if k <= -1 else smith_normal_form(boundary_matrix(K, k, augmented=True)).rank
    if k + 1 <= K.dim:
        sf_next = smith_normal_form(boundary_matrix(K, k + 1, augmented=True))
        r_k1 = sf_next.rank
        torsion = sf_next.torsion_divisors
    else:
        r_k1 = 0
        torsion = ()
    return n_k - r_k - r_k1, torsion


def integral_homology(K: SimplicialComplex, k: int) -> tuple[int, list[int]]:
    """Reduced integral homology in degree k: (free rank, torsion divisors > 1)."""
    if k < -1 or k > K.dim:
        return 0, []
    betti, torsion = _integral_data(K, k)
    return betti, list(torsion)


def is_n_acyclic(K: SimplicialComplex, n: int, field: FieldSpec) -> bool:
    """True when b~_i(K; field) = 0 for all -1 <= i <= n.

    For n >= -1 this forces the complex to be nonempty; for n < -1 the
    condition is vacuous.
    """
    if n < -1:
        return True
    profile = reduced_betti(K, field)
    return all(profile.betti(i) == 0 for i in range(-1, n + 1))


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------


def oriented_face(verts: Sequence[Label], K: SimplicialComplex) -> tuple[Face, int]:
    """Canonical face and orientation sign of an ordered vertex sequence.

    Returns (face, sign) where sign is the parity of the permutation that
    sorts the sequence into the global vertex order, or (face, 0) when a
    vertex repeats.
    """
    keys = [K.index(v) for v in verts]
    if len(set(keys)) != len(keys):
        return tuple(verts), 0
    order = sorted(range(len(keys)), key=keys.__getitem__)
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(verts[i] for i in order), sign


class ChainVector:
    """A formal field-linear combination of faces of a fixed degree."""

    __slots__ = ("degree", "field", "coefficients")

    def __init__(
        self,
        degree: int,
        field: FieldSpec,
        coefficients: Mapping[Face, Scalar] = (),
    ) -> None:
        self.degree = degree
        self.field = field
        clean: dict[Face, Scalar] = {}
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        for f, v in items:
            if len(f) != degree + 1:
                raise ValueError(f"face {f!r} has the wrong degree for a {degree}-chain")
            fv = field.of(v)
            if fv != 0:
                clean[tuple(f)] = fv
        self.coefficients = clean

    @classmethod
    def zero(cls, degree: int, field: FieldSpec) -> "ChainVector":
        return cls(degree, field, {})

    def support(self) -> list[Face]:
        return sorted(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def add(self, other: "ChainVector") -> "ChainVector":
        if (self.degree, self.field) != (other.degree, other.field):
            raise ValueError("chain degree/field mismatch")
        out = dict(self.coefficients)
        for f, v in other.coefficients.items():
            out[f] = self.field.add(out.get(f, self.field.zero), v)
        return ChainVector(self.degree, self.field, out)

    def scale(self, c: Scalar) -> "ChainVector":
        return ChainVector(
            self.degree,
            self.field,
            {f: self.field.mul(v, c) for f, v in self.coefficients.items()},
        )

    def sub(self, other: "ChainVector") -> "ChainVector":
        return self.add(other.scale(self.field.neg(self.field.one)))

    def supported_in(self, K: SimplicialComplex) -> bool:
        return all(f in K.faces for f in self.coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainVector):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.field == other.field
            and self.coefficients == other.coefficients
        )

    def __repr__(self) -> str:
        return f"ChainVector(degree={self.degree}, terms={len(self.coefficients)})"


def chain_boundary(chain: ChainVector) -> ChainVector:
    """Augmented simplicial boundary: vertices map to the empty face."""
    field = chain.field
    out: dict[Face, Scalar] = {}
    for f, coef in chain.coefficients.items():
        for i in range(len(f)):
            sub = f[:i] + f[i + 1 :]
            sign = field.of((-1) ** i)
            out[sub] = field.add(out.get(sub, field.zero), field.mul(sign, coef))
    return ChainVector(chain.degree - 1, field, out)
