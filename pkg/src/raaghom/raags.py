"""Right-angled Artin groups, Salvetti boundaries, and finite covers.

A RAAG is determined by a finite flag complex: one generator per vertex,
two generators commuting exactly when their vertices are adjacent.  The
cellular chain complex of the universal cover of its Salvetti complex has
one k-cell per (k-1)-simplex (the empty simplex giving the unique 0-cell)
and boundary matrices over the group ring,

    d(e_s) = sum_i (-1)^(i-1) (v_i - 1) e_{s minus v_i},   s = [v_1 < ... < v_k].

Specialising those matrices along a finite permutation quotient of the
generators turns each group-ring entry into an N x N block and computes
the homology of the corresponding finite cover; normalised by the cover
degree these Betti numbers are the gradient approximants that the
closed-form values `dfg_betti_raag` / `graph_product_betti` bound and,
along suitable chains, match in the limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .complexes import SimplicialComplex, reduced_betti
from .exact import ExactMatrix, FieldSpec, Scalar, rank

Word = tuple[int, ...]  # letters are +-(generator index + 1), freely reduced


def _free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


class GroupRingElement:
    """A finite F-linear combination of freely reduced generator words."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: Mapping[Word, Scalar] = ()) -> None:
        self.field = field
        clean: dict[Word, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, coef in items:
            w = _free_reduce(word)
            c = field.of(coef)
            if c == 0:
                continue
            acc = field.add(clean.get(w, field.zero), c)
            if acc == 0:
                clean.pop(w, None)
            else:
                clean[w] = acc
        self.terms = clean

    @classmethod
    def zero(cls, field: FieldSpec) -> "GroupRingElement":
        return cls(field)

    @classmethod
    def one(cls, field: FieldSpec) -> "GroupRingElement":
        return cls(field, {(): field.one})

    @classmethod
    def generator_minus_one(cls, g: int, field: FieldSpec, sign: int = 1) -> "GroupRingElement":
        """(v_g - 1) scaled by +-1; ``g`` is a 1-based generator number."""
        return cls(field, {(g,): field.of(sign), (): field.of(-sign)})

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "GroupRingElement") -> "GroupRingElement":
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = self.field.add(merged.get(w, self.field.zero), c)
        return GroupRingElement(self.field, merged)

    def neg(self) -> "GroupRingElement":
        return GroupRingElement(self.field, {w: self.field.neg(c) for w, c in self.terms.items()})

    def mul(self, other: "GroupRingElement") -> "GroupRingElement":
        fd = self.field
        out: dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = _free_reduce(w1 + w2)
                out[w] = fd.add(out.get(w, fd.zero), fd.mul(c1, c2))
        return GroupRingElement(fd, out)

    def normalised_terms(self, commutes: Callable[[int, int], bool]) -> dict[Word, Scalar]:
        """Coefficients after sorting commuting adjacent letters.

        Bubble-sorts letters by generator number whenever the adjacent pair
        commutes, cancelling inverse pairs as they meet.  For words whose
        letters pairwise commute (the only products Salvetti boundaries
        produce) this reaches a canonical form, which is what the
        boundary-composition check needs.
        """
        fd = self.field
        out: dict[Word, Scalar] = {}
        for word, coef in self.terms.items():
            w = list(word)
            changed = True
            while changed:
                changed = False
                i = 0
                while i < len(w) - 1:
                    a, b = w[i], w[i + 1]
                    if a == -b:
                        del w[i : i + 2]
                        i = max(i - 1, 0)
                        changed = True
                        continue
                    if abs(a) > abs(b) and commutes(abs(a), abs(b)):
                        w[i], w[i + 1] = b, a
                        changed = True
                    i += 1
            key = tuple(w)
            acc = fd.add(out.get(key, fd.zero), coef)
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __repr__(self) -> str:
        return f"GroupRingElement(terms={len(self.terms)})"


class Raag:
    """The right-angled Artin group of a finite flag complex."""

    __slots__ = ("complex",)

    def __init__(self, defining_complex: SimplicialComplex) -> None:
        if not defining_complex.is_flag():
            raise ValueError("defining complex of a RAAG must be flag")
        self.complex = defining_complex

    @property
    def generators(self) -> tuple:
        return self.complex.vertices

    def generator_number(self, v) -> int:
        """1-based letter number of the generator attached to vertex v."""
        return self.complex.index(v) + 1

    def commutes(self, g: int, h: int) -> bool:
        if g == h:
            return True
        vs = self.complex.vertices
        return self.complex.adjacent(vs[g - 1], vs[h - 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Raag):
            return NotImplemented
        return self.complex == other.complex

    def __hash__(self) -> int:
        return hash(self.complex)

    def __repr__(self) -> str:
        return f"Raag(on {len(self.generators)} generators)"


class GroupRingMatrix:
    """A matrix with group-ring entries, e.g. a Salvetti boundary map."""

    __slots__ = ("rows", "cols", "over", "field", "entries")

    def __init__(
        self,
        rows: int,
        cols: int,
        over: Raag,
        field: FieldSpec,
        entries: Mapping[tuple[int, int], GroupRingElement] = (),
    ) -> None:
        self.rows = rows
        self.cols = cols
        self.over = over
        self.field = field
        clean: dict[tuple[int, int], GroupRingElement] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), e in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) out of bounds")
            if not e.is_zero():
                clean[(r, c)] = e
        self.entries = clean

    def entry(self, r: int, c: int) -> GroupRingElement:
        return self.entries.get((r, c), GroupRingElement.zero(self.field))

    def mul(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if self.cols != other.rows:
            raise ValueError("cannot compose group-ring matrices")
        by_row: dict[int, list[tuple[int, GroupRingElement]]] = {}
        for (r, c), e in other.entries.items():
            by_row.setdefault(r, []).append((c, e))
        out: dict[tuple[int, int], GroupRingElement] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                prod = a.mul(b)
                key = (r, c)
                out[key] = out[key].add(prod) if key in out else prod
        return GroupRingMatrix(self.rows, other.cols, self.over, self.field, out)

    def is_zero_up_to_commutation(self) -> bool:
        """True when every entry vanishes after commutation-aware cancellation."""
        return all(
            not e.normalised_terms(self.over.commutes) for e in self.entries.values()
        )

    def __repr__(self) -> str:
        return f"GroupRingMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def salvetti_boundary(A: Raag, k: int, field: FieldSpec) -> GroupRingMatrix:
    """Degree-k boundary of the Salvetti chain complex, over the group ring.

    Rows are indexed by the (k-2)-simplices of the defining complex and
    columns by its (k-1)-simplices, both in lexicographic order.
    """
    L = A.complex
    if not 0 <= k <= L.dim + 2:
        raise ValueError(f"degree {k} out of range")
    rows = L.faces_of_dim(k - 2) if k >= 1 else []
    cols = L.faces_of_dim(k - 1)
    row_pos = {f: i for i, f in enumerate(rows)}
    entries: dict[tuple[int, int], GroupRingElement] = {}
    for j, s in enumerate(cols):
        for i, v in enumerate(s):  # i is 0-based; the sign is (-1)^i
            sub = s[:i] + s[i + 1 :]
            elem = GroupRingElement.generator_minus_one(
                A.generator_number(v), field, sign=(-1) ** i
            )
            key = (row_pos[sub], j)
            entries[key] = entries[key].add(elem) if key in entries else elem
    return GroupRingMatrix(len(rows), len(cols), A, field, entries)


class FiniteQuotient:
    """A finite permutation action of the RAAG generators on {0..N-1}.

    Each generator acts by a bijection; the actions of adjacent vertices
    must commute so the RAAG relators hold in the quotient.
    """

    __slots__ = ("over", "order", "action", "inverse", "transitive")

    def __init__(self, over: Raag, order: int, action: Mapping[object, Sequence[int]]) -> None:
        if order < 1:
            raise ValueError("quotient order must be >= 1")
        self.over = over
        self.order = order
        perms: dict[object, tuple[int, ...]] = {}
        for v in over.generators:
            if v not in action:
                raise ValueError(f"generator {v!r} missing from the action")
            p = tuple(action[v])
            if sorted(p) != list(range(order)):
                raise ValueError(f"action of {v!r} is not a permutation of 0..{order - 1}")
            perms[v] = p
        self.action = perms
        self.inverse = {v: _invert(p) for v, p in perms.items()}
        for u, v in over.complex.faces_of_dim(1):
            pu, pv = perms[u], perms[v]
            if any(pu[pv[x]] != pv[pu[x]] for x in range(order)):
                raise ValueError(f"actions of adjacent generators {u!r}, {v!r} do not commute")
        self.transitive = self._orbit_count() == 1

    def _orbit_count(self) -> int:
        seen = [False] * self.order
        count = 0
        for start in range(self.order):
            if seen[start]:
                continue
            count += 1
            stack = [start]
            seen[start] = True
            while stack:
                x = stack.pop()
                for p in self.action.values():
                    y = p[x]
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
                for p in self.inverse.values():
                    y = p[x]
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
        return count

    @property
    def orbit_count(self) -> int:
        return self._orbit_count()

    def permutation_of_word(self, word: Word) -> tuple[int, ...]:
        """Left action of a word: the first letter acts last."""
        arr = list(range(self.order))
        verts = self.over.generators
        for letter in reversed(word):
            table = self.action[verts[letter - 1]] if letter > 0 else self.inverse[verts[-letter - 1]]
            arr = [table[x] for x in arr]
        return tuple(arr)

    def to_json_dict(self) -> dict:
        return {
            "type": "explicit",
            "order": self.order,
            "action": {str(v): list(p) for v, p in self.action.items()},
        }

    def __repr__(self) -> str:
        return f"FiniteQuotient(order={self.order}, transitive={self.transitive})"


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def abelian_quotient(A: Raag, moduli: Mapping[object, int]) -> FiniteQuotient:
    """The quotient onto the direct sum of Z/n_v, acting regularly on itself.

    Vertices absent from ``moduli`` get modulus 1.  The order is the
    product of the moduli and the action is transitive.
    """
    verts = A.generators
    n = {v: int(moduli.get(v, 1)) for v in verts}
    if any(nv < 1 for nv in n.values()):
        raise ValueError("moduli must be >= 1")
    for v in moduli:
        if v not in n:
            raise ValueError(f"modulus given for unknown vertex {v!r}")
    order = 1
    stride: dict[object, int] = {}
    for v in verts:
        stride[v] = order
        order *= n[v]
    action = {}
    for v in verts:
        s, nv = stride[v], n[v]
        perm = []
        for x in range(order):
            digit = (x // s) % nv
            perm.append(x + s * (((digit + 1) % nv) - digit))
        action[v] = perm
    return FiniteQuotient(A, order, action)


def specialize(m: GroupRingMatrix, q: FiniteQuotient) -> ExactMatrix:
    """Replace each group-ring entry by the N x N permutation block it acts by.

    This is a ring homomorphism on entries, so chain complexes stay chain
    complexes and the result computes the homology of the degree-N cover.
    """
    if q.over != m.over:
        raise ValueError("quotient is for a different group")
    fd = m.field
    N = q.order
    out: dict[tuple[int, int], Scalar] = {}
    perm_cache: dict[Word, tuple[int, ...]] = {}
    for (i, j), elem in m.entries.items():
        for word, coef in elem.terms.items():
            perm = perm_cache.get(word)
            if perm is None:
                perm = q.permutation_of_word(word)
                perm_cache[word] = perm
            base_r, base_c = i * N, j * N
            for x in range(N):
                key = (base_r + perm[x], base_c + x)
                acc = fd.add(out.get(key, fd.zero), coef)
                if acc == 0:
                    out.pop(key, None)
                else:
                    out[key] = acc
    return ExactMatrix(m.rows * N, m.cols * N, fd, out)


@dataclass(frozen=True)
class CoverHomologyReport:
    """Betti numbers of one finite cover together with their N-normalisations."""

    order: int
    betti: tuple[int, ...]
    normalized: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(b < 0 for b in self.betti):
            raise ValueError("negative Betti number")
        if any(Fraction(b, self.order) != q for b, q in zip(self.betti, self.normalized)):
            raise ValueError("normalised values must equal betti/order exactly")

    def to_json_dict(self) -> dict:
        return {
            "N": self.order,
            "betti": list(self.betti),
            "normalized": [f"{q.numerator}/{q.denominator}" for q in self.normalized],
        }


def cover_betti(
    A: Raag,
    q: FiniteQuotient,
    field: FieldSpec,
    *,
    rank_hook: Optional[Callable[[int, ExactMatrix], int]] = None,
) -> CoverHomologyReport:
    """Betti numbers of the finite cover determined by a quotient.

    In degree k the answer is (#k-cells) * N - rank d_k - rank d_{k+1};
    degree 0 comes out as the number of orbits of the action.  The
    optional ``rank_hook(degree, matrix)`` lets callers memoise ranks.
    """
    L = A.complex
    N = q.order
    top = L.dim + 1
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        mat = specialize(salvetti_boundary(A, k, field), q)
        ranks[k] = rank_hook(k, mat) if rank_hook is not None else rank(mat)
    betti = []
    for k in range(top + 1):
        d_k = L.n_faces(k - 1)
        betti.append(d_k * N - ranks[k] - ranks[k + 1])
    return CoverHomologyReport(
        order=N,
        betti=tuple(betti),
        normalized=tuple(Fraction(b, N) for b in betti),
    )


def gradient_sequence(
    A: Raag, chain: Sequence[FiniteQuotient], field: FieldSpec, degree: int
) -> list[Fraction]:
    """Normalised Betti numbers b_k/N along a chain of quotients.

    The values are reported raw; no convergence judgement is made.
    """
    orders = [q.order for q in chain]
    if any(orders[i] > orders[i + 1] for i in range(len(orders) - 1)):
        raise ValueError("quotient orders must be nondecreasing")
    out = []
    for q in chain:
        report = cover_betti(A, q, field)
        out.append(report.normalized[degree] if degree < len(report.betti) else Fraction(0))
    return out


def dfg_betti_raag(A: Raag, field: FieldSpec, degree: int) -> int:
    """Closed-form skew-field Betti number of a RAAG: b~_{k-1} of its complex.

    This is the common value of the normalised Betti numbers of finite
    covers in the limit, and a lower bound for every individual cover.
    """
    return reduced_betti(A.complex, field).betti(degree - 1)


def graph_product_betti(K: SimplicialComplex, field: FieldSpec, degree: int) -> int:
    """Closed-form skew-field Betti number of a graph product over K.

    Contract: the caller asserts that every factor group is acyclic over
    the coefficient skew field (true e.g. for infinite amenable factors);
    that hypothesis is not checkable here.  K must be flag.
    """
    if not K.is_flag():
        raise ValueError("graph products are defined over flag complexes")
    return reduced_betti(K, field).betti(degree - 1)


def weighted_nerve_betti(
    K: SimplicialComplex,
    weights: Mapping[object, int],
    field: FieldSpec,
    degree: int,
) -> int:
    """Weighted sum of link Betti numbers over a scattered vertex set.

    ``weights`` assigns a positive multiplicity to each chosen vertex; the
    chosen vertices must be pairwise nonadjacent in K.  Returns
    sum_a n_a * b~_{degree-1}(link(a); field).
    """
    chosen = sorted(weights, key=K.index)
    for v in chosen:
        if weights[v] < 1:
            raise ValueError(f"weight of {v!r} must be positive")
    for i, u in enumerate(chosen):
        for v in chosen[i + 1 :]:
            if K.adjacent(u, v):
                raise ValueError(f"weighted vertices {u!r}, {v!r} are adjacent")
    total = 0
    for v in chosen:
        total += weights[v] * reduced_betti(K.link((v,)), field).betti(degree - 1)
    return total
