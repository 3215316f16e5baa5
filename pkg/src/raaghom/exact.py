"""Exact sparse linear algebra over Q, prime fields, and Z.

Rank, linear solve, and kernel bases over an exact field, together with
Smith normal form over the integers.  Everything is arbitrary precision:
rational scalars are `fractions.Fraction`, mod-p scalars are ints reduced
into [0, p), integer matrices use Python ints.  No floating point is used
anywhere; exactness is the correctness contract.

Matrices are stored sparsely as {(row, col): value} with no explicit
zeros.  Rank uses Gaussian elimination with Markowitz-style pivoting:
pick the nonzero entry minimising the fill-in estimate
(nnz(row) - 1) * (nnz(col) - 1), ties broken by lowest (row, col).  The
block-permutation matrices arising from finite covers stay sparse under
this strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Optional, Sequence, Union

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``char == 0``) or the prime field F_p (``char == p``)."""

    char: int = 0

    def __post_init__(self) -> None:
        if self.char != 0 and not _is_prime(self.char):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.char}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def from_token(cls, token: str) -> "FieldSpec":
        """Parse "Q", "F2", "F3", ... into a field."""
        t = token.strip()
        if t == "Q":
            return cls(0)
        if t.startswith("F") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown field token {token!r}")

    def token(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"

    # -- scalar arithmetic -------------------------------------------------

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.char == 0 else 1

    def of(self, value: Union[int, Fraction, str]) -> Scalar:
        """Coerce an int, Fraction, or "num/den" string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.char == 0:
            return Fraction(value)
        p = self.char
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator % p * pow(den, -1, p) % p
        return value % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a: Scalar) -> Scalar:
        if self.char == 0:
            return Fraction(1) / a
        return pow(a, -1, self.char)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def to_string(self, a: Scalar) -> str:
        if self.char == 0:
            f = Fraction(a)
            return f"{f.numerator}/{f.denominator}"
        return str(a)


QQ = FieldSpec.rationals()
F2 = FieldSpec.prime_field(2)


class ExactMatrix:
    """Immutable sparse matrix over an exact field (Q or F_p)."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(
        self,
        rows: int,
        cols: int,
        field: FieldSpec,
        entries: Mapping[tuple[int, int], Union[int, Fraction, str]] = (),
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.field = field
        clean: dict[tuple[int, int], Scalar] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) out of bounds for {rows}x{cols}")
            fv = field.of(v)
            if fv != 0:
                clean[(r, c)] = fv
        self.entries = clean

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Union[int, Fraction]]], field: FieldSpec) -> "ExactMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged row data")
            for c, v in enumerate(row):
                entries[(r, c)] = v
        return cls(rows, cols, field, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> "ExactMatrix":
        return cls(rows, cols, field, {})

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "ExactMatrix":
        return cls(n, n, field, {(i, i): field.one for i in range(n)})

    def entry(self, r: int, c: int) -> Scalar:
        return self.entries.get((r, c), self.field.zero)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows, self.field, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        fd = self.field
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Scalar] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                out[key] = fd.add(out.get(key, fd.zero), fd.mul(a, b))
        return ExactMatrix(self.rows, other.cols, fd, out)

    def mul_vector(self, vec: Sequence[Scalar]) -> list[Scalar]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        fd = self.field
        out = [fd.zero] * self.rows
        for (r, c), v in self.entries.items():
            out[r] = fd.add(out[r], fd.mul(v, vec[c]))
        return out

    def to_json_dict(self) -> dict:
        fd = self.field
        triples = sorted([r, c, fd.to_string(v)] for (r, c), v in self.entries.items())
        return {"rows": self.rows, "cols": self.cols, "field": fd.token(), "entries": triples}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ExactMatrix":
        field = FieldSpec.from_token(obj["field"])
        entries = {(int(r), int(c)): Fraction(s) for r, c, s in obj["entries"]}
        return cls(int(obj["rows"]), int(obj["cols"]), field, entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field.token()}, nnz={self.nnz})"


class IntMatrix:
    """Immutable sparse matrix over Z with arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(
        self, rows: int, cols: int, entries: Mapping[tuple[int, int], int] = ()
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], int] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) out of bounds for {rows}x{cols}")
            v = int(v)
            if v != 0:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row)})

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        n = len(diag)
        return cls(rows or n, cols or n, {(i, i): d for i, d in enumerate(diag)})

    def entry(self, r: int, c: int) -> int:
        return self.entries.get((r, c), 0)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("cannot compose")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], int] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + a * b
        return IntMatrix(self.rows, other.cols, out)

    def over_field(self, field: FieldSpec) -> ExactMatrix:
        return ExactMatrix(self.rows, self.cols, field, dict(self.entries))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class SmithForm:
    """Rank and elementary divisors d_1 | d_2 | ... | d_r (each >= 1)."""

    rank: int
    elementary_divisors: tuple[int, ...]

    def __post_init__(self) -> None:
        ds = self.elementary_divisors
        if len(ds) != self.rank:
            raise ValueError("number of divisors must equal rank")
        if any(d < 1 for d in ds):
            raise ValueError("divisors must be >= 1")
        if any(ds[i + 1] % ds[i] != 0 for i in range(len(ds) - 1)):
            raise ValueError("divisibility chain violated")

    @property
    def torsion_divisors(self) -> tuple[int, ...]:
        return tuple(d for d in self.elementary_divisors if d > 1)


# ---------------------------------------------------------------------------
# Rank, solve, nullspace
# ---------------------------------------------------------------------------


def _row_index(m: ExactMatrix) -> tuple[dict[int, dict[int, Scalar]], dict[int, set[int]]]:
    rows: dict[int, dict[int, Scalar]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    return rows, cols


def rank(m: ExactMatrix) -> int:
    """Field rank by sparse elimination with Markowitz pivot selection."""
    fd = m.field
    rows, cols = _row_index(m)
    rk = 0
    while rows:
        # Markowitz cost (nnz(row)-1)*(nnz(col)-1); ties at lowest (row, col).
        # Rows are scanned in ascending order so a zero-cost hit ends the scan.
        best = None
        for r in sorted(rows):
            row = rows[r]
            rc = len(row) - 1
            for c in row:
                cost = rc * (len(cols[c]) - 1)
                key = (cost, r, c)
                if best is None or key < best:
                    best = key
            if best[0] == 0:
                break
        _, pr, pc = best
        rk += 1
        pivot_row = rows.pop(pr)
        piv = pivot_row[pc]
        for c in pivot_row:
            cols[c].discard(pr)
            if not cols[c]:
                del cols[c]
        for r in sorted(cols.get(pc, ())):
            row = rows[r]
            factor = fd.div(row[pc], piv)
            for c, v in pivot_row.items():
                cur = row.get(c)
                new = fd.sub(cur, fd.mul(factor, v)) if cur is not None else fd.neg(fd.mul(factor, v))
                if new == 0:
                    if cur is not None:
                        del row[c]
                        cols[c].discard(r)
                        if not cols[c]:
                            del cols[c]
                else:
                    row[c] = new
                    if cur is None:
                        cols.setdefault(c, set()).add(r)
            if not row:
                del rows[r]
    return rk


def _echelon(
    m: ExactMatrix, rhs: Optional[Sequence[Scalar]] = None
) -> tuple[dict[int, dict[int, Scalar]], list[tuple[int, int]], Optional[list[Scalar]]]:
    """Forward elimination, columns left to right.

    Returns (rows, pivots, rhs) where pivots is a list of (row, col) in
    elimination order and rows maps surviving row indices to sparse rows.
    """
    fd = m.field
    rows, cols = _row_index(m)
    b = [fd.of(x) for x in rhs] if rhs is not None else None
    pivots: list[tuple[int, int]] = []
    used: set[int] = set()
    for c in range(m.cols):
        candidates = [r for r in cols.get(c, ()) if r not in used]
        if not candidates:
            continue
        pr = min(candidates)
        used.add(pr)
        pivots.append((pr, c))
        prow = rows[pr]
        piv = prow[c]
        for r in sorted(cols.get(c, ())):
            if r == pr or r in used:
                continue
            row = rows[r]
            factor = fd.div(row[c], piv)
            for cc, v in prow.items():
                cur = row.get(cc)
                new = fd.sub(cur, fd.mul(factor, v)) if cur is not None else fd.neg(fd.mul(factor, v))
                if new == 0:
                    if cur is not None:
                        del row[cc]
                        cols[cc].discard(r)
                else:
                    row[cc] = new
                    if cur is None:
                        cols.setdefault(cc, set()).add(r)
            if b is not None:
                b[r] = fd.sub(b[r], fd.mul(factor, b[pr]))
    return rows, pivots, b


def solve(m: ExactMatrix, b: Sequence[Scalar]) -> Optional[list[Scalar]]:
    """An exact solution x of m x = b, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    Raises ValueError on a dimension mismatch.
    """
    if len(b) != m.rows:
        raise ValueError(f"rhs has length {len(b)}, expected {m.rows}")
    fd = m.field
    rows, pivots, rhs = _echelon(m, b)
    assert rhs is not None
    pivot_rows = {r for r, _ in pivots}
    for r in range(m.rows):
        if r not in pivot_rows and rhs[r] != 0:
            return None
    x: list[Scalar] = [fd.zero] * m.cols
    for r, c in reversed(pivots):
        acc = rhs[r]
        for cc, v in rows[r].items():
            if cc != c:
                acc = fd.sub(acc, fd.mul(v, x[cc]))
        x[c] = fd.div(acc, rows[r][c])
    return x


def nullspace(m: ExactMatrix) -> list[list[Scalar]]:
    """A basis of ker(m), one vector per free column, in column order."""
    fd = m.field
    rows, pivots, _ = _echelon(m)
    pivot_cols = {c: r for r, c in pivots}
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        x: list[Scalar] = [fd.zero] * m.cols
        x[f] = fd.one
        for r, c in reversed(pivots):
            acc = fd.zero
            for cc, v in rows[r].items():
                if cc != c:
                    acc = fd.sub(acc, fd.mul(v, x[cc]))
            x[c] = fd.div(acc, rows[r][c])
        basis.append(x)
    return basis


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form by gcd reduction, pivoting on least absolute value.

    Phase one diagonalises with integer row/column operations; phase two
    repairs the divisibility chain via gcd/lcm exchanges on the diagonal.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    def set_entry(r: int, c: int, v: int) -> None:
        if v == 0:
            if c in rows.get(r, {}):
                del rows[r][c]
                if not rows[r]:
                    del rows[r]
                cols[c].discard(r)
                if not cols[c]:
                    del cols[c]
        else:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)

    def add_row(src: int, dst: int, factor: int) -> None:
        for c, v in list(rows.get(src, {}).items()):
            set_entry(dst, c, rows.get(dst, {}).get(c, 0) + factor * v)

    def add_col(src: int, dst: int, factor: int) -> None:
        for r in list(cols.get(src, set())):
            v = rows[r][src]
            set_entry(r, dst, rows.get(r, {}).get(dst, 0) + factor * v)

    diagonal: list[int] = []
    while rows:
        pr, pc = min(
            ((r, c) for r, row in rows.items() for c in row),
            key=lambda rc: (abs(rows[rc[0]][rc[1]]), rc[0], rc[1]),
        )
        piv = rows[pr][pc]
        # clear the pivot column, then the pivot row; a nonzero remainder
        # produces a smaller entry and we re-select the pivot
        dirty = False
        for r in sorted(cols.get(pc, set())):
            if r == pr:
                continue
            q = rows[r][pc] // piv
            if q:
                add_row(pr, r, -q)
            if rows.get(r, {}).get(pc, 0) != 0:
                dirty = True
        if dirty:
            continue
        for c in sorted(rows.get(pr, {}).keys()):
            if c == pc:
                continue
            q = rows[pr][c] // piv
            if q:
                add_col(pc, c, -q)
            if rows.get(pr, {}).get(c, 0) != 0:
                dirty = True
        if dirty or len(rows.get(pr, {})) > 1 or len(cols.get(pc, set())) > 1:
            continue
        # pivot must divide the rest of the matrix before it is peeled off
        offender = None
        for r, row in rows.items():
            if r == pr:
                continue
            for c, v in row.items():
                if v % piv != 0:
                    offender = r
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, pr, 1)
            continue
        diagonal.append(abs(piv))
        set_entry(pr, pc, 0)

    # repair the divisibility chain (diag(a, b) ~ diag(gcd, lcm))
    ds = diagonal
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                if ds[j] % ds[i] != 0:
                    g = gcd(ds[i], ds[j])
                    ds[i], ds[j] = g, ds[i] * ds[j] // g
                    changed = True
    ds.sort()
    return SmithForm(rank=len(ds), elementary_divisors=tuple(ds))


# ---------------------------------------------------------------------------
# Betti numbers from a pair of consecutive boundaries
# ---------------------------------------------------------------------------


def betti_from_boundaries(d_k: ExactMatrix, d_k1: ExactMatrix) -> int:
    """dim ker(d_k) - rank(d_k1) for consecutive boundary matrices.

    d_k has columns indexed by k-cells, d_k1 by (k+1)-cells; the pair must
    compose to zero.
    """
    if d_k.field != d_k1.field:
        raise ValueError("boundary matrices over different fields")
    if d_k.cols != d_k1.rows:
        raise ValueError(
            f"boundaries do not compose: d_k is {d_k.rows}x{d_k.cols}, "
            f"d_k1 is {d_k1.rows}x{d_k1.cols}"
        )
    if not d_k.mul(d_k1).is_zero():
        raise ValueError("d_k . d_{k+1} != 0")
    b = d_k.cols - rank(d_k) - rank(d_k1)
    assert b >= 0
    return b
