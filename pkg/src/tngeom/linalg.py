"""Exact matrices and elimination over the rationals or a prime field.

Rank is the workhorse: stabilizer and Jacobian computations reduce to the
rank of a sparse exact matrix.  In rational mode rows are cleared to
integers and eliminated fraction-free (cross multiply, then divide each row
by its content), which keeps entries at the size of minors or below.  In
prime field mode ordinary division based elimination is used.

Matrices are immutable after construction.  Entries are stored dense in
row-major order; the elimination routines work on sparse per-row dicts and
skip structural zeros, so large mostly-zero systems stay cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm

from .errors import SemanticError, ShapeError, SingularMatrixError
from .fields import QQ, Field, PrimeField, RationalField

RANDOM_ENTRY_BOUND = 10**6


class Matrix:
    """Immutable exact matrix over a fixed field."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries, field: Field = QQ):
        if rows < 0 or cols < 0:
            raise ShapeError("matrix dimensions must be nonnegative")
        ent = tuple(field.coerce(x) for x in entries)
        if len(ent) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, data, field: Field = QQ) -> "Matrix":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ShapeError("ragged rows")
        return cls(rows, cols, [x for r in data for x in r], field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls(n, n, [field.one if i == j else field.zero for i in range(n) for j in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        return cls(rows, cols, [field.zero] * (rows * cols), field)

    def at(self, i: int, j: int):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ShapeError(f"index ({i},{j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        ent = [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return Matrix(self.cols, self.rows, ent, self.field)

    def _check_same_field(self, other: "Matrix"):
        if self.field != other.field:
            raise SemanticError("matrices live over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in addition")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries], self.field)

    def scale(self, s) -> "Matrix":
        s = self.field.coerce(s)
        return Matrix(self.rows, self.cols, [s * a for a in self.entries], self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero
        out = []
        orows = other.to_rows()
        for i in range(self.rows):
            base = i * self.cols
            acc = [zero] * other.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if not a:
                    continue
                orow = orows[k]
                for j in range(other.cols):
                    b = orow[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.extend(acc)
        return Matrix(self.rows, other.cols, out, self.field)

    def apply(self, vec: list) -> list:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        v = [self.field.coerce(x) for x in vec]
        out = []
        for i in range(self.rows):
            acc = self.field.zero
            base = i * self.cols
            for j, x in enumerate(v):
                if x:
                    acc = acc + self.entries[base + j] * x
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries, self.field))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row-major convention, so kron(A, B) acts on vec(M) as A M B^T."""
    a._check_same_field(b)
    ent = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                aij = a.entries[i * a.cols + j]
                for l in range(b.cols):
                    ent.append(aij * b.entries[k * b.cols + l])
    return Matrix(a.rows * b.rows, a.cols * b.cols, ent, a.field)


def _sparse_rows(m: Matrix) -> list[dict]:
    out = []
    for i in range(m.rows):
        base = i * m.cols
        row = {j: m.entries[base + j] for j in range(m.cols) if m.entries[base + j]}
        if row:
            out.append(row)
    return out


def _int_rows(m: Matrix) -> list[dict]:
    """Clear denominators and content so every surviving row is primitive integer."""
    out = []
    for i in range(m.rows):
        base = i * m.cols
        row = {j: m.entries[base + j] for j in range(m.cols) if m.entries[base + j]}
        if not row:
            continue
        mult = lcm(*(v.denominator for v in row.values()))
        ints = {j: int(v * mult) for j, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            ints = {j: v // g for j, v in ints.items()}
        out.append(ints)
    return out


def _rank_int(rows: list[dict]) -> int:
    """Fraction-free elimination on primitive integer rows.

    Each update is pivot*row - entry*pivot_row followed by division of the
    row by its content; by the Sylvester identity the content absorbs at
    least the previous pivot, so growth stays at minor scale.
    """
    active = [r for r in rows if r]
    rank = 0
    while active:
        best = None
        for ri, row in enumerate(active):
            n = len(row)
            for c, v in row.items():
                cand = (n, v if v >= 0 else -v, ri, c)
                if best is None or cand < best:
                    best = cand
        _, _, ri, pc = best
        pivot_row = active.pop(ri)
        pv = pivot_row[pc]
        rank += 1
        survivors = []
        for row in active:
            rv = row.pop(pc, None)
            if rv is None:
                if row:
                    survivors.append(row)
                continue
            out = {c: pv * v for c, v in row.items()}
            for c, v in pivot_row.items():
                if c == pc:
                    continue
                nv = out.get(c, 0) - rv * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
            if out:
                g = 0
                for v in out.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    out = {c: v // g for c, v in out.items()}
                survivors.append(out)
        active = survivors
    return rank


def _rank_field(rows: list[dict]) -> int:
    """Division-based elimination; used for prime field scalars."""
    active = [dict(r) for r in rows if r]
    rank = 0
    while active:
        best = None
        for ri, row in enumerate(active):
            n = len(row)
            for c in row:
                cand = (n, ri, c)
                if best is None or cand < best:
                    best = cand
        _, ri, pc = best
        pivot_row = active.pop(ri)
        pv = pivot_row[pc]
        rank += 1
        survivors = []
        for row in active:
            rv = row.pop(pc, None)
            if rv is None:
                if row:
                    survivors.append(row)
                continue
            factor = rv / pv
            for c, v in pivot_row.items():
                if c == pc:
                    continue
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            if row:
                survivors.append(row)
        active = survivors
    return rank


def rank(m: Matrix) -> int:
    """Exact rank; independent of row and column order."""
    if isinstance(m.field, RationalField):
        return _rank_int(_int_rows(m))
    return _rank_field(_sparse_rows(m))


def kernel_dim(m: Matrix) -> int:
    """Dimension of the right kernel."""
    return m.cols - rank(m)


def _rref(m: Matrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form as sparse rows plus ordered pivot columns."""
    active = _sparse_rows(m)
    done: list[tuple[int, dict]] = []
    while active:
        best = None
        for ri, row in enumerate(active):
            n = len(row)
            for c in row:
                cand = (c, n, ri)
                if best is None or cand < best:
                    best = cand
        pc, _, ri = best
        pivot_row = active.pop(ri)
        pv = pivot_row[pc]
        pivot_row = {c: v / pv for c, v in pivot_row.items()}
        survivors = []
        for row in active:
            rv = row.pop(pc, None)
            if rv is not None:
                for c, v in pivot_row.items():
                    if c == pc:
                        continue
                    nv = row.get(c, m.field.zero) - rv * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            if row:
                survivors.append(row)
        active = survivors
        for _, drow in done:
            rv = drow.pop(pc, None)
            if rv is not None:
                for c, v in pivot_row.items():
                    if c == pc:
                        continue
                    nv = drow.get(c, m.field.zero) - rv * v
                    if nv:
                        drow[c] = nv
                    else:
                        drow.pop(c, None)
        done.append((pc, pivot_row))
    done.sort(key=lambda t: t[0])
    return [r for _, r in done], [p for p, _ in done]


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the right kernel, one coordinate vector per free column."""
    rows, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    zero, one = m.field.zero, m.field.one
    basis = []
    for f in free:
        vec = [zero] * m.cols
        vec[f] = one
        for p, row in zip(pivots, rows):
            coeff = row.get(f)
            if coeff:
                vec[p] = -coeff
        basis.append(vec)
    return basis


def inverse(m: Matrix) -> Matrix:
    """Inverse via Gauss-Jordan on the augmented system."""
    if m.rows != m.cols:
        raise ShapeError("only square matrices can be inverted")
    n = m.rows
    aug = Matrix(
        n,
        2 * n,
        [m.entries[i * n + j] if j < n else (m.field.one if j == n + i else m.field.zero) for i in range(n) for j in range(2 * n)],
        m.field,
    )
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    zero = m.field.zero
    ent = []
    for i in range(n):
        row = rows[i]
        ent.extend(row.get(n + j, zero) for j in range(n))
    return Matrix(n, n, ent, m.field)


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def random_matrix(rows: int, cols: int, seed: int, field: Field = QQ, bound: int = RANDOM_ENTRY_BOUND) -> Matrix:
    """Reproducible random matrix with integer entries uniform in [-bound, bound]."""
    rng = random.Random(seed)
    ent = [rng.randint(-bound, bound) for _ in range(rows * cols)]
    return Matrix(rows, cols, ent, field)


def random_invertible(n: int, seed: int, field: Field = QQ, bound: int = RANDOM_ENTRY_BOUND) -> Matrix:
    """First invertible sample along a deterministic seed chain."""
    for attempt in range(64):
        m = random_matrix(n, n, seed + 7919 * attempt, field, bound)
        if is_invertible(m):
            return m
    raise SemanticError("could not sample an invertible matrix")  # pragma: no cover


def rank_modulo_primes(m: Matrix, primes: list[int]) -> list[int]:
    """Rank of the same rational matrix reduced mod each given prime."""
    if not isinstance(m.field, RationalField):
        raise SemanticError("rank_modulo_primes expects a rational matrix")
    out = []
    for p in primes:
        fp = PrimeField(p)
        out.append(rank(Matrix(m.rows, m.cols, m.entries, fp)))
    return out
