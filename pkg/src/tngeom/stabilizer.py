"""Symmetry algebra of a tensor under the product of general linear groups.

A tuple of endomorphisms, one per factor, stabilizes a tensor when the
derivation action (sum of single-slot insertions) kills it.  Collecting
the insertion of every elementary matrix in every slot as the columns of
one linear system turns the stabilizer into a kernel computation; the
orbit dimension is the rank of the same system.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import ShapeError
from .linalg import Matrix, kernel_basis, kernel_dim, kron, rank
from .tensors import Tensor, leibniz_act, lin_index


@dataclass(frozen=True)
class StabilizerSystem:
    """Linear system whose kernel is the stabilizer algebra of a tensor.

    Rows are indexed by tensor coordinates, columns by (slot, elementary
    matrix) pairs laid out slot by slot, each slot row-major.
    """

    matrix: Matrix
    shape: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def group_dim(self) -> int:
        return sum(s * s for s in self.shape)

    def stabilizer_dim(self) -> int:
        return kernel_dim(self.matrix)

    def orbit_dim(self) -> int:
        return rank(self.matrix)

    def column_label(self, col: int) -> tuple[int, int, int]:
        """Map a column index back to (slot, row, col) of the elementary matrix."""
        for j in range(len(self.shape) - 1, -1, -1):
            if col >= self.offsets[j]:
                k, l = divmod(col - self.offsets[j], self.shape[j])
                return j, k, l
        raise ShapeError(f"column {col} outside system")


def build_system(t: Tensor) -> StabilizerSystem:
    """Assemble the derivation-action system of a tensor.

    Column (j, k, l) holds the tensor obtained by routing index l of
    factor j to index k, i.e. the insertion of the elementary matrix
    E_kl in slot j.
    """
    shape = t.shape
    nrows = prod(shape)
    offsets = []
    total = 0
    for s in shape:
        offsets.append(total)
        total += s * s
    f = t.field
    data = [f.zero] * (nrows * total)
    for idx, val in t.nonzeros():
        for j, vj in enumerate(shape):
            l = idx[j]
            col_base = offsets[j] + l
            pre = list(idx)
            for k in range(vj):
                pre[j] = k
                row = lin_index(tuple(pre), shape)
                pos = row * total + col_base + k * vj
                data[pos] = data[pos] + val
            pre[j] = l
    return StabilizerSystem(Matrix(nrows, total, data, f), shape, tuple(offsets))


def stabilizer_dim(t: Tensor) -> int:
    return build_system(t).stabilizer_dim()


def orbit_dim(t: Tensor) -> int:
    return build_system(t).orbit_dim()


def stabilizer_tuples(t: Tensor) -> list[tuple[Matrix, ...]]:
    """A basis of the stabilizer algebra as tuples of square matrices."""
    sys = build_system(t)
    f = t.field
    out = []
    for vec in kernel_basis(sys.matrix):
        mats = []
        for j, vj in enumerate(sys.shape):
            seg = vec[sys.offsets[j] : sys.offsets[j] + vj * vj]
            mats.append(Matrix(vj, vj, seg, f))
        out.append(tuple(mats))
    return out


def _gl_basis(n: int, field) -> list[Matrix]:
    out = []
    for k in range(n):
        for l in range(n):
            data = [field.zero] * (n * n)
            data[k * n + l] = field.one
            out.append(Matrix(n, n, data, field))
    return out


def loop_pair_generators(edge_dims, field) -> list[tuple[int, Matrix, int, Matrix]]:
    """Adjacent-slot generator pairs for a cyclic matrix-product tensor.

    For alpha acting on the shared index between factors j and j+1, factor
    j picks up right multiplication by alpha and factor j+1 minus left
    multiplication; the trace form cancels the two contributions.
    """
    dims = tuple(int(e) for e in edge_dims)
    n = len(dims)
    out = []
    for j in range(n):
        rows_j = dims[(j - 1) % n]
        cols_next = dims[(j + 1) % n]
        for alpha in _gl_basis(dims[j], field):
            right = kron(Matrix.identity(rows_j, field), alpha.transpose())
            left = kron(alpha, Matrix.identity(cols_next, field)).scale(-field.one)
            out.append((j, right, (j + 1) % n, left))
    return out


def stabilizer_contains_expected(t: Tensor, edge_dims) -> dict:
    """Check the structural symmetries of a cyclic matrix-product tensor.

    Verifies that every adjacent-slot pair annihilates t, that a lone
    identity insertion merely rescales (so scalar tuples with nonzero
    trace sum are genuinely outside the stabilizer), and that the
    stabilizer dimension equals sum(e_j^2) - 1.
    """
    dims = tuple(int(e) for e in edge_dims)
    n = len(dims)
    expected_shape = tuple(dims[(j - 1) % n] * dims[j] for j in range(n))
    if t.shape != expected_shape:
        raise ShapeError(f"tensor shape {t.shape} does not match edge dims {dims}")
    f = t.field
    pairs_ok = True
    for j, right, jn, left in loop_pair_generators(dims, f):
        maps: list[Matrix | None] = [None] * n
        maps[j] = right
        maps[jn] = left
        if not leibniz_act(t, maps).is_zero():
            pairs_ok = False
            break
    # a single identity slot scales the tensor instead of killing it
    lone: list[Matrix | None] = [None] * n
    lone[0] = Matrix.identity(expected_shape[0], f)
    scalar_ok = leibniz_act(t, lone) == t
    expected = sum(e * e for e in dims) - 1
    computed = stabilizer_dim(t)
    return {
        "pairs_annihilate": pairs_ok,
        "scalar_scales": scalar_ok,
        "expected_dim": expected,
        "computed_dim": computed,
        "matches": pairs_ok and scalar_ok and computed == expected,
    }
