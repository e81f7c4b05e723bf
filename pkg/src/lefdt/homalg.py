"""Exact integer linear algebra for chain complexes.

All reductions run on Python ints (arbitrary precision).  Boundary and
chain-map matrices are stored as small numpy int64 arrays because their
entries are always in {-1, 0, 1}; anything derived from them (Smith forms,
projectors, traces) is computed with Python ints or Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from .errors import DomainError, InternalError, PreconditionError


def as_int_rows(M) -> list:
    """Copy an array-like matrix into a list of lists of Python ints."""
    if isinstance(M, np.ndarray):
        return [[int(x) for x in row] for row in M.tolist()]
    return [[int(x) for x in row] for row in M]


def _shape(M):
    if isinstance(M, np.ndarray):
        return M.shape
    rows = len(M)
    return rows, (len(M[0]) if rows else 0)


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: list, B: list) -> list:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if A and len(A[0]) != inner:
        raise DomainError("matrix shapes do not compose")
    Bt = list(zip(*B)) if B else [() for _ in range(cols)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


@dataclass(frozen=True)
class SmithForm:
    """``S == U @ M @ V`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: list
    S: list
    V: list

    @property
    def diagonal(self) -> list:
        r = min(len(self.S), len(self.S[0]) if self.S else 0)
        return [self.S[i][i] for i in range(r)]

    @property
    def invariant_factors(self) -> list:
        return [d for d in self.diagonal if d != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M, pivot: str = "min") -> SmithForm:
    """Smith normal form with unimodular transforms.

    Parameters
    ----------
    M : array-like of ints, shape (m, n)
    pivot : {"min", "first"}
        Pivot choice among the remaining block: smallest absolute value or
        first nonzero in column-major order.  Both give the same diagonal.
    """
    if pivot not in ("min", "first"):
        raise DomainError(f"unknown pivot strategy {pivot!r}")
    m, n = _shape(M)
    A = as_int_rows(M) if m else []
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        ra, rs = A[dst], A[src]
        for c in range(n):
            if rs[c]:
                ra[c] += k * rs[c]
        ua, us = U[dst], U[src]
        for c in range(m):
            if us[c]:
                ua[c] += k * us[c]

    def add_col(dst, src, k):
        for row in A:
            if row[src]:
                row[dst] += k * row[src]
        for row in V:
            if row[src]:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for j in range(t, n):
            for i in range(t, m):
                a = A[i][j]
                if a and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                    best = (i, j)
                    if pivot == "first" or abs(a) == 1:
                        break
            if best is not None and (pivot == "first" or abs(A[best[0]][best[1]]) == 1):
                break
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # bring the smallest entry of row/column t to the pivot
            small = (t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < abs(A[small[0]][small[1]]):
                    small = (i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < abs(A[small[0]][small[1]]):
                    small = (t, j)
            if small[0] != t:
                swap_rows(t, small[0])
            elif small[1] != t:
                swap_cols(t, small[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SmithForm(U, A, V)


def rank_bareiss(M) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    A = as_int_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def determinant(M) -> int:
    """Exact determinant via Bareiss elimination."""
    A = as_int_rows(M)
    n = len(A)
    if any(len(row) != n for row in A):
        raise DomainError("determinant needs a square matrix")
    sign, prev = 1, 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * (A[n - 1][n - 1] if n else 1)


def _rref(rows: list, ncols: int):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                k = A[i][c]
                A[i] = [a - k * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_basis(M, ncols: int) -> list:
    """Integer column vectors spanning ker M over Q (as a list of columns)."""
    rows = as_int_rows(M)
    R, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(_primitive(v))
    return basis


def column_space_basis(M) -> list:
    """Linearly independent columns of M spanning its image (as columns)."""
    rows = as_int_rows(M)
    m, n = (len(rows), len(rows[0]) if rows else 0)
    if m == 0:
        return []
    _, pivots = _rref(rows, n)
    return [[rows[i][c] for i in range(m)] for c in pivots]


def _primitive(v) -> list:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def _trace_projector(columns: list, dim: int):
    """Integer matrix ``Q`` and denominator ``d`` with ``W P = Q / d``.

    ``W`` has the given columns and ``P`` is a left inverse of ``W``.  For
    any endomorphism ``F`` preserving span(W), ``tr(F | span W)`` equals
    ``sum(Q.T * F) / d``.  ``P`` inverts an invertible k x k block of rows
    of ``W`` and is zero elsewhere.
    """
    k = len(columns)
    Q = np.zeros((dim, dim), dtype=object)
    if k == 0:
        return Q, 1
    _, rows = _rref(columns, dim)
    if len(rows) != k:
        raise InternalError("trace projector basis is not independent")
    block = [[columns[j][s] for j in range(k)] + [int(a == b) for b in range(k)]
             for a, s in enumerate(rows)]
    R, _ = _rref(block, 2 * k)
    inv = [row[k:] for row in R]
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    inv_int = [[int(x * den) for x in row] for row in inv]
    for c, s in enumerate(rows):
        for r in range(dim):
            Q[r, s] = sum(columns[a][r] * inv_int[a][c] for a in range(k) if columns[a][r])
    return Q, den


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = ()

    def __str__(self):
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


class ChainComplex:
    """Free chain complex with an ordered cell basis per dimension.

    Parameters
    ----------
    kind : str
        ``"simplicial"`` or ``"cubical"``.
    image : DigitalImage
        The image the cells live on.
    cells : sequence of sequences
        ``cells[q]`` lists the q-cells; each cell is a tuple of point
        indices in the cell's canonical vertex order.
    boundaries : sequence of ndarray
        ``boundaries[q]`` is the matrix of the boundary C_q -> C_{q-1}
        (shape ``len(cells[q-1]) x len(cells[q])``); ``boundaries[0]`` has
        zero rows.
    """

    def __init__(self, kind, image, cells, boundaries, labels=None):
        self.kind = kind
        self.image = image
        self.cells = tuple(tuple(c) for c in cells)
        self.boundaries = tuple(np.asarray(b, dtype=np.int64) for b in boundaries)
        self.labels = labels
        self.positions = tuple({c: i for i, c in enumerate(cs)} for cs in self.cells)
        if len(self.boundaries) != len(self.cells):
            raise InternalError("one boundary matrix per dimension is required")

    def __repr__(self):
        return f"ChainComplex({self.kind}, ranks={self.ranks})"

    @property
    def top_dimension(self) -> int:
        return len(self.cells) - 1

    @property
    def ranks(self) -> tuple:
        return tuple(len(c) for c in self.cells)

    def boundary(self, q: int) -> np.ndarray:
        """Boundary C_q -> C_{q-1}; empty matrices outside the range."""
        if 0 <= q < len(self.cells):
            return self.boundaries[q]
        rows = len(self.cells[q - 1]) if 0 <= q - 1 < len(self.cells) else 0
        cols = len(self.cells[q]) if 0 <= q < len(self.cells) else 0
        return np.zeros((rows, cols), dtype=np.int64)

    def dim(self, q: int) -> int:
        return len(self.cells[q]) if 0 <= q < len(self.cells) else 0

    def boundary_squares_vanish(self) -> bool:
        for q in range(2, len(self.cells)):
            if np.any(self.boundaries[q - 1] @ self.boundaries[q]):
                return False
        return True

    @cached_property
    def smith_forms(self) -> tuple:
        return tuple(smith_normal_form(self.boundary(q)) for q in range(len(self.cells) + 1))

    @cached_property
    def trace_projectors(self) -> tuple:
        """Per dimension: (Q_Z, d_Z, Q_B, d_B) for cycle and boundary subspaces."""
        out = []
        for q in range(len(self.cells)):
            dq = self.dim(q)
            if q == 0:
                z_cols = [[int(i == j) for i in range(dq)] for j in range(dq)]
            else:
                z_cols = nullspace_basis(self.boundary(q), dq)
            b_cols = column_space_basis(self.boundary(q + 1))
            out.append(_trace_projector(z_cols, dq) + _trace_projector(b_cols, dq))
        return tuple(out)

    def cell_arrays(self):
        """Flattened cell data consumed by the enumeration kernels."""
        ptr = [0]
        verts = []
        dims = []
        for q, cs in enumerate(self.cells):
            for c in cs:
                verts.extend(c)
                ptr.append(len(verts))
                dims.append(q)
        return (
            np.asarray(ptr, dtype=np.int32),
            np.asarray(verts, dtype=np.int32),
            np.asarray(dims, dtype=np.int32),
            1 if self.kind == "cubical" else 0,
        )


class ChainMap:
    """Per-dimension integer matrices ``matrices[q]: C_q(source) -> C_q(target)``."""

    def __init__(self, source: ChainComplex, target: ChainComplex, matrices: Sequence):
        self.source = source
        self.target = target
        self.matrices = tuple(np.asarray(m, dtype=np.int64) for m in matrices)
        for q, mat in enumerate(self.matrices):
            if mat.shape != (target.dim(q), source.dim(q)):
                raise DomainError(f"chain map matrix {q} has shape {mat.shape}")

    def __repr__(self):
        return f"ChainMap(traces={self.traces() if self.is_endomorphism else None})"

    def matrix(self, q: int) -> np.ndarray:
        if 0 <= q < len(self.matrices):
            return self.matrices[q]
        return np.zeros((self.target.dim(q), self.source.dim(q)), dtype=np.int64)

    @property
    def is_endomorphism(self) -> bool:
        return self.source is self.target

    def traces(self) -> tuple:
        return tuple(int(np.trace(m)) for m in self.matrices)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        top = max(len(self.matrices), len(other.matrices))
        return ChainMap(other.source, self.target,
                        [self.matrix(q) @ other.matrix(q) for q in range(top)])


def verify_chain_map(cm: ChainMap) -> bool:
    """True iff f_{q-1} D_q == D_q f_q in every dimension."""
    top = max(len(cm.source.cells), len(cm.target.cells))
    for q in range(1, top):
        lhs = cm.matrix(q - 1) @ cm.source.boundary(q)
        rhs = cm.target.boundary(q) @ cm.matrix(q)
        if lhs.shape != rhs.shape:
            raise DomainError("chain map and boundary shapes are incompatible")
        if not np.array_equal(lhs, rhs):
            return False
    return True


def homology(complex_: ChainComplex, q: int) -> HomologyGroup:
    """H_q as free rank plus torsion coefficients."""
    if not 0 <= q < len(complex_.cells):
        return HomologyGroup(0)
    snf_q = complex_.smith_forms[q]
    snf_next = complex_.smith_forms[q + 1]
    betti = complex_.dim(q) - snf_q.rank - snf_next.rank
    torsion = tuple(d for d in snf_next.invariant_factors if d > 1)
    return HomologyGroup(betti, torsion)


def betti_numbers(complex_: ChainComplex) -> tuple:
    return tuple(homology(complex_, q).betti for q in range(len(complex_.cells)))


def _restricted_trace(Q, den, F) -> Fraction:
    if F.size == 0:
        return Fraction(0)
    total = (Q.T * F.astype(object)).sum()
    return Fraction(int(total), den)


def homology_trace(cm: ChainMap, q: int, check: bool = True) -> int:
    """Trace of the induced endomorphism of H_q (over Q, i.e. on the free part)."""
    if not cm.is_endomorphism:
        raise PreconditionError("homology traces need a chain endomorphism")
    if check and not verify_chain_map(cm):
        raise PreconditionError("not a chain map")
    if not 0 <= q < len(cm.source.cells):
        return 0
    Qz, dz, Qb, db = cm.source.trace_projectors[q]
    F = cm.matrix(q)
    value = _restricted_trace(Qz, dz, F) - _restricted_trace(Qb, db, F)
    if value.denominator != 1:
        raise InternalError(f"non-integral homology trace {value}")
    return int(value)


def homology_traces(cm: ChainMap, check: bool = True) -> tuple:
    if check and not verify_chain_map(cm):
        raise PreconditionError("not a chain map")
    return tuple(homology_trace(cm, q, check=False) for q in range(len(cm.source.cells)))


def alternating_sum(values) -> int:
    return sum(v if q % 2 == 0 else -v for q, v in enumerate(values))


def hopf_trace_check(cm: ChainMap) -> bool:
    """Alternating chain-level trace sum equals the homology-level one."""
    return alternating_sum(cm.traces()) == alternating_sum(homology_traces(cm))


def dump_matrix(M) -> str:
    """Row-major, space-separated text dump (one row per line)."""
    return "\n".join(" ".join(str(int(x)) for x in row) for row in as_int_rows(M))


def load_matrix(text: str) -> list:
    return [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
