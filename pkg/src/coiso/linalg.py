"""Exact linear algebra over the rationals.

Scalars are ``gmpy2.mpq`` values (always in lowest terms, positive
denominator).  Matrices and vectors are numpy arrays of ``dtype=object``
holding ``mpq`` entries; every function here returns fresh arrays and never
mutates its inputs.  Subspaces are canonicalized by reduced row-echelon form,
so two subspaces are equal exactly when their bases are identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import DimensionMismatch, NotASubspace

Scalar = type(mpq(0))
ZERO = mpq(0)
ONE = mpq(1)


def scalar(x) -> Scalar:
    """Coerce an int, ``Fraction``, ``mpq`` or ``"p/q"`` string to ``mpq``."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    if isinstance(x, str):
        return mpq(x.strip())
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(ZERO)
    return out


def zero_vector(n: int) -> np.ndarray:
    out = np.empty(n, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def matrix(rows, cols: Optional[int] = None) -> np.ndarray:
    """Build an exact matrix from nested sequences (or copy an array).

    ``cols`` is needed only when ``rows`` is empty.
    """
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        out = zeros(*rows.shape)
        for idx, v in np.ndenumerate(rows):
            out[idx] = scalar(v)
        return out
    rows = [list(r) for r in rows]
    if not rows:
        return zeros(0, cols or 0)
    n = len(rows[0]) if cols is None else cols
    out = zeros(len(rows), n)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise DimensionMismatch(f"row {i} has length {len(r)}, expected {n}")
        for j, v in enumerate(r):
            out[i, j] = scalar(v)
    return out


def vector(entries: Iterable) -> np.ndarray:
    entries = [scalar(v) for v in entries]
    out = np.empty(len(entries), dtype=object)
    for i, v in enumerate(entries):
        out[i] = v
    return out


def unit_vector(n: int, i: int) -> np.ndarray:
    out = zero_vector(n)
    out[i] = ONE
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(a).flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product ``a @ b`` for matrices or matrix-vector pairs.

    Rows of ``a`` are expanded over their nonzero entries only, which is the
    common case for structure-constant matrices.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    vec = b.ndim == 1
    b2 = b.reshape(-1, 1) if vec else b
    if a.shape[1] != b2.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = zeros(a.shape[0], b2.shape[1])
    for i in range(a.shape[0]):
        row = a[i]
        acc = None
        for j in np.flatnonzero(row != 0) if row.size else ():
            term = b2[j] * row[j]
            acc = term if acc is None else acc + term
        if acc is not None:
            out[i] = acc
    return out[:, 0] if vec else out


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    out = zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    for (i, j), x in np.ndenumerate(a):
        if x != 0:
            out[i * b.shape[0]:(i + 1) * b.shape[0], j * b.shape[1]:(j + 1) * b.shape[1]] = b * x
    return out


def kron_power(a: np.ndarray, n: int) -> np.ndarray:
    out = identity(1)
    for _ in range(n):
        out = kron(out, a)
    return out


def hstack(blocks: Sequence[np.ndarray], rows: Optional[int] = None) -> np.ndarray:
    blocks = [np.asarray(b) for b in blocks]
    if not blocks:
        return zeros(rows or 0, 0)
    return np.concatenate(blocks, axis=1)


def vstack(blocks: Sequence[np.ndarray], cols: Optional[int] = None) -> np.ndarray:
    blocks = [np.asarray(b) for b in blocks]
    if not blocks:
        return zeros(0, cols or 0)
    return np.concatenate(blocks, axis=0)


def block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


# --------------------------------------------------------------------------
# elimination

def _sparse_rows(m: np.ndarray) -> list[dict]:
    return [{j: v for j, v in enumerate(row) if v != 0} for row in m]


def _eliminate(rows: list[dict], ncols: int, stop: Optional[int] = None):
    """Gauss-Jordan elimination in place on sparse rows.

    Pivots are searched only among the first ``stop`` columns.  Returns the
    pivot columns; the first ``len(pivots)`` rows are the reduced pivot rows.
    """
    stop = ncols if stop is None else stop
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(stop):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if c in rows[i]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = ONE / prow[c]
        if inv != 1:
            for j in prow:
                prow[j] *= inv
        items = list(prow.items())
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row.get(c)
            if f is None:
                continue
            for j, v in items:
                x = row.get(j, ZERO) - f * v
                if x == 0:
                    row.pop(j, None)
                else:
                    row[j] = x
        pivots.append(c)
        r += 1
    return pivots


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns of ``m``."""
    m = np.asarray(m)
    rows = _sparse_rows(m)
    pivots = _eliminate(rows, m.shape[1])
    out = zeros(*m.shape)
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[i, j] = v
    return out, pivots


def rank(m: np.ndarray) -> int:
    return len(_eliminate(_sparse_rows(np.asarray(m)), np.asarray(m).shape[1]))


def kernel(m: np.ndarray) -> "Subspace":
    """Null space ``{v : m v = 0}`` as a canonical subspace."""
    m = np.asarray(m)
    ncols = m.shape[1]
    rows = _sparse_rows(m)
    pivots = _eliminate(rows, ncols)
    pivset = set(pivots)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = zero_vector(ncols)
        v[f] = ONE
        for i, p in enumerate(pivots):
            x = rows[i].get(f)
            if x is not None:
                v[p] = -x
        vecs.append(v)
    return Subspace.span(vecs, ncols)


def image(m: np.ndarray) -> "Subspace":
    """Column span of ``m``."""
    m = np.asarray(m)
    return Subspace.from_rows(m.T, m.shape[0])


def solve(m: np.ndarray, b) -> Optional[np.ndarray]:
    """Some ``x`` with ``m x = b`` (free variables zero), or ``None``."""
    m = np.asarray(m)
    b = vector(b)
    if b.shape[0] != m.shape[0]:
        raise DimensionMismatch(f"right-hand side has length {b.shape[0]}, expected {m.shape[0]}")
    ncols = m.shape[1]
    aug = _sparse_rows(m)
    for i, row in enumerate(aug):
        if b[i] != 0:
            row[ncols] = b[i]
    pivots = _eliminate(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = zero_vector(ncols)
    for i, p in enumerate(pivots):
        x[p] = aug[i].get(ncols, ZERO)
    return x


class LinearSolver:
    """Factor ``m`` once, then solve ``m x = b`` for many right-hand sides.

    Keeps the row transform ``T`` with ``T m = rref(m)``.
    """

    def __init__(self, m: np.ndarray):
        m = np.asarray(m)
        self.shape = m.shape
        nrows, ncols = m.shape
        rows = _sparse_rows(m)
        for i, row in enumerate(rows):
            row[ncols + i] = ONE
        self.pivots = _eliminate(rows, ncols + nrows, stop=ncols)
        self.rank = len(self.pivots)
        self._transform = [{j - ncols: v for j, v in row.items() if j >= ncols} for row in rows]

    def _apply(self, i: int, b) -> Scalar:
        return sum((v * b[j] for j, v in self._transform[i].items()), ZERO)

    def solvable(self, b) -> bool:
        return all(self._apply(i, b) == 0 for i in range(self.rank, self.shape[0]))

    def solve(self, b) -> Optional[np.ndarray]:
        b = vector(b)
        if b.shape[0] != self.shape[0]:
            raise DimensionMismatch(f"right-hand side has length {b.shape[0]}, expected {self.shape[0]}")
        if not self.solvable(b):
            return None
        x = zero_vector(self.shape[1])
        for i, p in enumerate(self.pivots):
            x[p] = self._apply(i, b)
        return x


def inverse(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatch("only square matrices can be inverted")
    solver = LinearSolver(m)
    if solver.rank != n:
        raise ZeroDivisionError("matrix is singular")
    cols = [solver.solve(unit_vector(n, i)) for i in range(n)]
    return np.stack(cols, axis=1) if n else zeros(0, 0)


# --------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``Q^ambient_dim`` held by its canonical RREF basis.

    ``basis`` is a ``dim x ambient_dim`` array; ``pivots[i]`` is the pivot
    column of row ``i``.
    """

    ambient_dim: int
    basis: np.ndarray = field(repr=False)
    pivots: tuple = ()

    @classmethod
    def from_rows(cls, rows, ambient_dim: int) -> "Subspace":
        rows = np.asarray(rows)
        if rows.size == 0:
            return cls.zero(ambient_dim)
        if rows.shape[1] != ambient_dim:
            raise DimensionMismatch(f"vectors of length {rows.shape[1]} in ambient {ambient_dim}")
        r, piv = rref(rows)
        return cls(ambient_dim, r[: len(piv)].copy(), tuple(piv))

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        vecs = [vector(v) for v in vectors]
        if not vecs:
            return cls.zero(ambient_dim)
        return cls.from_rows(np.stack(vecs), ambient_dim)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, zeros(0, n), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def vectors(self) -> list:
        return [self.basis[i] for i in range(self.dim)]

    def basis_matrix(self) -> np.ndarray:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return self.basis.T.copy() if self.dim else zeros(self.ambient_dim, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots, tuple(self.basis.flat)))

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient dims {self.ambient_dim} and {other.ambient_dim}")

    def reduce(self, v) -> np.ndarray:
        """Normal form of ``v`` modulo this subspace (pivot coordinates cleared)."""
        v = vector(v)
        if v.shape[0] != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {v.shape[0]} in ambient {self.ambient_dim}")
        for i, p in enumerate(self.pivots):
            if v[p] != 0:
                v = v - self.basis[i] * v[p]
        return v

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the canonical basis; ``v`` must lie in the span."""
        v = vector(v)
        if not self.contains(v):
            raise NotASubspace("vector does not lie in the subspace")
        return vector(v[p] for p in self.pivots)

    def coordinate_matrix(self, m: np.ndarray) -> np.ndarray:
        """Coordinates of every column of ``m`` (columns must lie in the span)."""
        m = np.asarray(m)
        out = zeros(self.dim, m.shape[1])
        for j in range(m.shape[1]):
            out[:, j] = self.coordinates(m[:, j])
        return out

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.vectors)

    def __le__(self, other: "Subspace") -> bool:
        return self.is_subspace_of(other)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_rows(vstack([self.basis, other.basis], self.ambient_dim), self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # x = U a = V b  <=>  [U | -V] (a, b) = 0
        stacked = hstack([self.basis.T, -other.basis.T])
        ker = kernel(stacked)
        vecs = [mul(self.basis.T, k[: self.dim]) for k in ker.vectors]
        return Subspace.span(vecs, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def image_under(self, m: np.ndarray) -> "Subspace":
        m = np.asarray(m)
        if m.shape[1] != self.ambient_dim:
            raise DimensionMismatch(f"map with {m.shape[1]} columns on ambient {self.ambient_dim}")
        if self.dim == 0:
            return Subspace.zero(m.shape[0])
        return Subspace.from_rows(mul(m, self.basis.T).T, m.shape[0])

    def preimage_under(self, m: np.ndarray) -> "Subspace":
        """``{x : m x in self}``."""
        m = np.asarray(m)
        if m.shape[0] != self.ambient_dim:
            raise DimensionMismatch(f"map with {m.shape[0]} rows into ambient {self.ambient_dim}")
        ann = self.annihilator()
        return kernel(mul(ann, m) if ann.shape[0] else zeros(0, m.shape[1]))

    def annihilator(self) -> np.ndarray:
        """Matrix ``L`` whose kernel is exactly this subspace."""
        comp = kernel(self.basis) if self.dim else Subspace.full(self.ambient_dim)
        return comp.basis.copy() if comp.dim else zeros(0, self.ambient_dim)


def _require_sub(U: Subspace, V: Subspace):
    if U.ambient_dim != V.ambient_dim:
        raise DimensionMismatch(f"ambient dims {U.ambient_dim} and {V.ambient_dim}")
    if not U.is_subspace_of(V):
        raise NotASubspace("U is not contained in V")


def quotient_dim(V: Subspace, U: Subspace) -> int:
    _require_sub(U, V)
    return V.dim - U.dim


def complement_basis(V: Subspace, U: Subspace) -> Subspace:
    """Canonical complement of ``U`` inside ``V``: the span of the normal forms
    of ``V`` modulo ``U``.  Its basis vectors represent a basis of ``V/U``."""
    _require_sub(U, V)
    return Subspace.span([U.reduce(v) for v in V.vectors], V.ambient_dim)


def quotient_project(V: Subspace, U: Subspace, v, complement: Optional[Subspace] = None) -> np.ndarray:
    """Coordinates of ``v + U`` in the canonical complement basis of ``V/U``."""
    if complement is None:
        complement = complement_basis(V, U)
    if not V.contains(v):
        raise NotASubspace("vector does not lie in V")
    return complement.coordinates(U.reduce(v))


class Quotient:
    """The quotient ``V/U`` with its canonical complement basis.

    ``project`` gives coordinates of classes; ``lift`` returns the canonical
    representative of a coordinate vector.
    """

    def __init__(self, V: Subspace, U: Subspace):
        self.V = V
        self.U = U
        self.complement = complement_basis(V, U)

    @property
    def dim(self) -> int:
        return self.complement.dim

    def project(self, v) -> np.ndarray:
        return quotient_project(self.V, self.U, v, self.complement)

    def project_matrix(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m)
        out = zeros(self.dim, m.shape[1])
        for j in range(m.shape[1]):
            out[:, j] = self.project(m[:, j])
        return out

    def lift(self, coords) -> np.ndarray:
        coords = vector(coords)
        return mul(self.complement.basis_matrix(), coords) if self.dim else zero_vector(self.V.ambient_dim)

    def lift_matrix(self) -> np.ndarray:
        return self.complement.basis_matrix()
