"""The coisotropic Hochschild complex of a coisotropic algebra.

A degree-``n`` cochain is a pair of tensors ``(f_tot, f_N)`` of shapes
``(d_tot,)*(n+1)`` and ``(d_N,)*(n+1)``; the last axis is the output.  The
N part of ``C^n(A)`` is the space of pairs with ``f_tot o iota^(x)n = iota o f_N``
and with ``f_N`` sending any tensor with a factor in ``A_0`` into ``A_0``;
the zero part further requires ``f_N`` to land in ``A_0`` everywhere.

Signs: ``[f, g] = f o g - (-1)^((m-1)(n-1)) g o f`` with
``f o g = sum_i (-1)^(i(n-1)) f o_i g`` (slots counted from 0), and
``delta f = -[f, mu]`` which is the textbook Hochschild differential
``a_0 f(a_1..) + sum (-1)^i f(.., a_(i-1) a_i, ..) + (-1)^(n+1) f(..) a_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional

import numpy as np

from . import linalg as la
from .algebra import Algebra, CoisotropicAlgebra, reduce_algebra
from .errors import AlgebraMismatch, CochainInjectivityViolation, DegreeTooLarge
from .linalg import LinearSolver, Quotient, Subspace
from .modules import CoisotropicComplex, CoisotropicModule, CoisotropicMorphism, cohomology_data

DEFAULT_CAP = 20_000


# --------------------------------------------------------------------------
# tensor-level operations on a single component

def zero_tensor(d: int, n: int) -> np.ndarray:
    t = np.empty((d,) * (n + 1), dtype=object)
    t.fill(la.ZERO)
    return t


def partial_compose(f: np.ndarray, g: np.ndarray, i: int) -> np.ndarray:
    """``f o_i g``: insert ``g`` into input slot ``i`` (0-based) of ``f``."""
    m, n = f.ndim - 1, g.ndim - 1
    t = np.tensordot(g, f, axes=([n], [i]))
    # axes now: g inputs (n), f inputs before i (i), f inputs after i, output
    perm = list(range(n, n + i)) + list(range(n)) + list(range(n + i, n + m - 1)) + [n + m - 1]
    out = np.transpose(t, perm)
    res = np.empty(out.shape, dtype=object)
    res[...] = out
    return res


def pre_lie(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    m, n = f.ndim - 1, g.ndim - 1
    d = f.shape[-1]
    out = zero_tensor(d, m + n - 1)
    for i in range(m):
        term = partial_compose(f, g, i)
        out = out - term if (i * (n - 1)) % 2 else out + term
    return out


def bracket_tensor(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    m, n = f.ndim - 1, g.ndim - 1
    sign = -1 if ((m - 1) * (n - 1)) % 2 else 1
    if m == 0 and n == 0:
        raise AlgebraMismatch("bracket of two degree-0 cochains is not defined")
    fg = pre_lie(f, g) if m > 0 else None
    gf = pre_lie(g, f) if n > 0 else None
    d = f.shape[-1]
    if fg is None:
        fg = zero_tensor(d, m + n - 1)
    if gf is None:
        gf = zero_tensor(d, m + n - 1)
    return fg - gf if sign == 1 else fg + gf


def differential_tensor(mu: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Textbook Hochschild differential, evaluated on basis tuples."""
    n = f.ndim - 1
    d = mu.shape[0]
    out = zero_tensor(d, n + 1)
    for a in product(range(d), repeat=n + 1):
        v = la.zero_vector(d)
        rest = a[1:]
        for l in range(d):
            c = f[rest + (l,)]
            if c != 0:
                v = v + mu[a[0], l] * c
        for i in range(1, n + 1):
            s = -1 if i % 2 else 1
            for m_ in range(d):
                c = mu[a[i - 1], a[i], m_]
                if c != 0:
                    v = v + f[a[: i - 1] + (m_,) + a[i + 1:]] * (s * c)
        s = -1 if (n + 1) % 2 else 1
        head = a[:n]
        for l in range(d):
            c = f[head + (l,)]
            if c != 0:
                v = v + mu[l, a[n]] * (s * c)
        out[a] = v
    return out


def differential_matrix(mu: np.ndarray, n: int) -> np.ndarray:
    """Matrix of ``delta: C^n -> C^(n+1)`` on row-major flattened tensors."""
    d = mu.shape[0]
    rows_out = d ** (n + 2)
    cols_in = d ** (n + 1)
    M = la.zeros(rows_out, cols_in)

    def idx(t):
        r = 0
        for x in t:
            r = r * d + x
        return r

    for a in product(range(d), repeat=n + 1):
        for k in range(d):
            row = idx(a + (k,))
            for l in range(d):
                c = mu[a[0], l, k]
                if c != 0:
                    M[row, idx(a[1:] + (l,))] += c
            for i in range(1, n + 1):
                s = -1 if i % 2 else 1
                for m_ in range(d):
                    c = mu[a[i - 1], a[i], m_]
                    if c != 0:
                        M[row, idx(a[: i - 1] + (m_,) + a[i + 1:] + (k,))] += s * c
            s = -1 if (n + 1) % 2 else 1
            for l in range(d):
                c = mu[l, a[n], k]
                if c != 0:
                    M[row, idx(a[:n] + (l,))] += s * c
    return M


def restrict_tensor(f: np.ndarray, inputs: np.ndarray, project: np.ndarray) -> np.ndarray:
    """``project o f o inputs^(x)n``: new tensor on the basis given by the
    columns of ``inputs`` with outputs mapped by ``project``."""
    n = f.ndim - 1
    t = f
    for axis in range(n):
        t = np.tensordot(t, inputs, axes=([0], [0]))  # rotates processed axis to the end
    # after n rotations the axes are: output, new inputs...
    t = np.tensordot(project, t, axes=([1], [0]))   # output axis first
    t = np.moveaxis(t, 0, -1)
    res = np.empty(t.shape, dtype=object)
    res[...] = t
    return res


# --------------------------------------------------------------------------
# cochains

@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    tot: np.ndarray = field(repr=False)
    N: np.ndarray = field(repr=False)

    @classmethod
    def zero(cls, A: CoisotropicAlgebra, n: int) -> "Cochain":
        return cls(n, zero_tensor(A.dim_tot, n), zero_tensor(A.dim_N, n))

    @classmethod
    def multiplication(cls, A: CoisotropicAlgebra) -> "Cochain":
        return cls(2, A.mu_tot.copy(), A.mu_N.copy())

    def _check(self, other: "Cochain"):
        if self.tot.shape[-1:] != other.tot.shape[-1:] or self.N.shape[-1:] != other.N.shape[-1:]:
            raise AlgebraMismatch("cochains belong to different algebras")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        if self.degree != other.degree:
            raise AlgebraMismatch("cannot add cochains of different degree")
        return Cochain(self.degree, self.tot + other.tot, self.N + other.N)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __neg__(self) -> "Cochain":
        return Cochain(self.degree, -self.tot, -self.N)

    def __mul__(self, c) -> "Cochain":
        c = la.scalar(c)
        return Cochain(self.degree, self.tot * c, self.N * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return la.is_zero(self.tot) and la.is_zero(self.N)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and la.equal(self.tot, other.tot)
                and la.equal(self.N, other.N))

    __hash__ = None

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.tot.reshape(-1), self.N.reshape(-1)])

    @classmethod
    def from_vector(cls, A: CoisotropicAlgebra, n: int, v) -> "Cochain":
        v = la.vector(v)
        nt = A.dim_tot ** (n + 1)
        return cls(n, v[:nt].reshape((A.dim_tot,) * (n + 1)).copy(),
                   v[nt:].reshape((A.dim_N,) * (n + 1)).copy())

    @classmethod
    def from_entries(cls, A: CoisotropicAlgebra, n: int, tot_entries=(), n_entries=()) -> "Cochain":
        """Build from sparse ``(i_1, ..., i_n, k, value)`` entries."""
        f = cls.zero(A, n)
        for *idx, v in tot_entries:
            f.tot[tuple(idx)] += la.scalar(v)
        for *idx, v in n_entries:
            f.N[tuple(idx)] += la.scalar(v)
        return f


def gerstenhaber_bracket(f: Cochain, g: Cochain) -> Cochain:
    f._check(g)
    deg = f.degree + g.degree - 1
    if deg < 0:
        raise AlgebraMismatch("bracket of two degree-0 cochains is not defined")
    return Cochain(deg, bracket_tensor(f.tot, g.tot), bracket_tensor(f.N, g.N))


def hochschild_differential(A: CoisotropicAlgebra, f: Cochain) -> Cochain:
    """Component-wise textbook differential (loop evaluation on basis tuples)."""
    return Cochain(f.degree + 1, differential_tensor(A.mu_tot, f.tot), differential_tensor(A.mu_N, f.N))


def differential_via_bracket(A: CoisotropicAlgebra, f: Cochain) -> Cochain:
    """``-[f, mu]``, computed through partial compositions."""
    return -gerstenhaber_bracket(f, Cochain.multiplication(A))


def transport(f: Cochain, phi_tot: np.ndarray, phi_N: np.ndarray) -> Cochain:
    """``phi o f o (phi^-1)^(x)n`` along an algebra isomorphism ``phi``."""
    it, iN = la.inverse(phi_tot), la.inverse(phi_N)
    return Cochain(f.degree, restrict_tensor(f.tot, it, phi_tot), restrict_tensor(f.N, iN, phi_N))


# --------------------------------------------------------------------------
# cochain spaces

@dataclass(frozen=True, eq=False)
class CochainSpace:
    """``C^n(A)`` as a coisotropic module.  ``N`` and ``zero`` are subspaces of
    the pair coefficient space ``Q^(d_tot^(n+1) + d_N^(n+1))``."""

    degree: int
    n_tot: int
    N: Subspace
    zero: Subspace
    constraints: np.ndarray = field(repr=False)
    zero_constraints: np.ndarray = field(repr=False)

    @property
    def module(self) -> CoisotropicModule:
        B = self.N.basis_matrix()
        iota = B[: self.n_tot, :].copy() if self.N.dim else la.zeros(self.n_tot, 0)
        zero = Subspace.span([self.N.coordinates(v) for v in self.zero.vectors], self.N.dim)
        return CoisotropicModule(self.n_tot, self.N.dim, iota, zero)

    @property
    def dims(self) -> tuple:
        return (self.n_tot, self.N.dim, self.zero.dim)

    def contains(self, f: Cochain) -> bool:
        v = f.to_vector()
        return self.constraints.shape[0] == 0 or la.is_zero(la.mul(self.constraints, v))

    def contains_zero(self, f: Cochain) -> bool:
        v = f.to_vector()
        C = la.vstack([self.constraints, self.zero_constraints], v.shape[0])
        return C.shape[0] == 0 or la.is_zero(la.mul(C, v))


def _space_constraints(A: CoisotropicAlgebra, n: int):
    dt, dn = A.dim_tot, A.dim_N
    nt, nn = dt ** (n + 1), dn ** (n + 1)
    size = nt + nn
    rows = []
    # compatibility: sum_I K[I, J] f_tot[I, k] - sum_l iota[k, l] f_N[J, l] = 0
    K = la.kron_power(A.iota, n)
    for J in range(dn ** n):
        nzI = [I for I in range(dt ** n) if K[I, J] != 0]
        for k in range(dt):
            r = {}
            for I in nzI:
                r[I * dt + k] = K[I, J]
            for l in range(dn):
                if A.iota[k, l] != 0:
                    r[nt + J * dn + l] = r.get(nt + J * dn + l, la.ZERO) - A.iota[k, l]
            rows.append(r)
    # zero-part law on adapted tuples with a factor from A_0
    L = A.zero_part.annihilator()
    c = A.n_complement
    P = la.kron_power(A.adapted_basis, n)
    for T in product(range(dn), repeat=n):
        if all(t < c for t in T):
            continue
        col = 0
        for t in T:
            col = col * dn + t
        nzJ = [J for J in range(dn ** n) if P[J, col] != 0]
        for a in range(L.shape[0]):
            r = {}
            for J in nzJ:
                for l in range(dn):
                    if L[a, l] != 0:
                        r[nt + J * dn + l] = r.get(nt + J * dn + l, la.ZERO) + L[a, l] * P[J, col]
            rows.append(r)
    zrows = []
    for J in range(dn ** n):
        for a in range(L.shape[0]):
            zrows.append({nt + J * dn + l: L[a, l] for l in range(dn) if L[a, l] != 0})

    def dense(rs):
        M = la.zeros(len(rs), size)
        for i, r in enumerate(rs):
            for j, v in r.items():
                M[i, j] = v
        return M

    return dense(rows), dense(zrows), size


def cochain_space(A: CoisotropicAlgebra, n: int, cap: int = DEFAULT_CAP) -> CochainSpace:
    return A.hochschild.space(n, cap)


class HochschildComplex:
    """Cached cochain spaces and differentials for one algebra."""

    def __init__(self, A: CoisotropicAlgebra):
        self.A = A
        self._spaces: Dict[int, CochainSpace] = {}
        self._delta_tot: Dict[int, np.ndarray] = {}
        self._delta_N: Dict[int, np.ndarray] = {}
        self._morphisms: Dict[int, CoisotropicMorphism] = {}
        self._solvers: Dict[int, LinearSolver] = {}

    def check_cap(self, n: int, cap: int) -> None:
        size = max(self.A.dim_tot, self.A.dim_N) ** (n + 1)
        if size > cap:
            raise DegreeTooLarge(f"degree {n} needs {size} coefficients per component (cap {cap})")

    def space(self, n: int, cap: int = DEFAULT_CAP) -> CochainSpace:
        self.check_cap(n, cap)
        if n not in self._spaces:
            C, Z, size = _space_constraints(self.A, n)
            N = la.kernel(C) if C.shape[0] else Subspace.full(size)
            both = la.vstack([C, Z], size)
            zero = la.kernel(both) if both.shape[0] else Subspace.full(size)
            self._spaces[n] = CochainSpace(n, self.A.dim_tot ** (n + 1), N, zero, C, Z)
        return self._spaces[n]

    def delta_tot(self, n: int) -> np.ndarray:
        if n not in self._delta_tot:
            self._delta_tot[n] = differential_matrix(self.A.mu_tot, n)
        return self._delta_tot[n]

    def delta_N(self, n: int) -> np.ndarray:
        if n not in self._delta_N:
            self._delta_N[n] = differential_matrix(self.A.mu_N, n)
        return self._delta_N[n]

    def delta_pair(self, n: int) -> np.ndarray:
        """``delta`` on the pair coefficient space."""
        return la.block_diag(self.delta_tot(n), self.delta_N(n))

    def morphism(self, n: int, cap: int = DEFAULT_CAP) -> CoisotropicMorphism:
        """``delta^n: C^n -> C^(n+1)`` as a coisotropic morphism."""
        if n not in self._morphisms:
            S, T = self.space(n, cap), self.space(n + 1, cap)
            image = la.mul(self.delta_pair(n), S.N.basis_matrix())
            coords = la.zeros(T.N.dim, S.N.dim)
            for j in range(S.N.dim):
                coords[:, j] = [image[p, j] for p in T.N.pivots]
            self._morphisms[n] = CoisotropicMorphism(S.module, T.module, self.delta_tot(n), coords)
        return self._morphisms[n]

    def complex(self, lo: int, hi: int, cap: int = DEFAULT_CAP) -> CoisotropicComplex:
        """Window of degrees ``lo..hi`` (inclusive)."""
        mods = tuple(self.space(n, cap).module for n in range(lo, hi + 1))
        diffs = tuple(self.morphism(n, cap) for n in range(lo, hi))
        return CoisotropicComplex(lo, mods, diffs)

    def solver(self, n: int, cap: int = DEFAULT_CAP) -> LinearSolver:
        """Solver for ``delta_N g = r`` with ``g`` in ``C^n_N`` (coordinates)."""
        if n not in self._solvers:
            self._solvers[n] = LinearSolver(la.mul(self.delta_pair(n), self.space(n, cap).N.basis_matrix()))
        return self._solvers[n]

    def solve_coboundary(self, r: Cochain, cap: int = DEFAULT_CAP) -> Optional[Cochain]:
        """Some ``g`` in ``C^(n-1)_N`` with ``delta g = r``, free variables zero."""
        n = r.degree - 1
        if n < 0:
            return None
        x = self.solver(n, cap).solve(r.to_vector())
        if x is None:
            return None
        return Cochain.from_vector(self.A, n, la.mul(self.space(n, cap).N.basis_matrix(), x))


def hochschild_complex(A: CoisotropicAlgebra, lo: int, hi: int, cap: int = DEFAULT_CAP) -> CoisotropicComplex:
    return A.hochschild.complex(lo, hi, cap)


# --------------------------------------------------------------------------
# cohomology

@dataclass(frozen=True, eq=False)
class HochschildCohomology:
    degree: int
    module: CoisotropicModule
    data: object = field(repr=False)
    space: CochainSpace = field(repr=False)
    A: CoisotropicAlgebra = field(repr=False)

    @property
    def dims(self) -> tuple:
        return self.module.dims

    def representatives(self) -> List[Cochain]:
        """Cocycles in ``C^n_N`` whose classes form the canonical basis of ``HH^n_N``."""
        out = []
        B = self.space.N.basis_matrix()
        for i in range(self.module.dim_N):
            coords = self.data.representative_N(la.unit_vector(self.module.dim_N, i))
            out.append(Cochain.from_vector(self.A, self.degree, la.mul(B, coords)))
        return out

    def class_of(self, f: Cochain) -> np.ndarray:
        """Coordinates in ``HH^n_N`` of a cocycle ``f`` in ``C^n_N``."""
        coords = self.space.N.coordinates(f.to_vector())
        return self.data.class_N(coords)

    def cycle_subspaces(self):
        """Cocycle subspaces ``(tot in Q^(d^(n+1)), N and zero in pair space)``."""
        B = self.space.N.basis_matrix()
        N = self.data.cycles_N.image_under(B) if self.data.cycles_N.dim else Subspace.zero(B.shape[0])
        zero = N & self.space.zero
        return self.data.cycles_tot, N, zero


def hochschild_cohomology(A: CoisotropicAlgebra, n: int, cap: int = DEFAULT_CAP) -> HochschildCohomology:
    hc = A.hochschild
    hc.check_cap(n + 1, cap)
    C = hc.complex(max(n - 1, 0), n + 1, cap)
    data = cohomology_data(C, n)
    return HochschildCohomology(n, data.module, data, hc.space(n, cap), A)


@dataclass(frozen=True, eq=False)
class PlainCohomology:
    degree: int
    cycles: Subspace
    quotient: Quotient

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def class_of(self, v) -> np.ndarray:
        return self.quotient.project(self.cycles.coordinates(v))


def plain_cohomology(alg: Algebra, n: int) -> PlainCohomology:
    """Classical ``HH^n`` of a plain algebra."""
    Z = la.kernel(differential_matrix(alg.mu, n))
    if n > 0:
        Bm = differential_matrix(alg.mu, n - 1)
        Bsub = Subspace.span([Z.coordinates(v) for v in la.image(Bm).vectors], Z.dim)
    else:
        Bsub = Subspace.zero(Z.dim)
    return PlainCohomology(n, Z, Quotient(Subspace.full(Z.dim), Bsub))


# --------------------------------------------------------------------------
# reduction

@dataclass(frozen=True)
class ReductionComparison:
    degree: int
    dim_reduced_hh: int
    dim_hh_of_reduced: int
    cochain_eta_injective: bool
    cohomology_eta_injective: bool
    eta_cochain: np.ndarray = field(repr=False)
    eta_cohomology: np.ndarray = field(repr=False)

    @property
    def inequality_holds(self) -> bool:
        return self.dim_reduced_hh <= self.dim_hh_of_reduced


def reduce_cochain(A: CoisotropicAlgebra, f: Cochain) -> np.ndarray:
    """The induced map ``A_red^(x)n -> A_red`` of a cochain in ``C^n_N``."""
    q = A.module.reduction()
    return restrict_tensor(f.N, q.lift_matrix(), q.project_matrix(la.identity(A.dim_N)))


def reduction_comparison(A: CoisotropicAlgebra, n: int, cap: int = DEFAULT_CAP) -> ReductionComparison:
    """Compare ``HH^n(A)_red`` with ``HH^n(A_red)`` through the cochain map
    ``[f] -> q o f_N o lift^(x)n``."""
    hc = A.hochschild
    space = hc.space(n, cap)
    red = reduce_algebra(A)

    # cochain level: C^n_N / C^n_0 -> C^n(A_red)
    quot = Quotient(space.N, space.zero)
    cols = []
    for rep in quot.complement.vectors:
        f = Cochain.from_vector(A, n, rep)
        cols.append(reduce_cochain(A, f).reshape(-1))
    size = red.dim ** (n + 1)
    eta_c = np.stack(cols, axis=1) if cols else la.zeros(size, 0)
    cochain_inj = la.rank(eta_c) == eta_c.shape[1]
    if not cochain_inj:
        raise CochainInjectivityViolation(f"degree {n}: C(A)_red -> C(A_red) has a kernel")

    hh = hochschild_cohomology(A, n, cap)
    red_hh = hh.module.reduction()
    target = plain_cohomology(red, n)
    eta_h = la.zeros(target.dim, red_hh.dim)
    B = space.N.basis_matrix()
    for i in range(red_hh.dim):
        coords = hh.data.representative_N(red_hh.lift(la.unit_vector(red_hh.dim, i)))
        f = Cochain.from_vector(A, n, la.mul(B, coords))
        eta_h[:, i] = target.class_of(reduce_cochain(A, f).reshape(-1))
    return ReductionComparison(n, red_hh.dim, target.dim, cochain_inj,
                               la.rank(eta_h) == red_hh.dim, eta_c, eta_h)
