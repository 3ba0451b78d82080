"""Coisotropic algebras given by structure constants.

``mu[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.  Linear maps
(derivations, ``iota``) act on column vectors: ``D[k, i]`` is the coefficient
of ``e_k`` in ``D(e_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import linalg as la
from .errors import (IdealViolation, InjectivityViolation, IotaNotAlgebraMorphism, NotAssociative,
                     UnitViolation)
from .linalg import Quotient, Subspace
from .modules import CoisotropicModule, pair_module


def structure_tensor(dim: int, entries=()) -> np.ndarray:
    """Dense ``dim^3`` tensor from sparse ``(i, j, k, value)`` entries."""
    mu = np.empty((dim, dim, dim), dtype=object)
    mu.fill(la.ZERO)
    for i, j, k, v in entries:
        mu[i, j, k] += la.scalar(v)
    return mu


def multiply(mu: np.ndarray, a, b) -> np.ndarray:
    d = mu.shape[0]
    out = la.zero_vector(d)
    for i in range(d):
        if a[i] == 0:
            continue
        for j in range(d):
            if b[j] != 0:
                out = out + mu[i, j] * (a[i] * b[j])
    return out


def left_matrix(mu: np.ndarray, a) -> np.ndarray:
    """Matrix of ``x -> a x``."""
    d = mu.shape[0]
    return np.stack([multiply(mu, a, la.unit_vector(d, j)) for j in range(d)], axis=1) if d else la.zeros(0, 0)


def right_matrix(mu: np.ndarray, a) -> np.ndarray:
    """Matrix of ``x -> x a``."""
    d = mu.shape[0]
    return np.stack([multiply(mu, la.unit_vector(d, j), a) for j in range(d)], axis=1) if d else la.zeros(0, 0)


def associator_failure(mu: np.ndarray):
    """First basis triple where ``mu`` fails to be associative, else ``None``."""
    d = mu.shape[0]
    for i, j, k in product(range(d), repeat=3):
        left = multiply(mu, mu[i, j], la.unit_vector(d, k))
        right = multiply(mu, la.unit_vector(d, i), mu[j, k])
        if not la.equal(left, right):
            return (i, j, k)
    return None


def unit_ok(mu: np.ndarray, unit) -> bool:
    d = mu.shape[0]
    return all(la.equal(multiply(mu, unit, e), e) and la.equal(multiply(mu, e, unit), e)
               for e in la.identity(d))


def commutator_matrix(mu: np.ndarray) -> np.ndarray:
    """Rows ``(j, k)``: coefficient of ``e_k`` in ``[a, e_j]``, as a function of ``a``."""
    d = mu.shape[0]
    rows = la.zeros(d * d, d)
    for j, k in product(range(d), repeat=2):
        for i in range(d):
            rows[j * d + k, i] = mu[i, j, k] - mu[j, i, k]
    return rows


def leibniz_constraints(mu: np.ndarray) -> np.ndarray:
    """Rows cutting out derivations ``D`` (coefficients ``D[k, i]`` row-major)."""
    d = mu.shape[0]
    rows = []
    for i, j, k in product(range(d), repeat=3):
        # D(e_i e_j)_k - (D e_i e_j)_k - (e_i D e_j)_k
        r = la.zero_vector(d * d)
        for m in range(d):
            r[k * d + m] += mu[i, j, m]
            r[m * d + i] -= mu[m, j, k]
            r[m * d + j] -= mu[i, m, k]
        rows.append(r)
    return np.stack(rows) if rows else la.zeros(0, 0)


def _kernel_or_full(C: np.ndarray, n: int) -> Subspace:
    return la.kernel(C) if C.shape[0] else Subspace.full(n)


def inner_derivation(mu: np.ndarray, a) -> np.ndarray:
    """``[., a]``, i.e. ``x -> x a - a x``."""
    return right_matrix(mu, a) - left_matrix(mu, a)


@dataclass(frozen=True, eq=False)
class Algebra:
    """A plain finite-dimensional unital associative algebra."""

    dim: int
    mu: np.ndarray = field(repr=False)
    unit: np.ndarray = field(repr=False)

    def multiply(self, a, b) -> np.ndarray:
        return multiply(self.mu, a, b)

    def validate(self) -> None:
        bad = associator_failure(self.mu)
        if bad is not None:
            raise NotAssociative("plain", bad)
        if not unit_ok(self.mu, self.unit):
            raise UnitViolation("unit is not two-sided")

    def derivations(self) -> Subspace:
        return _kernel_or_full(leibniz_constraints(self.mu), self.dim ** 2)

    def as_coisotropic(self) -> "CoisotropicAlgebra":
        """``(A, A, 0)`` with identity structure map."""
        mod = CoisotropicModule(self.dim, self.dim, la.identity(self.dim), Subspace.zero(self.dim))
        return CoisotropicAlgebra(mod, self.mu, self.mu, self.unit, self.unit)


@dataclass(frozen=True, eq=False)
class CoisotropicAlgebra:
    module: CoisotropicModule = field(repr=False)
    mu_tot: np.ndarray = field(repr=False)
    mu_N: np.ndarray = field(repr=False)
    unit_tot: np.ndarray = field(repr=False)
    unit_N: np.ndarray = field(repr=False)
    name: str = ""

    @property
    def dim_tot(self) -> int:
        return self.module.dim_tot

    @property
    def dim_N(self) -> int:
        return self.module.dim_N

    @property
    def iota(self) -> np.ndarray:
        return self.module.iota

    @property
    def zero_part(self) -> Subspace:
        return self.module.zero_part

    def mul_tot(self, a, b) -> np.ndarray:
        return multiply(self.mu_tot, a, b)

    def mul_N(self, a, b) -> np.ndarray:
        return multiply(self.mu_N, a, b)

    @cached_property
    def adapted_basis(self) -> np.ndarray:
        """Invertible ``P`` whose last ``dim A_0`` columns span ``A_0``;
        the leading columns are the canonical complement representatives."""
        q = self.module.reduction()
        return la.hstack([q.lift_matrix(), self.zero_part.basis_matrix()], self.dim_N)

    @property
    def n_complement(self) -> int:
        return self.dim_N - self.zero_part.dim

    @cached_property
    def hochschild(self):
        """Cached cochain spaces and differentials."""
        from .hochschild import HochschildComplex
        return HochschildComplex(self)

    def __eq__(self, other):
        if not isinstance(other, CoisotropicAlgebra):
            return NotImplemented
        return (self.module == other.module and la.equal(self.mu_tot, other.mu_tot)
                and la.equal(self.mu_N, other.mu_N) and la.equal(self.unit_tot, other.unit_tot)
                and la.equal(self.unit_N, other.unit_N))

    __hash__ = None


def validate_algebra(A: CoisotropicAlgebra) -> None:
    for comp, mu in (("tot", A.mu_tot), ("N", A.mu_N)):
        bad = associator_failure(mu)
        if bad is not None:
            raise NotAssociative(comp, bad)
    if not unit_ok(A.mu_tot, A.unit_tot):
        raise UnitViolation("tot unit is not two-sided")
    if not unit_ok(A.mu_N, A.unit_N):
        raise UnitViolation("N unit is not two-sided")
    iota = A.iota
    if not la.equal(la.mul(iota, A.unit_N), A.unit_tot):
        raise IotaNotAlgebraMorphism("iota(1_N) != 1_tot")
    for a, b in product(range(A.dim_N), repeat=2):
        lhs = la.mul(iota, A.mu_N[a, b])
        rhs = A.mul_tot(iota[:, a], iota[:, b])
        if not la.equal(lhs, rhs):
            raise IotaNotAlgebraMorphism(f"iota(e_{a} e_{b}) != iota(e_{a}) iota(e_{b})")
    for a in range(A.dim_N):
        e = la.unit_vector(A.dim_N, a)
        for z in A.zero_part.vectors:
            if not A.zero_part.contains(A.mul_N(e, z)):
                raise IdealViolation((a, "zero"), f"e_{a} * z not in A_0 for zero-part generator z")
            if not A.zero_part.contains(A.mul_N(z, e)):
                raise IdealViolation(("zero", a), f"z * e_{a} not in A_0 for zero-part generator z")


def reduce_algebra(A: CoisotropicAlgebra) -> Algebra:
    """``A_red = A_N / A_0`` on the canonical quotient basis."""
    q = A.module.reduction()
    r = q.dim
    reps = q.lift_matrix()
    mu = np.empty((r, r, r), dtype=object)
    mu.fill(la.ZERO)
    for a, b in product(range(r), repeat=2):
        mu[a, b] = q.project(A.mul_N(reps[:, a], reps[:, b]))
    return Algebra(r, mu, q.project(A.unit_N))


def center_subspaces(A: CoisotropicAlgebra):
    """Centers as subspaces of ``A_tot``, ``A_N``, ``A_N``."""
    ct, cn = commutator_matrix(A.mu_tot), commutator_matrix(A.mu_N)
    tot = _kernel_or_full(ct, A.dim_tot)
    C = la.vstack([cn, la.mul(ct, A.iota)], A.dim_N)
    N = _kernel_or_full(C, A.dim_N)
    return tot, N, N & A.zero_part


def center(A: CoisotropicAlgebra) -> CoisotropicModule:
    from .modules import _sub_module
    tot, N, zero = center_subspaces(A)
    return _sub_module(A.module, tot, N, zero)[0]


@dataclass(frozen=True, eq=False)
class PairSpaces:
    """Subspaces ``tot`` of ``Q^(dt^2)`` and ``N``, ``zero`` of ``Q^(dt^2 + dn^2)``
    (pairs ``(D_tot, D_N)`` flattened row-major)."""

    tot: Subspace
    N: Subspace
    zero: Subspace

    @property
    def dims(self) -> tuple:
        return (self.tot.dim, self.N.dim, self.zero.dim)

    def module(self) -> CoisotropicModule:
        return pair_module(self.tot, self.N, self.zero)


def _pair_zero_rows(A: CoisotropicAlgebra, domain: Subspace) -> np.ndarray:
    """Rows forcing ``D_N(v)`` into ``A_0`` for every ``v`` in ``domain``."""
    dt, dn = A.dim_tot, A.dim_N
    L = A.zero_part.annihilator()
    rows = []
    for a in range(L.shape[0]):
        for v in domain.vectors:
            r = la.zero_vector(dt * dt + dn * dn)
            for l, j in product(range(dn), repeat=2):
                r[dt * dt + l * dn + j] += L[a, l] * v[j]
            rows.append(r)
    return np.stack(rows) if rows else la.zeros(0, dt * dt + dn * dn)


def derivation_spaces(A: CoisotropicAlgebra) -> PairSpaces:
    dt, dn = A.dim_tot, A.dim_N
    n = dt * dt + dn * dn
    tot = _kernel_or_full(leibniz_constraints(A.mu_tot), dt * dt)
    rows = []
    lt, ln = leibniz_constraints(A.mu_tot), leibniz_constraints(A.mu_N)
    for r in lt:
        rows.append(np.concatenate([r, la.zero_vector(dn * dn)]))
    for r in ln:
        rows.append(np.concatenate([la.zero_vector(dt * dt), r]))
    # D_tot iota = iota D_N
    for i, j in product(range(dt), range(dn)):
        r = la.zero_vector(n)
        for k in range(dt):
            r[i * dt + k] += A.iota[k, j]
        for l in range(dn):
            r[dt * dt + l * dn + j] -= A.iota[i, l]
        rows.append(r)
    base = np.stack(rows) if rows else la.zeros(0, n)
    morph = la.vstack([base, _pair_zero_rows(A, A.zero_part)], n)
    N = _kernel_or_full(morph, n)
    full = la.vstack([morph, _pair_zero_rows(A, Subspace.full(dn))], n)
    zero = _kernel_or_full(full, n)
    return PairSpaces(tot, N, zero)


def derivations(A: CoisotropicAlgebra) -> CoisotropicModule:
    return derivation_spaces(A).module()


def inner_derivation_spaces(A: CoisotropicAlgebra) -> PairSpaces:
    dt, dn = A.dim_tot, A.dim_N
    n = dt * dt + dn * dn
    tot = Subspace.span([inner_derivation(A.mu_tot, e).reshape(-1) for e in la.identity(dt)], dt * dt)
    pairs = []
    for a in la.identity(dn):
        pairs.append(np.concatenate([inner_derivation(A.mu_tot, la.mul(A.iota, a)).reshape(-1),
                                     inner_derivation(A.mu_N, a).reshape(-1)]))
    N = Subspace.span(pairs, n)
    der = derivation_spaces(A)
    if not N.is_subspace_of(der.N):
        raise AssertionError("inner derivation pair is not a coisotropic derivation")
    return PairSpaces(tot, N, N & der.zero)


def inner_derivations(A: CoisotropicAlgebra) -> CoisotropicModule:
    return inner_derivation_spaces(A).module()


def reduced_derivation_map(A: CoisotropicAlgebra) -> np.ndarray:
    """Injective map ``C3Der(A)_red -> Der(A_red)`` in canonical bases."""
    der = derivation_spaces(A)
    dt, dn = A.dim_tot, A.dim_N
    red_alg = reduce_algebra(A)
    q = A.module.reduction()
    target = red_alg.derivations()
    quot = Quotient(der.N, der.zero)
    cols = []
    for rep in quot.complement.vectors:
        DN = rep[dt * dt:].reshape(dn, dn)
        Dred = q.project_matrix(la.mul(DN, q.lift_matrix()))
        cols.append(target.coordinates(Dred.reshape(-1)))
    m = np.stack(cols, axis=1) if cols else la.zeros(target.dim, 0)
    if la.rank(m) != m.shape[1]:
        raise InjectivityViolation("C3Der(A)_red -> Der(A_red) has a kernel")
    return m
