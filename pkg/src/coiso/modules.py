"""Coisotropic modules over Q, their morphisms, (co)limits, tensor structure,
internal Hom, reduction, and coisotropic cochain complexes.

A coisotropic module is stored in coordinates: a tot space ``Q^dim_tot``, an
N space ``Q^dim_N``, a structure map ``iota`` (``dim_tot x dim_N`` matrix) and
a zero part, a subspace of the N space.  Subquotients are presented in the
canonical bases provided by :mod:`coiso.linalg`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from . import linalg as la
from .errors import (DimensionMismatch, IotaSquareViolation, IsoViolation, NotAComplex,
                     NotASubspace, ZeroPartNotPreserved)
from .linalg import Quotient, Subspace


@dataclass(frozen=True, eq=False)
class CoisotropicModule:
    dim_tot: int
    dim_N: int
    iota: np.ndarray = field(repr=False)
    zero_part: Subspace = field(repr=False)

    def __post_init__(self):
        if self.iota.shape != (self.dim_tot, self.dim_N):
            raise DimensionMismatch(f"iota has shape {self.iota.shape}, expected {(self.dim_tot, self.dim_N)}")
        if self.zero_part.ambient_dim != self.dim_N:
            raise DimensionMismatch("zero part must live in the N space")

    @classmethod
    def make(cls, iota, zero_vectors=(), dim_tot=None, dim_N=None) -> "CoisotropicModule":
        iota = la.matrix(iota, dim_N)
        dim_tot = iota.shape[0] if dim_tot is None else dim_tot
        dim_N = iota.shape[1] if dim_N is None else dim_N
        if iota.size == 0:
            iota = la.zeros(dim_tot, dim_N)
        return cls(dim_tot, dim_N, iota, Subspace.span(zero_vectors, dim_N))

    @classmethod
    def unit(cls) -> "CoisotropicModule":
        """The monoidal unit ``(Q, Q, 0)``."""
        return cls(1, 1, la.identity(1), Subspace.zero(1))

    @classmethod
    def zero(cls) -> "CoisotropicModule":
        return cls(0, 0, la.zeros(0, 0), Subspace.zero(0))

    @property
    def dim_zero(self) -> int:
        return self.zero_part.dim

    @property
    def dims(self) -> tuple:
        return (self.dim_tot, self.dim_N, self.dim_zero)

    def __eq__(self, other):
        if not isinstance(other, CoisotropicModule):
            return NotImplemented
        return (self.dims == other.dims and la.equal(self.iota, other.iota)
                and self.zero_part == other.zero_part)

    __hash__ = None

    def reduction(self) -> Quotient:
        """``E_N / E_0`` with its canonical complement basis."""
        return Quotient(Subspace.full(self.dim_N), self.zero_part)


@dataclass(frozen=True, eq=False)
class CoisotropicMorphism:
    source: CoisotropicModule = field(repr=False)
    target: CoisotropicModule = field(repr=False)
    phi_tot: np.ndarray
    phi_N: np.ndarray

    def __post_init__(self):
        if self.phi_tot.shape != (self.target.dim_tot, self.source.dim_tot):
            raise DimensionMismatch(f"phi_tot has shape {self.phi_tot.shape}")
        if self.phi_N.shape != (self.target.dim_N, self.source.dim_N):
            raise DimensionMismatch(f"phi_N has shape {self.phi_N.shape}")

    @classmethod
    def identity(cls, E: CoisotropicModule) -> "CoisotropicMorphism":
        return cls(E, E, la.identity(E.dim_tot), la.identity(E.dim_N))

    @classmethod
    def zero(cls, E: CoisotropicModule, F: CoisotropicModule) -> "CoisotropicMorphism":
        return cls(E, F, la.zeros(F.dim_tot, E.dim_tot), la.zeros(F.dim_N, E.dim_N))

    def __matmul__(self, other: "CoisotropicMorphism") -> "CoisotropicMorphism":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise DimensionMismatch("morphisms are not composable")
        return CoisotropicMorphism(other.source, self.target, la.mul(self.phi_tot, other.phi_tot),
                                   la.mul(self.phi_N, other.phi_N))

    def __add__(self, other):
        return CoisotropicMorphism(self.source, self.target, self.phi_tot + other.phi_tot,
                                   self.phi_N + other.phi_N)

    def __sub__(self, other):
        return CoisotropicMorphism(self.source, self.target, self.phi_tot - other.phi_tot,
                                   self.phi_N - other.phi_N)

    def __neg__(self):
        return CoisotropicMorphism(self.source, self.target, -self.phi_tot, -self.phi_N)

    def __eq__(self, other):
        if not isinstance(other, CoisotropicMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and la.equal(self.phi_tot, other.phi_tot) and la.equal(self.phi_N, other.phi_N))

    __hash__ = None

    def is_zero(self) -> bool:
        return la.is_zero(self.phi_tot) and la.is_zero(self.phi_N)


def validate_morphism(f: CoisotropicMorphism) -> None:
    if not la.equal(la.mul(f.phi_tot, f.source.iota), la.mul(f.target.iota, f.phi_N)):
        raise IotaSquareViolation("phi_tot o iota_source != iota_target o phi_N")
    for v in f.source.zero_part.vectors:
        if not f.target.zero_part.contains(la.mul(f.phi_N, v)):
            raise ZeroPartNotPreserved("phi_N maps a zero-part generator outside the target zero part")


def is_valid_morphism(f: CoisotropicMorphism) -> bool:
    try:
        validate_morphism(f)
    except (IotaSquareViolation, ZeroPartNotPreserved):
        return False
    return True


# --------------------------------------------------------------------------
# mono/epi classes

def is_monomorphism(f: CoisotropicMorphism) -> bool:
    return la.rank(f.phi_tot) == f.source.dim_tot and la.rank(f.phi_N) == f.source.dim_N


def is_epimorphism(f: CoisotropicMorphism) -> bool:
    return la.rank(f.phi_tot) == f.target.dim_tot and la.rank(f.phi_N) == f.target.dim_N


def is_regular_monomorphism(f: CoisotropicMorphism) -> bool:
    """Injective, and the source zero part is the full preimage of the target's."""
    return is_monomorphism(f) and f.target.zero_part.preimage_under(f.phi_N) == f.source.zero_part


def is_regular_epimorphism(f: CoisotropicMorphism) -> bool:
    """Surjective, and the zero part is mapped onto the target zero part."""
    return is_epimorphism(f) and f.source.zero_part.image_under(f.phi_N) == f.target.zero_part


# --------------------------------------------------------------------------
# limits and colimits

def _sub_module(E: CoisotropicModule, tot: Subspace, N: Subspace, zero: Subspace):
    """Present a submodule ``(tot, N, zero)`` of ``E`` in canonical bases.

    Returns the module and its inclusion morphism.
    """
    Bt, Bn = tot.basis_matrix(), N.basis_matrix()
    iota = tot.coordinate_matrix(la.mul(E.iota, Bn))
    zero_coords = [N.coordinates(v) for v in zero.vectors]
    M = CoisotropicModule(tot.dim, N.dim, iota, Subspace.span(zero_coords, N.dim))
    return M, CoisotropicMorphism(M, E, Bt, Bn)


def kernel_of(f: CoisotropicMorphism):
    """``(ker phi_tot, ker phi_N, ker phi_N & E_0)`` with its inclusion."""
    Kt, Kn = la.kernel(f.phi_tot), la.kernel(f.phi_N)
    return _sub_module(f.source, Kt, Kn, Kn & f.source.zero_part)


def quotient(E: CoisotropicModule, sub_tot: Subspace, sub_N: Subspace):
    """``E / E'`` for a submodule with parts ``sub_tot``, ``sub_N``.

    The zero part is the image of ``E_0`` in ``E_N / E'_N``; the zero part of
    ``E'`` plays no role.  Returns the quotient module and its projection.
    """
    if not sub_N.image_under(E.iota).is_subspace_of(sub_tot):
        raise NotASubspace("iota does not map the N part of the submodule into its tot part")
    Qt = Quotient(Subspace.full(E.dim_tot), sub_tot)
    Qn = Quotient(Subspace.full(E.dim_N), sub_N)
    iota = Qt.project_matrix(la.mul(E.iota, Qn.lift_matrix()))
    zero = Subspace.span([Qn.project(v) for v in E.zero_part.vectors], Qn.dim)
    M = CoisotropicModule(Qt.dim, Qn.dim, iota, zero)
    proj = CoisotropicMorphism(E, M, Qt.project_matrix(la.identity(E.dim_tot)),
                               Qn.project_matrix(la.identity(E.dim_N)))
    return M, proj


def cokernel_of(f: CoisotropicMorphism):
    """``(F_tot/im, F_N/im, F_0/im phi_N)`` with its projection."""
    return quotient(f.target, la.image(f.phi_tot), la.image(f.phi_N))


def coequalizer_of(f: CoisotropicMorphism, g: CoisotropicMorphism):
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatch("coequalizer needs parallel morphisms")
    return quotient(f.target, la.image(f.phi_tot - g.phi_tot), la.image(f.phi_N - g.phi_N))


def image_factorization(f: CoisotropicMorphism):
    """``f = m o e`` through the image; ``e`` is a regular epi, ``m`` a mono."""
    It, In = la.image(f.phi_tot), la.image(f.phi_N)
    zero = f.source.zero_part.image_under(f.phi_N)
    M, m = _sub_module(f.target, It, In, zero)
    e = CoisotropicMorphism(f.source, M, It.coordinate_matrix(f.phi_tot), In.coordinate_matrix(f.phi_N))
    return M, e, m


def regular_image_factorization(f: CoisotropicMorphism):
    """``f = m o e`` through the regular image; ``e`` an epi, ``m`` a regular mono."""
    It, In = la.image(f.phi_tot), la.image(f.phi_N)
    M, m = _sub_module(f.target, It, In, In & f.target.zero_part)
    e = CoisotropicMorphism(f.source, M, It.coordinate_matrix(f.phi_tot), In.coordinate_matrix(f.phi_N))
    return M, e, m


def image_of(f: CoisotropicMorphism) -> CoisotropicModule:
    return image_factorization(f)[0]


def regular_image_of(f: CoisotropicMorphism) -> CoisotropicModule:
    return regular_image_factorization(f)[0]


def _factor(left: np.ndarray, target: np.ndarray) -> Optional[np.ndarray]:
    """Solve ``left @ h = target`` column by column, or ``None``."""
    cols = []
    solver = la.LinearSolver(left)
    for j in range(target.shape[1]):
        x = solver.solve(target[:, j])
        if x is None:
            return None
        cols.append(x)
    return np.stack(cols, axis=1) if cols else la.zeros(left.shape[1], 0)


def factor_through_kernel(f: CoisotropicMorphism, g: CoisotropicMorphism) -> CoisotropicMorphism:
    """The unique ``h`` with ``incl o h = g``, given ``f o g = 0``."""
    if not (f @ g).is_zero():
        raise ValueError("f o g is not zero")
    K, incl = kernel_of(f)
    ht, hn = _factor(incl.phi_tot, g.phi_tot), _factor(incl.phi_N, g.phi_N)
    h = CoisotropicMorphism(g.source, K, ht, hn)
    validate_morphism(h)
    return h


def factor_through_cokernel(f: CoisotropicMorphism, g: CoisotropicMorphism) -> CoisotropicMorphism:
    """The unique ``h`` with ``h o proj = g``, given ``g o f = 0``."""
    if not (g @ f).is_zero():
        raise ValueError("g o f is not zero")
    C, proj = cokernel_of(f)
    # h o P = g  <=>  P^T h^T = g^T
    ht = _factor(proj.phi_tot.T, g.phi_tot.T).T
    hn = _factor(proj.phi_N.T, g.phi_N.T).T
    h = CoisotropicMorphism(C, g.target, ht, hn)
    validate_morphism(h)
    return h


# --------------------------------------------------------------------------
# monoidal structure

def direct_sum(E: CoisotropicModule, F: CoisotropicModule) -> CoisotropicModule:
    zero = [np.concatenate([v, la.zero_vector(F.dim_N)]) for v in E.zero_part.vectors]
    zero += [np.concatenate([la.zero_vector(E.dim_N), v]) for v in F.zero_part.vectors]
    return CoisotropicModule(E.dim_tot + F.dim_tot, E.dim_N + F.dim_N, la.block_diag(E.iota, F.iota),
                             Subspace.span(zero, E.dim_N + F.dim_N))


def tensor_zero_part(E: CoisotropicModule, F: CoisotropicModule) -> Subspace:
    """``E_N (x) F_0 + E_0 (x) F_N`` inside ``E_N (x) F_N``."""
    n = E.dim_N * F.dim_N
    gens = []
    for x in la.identity(E.dim_N):
        for y in F.zero_part.vectors:
            gens.append(la.kron(x.reshape(-1, 1), y.reshape(-1, 1))[:, 0])
    for x in E.zero_part.vectors:
        for y in la.identity(F.dim_N):
            gens.append(la.kron(x.reshape(-1, 1), y.reshape(-1, 1))[:, 0])
    return Subspace.span(gens, n)


def tensor(E: CoisotropicModule, F: CoisotropicModule) -> CoisotropicModule:
    return CoisotropicModule(E.dim_tot * F.dim_tot, E.dim_N * F.dim_N, la.kron(E.iota, F.iota),
                             tensor_zero_part(E, F))


def tensor_morphism(f: CoisotropicMorphism, g: CoisotropicMorphism) -> CoisotropicMorphism:
    return CoisotropicMorphism(tensor(f.source, g.source), tensor(f.target, g.target),
                               la.kron(f.phi_tot, g.phi_tot), la.kron(f.phi_N, g.phi_N))


def hom_constraints(E: CoisotropicModule, F: CoisotropicModule) -> np.ndarray:
    """Linear constraints on ``vec(phi_tot) (+) vec(phi_N)`` (row-major) that
    cut out the coisotropic morphisms ``E -> F``."""
    nt, nn = F.dim_tot * E.dim_tot, F.dim_N * E.dim_N
    rows = []
    # (phi_tot iota_E - iota_F phi_N)[i, j] = 0
    for i in range(F.dim_tot):
        for j in range(E.dim_N):
            r = la.zero_vector(nt + nn)
            for k in range(E.dim_tot):
                r[i * E.dim_tot + k] += E.iota[k, j]
            for l in range(F.dim_N):
                r[nt + l * E.dim_N + j] -= F.iota[i, l]
            rows.append(r)
    # L_F phi_N v = 0 for v in E_0
    L = F.zero_part.annihilator()
    for a in range(L.shape[0]):
        for v in E.zero_part.vectors:
            r = la.zero_vector(nt + nn)
            for l in range(F.dim_N):
                for j in range(E.dim_N):
                    r[nt + l * E.dim_N + j] += L[a, l] * v[j]
            rows.append(r)
    return np.stack(rows) if rows else la.zeros(0, nt + nn)


def morphism_space(E: CoisotropicModule, F: CoisotropicModule) -> Subspace:
    """All coisotropic morphisms ``E -> F`` as a subspace of the coefficient space."""
    C = hom_constraints(E, F)
    n = F.dim_tot * E.dim_tot + F.dim_N * E.dim_N
    return la.kernel(C) if C.shape[0] else Subspace.full(n)


def morphism_from_vector(E: CoisotropicModule, F: CoisotropicModule, v) -> CoisotropicMorphism:
    nt = F.dim_tot * E.dim_tot
    v = la.vector(v)
    return CoisotropicMorphism(E, F, v[:nt].reshape(F.dim_tot, E.dim_tot).copy(),
                               v[nt:].reshape(F.dim_N, E.dim_N).copy())


def morphism_to_vector(f: CoisotropicMorphism) -> np.ndarray:
    return np.concatenate([f.phi_tot.reshape(-1), f.phi_N.reshape(-1)])


def internal_hom(E: CoisotropicModule, F: CoisotropicModule) -> CoisotropicModule:
    """``Hom(E, F)``: tot = all linear maps, N = coisotropic morphisms (as an
    explicit subspace), zero = morphisms with ``phi_N(E_N)`` inside ``F_0``.
    ``iota`` projects a morphism to its tot component."""
    S = morphism_space(E, F)
    nt = F.dim_tot * E.dim_tot
    B = S.basis_matrix()
    iota = B[:nt, :].copy()
    # zero part: L_F phi_N = 0 on all of E_N
    L = F.zero_part.annihilator()
    rows = []
    for a in range(L.shape[0]):
        for j in range(E.dim_N):
            r = la.zero_vector(S.ambient_dim)
            for l in range(F.dim_N):
                r[nt + l * E.dim_N + j] = L[a, l]
            rows.append(r)
    if rows:
        zero = la.kernel(la.mul(np.stack(rows), B))
    else:
        zero = Subspace.full(S.dim)
    return CoisotropicModule(nt, S.dim, iota, zero)


# --------------------------------------------------------------------------
# reduction

def reduce_module(E: CoisotropicModule) -> int:
    """Dimension of ``E_red = E_N / E_0``."""
    return E.dim_N - E.dim_zero


def reduce_morphism(f: CoisotropicMorphism) -> np.ndarray:
    """The induced map ``E_red -> F_red`` in canonical quotient bases."""
    validate_morphism(f)
    qe, qf = f.source.reduction(), f.target.reduction()
    return qf.project_matrix(la.mul(f.phi_N, qe.lift_matrix()))


def reduced_tensor_map(E: CoisotropicModule, F: CoisotropicModule) -> np.ndarray:
    """Canonical map ``E_red (x) F_red -> (E (x) F)_red``, ``[x] (x) [y] -> [x (x) y]``."""
    qe, qf = E.reduction(), F.reduction()
    qt = tensor(E, F).reduction()
    return qt.project_matrix(la.kron(qe.lift_matrix(), qf.lift_matrix()))


# --------------------------------------------------------------------------
# complexes

@dataclass(frozen=True)
class GradedCoisotropicModule:
    modules: Dict[int, CoisotropicModule]

    def __getitem__(self, degree: int) -> CoisotropicModule:
        return self.modules.get(degree, CoisotropicModule.zero())

    def reduced_dims(self) -> Dict[int, int]:
        return {d: reduce_module(M) for d, M in sorted(self.modules.items())}


@dataclass(frozen=True, eq=False)
class CoisotropicComplex:
    """A finite window of a coisotropic cochain complex.

    ``modules[d]`` for ``start <= d < stop``; ``differentials[d]`` maps
    degree ``d`` to ``d + 1``.  Outside the window everything is zero.
    """

    start: int
    modules: tuple
    differentials: tuple

    def __post_init__(self):
        if len(self.differentials) != max(len(self.modules) - 1, 0):
            raise DimensionMismatch("need one differential between consecutive degrees")

    @classmethod
    def from_dict(cls, modules: Dict[int, CoisotropicModule], differentials: Dict[int, CoisotropicMorphism]):
        degs = sorted(modules)
        if degs != list(range(degs[0], degs[-1] + 1)):
            raise DimensionMismatch("degrees must be contiguous")
        return cls(degs[0], tuple(modules[d] for d in degs), tuple(differentials[d] for d in degs[:-1]))

    @property
    def stop(self) -> int:
        return self.start + len(self.modules)

    @property
    def degrees(self) -> range:
        return range(self.start, self.stop)

    def module(self, d: int) -> CoisotropicModule:
        if self.start <= d < self.stop:
            return self.modules[d - self.start]
        return CoisotropicModule.zero()

    def differential(self, d: int) -> CoisotropicMorphism:
        if self.start <= d < self.stop - 1:
            return self.differentials[d - self.start]
        return CoisotropicMorphism.zero(self.module(d), self.module(d + 1))

    def validate(self) -> None:
        for d in self.degrees:
            delta = self.differential(d)
            validate_morphism(delta)
            if not (self.differential(d + 1) @ delta).is_zero():
                raise NotAComplex(f"delta^{d + 1} o delta^{d} != 0")


@dataclass(frozen=True, eq=False)
class CohomologyData:
    """Everything computed for ``H^d``: the module plus the quotients used,
    so that classes can be mapped back to cocycle representatives in ``C^d``."""

    module: CoisotropicModule
    cycles_tot: Subspace
    cycles_N: Subspace
    quotient_tot: Quotient
    quotient_N: Quotient

    def representative_N(self, coords) -> np.ndarray:
        """A cocycle in ``C^d_N`` representing the class with these coordinates."""
        return la.mul(self.cycles_N.basis_matrix(), self.quotient_N.lift(coords))

    def representative_tot(self, coords) -> np.ndarray:
        return la.mul(self.cycles_tot.basis_matrix(), self.quotient_tot.lift(coords))

    def class_N(self, cocycle) -> np.ndarray:
        return self.quotient_N.project(self.cycles_N.coordinates(cocycle))


def cohomology_data(C: CoisotropicComplex, d: int) -> CohomologyData:
    C.validate()
    K, incl = kernel_of(C.differential(d))
    prev = C.differential(d - 1)
    Kt = la.kernel(C.differential(d).phi_tot)
    Kn = la.kernel(C.differential(d).phi_N)
    # image of delta^{d-1} in kernel coordinates
    sub_tot = Subspace.span([Kt.coordinates(v) for v in la.image(prev.phi_tot).vectors], K.dim_tot)
    sub_N = Subspace.span([Kn.coordinates(v) for v in la.image(prev.phi_N).vectors], K.dim_N)
    H, _ = quotient(K, sub_tot, sub_N)
    return CohomologyData(H, Kt, Kn, Quotient(Subspace.full(K.dim_tot), sub_tot),
                          Quotient(Subspace.full(K.dim_N), sub_N))


def cohomology(C: CoisotropicComplex, d: int) -> CoisotropicModule:
    """``H^d = ker delta^d / image delta^(d-1)`` as a coisotropic module."""
    return cohomology_data(C, d).module


@dataclass(frozen=True)
class ReductionIsoReport:
    degree: int
    dim_reduced_cohomology: int
    dim_cohomology_of_reduced: int
    eta: np.ndarray
    injective: bool
    bijective: bool
    zero_part_strict: bool

    @property
    def dims_equal(self) -> bool:
        return self.dim_reduced_cohomology == self.dim_cohomology_of_reduced


def reduced_complex_maps(C: CoisotropicComplex):
    """Reductions ``C^d_N -> C^d_red`` and the induced differentials."""
    quots = {d: C.module(d).reduction() for d in range(C.start - 1, C.stop + 1)}
    deltas = {}
    for d in range(C.start - 1, C.stop):
        delta = C.differential(d).phi_N
        deltas[d] = quots[d + 1].project_matrix(la.mul(delta, quots[d].lift_matrix()))
    return quots, deltas


def zero_part_strict(C: CoisotropicComplex, d: int) -> bool:
    """Whether ``im(delta_N^(d-1)) & C^d_0 == delta_N^(d-1)(C^(d-1)_0)``.

    This is exactly the condition for the comparison map of
    :func:`check_reduction_iso` to be onto in degree ``d - 1``: a class whose
    differential lands in the zero part must be correctable by a zero-part
    element into an honest cocycle.
    """
    prev = C.differential(d - 1)
    lhs = la.image(prev.phi_N) & C.module(d).zero_part
    rhs = C.module(d - 1).zero_part.image_under(prev.phi_N)
    return lhs == rhs


def check_reduction_iso(C: CoisotropicComplex, d: int, strict: bool = True) -> ReductionIsoReport:
    """Compare ``H^d(C)_red`` with ``H^d(C_red)`` through
    ``eta([[x]_H]_red) = [[x]_red]_H``.

    ``eta`` is always well defined and injective.  It is onto exactly when every
    ``x`` with ``delta x`` in the zero part differs from a cocycle by an element
    of the zero part; with ``strict`` a non-bijective ``eta`` raises
    :class:`IsoViolation`.
    """
    data = cohomology_data(C, d)
    H = data.module
    red_H = H.reduction()
    dim_left = red_H.dim

    quots, deltas = reduced_complex_maps(C)
    ker_red = la.kernel(deltas[d])
    im_red = la.image(deltas[d - 1])
    right = Quotient(ker_red, im_red)

    eta = la.zeros(right.dim, dim_left)
    for i in range(dim_left):
        x = data.representative_N(red_H.lift(la.unit_vector(dim_left, i)))
        eta[:, i] = right.project(quots[d].project(x))
    r = la.rank(eta)
    injective = r == dim_left
    bijective = injective and r == right.dim
    report = ReductionIsoReport(d, dim_left, right.dim, eta, injective, bijective,
                                zero_part_strict(C, d + 1))
    if strict and not bijective:
        raise IsoViolation(f"degree {d}: dim H(C)_red = {dim_left}, dim H(C_red) = {right.dim}, "
                           f"rank eta = {r}")
    return report


def pair_module(tot: Subspace, pairs: Subspace, zero: Subspace) -> CoisotropicModule:
    """Module whose N part is a space of pairs ``(x_tot, x_N)``.

    ``pairs`` and ``zero`` live in ``Q^(tot.ambient_dim + k)``; the structure
    map sends a pair to its first component, written in ``tot`` coordinates.
    """
    nt = tot.ambient_dim
    B = pairs.basis_matrix()
    iota = tot.coordinate_matrix(B[:nt, :]) if pairs.dim else la.zeros(tot.dim, 0)
    zero_coords = [pairs.coordinates(v) for v in zero.vectors]
    return CoisotropicModule(tot.dim, pairs.dim, iota, Subspace.span(zero_coords, pairs.dim))
