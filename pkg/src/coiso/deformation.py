"""Formal deformations, Maurer-Cartan elements and gauge equivalence.

Two kinds of DGLA are supported by the same algorithms:

* :class:`CoisotropicDGLA`, given by explicit structure tensors on a finite
  degree window ``0..hi`` (brackets landing above ``hi`` are dropped, which is
  the quotient by an ideal since all degrees are nonnegative);
* :class:`HochschildDGLA`, acting directly on cochains with the shifted
  grading ``g^k = C^(k+1)`` and ``D = [mu_0, .]``.

The generic algorithms only need ``bracket``, ``d``, ``degree``, ``zero`` and
``in_zero`` on the N component; for the Hochschild DGLA the N component is
the pair space, so the tot component is carried along automatically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Tuple

import numpy as np
from gmpy2 import mpq

from . import linalg as la
from .algebra import CoisotropicAlgebra
from .bch import bch_mul
from .errors import (DifferentialNotSquareZero, GradeMismatch, IdealViolation, InvalidCochain,
                     IotaNotDGLAMorphism, JacobiViolation, LeibnizViolation, NotAssociativeToOrder,
                     NotMaurerCartan, OrderTooLarge)
from .hochschild import (DEFAULT_CAP, Cochain, bracket_tensor, gerstenhaber_bracket, hochschild_cohomology,
                         hochschild_differential, reduce_cochain)
from .linalg import Subspace
from .modules import CoisotropicModule
from .series import DEFAULT_ORDER, MAX_ORDER, TruncatedSeries

HALF = mpq(1, 2)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# --------------------------------------------------------------------------
# explicit DGLAs

@dataclass(frozen=True, eq=False)
class GradedElement:
    degree: int
    vec: np.ndarray = field(repr=False)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        if self.degree != other.degree:
            raise GradeMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        return GradedElement(self.degree, self.vec + other.vec)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.degree, -self.vec)

    def __mul__(self, c) -> "GradedElement":
        return GradedElement(self.degree, self.vec * la.scalar(c))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return la.is_zero(self.vec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.degree == other.degree and la.equal(self.vec, other.vec)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GradedLie:
    """One component: dims per degree ``0..hi``, bracket tensors
    ``brackets[(k, l)][a, b, :]`` and differential matrices ``d[k]``."""

    dims: Tuple[int, ...]
    brackets: Dict[Tuple[int, int], np.ndarray] = field(repr=False)
    differentials: Dict[int, np.ndarray] = field(repr=False)

    @property
    def hi(self) -> int:
        return len(self.dims) - 1

    def zero(self, k: int) -> GradedElement:
        return GradedElement(k, la.zero_vector(self.dims[k] if k <= self.hi else 0))

    def basis(self, k: int) -> List[GradedElement]:
        return [GradedElement(k, la.unit_vector(self.dims[k], i)) for i in range(self.dims[k])]

    def degree(self, x: GradedElement) -> int:
        return x.degree

    def bracket(self, x: GradedElement, y: GradedElement) -> GradedElement:
        k, l = x.degree, y.degree
        if k + l > self.hi:
            return GradedElement(k + l, la.zero_vector(0))
        T = self.brackets.get((k, l))
        out = la.zero_vector(self.dims[k + l])
        if T is not None:
            for a in np.flatnonzero(x.vec != 0):
                for b in np.flatnonzero(y.vec != 0):
                    out = out + T[a, b] * (x.vec[a] * y.vec[b])
        return GradedElement(k + l, out)

    def d(self, x: GradedElement) -> GradedElement:
        k = x.degree
        if k >= self.hi:
            return GradedElement(k + 1, la.zero_vector(0))
        return GradedElement(k + 1, la.mul(self.differentials[k], x.vec))


@dataclass(frozen=True, eq=False)
class CoisotropicDGLA:
    """Pair of DGLAs ``(g_tot, g_N)`` with ``iota[k]: g_N^k -> g_tot^k`` and a
    Lie ideal ``zero[k]`` of ``g_N^k``.  Generic algorithms act on ``g_N``."""

    tot: GradedLie
    N: GradedLie
    iota: Dict[int, np.ndarray] = field(repr=False)
    zero_parts: Dict[int, Subspace] = field(repr=False)

    @property
    def hi(self) -> int:
        return self.N.hi

    def module(self, k: int) -> CoisotropicModule:
        return CoisotropicModule(self.tot.dims[k], self.N.dims[k], self.iota[k], self.zero_parts[k])

    def bracket(self, x, y):
        return self.N.bracket(x, y)

    def d(self, x):
        return self.N.d(x)

    def degree(self, x) -> int:
        return x.degree

    def zero(self, k: int) -> GradedElement:
        return self.N.zero(k)

    def in_zero(self, x: GradedElement) -> bool:
        if x.degree > self.hi:
            return True
        return self.zero_parts[x.degree].contains(x.vec)

    def apply_iota(self, x: GradedElement) -> GradedElement:
        return GradedElement(x.degree, la.mul(self.iota[x.degree], x.vec))

    def explicit(self) -> "CoisotropicDGLA":
        return self


def abelian_dgla(dims_tot, dims_N, iota=None, zero_parts=None) -> CoisotropicDGLA:
    """Zero bracket and zero differential."""
    hi = len(dims_N) - 1

    def comp(dims):
        return GradedLie(tuple(dims), {}, {k: la.zeros(dims[k + 1], dims[k]) for k in range(hi)})

    iota = iota or {k: la.zeros(dims_tot[k], dims_N[k]) for k in range(hi + 1)}
    zero_parts = zero_parts or {k: Subspace.zero(dims_N[k]) for k in range(hi + 1)}
    return CoisotropicDGLA(comp(dims_tot), comp(dims_N), iota, zero_parts)


def _check_component(L: GradedLie, name: str) -> None:
    hi = L.hi
    for k in range(hi):
        if k + 1 < hi:
            dd = la.mul(L.differentials[k + 1], L.differentials[k])
            if not la.is_zero(dd):
                raise DifferentialNotSquareZero(f"{name}: D o D != 0 on degree {k}")
    for k, l in product(range(hi + 1), repeat=2):
        if k + l > hi:
            continue
        for x, y in product(L.basis(k), L.basis(l)):
            if not L.bracket(x, y) == L.bracket(y, x) * (-_sign(k * l)):
                raise JacobiViolation(f"{name}: graded antisymmetry fails in degrees ({k}, {l})")
    for k, l, m in product(range(hi + 1), repeat=3):
        if k + l + m > hi:
            continue
        for x, y, z in product(L.basis(k), L.basis(l), L.basis(m)):
            lhs = L.bracket(x, L.bracket(y, z))
            rhs = L.bracket(L.bracket(x, y), z) + L.bracket(y, L.bracket(x, z)) * _sign(k * l)
            if not lhs == rhs:
                raise JacobiViolation(f"{name}: graded Jacobi fails in degrees ({k}, {l}, {m})")
    for k, l in product(range(hi + 1), repeat=2):
        if k + l + 1 > hi:
            continue
        for x, y in product(L.basis(k), L.basis(l)):
            lhs = L.d(L.bracket(x, y))
            rhs = L.bracket(L.d(x), y) + L.bracket(x, L.d(y)) * _sign(k)
            if not lhs == rhs:
                raise LeibnizViolation(f"{name}: D is not a derivation in degrees ({k}, {l})")


def validate_dgla(g) -> None:
    """Check every axiom on basis tuples of the degree window."""
    g = g.explicit()
    _check_component(g.tot, "tot")
    _check_component(g.N, "N")
    hi = g.hi
    for k in range(hi + 1):
        Z = g.zero_parts[k]
        for l in range(hi + 1 - k):
            for x in g.N.basis(l):
                for z in Z.vectors:
                    ze = GradedElement(k, z)
                    if not g.in_zero(g.bracket(x, ze)) or not g.in_zero(g.bracket(ze, x)):
                        raise IdealViolation((l, k), f"[g_N^{l}, g_0^{k}] not contained in g_0")
        if k < hi:
            for z in Z.vectors:
                if not g.in_zero(g.d(GradedElement(k, z))):
                    raise IdealViolation((k, "D"), f"D_N does not preserve g_0 in degree {k}")
    for k in range(hi + 1):
        if k < hi:
            lhs = la.mul(g.iota[k + 1], g.N.differentials[k])
            rhs = la.mul(g.tot.differentials[k], g.iota[k])
            if not la.equal(lhs, rhs):
                raise IotaNotDGLAMorphism(f"iota does not commute with D in degree {k}")
        for l in range(hi + 1 - k):
            for x, y in product(g.N.basis(k), g.N.basis(l)):
                lhs = g.apply_iota(g.N.bracket(x, y))
                rhs = g.tot.bracket(g.apply_iota(x), g.apply_iota(y))
                if not lhs == rhs:
                    raise IotaNotDGLAMorphism(f"iota does not preserve brackets in degrees ({k}, {l})")


# --------------------------------------------------------------------------
# the Hochschild DGLA

class HochschildDGLA:
    """Cochains of ``A`` with ``g^k = C^(k+1)``; ``D = [mu_0, .]`` when
    ``twisted`` and ``D = 0`` otherwise (the DGLA of the underlying module)."""

    def __init__(self, A: CoisotropicAlgebra, twisted: bool = True, cap: int = DEFAULT_CAP):
        self.A = A
        self.twisted = twisted
        self.cap = cap
        self.mu0 = Cochain.multiplication(A)

    def bracket(self, f: Cochain, g: Cochain) -> Cochain:
        return gerstenhaber_bracket(f, g)

    def d(self, f: Cochain) -> Cochain:
        if not self.twisted:
            return Cochain.zero(self.A, f.degree + 1)
        return gerstenhaber_bracket(self.mu0, f)

    def degree(self, f: Cochain) -> int:
        return f.degree - 1

    def zero(self, k: int) -> Cochain:
        return Cochain.zero(self.A, k + 1)

    def in_N(self, f: Cochain) -> bool:
        return self.A.hochschild.space(f.degree, self.cap).contains(f)

    def in_zero(self, f: Cochain) -> bool:
        return self.A.hochschild.space(f.degree, self.cap).contains_zero(f)

    def to_graded(self, f: Cochain) -> GradedElement:
        """Coordinates of ``f`` in the computed basis of ``C^n_N``."""
        space = self.A.hochschild.space(f.degree, self.cap)
        v = f.to_vector()
        return GradedElement(f.degree - 1, la.vector([v[p] for p in space.N.pivots]))

    def explicit(self, hi: int = 1) -> CoisotropicDGLA:
        """Structure tensors on the window ``g^0..g^hi`` in the computed bases
        of ``C^1..C^(hi+1)``; the tot component uses elementary tensors."""
        hc = self.A.hochschild
        dt = self.A.dim_tot
        bases = [[Cochain.from_vector(self.A, k + 1, v) for v in hc.space(k + 1, self.cap).N.vectors]
                 for k in range(hi + 1)]
        tot_bases = [[la.unit_vector(dt ** (k + 2), i).reshape((dt,) * (k + 2)) for i in range(dt ** (k + 2))]
                     for k in range(hi + 1)]
        br_N, br_tot, d_N, d_tot = {}, {}, {}, {}
        for k, l in product(range(hi + 1), repeat=2):
            if k + l > hi:
                continue
            T = np.empty((len(bases[k]), len(bases[l]), len(bases[k + l])), dtype=object)
            for a, f in enumerate(bases[k]):
                for b, g in enumerate(bases[l]):
                    T[a, b] = self.to_graded(self.bracket(f, g)).vec
            br_N[(k, l)] = T
            Tt = np.empty((len(tot_bases[k]), len(tot_bases[l]), len(tot_bases[k + l])), dtype=object)
            for a, f in enumerate(tot_bases[k]):
                for b, g in enumerate(tot_bases[l]):
                    Tt[a, b] = bracket_tensor(f, g).reshape(-1)
            br_tot[(k, l)] = Tt
        for k in range(hi):
            if self.twisted:
                cols = [self.to_graded(self.d(f)).vec for f in bases[k]]
                d_N[k] = np.stack(cols, axis=1) if cols else la.zeros(len(bases[k + 1]), 0)
                d_tot[k] = np.stack([bracket_tensor(self.mu0.tot, f).reshape(-1) for f in tot_bases[k]], axis=1)
            else:
                d_N[k] = la.zeros(len(bases[k + 1]), len(bases[k]))
                d_tot[k] = la.zeros(dt ** (k + 3), dt ** (k + 2))
        mods = [hc.space(k + 1, self.cap).module for k in range(hi + 1)]
        tot = GradedLie(tuple(len(b) for b in tot_bases), br_tot, d_tot)
        N = GradedLie(tuple(len(b) for b in bases), br_N, d_N)
        return CoisotropicDGLA(tot, N, {k: m.iota for k, m in enumerate(mods)},
                               {k: m.zero_part for k, m in enumerate(mods)})


class TwistedDGLA:
    """``g`` with differential ``D + [xi_0, .]``."""

    def __init__(self, base, xi0):
        self.base = base
        self.xi0 = xi0

    def bracket(self, x, y):
        return self.base.bracket(x, y)

    def d(self, x):
        return self.base.d(x) + self.base.bracket(self.xi0, x)

    def degree(self, x) -> int:
        return self.base.degree(x)

    def zero(self, k: int):
        return self.base.zero(k)

    def in_zero(self, x) -> bool:
        return self.base.in_zero(x)

    def explicit(self, hi: int = 1) -> CoisotropicDGLA:
        return twist(self.base.explicit(hi), self.base.to_graded(self.xi0))

    def to_graded(self, f):
        return self.base.to_graded(f)


def mc_residual_element(g, x):
    return g.d(x) + g.bracket(x, x) * HALF


def twist(g, xi0):
    """Twist the differential by an MC element ``xi0`` of ``g^1_N``."""
    if g.degree(xi0) != 1:
        raise GradeMismatch("twisting element must have degree 1")
    if not mc_residual_element(g, xi0).is_zero():
        raise NotMaurerCartan("twisting element is not Maurer-Cartan")
    if not isinstance(g, CoisotropicDGLA):
        return TwistedDGLA(g, xi0)
    hi = g.hi
    x_tot = g.apply_iota(xi0)

    def twisted(L: GradedLie, x: GradedElement) -> GradedLie:
        ds = {}
        for k in range(hi):
            cols = [L.bracket(x, e).vec for e in L.basis(k)] if k + 1 <= hi else []
            ad = np.stack(cols, axis=1) if cols else la.zeros(L.dims[k + 1], 0)
            ds[k] = L.differentials[k] + ad
        return GradedLie(L.dims, L.brackets, ds)

    return CoisotropicDGLA(twisted(g.tot, x_tot), twisted(g.N, xi0), g.iota, g.zero_parts)


# --------------------------------------------------------------------------
# series-level operations

def _series_bracket(g, X: TruncatedSeries, Y: TruncatedSeries) -> TruncatedSeries:
    zero = g.zero(g.degree(X[0]) + g.degree(Y[0]))
    return X.convolve(Y, g.bracket, zero)


def _check_degree(g, xi: TruncatedSeries, k: int) -> None:
    for c in xi:
        if g.degree(c) != k:
            raise GradeMismatch(f"expected degree {k} coefficients, got degree {g.degree(c)}")


def mc_check(g, xi: TruncatedSeries) -> TruncatedSeries:
    """Residual series ``D xi + 1/2 [xi, xi]``."""
    _check_degree(g, xi, 1)
    return xi.map(g.d) + _series_bracket(g, xi, xi) * HALF


def is_mc(g, xi: TruncatedSeries) -> bool:
    return mc_check(g, xi).is_zero()


def mc_equivalent(g, xi1: TruncatedSeries, xi2: TruncatedSeries) -> bool:
    """Every coefficient of ``xi1 - xi2`` lies in the zero part."""
    return all(g.in_zero(c) for c in (xi1 - xi2))


def zero_series(g, k: int, order: int) -> TruncatedSeries:
    return TruncatedSeries([g.zero(k)] * (order + 1))


def exp_ad(g, G: TruncatedSeries, x: TruncatedSeries) -> TruncatedSeries:
    """``e^(ad G) x``; terminates since ``G`` has no constant term."""
    total, term = x, x
    for n in range(1, x.order + 1):
        term = _series_bracket(g, G, term) * mpq(1, n)
        if term.is_zero():
            break
        total = total + term
    return total


def gauge_act(g, G: TruncatedSeries, xi: TruncatedSeries, check: bool = True) -> TruncatedSeries:
    """``G . xi = e^(ad G) xi - sum_k (ad G)^k (D G) / (k+1)!``."""
    _check_degree(g, G, 0)
    _check_degree(g, xi, 1)
    if G.order != xi.order:
        raise GradeMismatch("gauge element and MC series have different orders")
    if not G[0].is_zero():
        raise ValueError("gauge element must have zero constant term")
    if check and not is_mc(g, xi):
        raise NotMaurerCartan("gauge action needs a Maurer-Cartan series")
    DG = G.map(g.d)
    out = exp_ad(g, G, xi)
    term = DG
    for k in range(0, xi.order + 1):
        if k:
            term = _series_bracket(g, G, term)
        if term.is_zero():
            break
        out = out - term * mpq(1, factorial(k + 1))
    if check and not is_mc(g, out):
        raise AssertionError("gauge action left the Maurer-Cartan set")
    return out


def gauge_mul(g, X: TruncatedSeries, Y: TruncatedSeries) -> TruncatedSeries:
    _check_degree(g, X, 0)
    _check_degree(g, Y, 0)
    return bch_mul(g, X, Y)


# --------------------------------------------------------------------------
# deformations of a coisotropic algebra

@dataclass(frozen=True, eq=False)
class Deformation:
    """``mu = mu_0 + sum_k l^k mu_k`` with every ``mu_k`` in ``C^2(A)_N``."""

    A: CoisotropicAlgebra = field(repr=False)
    mu: TruncatedSeries = field(repr=False)

    def __post_init__(self):
        if self.mu.order > MAX_ORDER:
            raise OrderTooLarge(f"orders above {MAX_ORDER} are not supported")
        space = self.A.hochschild.space(2)
        for k, c in enumerate(self.mu):
            if c.degree != 2:
                raise GradeMismatch(f"coefficient {k} has degree {c.degree}, expected 2")
            if not space.contains(c):
                raise InvalidCochain(f"coefficient {k} is not in C^2(A)_N")
        if not self.mu[0] == Cochain.multiplication(self.A):
            raise InvalidCochain("constant coefficient differs from the product of A")

    @classmethod
    def from_terms(cls, A: CoisotropicAlgebra, terms, order: Optional[int] = None) -> "Deformation":
        """``terms`` are ``mu_1, mu_2, ...``; missing higher terms are zero."""
        terms = list(terms)
        order = len(terms) if order is None else order
        zero = Cochain.zero(A, 2)
        coeffs = [Cochain.multiplication(A)] + terms[:order] + [zero] * (order - len(terms))
        return cls(A, TruncatedSeries(coeffs))

    @classmethod
    def undeformed(cls, A: CoisotropicAlgebra, order: int = DEFAULT_ORDER) -> "Deformation":
        return cls.from_terms(A, [], order)

    @property
    def order(self) -> int:
        return self.mu.order

    @property
    def xi(self) -> TruncatedSeries:
        """``mu - mu_0`` as a degree-1 series of the Hochschild DGLA."""
        return TruncatedSeries([Cochain.zero(self.A, 2)] + list(self.mu.coefficients[1:]))

    def residual(self) -> TruncatedSeries:
        return mc_check(HochschildDGLA(self.A), self.xi)

    def first_failure(self) -> Optional[int]:
        return self.residual().lowest_nonzero()

    def truncate(self, order: int) -> "Deformation":
        return Deformation(self.A, self.mu.truncate(order))


def deformation_from_xi(A: CoisotropicAlgebra, xi: TruncatedSeries) -> Deformation:
    return Deformation(A, TruncatedSeries([Cochain.multiplication(A)] + list(xi.coefficients[1:])))


def gauge_series(A: CoisotropicAlgebra, terms, order: int) -> TruncatedSeries:
    """Gauge element ``sum l^k g_k`` from degree-1 cochains ``g_1, g_2, ...``."""
    terms = list(terms)
    zero = Cochain.zero(A, 1)
    return TruncatedSeries([zero] + terms[:order] + [zero] * (order - len(terms)))


def act_on_deformation(G: TruncatedSeries, defm: Deformation) -> Deformation:
    return deformation_from_xi(defm.A, gauge_act(HochschildDGLA(defm.A), G, defm.xi))


def classical_limit(defm: Deformation) -> CoisotropicAlgebra:
    A = defm.A
    c0 = defm.mu[0]
    out = CoisotropicAlgebra(A.module, c0.tot, c0.N, A.unit_tot, A.unit_N, A.name)
    if not out == A:
        raise AssertionError("classical limit differs from the base algebra")
    return out


def obstruction(A: CoisotropicAlgebra, partial: Deformation) -> Cochain:
    """``R_(k+1) = 1/2 sum_(l=1..k) [mu_l, mu_(k+1-l)]`` for an order-``k`` deformation."""
    k = partial.order
    fail = partial.first_failure()
    if fail is not None:
        raise NotAssociativeToOrder(fail)
    R = Cochain.zero(A, 3)
    for l in range(1, k + 1):
        R = R + gerstenhaber_bracket(partial.mu[l], partial.mu[k + 1 - l])
    R = R * HALF
    if not hochschild_differential(A, R).is_zero():
        raise AssertionError("obstruction is not a cocycle")
    return R


@dataclass(frozen=True, eq=False)
class ExtensionResult:
    deformation: Optional[Deformation]
    obstruction: Cochain = field(repr=False)
    obstruction_class: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def extended(self) -> bool:
        return self.deformation is not None


def extend(A: CoisotropicAlgebra, partial: Deformation, cap: int = DEFAULT_CAP) -> ExtensionResult:
    """Solve ``delta_N mu_(k+1) = R_(k+1)`` inside ``C^2(A)_N``."""
    if partial.order + 1 > MAX_ORDER:
        raise OrderTooLarge(f"orders above {MAX_ORDER} are not supported")
    R = obstruction(A, partial)
    mu_next = A.hochschild.solve_coboundary(R, cap)
    if mu_next is None:
        cls = hochschild_cohomology(A, 3, cap).class_of(R)
        return ExtensionResult(None, R, cls)
    ext = Deformation(A, partial.mu.extend(mu_next))
    if ext.first_failure() is not None:
        raise AssertionError("extension is not associative to the new order")
    return ExtensionResult(ext, R)


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    gauge: Optional[TruncatedSeries] = field(repr=False)
    failed_order: Optional[int] = None
    obstruction_class: Optional[np.ndarray] = field(default=None, repr=False)
    hh2_dim: Optional[int] = None
    conclusive: bool = True

    @property
    def equivalent(self) -> bool:
        return self.gauge is not None


def _replace(G: TruncatedSeries, k: int, c) -> TruncatedSeries:
    return TruncatedSeries(G.coefficients[:k] + (c,) + G.coefficients[k + 1:])


def gauge_equivalence_search(A: CoisotropicAlgebra, mu: Deformation, mu_prime: Deformation,
                             cap: int = DEFAULT_CAP) -> EquivalenceResult:
    """Order by order find ``G`` with ``e^(ad G) mu = mu'``.

    At order ``k`` adding ``l^k g_k`` changes the order-``k`` coefficient by
    ``[g_k, mu_0] = -delta g_k``, so ``g_k`` solves ``delta_N g_k = r_k`` where
    ``r_k`` is the current mismatch.  The choice at order ``k - 1`` is only fixed
    up to 1-cocycles ``z`` in ``C^1_N``; adding ``l^(k-1) z`` leaves lower orders
    alone and changes order ``k`` linearly, so both are solved for together.

    A mismatch that cannot be removed is reported with its class in
    ``HH^2(A)_N``.  Failure is certain at order 1 or when ``HH^1(A)_N = 0``;
    otherwise ``conclusive`` is false since older choices were not revisited.
    """
    K = min(mu.order, mu_prime.order)
    if not mu.mu[0] == mu_prime.mu[0]:
        return EquivalenceResult(None, 0)
    g = HochschildDGLA(A, cap=cap)
    hc = A.hochschild
    G = gauge_series(A, [], K)
    mu_s, target = mu.mu.truncate(K), mu_prime.mu.truncate(K)
    S1 = hc.space(1, cap)
    B1 = S1.N.basis_matrix()
    cocycles = [Cochain.from_vector(A, 1, v) for v in hochschild_cohomology(A, 1, cap).cycle_subspaces()[1].vectors]
    delta1 = la.mul(hc.delta_pair(1), B1)
    for k in range(1, K + 1):
        current = exp_ad(g, G, mu_s)
        r = current[k] - target[k]
        if r.is_zero():
            continue
        gk = hc.solve_coboundary(r, cap)
        if gk is None and k > 1 and cocycles:
            # delta g_k - sum c_i L(z_i) = r_k
            effects = []
            for z in cocycles:
                moved = exp_ad(g, _replace(G, k - 1, G[k - 1] + z), mu_s)
                effects.append((moved[k] - current[k]).to_vector())
            M = la.hstack([delta1, -np.stack(effects, axis=1)])
            x = la.solve(M, r.to_vector())
            if x is not None:
                n = B1.shape[1]
                gk = Cochain.from_vector(A, 1, la.mul(B1, x[:n]))
                shift = Cochain.zero(A, 1)
                for c, z in zip(x[n:], cocycles):
                    shift = shift + z * c
                G = _replace(G, k - 1, G[k - 1] + shift)
        if gk is None:
            hh2 = hochschild_cohomology(A, 2, cap)
            hh1 = hochschild_cohomology(A, 1, cap)
            return EquivalenceResult(None, k, hh2.class_of(r), hh2.module.dim_N,
                                     conclusive=(k == 1 or hh1.module.dim_N == 0))
        G = _replace(G, k, gk)
    if not exp_ad(g, G, mu_s) == target:
        raise AssertionError("gauge search result does not transform mu into mu'")
    return EquivalenceResult(G)


def transform_by_gauge(G: TruncatedSeries, defm: Deformation) -> TruncatedSeries:
    """``e^(ad G) mu`` including the constant term."""
    return exp_ad(HochschildDGLA(defm.A), G, defm.mu)


# --------------------------------------------------------------------------
# reduction

def reduce_series(A: CoisotropicAlgebra, xi: TruncatedSeries):
    """Apply the reduction ``C(A)_N -> C(A_red)`` coefficient-wise.

    Returns the reduced series together with ``A_red`` as a triple (with
    ``A_N = A_tot`` and zero ideal), whose Hochschild DGLA it lives in.
    """
    from .algebra import reduce_algebra
    red = reduce_algebra(A).as_coisotropic()

    def one(f: Cochain) -> Cochain:
        t = reduce_cochain(A, f)
        return Cochain(f.degree, t, t.copy())

    return xi.map(one), red
