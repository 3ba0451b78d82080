from itertools import product

import numpy as np
import pytest
from gmpy2 import mpq

from coiso import catalog
from coiso import deformation as df
from coiso import linalg as la
from coiso.algebra import Algebra
from coiso.deformation import (Deformation, GradedElement, GradedLie, HochschildDGLA, abelian_dgla,
                               gauge_series)
from coiso.errors import (GradeMismatch, InvalidCochain, JacobiViolation, NotAssociativeToOrder,
                          NotMaurerCartan, OrderTooLarge)
from coiso.generators import random_element, random_matrix
from coiso.hochschild import (Cochain, cochain_space, hochschild_cohomology, hochschild_differential,
                              transport)
from coiso.series import TruncatedSeries


def dual_deformation(order=4):
    A = catalog.dual()
    mu1 = Cochain.from_entries(A, 2, [(1, 1, 0, 1)], [(1, 1, 0, 1)])
    return Deformation.from_terms(A, [mu1], order)


def random_cochain(rng, A, n, zero=False):
    space = cochain_space(A, n)
    return Cochain.from_vector(A, n, random_element(rng, space.zero if zero else space.N))


def random_gauge(rng, A, order, zero=False):
    return gauge_series(A, [random_cochain(rng, A, 1, zero) for _ in range(order)], order)


# --------------------------------------------------------------------------
# Maurer-Cartan

def test_mc_examples():
    defm = dual_deformation()
    g = HochschildDGLA(defm.A)
    assert df.mc_check(g, df.zero_series(g, 1, 4)).is_zero()
    assert df.is_mc(g, defm.xi)
    assert defm.first_failure() is None
    ab = abelian_dgla((2, 3), (2, 3))
    xi = TruncatedSeries([GradedElement(1, la.vector([k, 1, -k])) for k in range(4)])
    assert df.is_mc(ab, xi)
    with pytest.raises(GradeMismatch):
        df.mc_check(g, gauge_series(defm.A, [], 2))


def associator_order(mus):
    """Lowest order at which ``(a b) c - a (b c)`` fails on basis triples,
    multiplying the structure-constant series out directly."""
    K = len(mus) - 1
    d = mus[0].shape[0]
    for k in range(K + 1):
        for a, b, c in product(range(d), repeat=3):
            diff = la.zero_vector(d)
            for i in range(k + 1):
                for m in range(d):
                    diff = diff + mus[k - i][m, c] * mus[i][a, b, m]
                    diff = diff - mus[k - i][a, m] * mus[i][b, c, m]
            if not la.is_zero(diff):
                return k
    return None


def test_first_failure_matches_direct_associativity(rng):
    A = catalog.dual()
    space = cochain_space(A, 2)
    cases = [[Cochain.from_entries(A, 2, [(1, 0, 1, 1)], [(1, 0, 1, 1)])]]
    cases.append([Cochain.from_entries(A, 2, [(1, 1, 1, 1)], [(1, 1, 1, 1)]),
                  Cochain.from_entries(A, 2, [(0, 0, 1, 1)], [(0, 0, 1, 1)])])
    cases += [[Cochain.from_vector(A, 2, random_element(rng, space.N)) for _ in range(3)] for _ in range(10)]
    found = set()
    for terms in cases:
        defm = Deformation.from_terms(A, terms, 3)
        expect = associator_order([c.tot for c in defm.mu])
        assert defm.first_failure() == expect
        found.add(expect)
    assert {1, 3} <= found


def test_mc_equivalence(rng):
    A = catalog.dual_triple()
    g = HochschildDGLA(A)
    xi = Deformation.undeformed(A, 3).xi
    assert df.mc_equivalent(g, xi, xi)
    for _ in range(3):
        G0 = random_gauge(rng, A, 3, zero=True)
        moved = df.gauge_act(g, G0, xi)
        assert df.is_mc(g, moved) and df.mc_equivalent(g, moved, xi)
    w = Cochain.from_entries(A, 2, [(0, 0, 0, 1)], [(0, 0, 0, 1)])
    assert cochain_space(A, 2).contains(w) and not cochain_space(A, 2).contains_zero(w)
    other = TruncatedSeries([xi[0], w, xi[2], xi[3]])
    assert not df.mc_equivalent(g, xi, other)


def test_gauge_preserves_equivalence_class(rng):
    for name in ("point3", "generic", "dual-triple"):
        A = catalog.BUNDLED[name]()
        g = HochschildDGLA(A)
        xi = df.gauge_act(g, random_gauge(rng, A, 3), Deformation.undeformed(A, 3).xi)
        moved = df.gauge_act(g, random_gauge(rng, A, 3, zero=True), xi)
        assert df.mc_equivalent(g, moved, xi)


# --------------------------------------------------------------------------
# twisting and explicit DGLAs

def test_twist_by_multiplication_gives_differential(rng):
    for name in ("dual-triple", "upper", "point3"):
        A = catalog.BUNDLED[name]()
        plain = HochschildDGLA(A, twisted=False)
        tw = df.twist(plain, Cochain.multiplication(A))
        for n in range(3):
            f = random_cochain(rng, A, n)
            s = -1 if (n + 1) % 2 else 1
            assert tw.d(f) == hochschild_differential(A, f) * s


def test_twist_by_zero_and_rejects_non_mc(rng):
    A = catalog.dual()
    g = HochschildDGLA(A)
    f = random_cochain(rng, A, 1)
    assert df.twist(g, Cochain.zero(A, 2)).d(f) == g.d(f)
    bad = Cochain.from_entries(A, 2, [(1, 1, 1, 1), (0, 0, 1, 1)], [(1, 1, 1, 1), (0, 0, 1, 1)])
    with pytest.raises(NotMaurerCartan):
        df.twist(g, Cochain.multiplication(A) + bad)
    with pytest.raises(GradeMismatch):
        df.twist(g, Cochain.zero(A, 1))


def test_explicit_dgla_validates():
    for name in ("dual", "dual-triple", "point2"):
        A = catalog.BUNDLED[name]()
        E = HochschildDGLA(A).explicit(1)
        df.validate_dgla(E)
        plain = HochschildDGLA(A, twisted=False).explicit(1)
        twisted = df.twist(plain, HochschildDGLA(A).to_graded(Cochain.multiplication(A)))
        df.validate_dgla(twisted)


def test_abelian_and_mutant_dglas():
    df.validate_dgla(abelian_dgla((1,), (1,)))
    T = np.empty((3, 3, 3), dtype=object)
    T.fill(la.ZERO)

    def put(a, b, c):
        T[a, b, c], T[b, a, c] = la.scalar(1), la.scalar(-1)

    # [e0, e1] = e2, [e1, e2] = e1: Jacobi fails on (e0, e1, e2)
    put(0, 1, 2)
    put(1, 2, 1)
    L = GradedLie((3,), {(0, 0): T}, {})
    base = abelian_dgla((3,), (3,))
    mutant = df.CoisotropicDGLA(L, L, {0: la.identity(3)}, base.zero_parts)
    with pytest.raises(JacobiViolation):
        df.validate_dgla(mutant)


# --------------------------------------------------------------------------
# gauge group and action

def test_gauge_action_examples(rng):
    defm = dual_deformation(3)
    g = HochschildDGLA(defm.A)
    zero = gauge_series(defm.A, [], 3)
    assert df.gauge_act(g, zero, defm.xi) == defm.xi
    ab = abelian_dgla((2, 2), (2, 2))
    xi = TruncatedSeries([GradedElement(1, la.vector([k, 1])) for k in range(3)])
    G = TruncatedSeries([GradedElement(0, la.vector([0, 0]))] + [GradedElement(0, la.vector([1, k])) for k in range(2)])
    assert df.gauge_act(ab, G, xi) == xi
    with pytest.raises(NotMaurerCartan):
        bad = Cochain.from_entries(defm.A, 2, [(1, 0, 1, 1)], [(1, 0, 1, 1)])
        df.gauge_act(g, zero, TruncatedSeries([bad] * 4))


def _series_mul(a, b):
    K = len(a) - 1
    return [sum((la.mul(a[i], b[k - i]) for i in range(k + 1)), la.zeros(*a[0].shape)) for k in range(K + 1)]


def _series_exp(M, K):
    d = M.shape[0]
    total = [la.identity(d)] + [la.zeros(d, d) for _ in range(K)]
    power = [la.identity(d)] + [la.zeros(d, d) for _ in range(K)]
    step = [la.zeros(d, d), M] + [la.zeros(d, d) for _ in range(K - 1)]
    fact = 1
    for n in range(1, K + 1):
        power = _series_mul(power, step)
        fact *= n
        total = [t + p * mpq(1, fact) for t, p in zip(total, power)]
    return total


def _conjugate(tensors, T, S):
    """Coefficients of ``T o mu(S a, S b)`` for series ``mu``, ``T``, ``S``."""
    K = len(T) - 1
    out = []
    for k in range(K + 1):
        acc = np.zeros_like(tensors[0])
        acc.fill(la.ZERO)
        for m in range(k + 1):
            for i in range(k - m + 1):
                for j in range(k - m - i + 1):
                    l = k - m - i - j
                    t = np.tensordot(tensors[m], T[i], axes=([2], [1]))
                    t = np.tensordot(S[j], t, axes=([0], [0]))
                    t = np.tensordot(S[l], t, axes=([0], [1]))
                    acc = acc + np.transpose(t, (1, 0, 2))
        out.append(acc)
    return out


def test_gauge_action_is_conjugation(rng):
    K = 3
    for defm in (dual_deformation(K), Deformation.undeformed(catalog.upper(), K)):
        A = defm.A
        D1 = random_cochain(rng, A, 1)
        G = gauge_series(A, [D1], K)
        moved = df.transform_by_gauge(G, defm)
        for comp in ("tot", "N"):
            M = getattr(D1, comp).T.copy()
            T, S = _series_exp(M, K), _series_exp(-M, K)
            expect = _conjugate([getattr(c, comp) for c in defm.mu], T, S)
            assert all(la.equal(getattr(moved[k], comp), expect[k]) for k in range(K + 1))
        acted = df.act_on_deformation(G, defm)
        assert acted.mu == moved


def test_functoriality_along_isomorphism(rng):
    base = catalog.upper()
    S = random_matrix(rng, 3, 3, density=1.0)
    while la.rank(S) < 3:
        S = random_matrix(rng, 3, 3, density=1.0)
    A1 = Algebra(3, base.mu_tot, base.unit_tot).as_coisotropic()
    A2 = Algebra(3, catalog.transport_structure(base.mu_tot, S), la.mul(la.inverse(S), base.unit_tot)).as_coisotropic()
    phi = la.inverse(S)
    g1, g2 = HochschildDGLA(A1), HochschildDGLA(A2)

    def Phi(series):
        return series.map(lambda f: transport(f, phi, phi))

    for _ in range(3):
        xi = df.gauge_act(g1, random_gauge(rng, A1, 3), Deformation.undeformed(A1, 3).xi)
        G = random_gauge(rng, A1, 3)
        assert Phi(df.gauge_act(g1, G, xi)) == df.gauge_act(g2, Phi(G), Phi(xi))


def test_reduction_compatibility(rng):
    for name in ("point3", "dual-triple", "generic"):
        A = catalog.BUNDLED[name]()
        g = HochschildDGLA(A)
        xi = TruncatedSeries([Cochain.zero(A, 2)] + [random_cochain(rng, A, 2) for _ in range(3)])
        red_xi, R = df.reduce_series(A, xi)
        gr = HochschildDGLA(R)
        lhs = df.reduce_series(A, df.mc_check(g, xi))[0]
        assert lhs == df.mc_check(gr, red_xi)
        z = TruncatedSeries([Cochain.zero(A, 2)] + [random_cochain(rng, A, 2, zero=True) for _ in range(3)])
        assert df.mc_equivalent(g, xi, xi + z)
        assert df.reduce_series(A, xi + z)[0] == red_xi
        space = cochain_space(A, 2)
        extra = [v for v in space.N.vectors if not space.zero.contains(v)]
        if extra:
            w = Cochain.from_vector(A, 2, extra[0])
            other = xi + TruncatedSeries([Cochain.zero(A, 2), w, Cochain.zero(A, 2), Cochain.zero(A, 2)])
            assert not df.mc_equivalent(g, xi, other)
            assert not df.reduce_series(A, other)[0] == red_xi


# --------------------------------------------------------------------------
# obstructions and extension

def test_obstruction_examples():
    defm = dual_deformation(1)
    assert df.obstruction(defm.A, defm).is_zero()
    res = df.extend(defm.A, defm)
    assert res.extended and res.deformation.mu[2].is_zero()
    A = catalog.generic()
    for k in (1, 2, 3):
        assert df.obstruction(A, Deformation.undeformed(A, k)).is_zero()


def test_obstruction_requires_mc():
    A = catalog.dual()
    mu1 = Cochain.from_entries(A, 2, [(1, 0, 1, 1)], [(1, 0, 1, 1)])
    with pytest.raises(NotAssociativeToOrder):
        df.obstruction(A, Deformation.from_terms(A, [mu1], 2))


def test_extension_to_order_six():
    defm = dual_deformation(1)
    for _ in range(5):
        res = df.extend(defm.A, defm)
        assert res.extended
        defm = res.deformation
    assert defm.order == 6 and defm.first_failure() is None
    with pytest.raises(OrderTooLarge):
        df.extend(defm.A, defm)


def test_obstructed_extension():
    A = catalog.square_zero()
    mu1 = Cochain.from_entries(A, 2, [(1, 2, 1, 1)], [(1, 2, 1, 1)])
    assert hochschild_differential(A, mu1).is_zero()
    res = df.extend(A, Deformation.from_terms(A, [mu1]))
    assert not res.extended
    assert not la.is_zero(res.obstruction_class)
    assert hochschild_differential(A, res.obstruction).is_zero()


def test_deformation_validation():
    A = catalog.dual_triple()
    bad = Cochain.from_entries(A, 2, [(1, 1, 0, 1)], [(1, 1, 0, 1)])
    with pytest.raises(InvalidCochain):
        Deformation.from_terms(A, [bad])
    with pytest.raises(GradeMismatch):
        Deformation.from_terms(A, [Cochain.zero(A, 1)])


# --------------------------------------------------------------------------
# equivalence search and classical limit

def test_equivalence_search_examples(rng):
    defm = dual_deformation(4)
    same = df.gauge_equivalence_search(defm.A, defm, defm)
    assert same.equivalent and all(c.is_zero() for c in same.gauge)
    res = df.gauge_equivalence_search(defm.A, defm, Deformation.undeformed(defm.A, 4))
    assert not res.equivalent and res.failed_order == 1 and res.conclusive
    hh2 = hochschild_cohomology(defm.A, 2)
    assert la.equal(res.obstruction_class, hh2.class_of(defm.mu[1]))
    assert not la.is_zero(res.obstruction_class)


@pytest.mark.parametrize("name", ["dual", "point3", "generic", "upper"])
def test_equivalence_round_trip(name, rng):
    A = catalog.BUNDLED[name]()
    base = dual_deformation(3) if name == "dual" else Deformation.undeformed(A, 3)
    for _ in range(3):
        G = random_gauge(rng, A, 3)
        moved = df.act_on_deformation(G, base)
        res = df.gauge_equivalence_search(A, base, moved)
        assert res.equivalent
        assert df.transform_by_gauge(res.gauge, base) == moved.mu


def test_classical_limit(rng):
    A = catalog.dual()
    assert df.classical_limit(Deformation.undeformed(A)) == A
    defm = dual_deformation()
    assert df.classical_limit(defm) == A
    moved = df.act_on_deformation(random_gauge(rng, A, 4), defm)
    assert df.classical_limit(moved) == A
