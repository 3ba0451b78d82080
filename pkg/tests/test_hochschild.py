import pytest

from coiso import algebra as al
from coiso import catalog
from coiso import hochschild as hs
from coiso import linalg as la
from coiso.algebra import Algebra
from coiso.errors import AlgebraMismatch, DegreeTooLarge
from coiso.generators import random_element, random_matrix
from coiso.hochschild import Cochain

SMALL = ["trivial", "point2", "dual", "dual-triple"]


def random_cochain(rng, A, n, zero=False):
    space = hs.cochain_space(A, n)
    return Cochain.from_vector(A, n, random_element(rng, space.zero if zero else space.N))


def sign(e):
    return -1 if e % 2 else 1


@pytest.mark.parametrize("name", sorted(catalog.BUNDLED))
def test_differential_three_ways(name, bundled, rng):
    A = bundled[name]
    hc = A.hochschild
    for n in range(3):
        for _ in range(3):
            f = random_cochain(rng, A, n)
            d1 = hs.hochschild_differential(A, f)
            assert d1 == hs.differential_via_bracket(A, f)
            flat = la.mul(hc.delta_pair(n), f.to_vector())
            assert la.equal(flat, d1.to_vector())
            assert hs.hochschild_differential(A, d1).is_zero()
            assert hs.cochain_space(A, n + 1).contains(d1)


@pytest.mark.parametrize("name", sorted(catalog.BUNDLED))
def test_differential_preserves_zero_part(name, bundled, rng):
    A = bundled[name]
    for n in range(3):
        f = random_cochain(rng, A, n, zero=True)
        assert hs.cochain_space(A, n + 1).contains_zero(hs.hochschild_differential(A, f))


def test_multiplication_is_maurer_cartan(bundled):
    for A in bundled.values():
        mu = Cochain.multiplication(A)
        assert hs.gerstenhaber_bracket(mu, mu).is_zero()
        assert hs.cochain_space(A, 2).contains(mu)


@pytest.mark.parametrize("name", SMALL)
def test_graded_antisymmetry_and_jacobi(name, bundled, rng):
    A = bundled[name]
    for m, n, p in [(1, 1, 1), (0, 1, 2), (2, 1, 1), (2, 2, 0), (1, 2, 2)]:
        f, g, h = (random_cochain(rng, A, k) for k in (m, n, p))
        a, b = m - 1, n - 1
        if m + n > 0:
            assert hs.gerstenhaber_bracket(f, g) == hs.gerstenhaber_bracket(g, f) * (-sign(a * b))
        if m + n > 0 and n + p > 0 and m + p > 0:
            br = hs.gerstenhaber_bracket
            lhs = br(f, br(g, h))
            rhs = br(br(f, g), h) + br(g, br(f, h)) * sign(a * b)
            assert lhs == rhs


@pytest.mark.parametrize("name", sorted(catalog.BUNDLED))
def test_bracket_closure(name, bundled, rng):
    A = bundled[name]
    for m, n in [(1, 1), (1, 2), (2, 2), (0, 2)]:
        f, g = random_cochain(rng, A, m), random_cochain(rng, A, n)
        fg = hs.gerstenhaber_bracket(f, g)
        assert hs.cochain_space(A, m + n - 1).contains(fg)
        z = random_cochain(rng, A, n, zero=True)
        assert hs.cochain_space(A, m + n - 1).contains_zero(hs.gerstenhaber_bracket(f, z))


def test_degree_zero_bracket_rejected(bundled):
    A = bundled["dual"]
    with pytest.raises(AlgebraMismatch):
        hs.gerstenhaber_bracket(Cochain.zero(A, 0), Cochain.zero(A, 0))


def test_transport_is_natural(rng):
    base = catalog.upper()
    for _ in range(3):
        S = random_matrix(rng, 3, 3, density=1.0)
        while la.rank(S) < 3:
            S = random_matrix(rng, 3, 3, density=1.0)
        mu2 = catalog.transport_structure(base.mu_tot, S)
        A1 = Algebra(3, base.mu_tot, base.unit_tot).as_coisotropic()
        A2 = Algebra(3, mu2, la.mul(la.inverse(S), base.unit_tot)).as_coisotropic()
        al.validate_algebra(A2)
        phi = la.inverse(S)
        assert hs.transport(Cochain.multiplication(A1), phi, phi) == Cochain.multiplication(A2)
        f, g = random_cochain(rng, A1, 1), random_cochain(rng, A1, 2)
        tf, tg = hs.transport(f, phi, phi), hs.transport(g, phi, phi)
        assert hs.transport(hs.hochschild_differential(A1, f), phi, phi) == hs.hochschild_differential(A2, tf)
        assert hs.transport(hs.gerstenhaber_bracket(f, g), phi, phi) == hs.gerstenhaber_bracket(tf, tg)


def test_degree_cap():
    A = catalog.generic()
    with pytest.raises(DegreeTooLarge):
        hs.cochain_space(A, 4, cap=100)
    with pytest.raises(DegreeTooLarge):
        hs.hochschild_cohomology(A, 3, cap=100)


def test_cochain_space_dims(bundled):
    # N = A: no constraints besides compatibility with the identity
    dual = bundled["dual"]
    for n in range(4):
        assert hs.cochain_space(dual, n).dims == (2 ** (n + 1), 2 ** (n + 1), 0)
    # dual-triple: f(1,..,1) free, any x input lands in span{x}, zero part lands in span{x}
    dt = bundled["dual-triple"]
    for n in range(4):
        assert hs.cochain_space(dt, n).dims == (2 ** (n + 1), 2 ** n + 1, 2 ** n)


def test_known_cohomology(bundled):
    p3 = bundled["point3"]
    assert hs.hochschild_cohomology(p3, 0).dims == (3, 2, 1)
    for n in (1, 2, 3):
        assert hs.hochschild_cohomology(p3, n).dims == (0, 0, 0)
    dual = bundled["dual"]
    for n in (1, 2, 3):
        assert hs.hochschild_cohomology(dual, n).dims == (1, 1, 0)


@pytest.mark.parametrize("name", sorted(catalog.BUNDLED))
def test_low_degree_cohomology(name, bundled):
    A = bundled[name]
    assert hs.hochschild_cohomology(A, 0).dims == al.center(A).dims
    der, inn = al.derivation_spaces(A), al.inner_derivation_spaces(A)
    hh1 = hs.hochschild_cohomology(A, 1).dims
    assert hh1[:2] == (der.tot.dim - inn.tot.dim, der.N.dim - inn.N.dim)


def test_representatives_and_classes(bundled, rng):
    A = bundled["dual"]
    hh = hs.hochschild_cohomology(A, 2)
    for i, f in enumerate(hh.representatives()):
        assert hs.hochschild_differential(A, f).is_zero()
        assert la.equal(hh.class_of(f), la.unit_vector(hh.module.dim_N, i))
    g = random_cochain(rng, A, 1)
    assert la.is_zero(hh.class_of(hs.hochschild_differential(A, g)))


@pytest.mark.parametrize("name", sorted(catalog.BUNDLED))
def test_reduction_inequality(name, bundled):
    A = bundled[name]
    for n in range(3):
        cmp = hs.reduction_comparison(A, n)
        assert cmp.cochain_eta_injective
        assert cmp.inequality_holds


def test_plain_cohomology_of_dual_numbers():
    mu = catalog.dual().mu_tot
    alg = Algebra(2, mu, la.vector([1, 0]))
    assert [hs.plain_cohomology(alg, n).dim for n in range(4)] == [2, 1, 1, 1]
