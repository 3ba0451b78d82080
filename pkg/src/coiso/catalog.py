"""Named constructors for the bundled coisotropic algebras."""

from __future__ import annotations

from itertools import product

import numpy as np

from . import linalg as la
from .algebra import CoisotropicAlgebra, structure_tensor
from .linalg import Subspace
from .modules import CoisotropicModule


def _diagonal(d: int) -> np.ndarray:
    return structure_tensor(d, [(i, i, i, 1) for i in range(d)])


def _upper() -> np.ndarray:
    # basis E11, E12, E22 of upper-triangular 2x2 matrices
    return structure_tensor(3, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)])


def _make(name, tot_mu, n_mu, iota, zero_vectors, unit_tot, unit_n) -> CoisotropicAlgebra:
    dt, dn = tot_mu.shape[0], n_mu.shape[0]
    mod = CoisotropicModule(dt, dn, la.matrix(iota, dn), Subspace.span(zero_vectors, dn))
    return CoisotropicAlgebra(mod, tot_mu, n_mu, la.vector(unit_tot), la.vector(unit_n), name)


def trivial() -> CoisotropicAlgebra:
    mu = _diagonal(1)
    return _make("trivial", mu, mu, [[1]], [], [1], [1])


def point2() -> CoisotropicAlgebra:
    """``Q^2`` with ``A_0`` the second factor."""
    mu = _diagonal(2)
    return _make("point2", mu, mu, [[1, 0], [0, 1]], [[0, 1]], [1, 1], [1, 1])


def point3() -> CoisotropicAlgebra:
    """``Q^3`` with ``A_N`` the functions constant on the first two points and
    ``A_0`` the functions vanishing there."""
    return _make("point3", _diagonal(3), _diagonal(2), [[1, 0], [1, 0], [0, 1]], [[0, 1]],
                 [1, 1, 1], [1, 1])


def _dual_mu() -> np.ndarray:
    # basis 1, x with x^2 = 0
    return structure_tensor(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])


def dual() -> CoisotropicAlgebra:
    """Dual numbers with ``A_N = A_tot`` and zero ideal."""
    mu = _dual_mu()
    return _make("dual", mu, mu, [[1, 0], [0, 1]], [], [1, 0], [1, 0])


def dual_triple() -> CoisotropicAlgebra:
    """Dual numbers with ``A_0 = (x)``."""
    mu = _dual_mu()
    return _make("dual-triple", mu, mu, [[1, 0], [0, 1]], [[0, 1]], [1, 0], [1, 0])


def square_zero() -> CoisotropicAlgebra:
    """``Q[x, y]/(x, y)^2`` with ``A_N = A_tot`` and zero ideal.  Its
    deformation ``x y = l x`` is obstructed at order 2."""
    mu = structure_tensor(3, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1)])
    return _make("square-zero", mu, mu, la.identity(3), [], [1, 0, 0], [1, 0, 0])


def upper() -> CoisotropicAlgebra:
    """Upper-triangular 2x2 matrices over the diagonal subalgebra."""
    return _make("upper", _upper(), _diagonal(2), [[1, 0], [0, 0], [0, 1]], [], [1, 0, 1], [1, 1])


def transport_structure(mu: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Structure constants in the basis given by the columns of ``S``."""
    Sinv = la.inverse(S)
    d = mu.shape[0]
    out = structure_tensor(d)
    for a, b in product(range(d), repeat=2):
        out[a, b] = la.mul(Sinv, la.vector(np.tensordot(np.tensordot(S[:, a], mu, axes=1), S[:, b], axes=([0], [0]))))
    return out


_GENERIC_S = [[1, 2, 0], [0, 1, "1/2"], [1, 0, 1]]
_GENERIC_B = [[1, 0, 1], [-1, 1, 0], [0, "2/3", 1]]


def generic() -> CoisotropicAlgebra:
    """Upper-triangular 2x2 matrices with ``A_0 = span(E12)``, written in two
    unrelated bases for the tot and N components."""
    S, B = la.matrix(_GENERIC_S), la.matrix(_GENERIC_B)
    mu = _upper()
    iota = la.mul(la.inverse(S), B)
    unit = la.vector([1, 0, 1])
    zero = la.mul(la.inverse(B), la.vector([0, 1, 0]))
    return _make("generic", transport_structure(mu, S), transport_structure(mu, B), iota, [zero],
                 la.mul(la.inverse(S), unit), la.mul(la.inverse(B), unit))


BUNDLED = {
    "trivial": trivial,
    "point2": point2,
    "point3": point3,
    "dual": dual,
    "dual-triple": dual_triple,
    "square-zero": square_zero,
    "upper": upper,
    "generic": generic,
}


def bundled() -> dict:
    return {name: make() for name, make in BUNDLED.items()}
