"""Seeded random generators for modules, morphisms and complexes.

Used by the property tests and by the CLI's ``--seed`` sampling.  All values
are small exact rationals so that every check stays exact and fast.
"""

from __future__ import annotations

import random
from typing import Optional

import numpy as np
from gmpy2 import mpq

from . import linalg as la
from .linalg import Subspace
from .modules import (CoisotropicComplex, CoisotropicModule, CoisotropicMorphism, hom_constraints,
                      morphism_from_vector)


def random_scalar(rng: random.Random, bound: int = 3, denominators=(1, 1, 1, 2, 3)) -> mpq:
    return mpq(rng.randint(-bound, bound), rng.choice(denominators))


def random_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.6) -> np.ndarray:
    m = la.zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                m[i, j] = random_scalar(rng)
    return m


def random_vector(rng: random.Random, n: int, density: float = 0.7) -> np.ndarray:
    return random_matrix(rng, 1, n, density)[0] if n else la.zero_vector(0)


def random_subspace(rng: random.Random, n: int, dim: Optional[int] = None) -> Subspace:
    dim = rng.randint(0, n) if dim is None else dim
    return Subspace.span([random_vector(rng, n) for _ in range(dim)], n)


def random_module(rng: random.Random, max_dim: int = 4, min_dim: int = 0) -> CoisotropicModule:
    dt = rng.randint(min_dim, max_dim)
    dn = rng.randint(min_dim, max_dim)
    return CoisotropicModule(dt, dn, random_matrix(rng, dt, dn), random_subspace(rng, dn))


def random_element(rng: random.Random, space: Subspace) -> np.ndarray:
    """A random vector of ``space`` (zero when the space is zero)."""
    v = la.zero_vector(space.ambient_dim)
    for b in space.vectors:
        c = random_scalar(rng)
        if c:
            v = v + b * c
    return v


def random_morphism(rng: random.Random, E: CoisotropicModule, F: CoisotropicModule,
                    extra_constraints: Optional[np.ndarray] = None) -> CoisotropicMorphism:
    """A random valid morphism ``E -> F``, optionally also in the kernel of
    ``extra_constraints`` (rows acting on the morphism coefficient vector)."""
    C = hom_constraints(E, F)
    if extra_constraints is not None and extra_constraints.shape[0]:
        C = la.vstack([C, extra_constraints], C.shape[1])
    n = F.dim_tot * E.dim_tot + F.dim_N * E.dim_N
    space = la.kernel(C) if C.shape[0] else Subspace.full(n)
    return morphism_from_vector(E, F, random_element(rng, space))


def _composition_constraints(prev: CoisotropicMorphism, F: CoisotropicModule) -> np.ndarray:
    """Rows expressing ``phi o prev = 0`` for ``phi: prev.target -> F``."""
    E = prev.target
    nt, nn = F.dim_tot * E.dim_tot, F.dim_N * E.dim_N
    rows = []
    for i in range(F.dim_tot):
        for j in range(prev.source.dim_tot):
            r = la.zero_vector(nt + nn)
            for k in range(E.dim_tot):
                r[i * E.dim_tot + k] = prev.phi_tot[k, j]
            rows.append(r)
    for i in range(F.dim_N):
        for j in range(prev.source.dim_N):
            r = la.zero_vector(nt + nn)
            for k in range(E.dim_N):
                r[nt + i * E.dim_N + k] = prev.phi_N[k, j]
            rows.append(r)
    return np.stack(rows) if rows else la.zeros(0, nt + nn)


def random_complex(rng: random.Random, length: int = 4, max_dim: int = 4, min_dim: int = 1,
                   start: int = 0) -> CoisotropicComplex:
    """A random valid complex with ``length`` degrees."""
    mods = [random_module(rng, max_dim, min_dim) for _ in range(length)]
    diffs = []
    for d in range(length - 1):
        extra = _composition_constraints(diffs[-1], mods[d + 1]) if diffs else None
        diffs.append(random_morphism(rng, mods[d], mods[d + 1], extra))
    C = CoisotropicComplex(start, tuple(mods), tuple(diffs))
    C.validate()
    return C
