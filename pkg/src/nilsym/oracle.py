"""Brute-force symplectic oracle, kept independent of the decision procedure.

Two checks: many random integer closed forms (rank mod a large prime), then
the top coefficient of theta^{n/2} for the generic closed form, expanded with
polynomial coefficients.  Meant for small dimensions only.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import _kernels, linalg
from .algebra import LieAlgebra
from .exterior import basis_tuples, d_matrix, sort_with_sign
from .poly import ParamPoly


def _closed_basis(L: LieAlgebra) -> list[dict[tuple[int, int], Fraction]]:
    cols = basis_tuples(L.dim, 2)
    kernel = linalg.nullspace(d_matrix(L, 2), len(cols))
    return [{key: c for key, c in zip(cols, v) if c} for v in kernel]


def _int_gram(form: dict, n: int) -> list[list[int]]:
    keys = list(form)
    ints = linalg.primitive_integer([form[k] for k in keys])
    g = [[0] * n for _ in range(n)]
    for (i, j), c in zip(keys, ints):
        g[i][j], g[j][i] = c, -c
    return g


def sampled_nondegenerate(L: LieAlgebra, samples: int = 10_000, seed: int = 0, bound: int = 1000) -> bool:
    """True if some random integer closed form has full rank mod the kernel prime."""
    n = L.dim
    if n % 2:
        return False
    if n == 0:
        return True
    basis = _closed_basis(L)
    if not basis:
        return False
    grams = np.array([_int_gram(f, n) for f in basis], dtype=np.int64)
    coeffs = np.random.default_rng(seed).integers(-bound, bound + 1, size=(samples, len(basis)), dtype=np.int64)
    ranks = _kernels.sample_ranks(grams, coeffs, _kernels.PRIME)
    return bool(np.any(ranks == n))


def generic_top_coefficient(L: LieAlgebra) -> ParamPoly:
    """Coefficient of e^1...e^n in theta^{n/2}, theta = sum_k t_k omega_k over a Z^2 basis."""
    n = L.dim
    basis = _closed_basis(L)
    m = len(basis)
    if n % 2 or m == 0:
        return ParamPoly(m)
    theta: dict[tuple[int, int], ParamPoly] = {}
    for k, form in enumerate(basis):
        for key, c in form.items():
            term = ParamPoly(m, {tuple(int(x == k) for x in range(m)): c})
            theta[key] = theta[key] + term if key in theta else term
    power: dict[tuple[int, ...], ParamPoly] = {(): ParamPoly.constant(m)}
    for _ in range(n // 2):
        nxt: dict[tuple[int, ...], ParamPoly] = {}
        for key, a in power.items():
            for (i, j), b in theta.items():
                sign, skey = sort_with_sign(key + (i, j))
                if not sign:
                    continue
                prod = a * b
                if sign < 0:
                    prod = -prod
                nxt[skey] = nxt[skey] + prod if skey in nxt else prod
        power = {k: v for k, v in nxt.items() if not v.is_zero()}
    return power.get(tuple(range(n)), ParamPoly(m))


def oracle_symplectic(L: LieAlgebra, samples: int = 10_000, seed: int = 0) -> bool:
    """Sampling first; the symbolic expansion settles every sampled miss."""
    if L.dim % 2:
        return False
    if sampled_nondegenerate(L, samples, seed):
        return True
    return not generic_top_coefficient(L).is_zero()


def oracle_agrees_internally(L: LieAlgebra, samples: int = 10_000, seed: int = 0) -> bool:
    """Both halves must agree: a sampled hit implies a nonzero generic polynomial."""
    if L.dim % 2:
        return True
    hit = sampled_nondegenerate(L, samples, seed)
    poly_nonzero = not generic_top_coefficient(L).is_zero() or L.dim == 0
    return hit == poly_nonzero


def random_two_step(rng: random.Random, max_dim: int = 6, coeff_bound: int = 2) -> LieAlgebra:
    """Random 2-step nilpotent algebra: brackets of the first block land in the second."""
    n = rng.randint(2, max_dim)
    g = rng.randint(1, n - 1)
    gens, central = range(g), range(g, n)
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in gens:
        for j in range(i + 1, g):
            vec = {k: Fraction(rng.randint(-coeff_bound, coeff_bound)) for k in central if rng.random() < 0.5}
            vec = {k: c for k, c in vec.items() if c}
            if vec:
                table[(i, j)] = vec
    return LieAlgebra(n, table, name=f"rand2step_{n}")
