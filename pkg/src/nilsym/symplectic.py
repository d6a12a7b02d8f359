"""Deciding whether a Lie algebra carries a symplectic form.

The closed 2-forms Z^2 form a linear space with basis theta_1..theta_m.  The
algebra is symplectic iff the Pfaffian of the generic closed form
``theta(t) = sum t_i theta_i`` is a nonzero polynomial in t.  Nonzero is
certified by an explicit rational witness; zero by full symbolic expansion.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels, linalg
from .algebra import LieAlgebra, lower_central_series, require_valid, upper_central_series
from .errors import SizeLimitError
from .exterior import (
    PForm,
    basis_tuples,
    cartan_class,
    ce_differential,
    d_matrix,
    gram,
    pfaffian,
)
from .poly import ParamPoly

MAX_EXPANSION_VARS = 64
MAX_EXPANSION_DIM = 14
_BITS = 4  # exponent slot width in packed monomials; degrees stay below 8
_DESCENT_SEED = 20240611  # fixed: witnesses must not depend on the user seed
_DESCENT_SAMPLES = 4


def default_seed() -> int:
    return int(os.environ.get("NILSYM_SEED", "0"))


def closed_two_forms(L: LieAlgebra) -> list[PForm]:
    """Basis of Z^2 = ker(d: Lambda^2 -> Lambda^3), echelonized."""
    n = L.dim
    cols = basis_tuples(n, 2)
    if n < 2:
        return []
    kernel = linalg.nullspace(d_matrix(L, 2), len(cols))
    return [PForm(n, 2, {key: c for key, c in zip(cols, v) if c}) for v in kernel]


def _integer_grams(forms: Sequence[PForm]) -> list[list[list[int]]]:
    grams = []
    for f in forms:
        keys = list(f.coeffs)
        ints = linalg.primitive_integer([f.coeffs[k] for k in keys])
        n = f.ambient_dim
        g = [[0] * n for _ in range(n)]
        for (i, j), c in zip(keys, ints):
            g[i][j] = c
            g[j][i] = -c
        grams.append(g)
    return grams


def _form_from_int_gram(g: list[list[int]]) -> PForm:
    n = len(g)
    return PForm(n, 2, {(i, j): g[i][j] for i in range(n) for j in range(i + 1, n) if g[i][j]})


# -- symbolic Pfaffian of a linear matrix pencil ------------------------------


def _unpack(mono: int, m: int) -> tuple[int, ...]:
    mask = (1 << _BITS) - 1
    return tuple((mono >> (_BITS * i)) & mask for i in range(m))


def generic_pfaffian(
    grams: Sequence[Sequence[Sequence[int]]],
    n: int,
    var_order: Sequence[int] | None = None,
    prefer_last: bool = False,
) -> ParamPoly:
    """Pf(sum_t x_t * grams[t]) as an exact polynomial in x.

    Expansion is along the sparsest remaining row, memoized on the set of
    remaining indices.  ``var_order`` relabels the variables internally and
    ``prefer_last`` flips pivot tie-breaking; both change the computation
    path but not the result.
    """
    m = len(grams)
    if n > MAX_EXPANSION_DIM or m > MAX_EXPANSION_VARS:
        raise SizeLimitError(
            f"symbolic Pfaffian limited to n <= {MAX_EXPANSION_DIM} and "
            f"{MAX_EXPANSION_VARS} variables (got n={n}, m={m})"
        )
    if n % 2:
        return ParamPoly(m)
    order = list(range(m)) if var_order is None else list(var_order)
    slot = {t: order[t] for t in range(m)}
    # entries[i][j] = {packed variable: coefficient}
    entries: list[list[dict[int, int]]] = [[{} for _ in range(n)] for _ in range(n)]
    for t, g in enumerate(grams):
        v = 1 << (_BITS * slot[t])
        for i in range(n):
            gi = g[i]
            for j in range(n):
                if gi[j]:
                    entries[i][j][v] = entries[i][j].get(v, 0) + int(gi[j])
    nz = [[j for j in range(n) if entries[i][j]] for i in range(n)]
    memo: dict[int, dict[int, int]] = {0: {0: 1}}

    def pf(mask: int) -> dict[int, int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        idx = [i for i in range(n) if mask >> i & 1]
        best = None
        best_count = n + 1
        for i in reversed(idx) if prefer_last else idx:
            count = sum(1 for j in nz[i] if mask >> j & 1)
            if count < best_count:
                best, best_count = i, count
                if count == 0:
                    break
        acc: dict[int, int] = {}
        if best_count:
            a = idx.index(best)
            for j in nz[best]:
                if not mask >> j & 1:
                    continue
                sub = pf(mask & ~(1 << best) & ~(1 << j))
                if not sub:
                    continue
                b = idx.index(j)
                sign = -1 if (a + b + (a > b)) % 2 == 0 else 1
                for vmono, w in entries[best][j].items():
                    w *= sign
                    for mono, c in sub.items():
                        key = mono + vmono
                        acc[key] = acc.get(key, 0) + w * c
            acc = {k: c for k, c in acc.items() if c}
        memo[mask] = acc
        return acc

    packed = pf((1 << n) - 1)
    terms = {}
    for mono, c in packed.items():
        e = _unpack(mono, m)
        # undo the internal relabeling so the result is in the caller's variables
        terms[tuple(e[order[t]] for t in range(m))] = c
    return ParamPoly(m, terms)


# -- modular sampling helpers -------------------------------------------------


def _stack(grams, n) -> np.ndarray:
    if not grams:
        return np.zeros((0, n, n), dtype=np.int64)
    p = _kernels.PRIME
    return np.array([[[int(x) % p for x in row] for row in g] for g in grams], dtype=np.int64)


def _random_points(rng: random.Random, count: int, m: int) -> np.ndarray:
    p = _kernels.PRIME
    return np.array([[rng.randrange(p) for _ in range(m)] for _ in range(count)], dtype=np.int64).reshape(
        count, m
    )


def _sampled_nonzero(stack: np.ndarray, points: np.ndarray) -> bool:
    if points.shape[0] == 0:
        return False
    if stack.shape[0] == 0:
        return stack.shape[1] == 0
    return bool(np.any(_kernels.sample_pfaffians(stack, points, _kernels.PRIME)))


def _descend_sampled(stack: np.ndarray, m: int, n: int) -> list[int]:
    """Coordinate descent where 'restricted polynomial nonzero' is decided by
    random evaluation mod p (a nonzero value is a proof)."""
    rng = random.Random(_DESCENT_SEED)
    fixed: list[int] = []
    for i in range(m):
        for v in range(n // 2 + 1):
            pts = _random_points(rng, _DESCENT_SAMPLES, m)
            pts[:, :i] = fixed
            pts[:, i] = v
            if _sampled_nonzero(stack, pts):
                fixed.append(v)
                break
        else:
            raise ArithmeticError("descent lost the nonzero polynomial")
    return fixed


def _descend_exact(poly: ParamPoly, n: int) -> list[int]:
    fixed = []
    cur = poly
    for i in range(poly.nvars):
        for v in range(n // 2 + 1):
            nxt = cur.substitute(i, v)
            if not nxt.is_zero():
                fixed.append(v)
                cur = nxt
                break
        else:
            raise ArithmeticError("descent lost the nonzero polynomial")
    return fixed


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class SymplecticCertificate:
    decision: bool
    proof: str  # witness-verified | pfaffian-identically-zero | odd-dimension
    closed_space_dim: int
    witness: PForm | None = None
    coordinates: tuple[int, ...] | None = None
    closed_basis: tuple[PForm, ...] = field(default=(), repr=False)
    pfaffian_poly: ParamPoly | None = field(default=None, repr=False)

    @property
    def label(self) -> str:
        return "symplectic" if self.decision else "not_symplectic"


def _combine_forms(basis: Sequence[PForm], coords: Sequence[int], n: int) -> PForm:
    acc: dict[tuple[int, ...], Fraction] = {}
    for f, t in zip(basis, coords):
        if t:
            for k, c in f.coeffs.items():
                acc[k] = acc.get(k, Fraction(0)) + t * c
    return PForm(n, 2, acc)


def is_symplectic_form(L: LieAlgebra, theta: PForm) -> bool:
    return (
        theta.degree == 2
        and theta.ambient_dim == L.dim
        and ce_differential(L, theta).is_zero()
        and pfaffian(gram(theta)) != 0
    )


def decide_symplectic(
    L: LieAlgebra, seed: int | None = None, prepass_trials: int = 8
) -> SymplecticCertificate:
    """Decide symplectic existence with a checkable certificate."""
    require_valid(L)
    seed = default_seed() if seed is None else seed
    n = L.dim
    basis = closed_two_forms(L)
    m = len(basis)
    if n % 2:
        return SymplecticCertificate(False, "odd-dimension", m)
    if n == 0:
        # the empty form is vacuously nondegenerate; there is nothing to witness
        return SymplecticCertificate(True, "witness-verified", 0, coordinates=())
    grams = _integer_grams(basis)
    int_basis = tuple(_form_from_int_gram(g) for g in grams)
    stack = _stack(grams, n)
    rng = random.Random(seed)
    poly = None
    if m and _sampled_nonzero(stack, _random_points(rng, prepass_trials, m)):
        coords = _descend_sampled(stack, m, n)
    else:
        poly = generic_pfaffian(grams, n)
        if poly.is_zero():
            return SymplecticCertificate(
                False, "pfaffian-identically-zero", m, closed_basis=int_basis, pfaffian_poly=poly
            )
        coords = _descend_exact(poly, n)
    witness = _combine_forms(int_basis, coords, n)
    if not is_symplectic_form(L, witness):
        raise ArithmeticError("witness failed exact verification")
    return SymplecticCertificate(
        True,
        "witness-verified",
        m,
        witness=witness,
        coordinates=tuple(coords),
        closed_basis=int_basis,
        pfaffian_poly=poly,
    )


def verify_certificate(L: LieAlgebra, cert: SymplecticCertificate, seed: int = 1) -> bool:
    """Independent re-check of a certificate.

    yes: the witness is closed and has nonzero Pfaffian (exact arithmetic).
    no: the generic Pfaffian is re-expanded with permuted variables and
    flipped pivot preference and must vanish identically.
    """
    n = L.dim
    if n == 0:
        return cert.decision
    if cert.decision:
        w = cert.witness
        return w is not None and is_symplectic_form(L, w)
    if cert.proof == "odd-dimension":
        return n % 2 == 1
    if cert.proof != "pfaffian-identically-zero":
        return False
    basis = closed_two_forms(L)
    if len(basis) != cert.closed_space_dim:
        return False
    grams = _integer_grams(basis)
    perm = list(range(len(grams)))
    random.Random(seed).shuffle(perm)
    again = generic_pfaffian(grams, n, var_order=perm, prefer_last=True)
    return again.is_zero() and (cert.pfaffian_poly is None or cert.pfaffian_poly.is_zero())


# -- necessary conditions -------------------------------------------------------


def central_series_dims(L: LieAlgebra) -> tuple[list[int], list[int]]:
    lower = [s.dim for s in lower_central_series(L)]
    upper = [s.dim for s in upper_central_series(L)]
    length = max(len(lower), len(upper))
    lower += [lower[-1]] * (length - len(lower))
    upper += [upper[-1]] * (length - len(upper))
    return lower, upper


def central_series_obstruction(L: LieAlgebra) -> tuple[bool, int]:
    """Check dim C_j + dim C^j <= dim g for all j.

    Returns (violated, worst_j) where worst_j maximizes the sum.  Only a
    necessary condition: passing proves nothing.
    """
    lower, upper = central_series_dims(L)
    sums = [a + b for a, b in zip(lower, upper)]
    worst = max(range(len(sums)), key=lambda j: (sums[j], -j))
    return sums[worst] > L.dim, worst


def exact_symplectic_scan(L: LieAlgebra, seed: int | None = None, trials: int = 8) -> bool:
    """Is some exact form d(alpha) symplectic (i.e. is L frobeniusian)?

    Random alpha first (a hit is confirmed by Cartan class == dim); otherwise
    the Pfaffian of d(alpha) over generic alpha is expanded symbolically.
    """
    require_valid(L)
    seed = default_seed() if seed is None else seed
    n = L.dim
    if n % 2 or n == 0:
        return n == 0
    images = [ce_differential(L, PForm.basis(n, i)) for i in range(n)]
    nonzero = [f for f in images if not f.is_zero()]
    if not nonzero:
        return False
    grams = _integer_grams(nonzero)
    scale = [Fraction(0)] * len(nonzero)
    for k, (f, g) in enumerate(zip(nonzero, grams)):
        key = next(iter(f.coeffs))
        i, j = key
        scale[k] = Fraction(g[i][j]) / f.coeffs[key]
    stack = _stack(grams, n)
    rng = random.Random(seed)
    pts = _random_points(rng, trials, len(nonzero))
    hits = _kernels.sample_pfaffians(stack, pts, _kernels.PRIME)
    if np.any(hits):
        # lift a hit to an exact 1-form and confirm through the Cartan class
        for _ in range(16):
            coeffs = [Fraction(rng.randint(-50, 50)) for _ in range(n)]
            alpha = PForm.one_form(n, coeffs)
            if not alpha.is_zero() and cartan_class(L, alpha) == n:
                return True
        coords = _descend_sampled(stack, len(nonzero), n)
        theta = _combine_forms([_form_from_int_gram(g) for g in grams], coords, n)
        return pfaffian(gram(theta)) != 0
    return not generic_pfaffian(grams, n).is_zero()
