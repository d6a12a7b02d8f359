"""Lie algebras given by rational structure constants.

Basis vectors are indexed from 0 in the Python API; files and the CLI use
1-based indices.  ``L.constants[(i, j)]`` with ``i < j`` holds the sparse
expansion of ``[X_i, X_j]`` as a tuple of ``(k, c)`` pairs.

Linear maps are given as matrices whose *rows* are the images of the basis
vectors (``row i = f(X_i)``), and vectors are row vectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import InvalidAlgebraError, MalformedInputError, NotNilpotentError

Brackets = Mapping[tuple[int, int], Mapping[int, object]]


def _freeze_constants(dim: int, brackets: Brackets) -> Mapping:
    acc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for key, images in brackets.items():
        try:
            i, j = key
        except (TypeError, ValueError):
            raise MalformedInputError(f"bad bracket key {key!r}") from None
        if not (0 <= i < dim and 0 <= j < dim):
            raise MalformedInputError(f"bracket index {key} out of range for dim {dim}")
        if i == j:
            raise MalformedInputError(f"bracket [X{i},X{i}] is zero by antisymmetry")
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        items = images.items() if isinstance(images, Mapping) else images
        slot = acc.setdefault((i, j), {})
        for k, c in items:
            if not 0 <= k < dim:
                raise MalformedInputError(f"bracket image index {k} out of range for dim {dim}")
            c = linalg.as_fraction(c)
            if c:
                slot[k] = slot.get(k, Fraction(0)) + sign * c
    frozen = {}
    for key in sorted(acc):
        vec = tuple((k, c) for k, c in sorted(acc[key].items()) if c)
        if vec:
            frozen[key] = vec
    return MappingProxyType(frozen)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    constants: Mapping[tuple[int, int], tuple[tuple[int, Fraction], ...]] = field(
        default_factory=dict
    )
    name: str | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise MalformedInputError("dimension must be non-negative")
        object.__setattr__(self, "constants", _freeze_constants(self.dim, self.constants))

    @classmethod
    def abelian(cls, n: int, name: str | None = None) -> "LieAlgebra":
        return cls(n, {}, name=name or f"A{n}")

    @classmethod
    def from_maurer_cartan(cls, dim: int, equations: Mapping[int, Mapping], name=None):
        """Build from ``{k: {(i, j): c}}`` meaning ``d alpha_k = sum c alpha_i ^ alpha_j``.

        Uses ``d alpha (X, Y) = -alpha([X, Y])``, so ``C_ij^k = -c``.
        """
        brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
        for k, terms in equations.items():
            for (i, j), c in terms.items():
                c = linalg.as_fraction(c)
                if i > j:
                    i, j, c = j, i, -c
                slot = brackets.setdefault((i, j), {})
                slot[k] = slot.get(k, Fraction(0)) - c
        return cls(dim, brackets, name=name)

    def maurer_cartan(self) -> dict[int, dict[tuple[int, int], Fraction]]:
        eqs: dict[int, dict[tuple[int, int], Fraction]] = {}
        for (i, j), vec in self.constants.items():
            for k, c in vec:
                eqs.setdefault(k, {})[(i, j)] = -c
        return eqs

    def renamed(self, name: str | None) -> "LieAlgebra":
        return LieAlgebra(self.dim, self.constants, name=name)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and dict(self.constants) == dict(other.constants)

    def __hash__(self):
        return hash((self.dim, tuple(self.constants.items())))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LieAlgebra{label} dim={self.dim} brackets={len(self.constants)}>"

    @cached_property
    def table(self) -> tuple[tuple[dict[int, Fraction], ...], ...]:
        """Full antisymmetric table: ``table[i][j][k] = C_ij^k``."""
        n = self.dim
        t = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), vec in self.constants.items():
            for k, c in vec:
                t[i][j][k] = c
                t[j][i][k] = -c
        return tuple(tuple(row) for row in t)

    def is_abelian(self) -> bool:
        return not self.constants

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def bracket(self, u: Sequence, v: Sequence) -> list[Fraction]:
        """Bilinear extension of the structure constants."""
        n = self.dim
        if len(u) != n or len(v) != n:
            raise MalformedInputError(f"vectors must have length {n}")
        out = [Fraction(0)] * n
        for (i, j), vec in self.constants.items():
            coef = u[i] * v[j] - u[j] * v[i]
            if coef:
                for k, c in vec:
                    out[k] += coef * c
        return out

    def ad_matrix(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of ad(x) with rows = images ``[x, X_j]``."""
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), vec in self.constants.items():
            # [x, X_j] picks up x_i C_ij, [x, X_i] picks up -x_j C_ij
            if x[i]:
                for k, c in vec:
                    rows[j][k] += x[i] * c
            if x[j]:
                for k, c in vec:
                    rows[i][k] -= x[j] * c
        return rows


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


def validate(L: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on every triple i < j < l.

    A violation is reported with the residual
    ``[X_i,[X_j,X_l]] + [X_j,[X_l,X_i]] + [X_l,[X_i,X_j]]``.
    """
    n = L.dim
    t = L.table
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                res: dict[int, Fraction] = {}
                for a, b, c in ((i, j, l), (j, l, i), (l, i, j)):
                    for m, coef in t[b][c].items():
                        for k, x in t[a][m].items():
                            res[k] = res.get(k, Fraction(0)) + coef * x
                res = {k: v for k, v in res.items() if v}
                if res:
                    vec = [Fraction(0)] * n
                    for k, v in res.items():
                        vec[k] = v
                    bad.append(((i, j, l), vec))
    return ValidationReport(not bad, tuple(bad))


def require_valid(L: LieAlgebra) -> None:
    report = validate(L)
    if not report.ok:
        triples = ", ".join(str(tuple(x + 1 for x in t)) for t, _ in report.violations[:5])
        raise InvalidAlgebraError(f"Jacobi identity fails at {triples}", report.violations)


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^n stored by its reduced row echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [list(v) for v in vectors]
        red, piv = linalg.rref(rows, ambient_dim) if rows else ([], [])
        return cls(ambient_dim, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls.span(linalg.identity(n), n)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> list[Fraction]:
        return linalg.reduce_modulo(v, [list(b) for b in self.basis], self.pivots)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def includes(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)


def _bracket_space(L: LieAlgebra, left: Iterable[Sequence], right: Iterable[Sequence]) -> Subspace:
    right = [list(r) for r in right]
    vecs = [L.bracket(list(a), b) for a in left for b in right]
    return Subspace.span([v for v in vecs if any(v)], L.dim)


def derived_algebra(L: LieAlgebra) -> Subspace:
    n = L.dim
    vecs = []
    for vec in L.constants.values():
        v = [Fraction(0)] * n
        for k, c in vec:
            v[k] = c
        vecs.append(v)
    return Subspace.span(vecs, n)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """C^0 = g, C^j = [g, C^{j-1}], listed until the series stabilizes."""
    n = L.dim
    series = [Subspace.whole(n)]
    full = linalg.identity(n)
    while True:
        nxt = _bracket_space(L, full, series[-1].basis)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def _preimage_into(L: LieAlgebra, target: Subspace) -> Subspace:
    """{X : [X, g] in target}."""
    n = L.dim
    t = L.table
    # linear map X -> ([X, X_i] mod target)_i, as a matrix acting on X coords
    rows = []
    for i in range(n):
        images = []
        for a in range(n):
            v = [Fraction(0)] * n
            for k, c in t[a][i].items():
                v[k] = c
            images.append(target.reduce(v) if target.dim else v)
        # images[a] = [X_a, X_i] reduced; each output coordinate gives an equation
        for k in range(n):
            eq = [images[a][k] for a in range(n)]
            if any(eq):
                rows.append(eq)
    return Subspace.span(linalg.nullspace(rows, n), n)


def center(L: LieAlgebra) -> Subspace:
    return _preimage_into(L, Subspace.zero(L.dim))


def upper_central_series(L: LieAlgebra) -> list[Subspace]:
    """C_0 = 0, C_j = {X : [X, g] in C_{j-1}}, until stabilization."""
    series = [Subspace.zero(L.dim)]
    while True:
        nxt = _preimage_into(L, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def nilindex(L: LieAlgebra) -> int | None:
    """Smallest k with C^k = 0, or None when L is not nilpotent."""
    series = lower_central_series(L)
    if series[-1].dim:
        return None
    return len(series) - 1


def is_nilpotent(L: LieAlgebra) -> bool:
    return nilindex(L) is not None


class CharSeq(tuple):
    """Non-increasing Jordan block sizes; compares lexicographically."""

    def __new__(cls, seq=()):
        seq = tuple(int(x) for x in seq)
        if any(x <= 0 for x in seq) or any(a < b for a, b in zip(seq, seq[1:])):
            raise ValueError(f"not a non-increasing positive sequence: {seq}")
        return super().__new__(cls, seq)

    def __repr__(self):
        return f"CharSeq{tuple(self)!r}"


def jordan_block_sizes(m: list[list[Fraction]]) -> CharSeq:
    """Jordan block sizes of a nilpotent matrix from the ranks of its powers."""
    n = len(m)
    ranks = [n]
    power = m
    while ranks[-1]:
        ranks.append(linalg.rank(power, n))
        if ranks[-1] == ranks[-2]:
            raise NotNilpotentError("matrix is not nilpotent")
        power = linalg.matmul(power, m)
    # blocks of size >= s: ranks[s-1] - ranks[s]
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]
    sizes = []
    for s in range(len(at_least), 0, -1):
        exactly = at_least[s - 1] - (at_least[s] if s < len(at_least) else 0)
        sizes.extend([s] * exactly)
    return CharSeq(sizes)


def characteristic_sequence(
    L: LieAlgebra, seed: int = 0, trials: int = 32, bound: int = 10
) -> CharSeq:
    """Lexicographic max of c(X) over random X outside C^1(g).

    Monte-Carlo: the maximum is attained on a Zariski-open set, so random
    integer points find it with probability one; ``seed`` makes it repeatable.
    """
    if not is_nilpotent(L):
        raise NotNilpotentError(f"{L.name or 'algebra'} is not nilpotent")
    n = L.dim
    if n == 0:
        return CharSeq()
    derived = derived_algebra(L)
    rng = random.Random(seed)
    best = None
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        x = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
        if derived.contains(x):
            if attempts > 50 * trials:
                raise RuntimeError("could not sample outside the derived algebra")
            continue
        done += 1
        c = jordan_block_sizes(L.ad_matrix(x))
        if best is None or c > best:
            best = c
    return best


def generators_count(L: LieAlgebra) -> int:
    return L.dim - derived_algebra(L).dim


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    off = L1.dim
    brackets = dict(L1.constants)
    for (i, j), vec in L2.constants.items():
        brackets[(i + off, j + off)] = tuple((k + off, c) for k, c in vec)
    if name is None and L1.name and L2.name:
        name = f"{L1.name}+{L2.name}"
    return LieAlgebra(L1.dim + L2.dim, brackets, name=name)


def restrict_to_ideal(L: LieAlgebra, basis: Sequence[Sequence]) -> LieAlgebra:
    """Structure constants of the subalgebra spanned by ``basis``."""
    basis = [list(b) for b in basis]
    m = len(basis)
    red, piv = linalg.rref(basis, L.dim)
    if len(red) != m:
        raise MalformedInputError("basis vectors are linearly dependent")
    # coordinates w.r.t. basis: solve c B = v via the transposed system
    bt = linalg.transpose(basis)
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            v = L.bracket(basis[a], basis[b])
            if not any(v):
                continue
            coords = linalg.solve(bt, v)
            if coords is None:
                raise MalformedInputError("span is not closed under the bracket")
            brackets[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    return LieAlgebra(m, brackets)


def split_abelian_factor(L: LieAlgebra) -> tuple[LieAlgebra, int]:
    """Split off abelian direct factors: L = core + A_s with Z(core) inside C^1(core)."""
    core = L
    s = 0
    while True:
        n = core.dim
        z = center(core)
        d = derived_algebra(core)
        x = next((list(v) for v in z.basis if not d.contains(v)), None)
        if x is None:
            break
        # functional f with f(C^1) = 0, f(x) = 1; complement W = ker f
        rows = [list(b) for b in d.basis] + [x]
        rhs = [Fraction(0)] * d.dim + [Fraction(1)]
        f = linalg.solve(rows, rhs)
        w = linalg.nullspace([f], n)
        core = restrict_to_ideal(core, w)
        s += 1
    if core is not L:
        core = core.renamed(f"core({L.name})" if L.name else None)
    return core, s


def change_basis(L: LieAlgebra, P: Sequence[Sequence]) -> LieAlgebra:
    """Rewrite L in the basis Y_a = sum_i P[a][i] X_i (rows of P)."""
    P = linalg.to_matrix(P)
    n = L.dim
    if len(P) != n or any(len(r) != n for r in P):
        raise MalformedInputError(f"basis change must be {n}x{n}")
    try:
        Pinv = linalg.inverse(P)
    except ZeroDivisionError:
        raise MalformedInputError("basis change matrix is singular") from None
    brackets = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = L.bracket(P[a], P[b])
            if any(v):
                coords = linalg.vecmat(v, Pinv)
                brackets[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    return LieAlgebra(n, brackets, name=L.name)
