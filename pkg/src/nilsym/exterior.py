"""Exterior algebra on the dual of a Lie algebra.

A p-form is a sparse map from strictly increasing index tuples to
rationals; ``PForm(n, 2, {(0, 1): 1})`` is alpha_1 ^ alpha_2 (0-based keys).
Forms evaluate with the determinant convention, so alpha_I(X_I) = 1.

The Chevalley-Eilenberg differential uses
``d W(X_0..X_p) = sum_{a<b} (-1)^(a+b) W([X_a, X_b], X_0..^a..^b..X_p)``,
which gives ``d alpha(X, Y) = -alpha([X, Y])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from types import MappingProxyType
from typing import Mapping, Sequence

from . import linalg
from .algebra import LieAlgebra
from .errors import MalformedInputError


def sort_with_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """Sort indices, returning (sign of the sorting permutation, sorted tuple).

    Returns (0, None) if an index repeats.
    """
    arr = list(idx)
    sign = 1
    # insertion sort; tuples are short
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and arr[j - 1] == arr[j]:
            return 0, None
    for a, b in zip(arr, arr[1:]):
        if a == b:
            return 0, None
    return sign, tuple(arr)


def _normalize(ambient: int, degree: int, coeffs) -> Mapping:
    acc: dict[tuple[int, ...], Fraction] = {}
    items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
    for key, c in items:
        key = tuple(key)
        if len(key) != degree:
            raise MalformedInputError(f"key {key} does not have degree {degree}")
        if any(not 0 <= k < ambient for k in key):
            raise MalformedInputError(f"key {key} out of range for dimension {ambient}")
        sign, skey = sort_with_sign(key)
        if not sign:
            continue
        c = linalg.as_fraction(c)
        if c:
            acc[skey] = acc.get(skey, Fraction(0)) + sign * c
    return MappingProxyType({k: acc[k] for k in sorted(acc) if acc[k]})


@dataclass(frozen=True, eq=False)
class PForm:
    ambient_dim: int
    degree: int
    coeffs: Mapping[tuple[int, ...], Fraction]

    def __init__(self, ambient_dim: int, degree: int, coeffs=()):
        if not 0 <= degree:
            raise MalformedInputError("degree must be non-negative")
        if degree > ambient_dim:
            raise MalformedInputError(f"degree {degree} exceeds dimension {ambient_dim}")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", _normalize(ambient_dim, degree, coeffs))

    @classmethod
    def basis(cls, n: int, *idx: int) -> "PForm":
        return cls(n, len(idx), {tuple(idx): 1})

    @classmethod
    def scalar(cls, n: int, c=1) -> "PForm":
        return cls(n, 0, {(): c})

    @classmethod
    def one_form(cls, n: int, coeffs: Sequence) -> "PForm":
        return cls(n, 1, {(i,): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def volume(cls, n: int) -> "PForm":
        return cls(n, n, {tuple(range(n)): 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and (self.degree == other.degree or (not self.coeffs and not other.coeffs))
            and dict(self.coeffs) == dict(other.coeffs)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.degree, tuple(self.coeffs.items())))

    def _check(self, other: "PForm"):
        if self.ambient_dim != other.ambient_dim:
            raise MalformedInputError("forms live on different ambient dimensions")

    def __add__(self, other: "PForm") -> "PForm":
        self._check(other)
        if self.degree != other.degree:
            raise MalformedInputError("cannot add forms of different degree")
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return PForm(self.ambient_dim, self.degree, acc)

    def __neg__(self):
        return PForm(self.ambient_dim, self.degree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PForm":
        c = linalg.as_fraction(c)
        return PForm(self.ambient_dim, self.degree, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = scale

    def __xor__(self, other: "PForm") -> "PForm":
        return wedge(self, other)

    def evaluate(self, vectors: Sequence[Sequence]) -> Fraction:
        """Value on p vectors (determinant convention)."""
        if len(vectors) != self.degree:
            raise MalformedInputError(f"need {self.degree} vectors")
        total = Fraction(0)
        for key, c in self.coeffs.items():
            m = [[v[k] for k in key] for v in vectors]
            total += c * linalg.det(m)
        return total

    def __repr__(self):
        if not self.coeffs:
            return f"PForm(n={self.ambient_dim}, p={self.degree}, 0)"
        terms = " + ".join(
            f"{c}*a{'^a'.join(str(i + 1) for i in k)}" if k else f"{c}"
            for k, c in self.coeffs.items()
        )
        return f"PForm(n={self.ambient_dim}, p={self.degree}, {terms})"


def wedge(omega: PForm, eta: PForm) -> PForm:
    omega._check(eta)
    n = omega.ambient_dim
    deg = omega.degree + eta.degree
    if deg > n:
        # only the zero form exists above the top degree
        return PForm(n, n, {})
    acc: dict[tuple[int, ...], Fraction] = {}
    for k1, c1 in omega.coeffs.items():
        s1 = set(k1)
        for k2, c2 in eta.coeffs.items():
            if s1.intersection(k2):
                continue
            sign, key = sort_with_sign(k1 + k2)
            acc[key] = acc.get(key, Fraction(0)) + sign * c1 * c2
    return PForm(n, deg, acc)


def wedge_power(theta: PForm, p: int) -> PForm:
    result = PForm.scalar(theta.ambient_dim)
    for _ in range(p):
        result = wedge(result, theta)
    return result


def _check_ambient(L: LieAlgebra, omega: PForm):
    if omega.ambient_dim != L.dim:
        raise MalformedInputError(
            f"form lives on dimension {omega.ambient_dim}, algebra has {L.dim}"
        )


def _d_basis(L: LieAlgebra, key: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    """d(alpha_key) by evaluating the differential on basis tuples.

    alpha_key([X_i, X_j], rest) is nonzero only when rest = key minus one
    index k, so each (k, [X_i, X_j] with C_ij^k != 0) pair contributes once.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for pos, k in enumerate(key):
        rest = key[:pos] + key[pos + 1 :]
        inner_sign = -1 if pos % 2 else 1  # alpha_key(X_k, rest) = (-1)^pos
        rest_set = set(rest)
        for (i, j), vec in L.constants.items():
            if i in rest_set or j in rest_set:
                continue
            c = next((x for kk, x in vec if kk == k), None)
            if c is None:
                continue
            sign, target = sort_with_sign((i, j) + rest)
            if not sign:
                continue
            a = target.index(i)
            b = target.index(j)
            outer = -1 if (a + b) % 2 else 1
            out[target] = out.get(target, Fraction(0)) + outer * inner_sign * c
    return out


def ce_differential(L: LieAlgebra, omega: PForm) -> PForm:
    _check_ambient(L, omega)
    n = L.dim
    p = omega.degree
    if p >= n:
        return PForm(n, n, {})
    acc: dict[tuple[int, ...], Fraction] = {}
    for key, c in omega.coeffs.items():
        for target, v in _d_basis(L, key).items():
            acc[target] = acc.get(target, Fraction(0)) + c * v
    return PForm(n, p + 1, acc)


def basis_tuples(n: int, p: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), p))


def d_matrix(L: LieAlgebra, p: int) -> list[list[Fraction]]:
    """Matrix of d: Lambda^p -> Lambda^(p+1); column j is d of the j-th basis p-form."""
    n = L.dim
    rows_idx = {t: r for r, t in enumerate(basis_tuples(n, p + 1))}
    cols = basis_tuples(n, p)
    m = [[Fraction(0)] * len(cols) for _ in rows_idx]
    if p >= n:
        return m
    for j, key in enumerate(cols):
        for target, v in _d_basis(L, key).items():
            m[rows_idx[target]][j] = v
    return m


def cohomology_dims(L: LieAlgebra) -> list[int]:
    """Betti numbers b_0..b_n of the scalar Chevalley-Eilenberg complex."""
    from math import comb

    n = L.dim
    ranks = [0] * (n + 1)  # ranks[p] = rank of d_p : Lambda^p -> Lambda^(p+1)
    for p in range(n):
        ranks[p] = linalg.rank(d_matrix(L, p), comb(n, p))
    return [comb(n, p) - ranks[p] - (ranks[p - 1] if p else 0) for p in range(n + 1)]


def cartan_class(L: LieAlgebra, alpha: PForm) -> int:
    _check_ambient(L, alpha)
    if alpha.degree != 1:
        raise MalformedInputError("Cartan class is defined for 1-forms")
    if alpha.is_zero():
        raise MalformedInputError("Cartan class of the zero form is undefined")
    da = ce_differential(L, alpha)
    power = PForm.scalar(L.dim)
    p = 0
    while True:
        nxt = wedge(power, da)
        if nxt.is_zero():
            break
        power = nxt
        p += 1
    return 2 * p + 1 if not wedge(alpha, power).is_zero() else 2 * p


def gram(theta: PForm) -> list[list[Fraction]]:
    """Skew matrix A with A[i][j] = theta(X_i, X_j)."""
    if theta.degree != 2:
        raise MalformedInputError("Gram matrix needs a 2-form")
    n = theta.ambient_dim
    a = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in theta.coeffs.items():
        a[i][j] = c
        a[j][i] = -c
    return a


def form_from_gram(a: Sequence[Sequence]) -> PForm:
    n = len(a)
    return PForm(n, 2, {(i, j): a[i][j] for i in range(n) for j in range(i + 1, n) if a[i][j]})


def is_skew(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(
        a[i][j] == -a[j][i] for i in range(n) for j in range(i, n)
    )


def pfaffian(a: Sequence[Sequence]) -> Fraction:
    """Pfaffian by expansion along the first remaining row, memoized on index sets."""
    a = [[linalg.as_fraction(x) for x in row] for row in a]
    if not is_skew(a):
        raise MalformedInputError("matrix is not skew-symmetric")
    n = len(a)
    if n % 2:
        return Fraction(0)
    memo: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}

    def pf(idx: tuple[int, ...]) -> Fraction:
        hit = memo.get(idx)
        if hit is not None:
            return hit
        first = idx[0]
        row = a[first]
        total = Fraction(0)
        for pos in range(1, len(idx)):
            j = idx[pos]
            if row[j]:
                sub = pf(idx[1:pos] + idx[pos + 1 :])
                if sub:
                    term = row[j] * sub
                    total += term if pos % 2 else -term
        memo[idx] = total
        return total

    return pf(tuple(range(n)))


def is_nondegenerate(L: LieAlgebra | None, theta: PForm) -> bool:
    if L is not None:
        _check_ambient(L, theta)
    return pfaffian(gram(theta)) != 0


def top_coefficient(theta: PForm) -> Fraction:
    """Coefficient c in theta^(n/2) = c * vol, via repeated wedges (0 for odd n)."""
    n = theta.ambient_dim
    if n % 2:
        return Fraction(0)
    return wedge_power(theta, n // 2).coeffs.get(tuple(range(n)), Fraction(0))


def expected_top_coefficient(theta: PForm) -> Fraction:
    p = theta.ambient_dim // 2
    return factorial(p) * pfaffian(gram(theta))
