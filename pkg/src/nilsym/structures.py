"""Structures attached to a symplectic form.

Matrices use the row convention of :mod:`nilsym.algebra`: row i of a linear
map is the image of X_i, and f(v) = v . F.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import LieAlgebra, is_nilpotent, require_valid
from .errors import MalformedInputError, StructureError
from .exterior import PForm, ce_differential, gram, pfaffian

Matrix = list


def _square(M: Sequence[Sequence], n: int, what: str) -> Matrix:
    M = linalg.to_matrix(M)
    if len(M) != n or any(len(r) != n for r in M):
        raise MalformedInputError(f"{what} must be {n}x{n}")
    return M


def require_symplectic(L: LieAlgebra, theta: PForm) -> Matrix:
    """Return Gram(theta) after checking it is closed and nondegenerate."""
    if theta.degree != 2 or theta.ambient_dim != L.dim:
        raise StructureError("wrong-shape", f"expected a 2-form on dimension {L.dim}")
    if not ce_differential(L, theta).is_zero():
        raise StructureError("not-closed", "the 2-form is not closed")
    A = gram(theta)
    if pfaffian(A) == 0:
        raise StructureError("degenerate", "the 2-form is degenerate")
    return A


def _bracket_coeff(L: LieAlgebra, i: int, j: int) -> dict[int, Fraction]:
    return L.table[i][j]


# -- affine (left-symmetric) product ---------------------------------------------


@dataclass(frozen=True)
class AffineProduct:
    """X_i . X_j = tables[i][j] (row j of M_{X_i})."""

    tables: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.tables)

    def matrix(self, i: int) -> Matrix:
        return [list(r) for r in self.tables[i]]

    def product(self, u: Sequence, v: Sequence) -> list[Fraction]:
        n = self.dim
        out = [Fraction(0)] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                row = self.tables[i][j]
                ab = a * b
                for k in range(n):
                    if row[k]:
                        out[k] += ab * row[k]
        return out

    def commutator_residuals(self, L: LieAlgebra) -> list[tuple[int, int]]:
        """Pairs where X.Y - Y.X != [X,Y]."""
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                br = L.table[i][j]
                for k in range(n):
                    if self.tables[i][j][k] - self.tables[j][i][k] != br.get(k, 0):
                        bad.append((i, j))
                        break
        return bad

    def left_symmetry_residuals(self) -> list[tuple[int, int, int]]:
        """Triples where (XY)Z - X(YZ) != (YX)Z - Y(XZ)."""
        n = self.dim
        e = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
        bad = []
        for i in range(n):
            for j in range(n):
                xy = list(self.tables[i][j])
                yx = list(self.tables[j][i])
                for k in range(n):
                    lhs = [a - b for a, b in zip(self.product(xy, e[k]), self.product(e[i], self.tables[j][k]))]
                    rhs = [a - b for a, b in zip(self.product(yx, e[k]), self.product(e[j], self.tables[i][k]))]
                    if lhs != rhs:
                        bad.append((i, j, k))
        return bad


def affine_product_from(L: LieAlgebra, theta: PForm) -> AffineProduct:
    """Solve theta(X.Y, Z) = -theta(Y, [X, Z]) through the inverse Gram matrix."""
    require_valid(L)
    A = require_symplectic(L, theta)
    n = L.dim
    Ainv = linalg.inverse(A)
    tables = []
    for i in range(n):
        rows = []
        for j in range(n):
            r = [Fraction(0)] * n
            for l in range(n):
                for k, c in L.table[i][l].items():
                    r[l] -= A[j][k] * c
            rows.append(tuple(linalg.vecmat(r, Ainv)))
        tables.append(tuple(rows))
    return AffineProduct(tuple(tables))


def affine_derivations(prod: AffineProduct) -> list[Matrix]:
    """Basis of the linear maps D with D(X.Y) = D(X).Y + X.D(Y)."""
    n = prod.dim
    if n == 0:
        return []
    # unknown D[a][b] lives at column a*n + b
    eqs = []
    for i in range(n):
        for j in range(n):
            xy = prod.tables[i][j]
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                # D(X_i . X_j)_k = sum_a xy[a] D[a][k]
                for a in range(n):
                    if xy[a]:
                        row[a * n + k] += xy[a]
                # (D X_i) . X_j = sum_b D[i][b] (X_b . X_j)_k
                for b in range(n):
                    c = prod.tables[b][j][k]
                    if c:
                        row[i * n + b] -= c
                    c = prod.tables[i][b][k]
                    if c:
                        row[j * n + b] -= c
                if any(row):
                    eqs.append(row)
    basis = linalg.nullspace(eqs, n * n) if eqs else linalg.identity(n * n)
    return [[list(v[a * n : (a + 1) * n]) for a in range(n)] for v in basis]


def is_nilpotent_matrix(M: Matrix) -> bool:
    n = len(M)
    P = M
    for _ in range(n):
        if linalg.is_zero_matrix(P):
            return True
        P = linalg.matmul(P, M)
    return linalg.is_zero_matrix(P)


def is_affine_derivation(prod: AffineProduct, D: Matrix) -> bool:
    n = prod.dim
    for i in range(n):
        for j in range(n):
            lhs = linalg.vecmat(list(prod.tables[i][j]), D)
            rhs = [a + b for a, b in zip(prod.product(D[i], [int(k == j) for k in range(n)]),
                                         prod.product([int(k == i) for k in range(n)], D[j]))]
            if lhs != rhs:
                return False
    return True


# -- quadratic, complex and Kaehler checks -------------------------------------


def _invariance_failure(L: LieAlgebra, B: Matrix) -> tuple[int, int, int] | None:
    n = L.dim
    for i in range(n):
        for j in range(n):
            xy = L.table[i][j]
            for k in range(n):
                lhs = sum((c * B[a][k] for a, c in xy.items()), Fraction(0))
                yz = L.table[j][k]
                rhs = sum((c * B[i][a] for a, c in yz.items()), Fraction(0))
                if lhs != rhs:
                    return (i, j, k)
    return None


def check_quadratic(L: LieAlgebra, B: Sequence[Sequence]) -> bool:
    """B symmetric, nondegenerate and invariant: B([x,y],z) = B(x,[y,z])."""
    B = _square(B, L.dim, "B")
    n = L.dim
    if any(B[i][j] != B[j][i] for i in range(n) for j in range(n)):
        return False
    if n and linalg.det(B) == 0:
        return False
    return _invariance_failure(L, B) is None


@dataclass(frozen=True)
class DerivationReport:
    D: Matrix
    is_derivation: bool
    is_skew: bool
    invertible: bool

    @property
    def ok(self) -> bool:
        return self.is_derivation and self.is_skew and self.invertible


def is_lie_derivation(L: LieAlgebra, D: Matrix) -> bool:
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = linalg.vecmat(L.bracket(L.basis_vector(i), L.basis_vector(j)), D)
            rhs = [a + b for a, b in zip(L.bracket(D[i], L.basis_vector(j)), L.bracket(L.basis_vector(i), D[j]))]
            if lhs != rhs:
                return False
    return True


def quadratic_symplectic_derivation(
    L: LieAlgebra, B: Sequence[Sequence], theta: PForm
) -> DerivationReport:
    """D with theta(X, Y) = B(D X, Y); in rows that is D = Gram(theta) . B^-1."""
    B = _square(B, L.dim, "B")
    if not check_quadratic(L, B):
        raise StructureError("not-quadratic", "B is not an invariant nondegenerate symmetric form")
    A = require_symplectic(L, theta)
    D = linalg.matmul(A, linalg.inverse(B))
    DB = linalg.matmul(D, B)
    skew = all(DB[i][j] == -DB[j][i] for i in range(L.dim) for j in range(L.dim))
    inv = L.dim == 0 or linalg.det(D) != 0
    return DerivationReport(D, is_lie_derivation(L, D), skew, inv)


def _apply(J: Matrix, v: Sequence) -> list[Fraction]:
    return linalg.vecmat(list(v), J)


def check_complex_structure(L: LieAlgebra, J: Sequence[Sequence]) -> bool:
    """J^2 = -Id and the Nijenhuis tensor vanishes on all basis pairs."""
    n = L.dim
    J = _square(J, n, "J")
    JJ = linalg.matmul(J, J)
    if any(JJ[i][j] != (-1 if i == j else 0) for i in range(n) for j in range(n)):
        return False
    for i in range(n):
        x = L.basis_vector(i)
        jx = J[i]
        for j in range(i + 1, n):
            y = L.basis_vector(j)
            jy = J[j]
            t1 = L.bracket(jx, jy)
            t2 = L.bracket(x, y)
            t3 = _apply(J, L.bracket(jx, y))
            t4 = _apply(J, L.bracket(x, jy))
            if any(a - b - c - d for a, b, c, d in zip(t1, t2, t3, t4)):
                return False
    return True


def kaehler_check(L: LieAlgebra, theta: PForm, J: Sequence[Sequence]) -> tuple[bool, Matrix | None]:
    """(compatible, B) with B(X, Y) = theta(X, JY); B is None when J fails."""
    n = L.dim
    J = _square(J, n, "J")
    if not check_complex_structure(L, J):
        return False, None
    A = gram(theta)
    closed = ce_differential(L, theta).is_zero()
    nondeg = pfaffian(A) != 0
    JAJt = linalg.matmul(linalg.matmul(J, A), linalg.transpose(J))
    invariant = JAJt == A
    B = linalg.matmul(A, linalg.transpose(J))
    return closed and nondeg and invariant, B


# -- double extension --------------------------------------------------------------


def _theta(A: Matrix, u: Sequence, v: Sequence) -> Fraction:
    return sum((a * A[i][j] * v[j] for i, a in enumerate(u) if a for j in range(len(v)) if v[j]), Fraction(0))


def double_extension(
    L: LieAlgebra, theta: PForm | None, D: Sequence[Sequence], name: str | None = None
) -> tuple[LieAlgebra, PForm]:
    """Symplectic double extension of (L, theta) by a derivation D of the affine product.

    New basis order is (X_1..X_n, e, d): e spans the central extension by
    f(X,Y) = theta(DX,Y) + theta(X,DY), and d acts by
    [d, X] = -D(X) - theta(X_g, X) e.  The new form is theta + e* ^ d*.
    For the zero-dimensional base ``theta`` is ignored (pass None).
    """
    n = L.dim
    D = _square(D, n, "D")
    if n:
        require_valid(L)
        prod = affine_product_from(L, theta)
        if not is_affine_derivation(prod, D):
            raise StructureError("not-a-derivation", "D is not a derivation of the affine product")
        A = gram(theta)
        # theta-adjoint D*: theta(DX, Y) = theta(X, D*Y)  =>  D* = A D^T A^-1
        Ainv = linalg.inverse(A)
        Dstar = linalg.matmul(linalg.matmul(A, linalg.transpose(D)), Ainv)
    else:
        A, Dstar = [], []
    # verify the adjoint relation rather than trusting the algebra above
    for i in range(n):
        for j in range(n):
            if _theta(A, D[i], [int(k == j) for k in range(n)]) != _theta(A, [int(k == i) for k in range(n)], Dstar[j]):
                raise ArithmeticError("adjoint computation failed")
    S = [[D[i][j] + Dstar[i][j] for j in range(n)] for i in range(n)]
    # G = (D + D*) o D + D* o (D + D*); in rows composition f o g is G_g . G_f
    G = [
        [a + b for a, b in zip(r1, r2)]
        for r1, r2 in zip(linalg.matmul(D, S) if n else [], linalg.matmul(S, Dstar) if n else [])
    ]
    E = [[int(i == j) for j in range(n)] for i in range(n)]

    def f(i: int, j: int) -> Fraction:
        return _theta(A, D[i], E[j]) + _theta(A, E[i], D[j])

    def g(i: int, j: int) -> Fraction:
        return _theta(A, G[i], E[j])

    # X_g from theta(X_g, [X_i, X_j]) = g(X_i, X_j) for all pairs
    rows, rhs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            br = L.bracket(E[i], E[j])
            rows.append([_theta(A, E[a], br) for a in range(n)])
            rhs.append(g(i, j))
    if n:
        xg = linalg.solve(rows, rhs) if rows else [Fraction(0)] * n
        if xg is None:
            raise StructureError("g-not-exact", "the closed form g is not exact; no X_g exists")
    else:
        xg = []
    e, d = n, n + 1
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), vec in L.constants.items():
        brackets[(i, j)] = dict(vec)
    for i in range(n):
        for j in range(i + 1, n):
            c = f(i, j)
            if c:
                brackets.setdefault((i, j), {})[e] = c
    for i in range(n):
        # [X_i, d] = -[d, X_i] = D(X_i) + theta(X_g, X_i) e
        img = {k: c for k, c in enumerate(D[i]) if c}
        c = _theta(A, xg, E[i])
        if c:
            img[e] = img.get(e, 0) + c
        if img:
            brackets[(i, d)] = img
    L2 = LieAlgebra(n + 2, brackets, name=name)
    coeffs = dict(theta.coeffs) if n else {}
    coeffs[(e, d)] = 1
    theta1 = PForm(n + 2, 2, coeffs)
    require_valid(L2)
    require_symplectic(L2, theta1)
    return L2, theta1


def extension_step(L: LieAlgebra, theta: PForm | None, name: str | None = None) -> tuple[LieAlgebra, PForm, Matrix]:
    """One double extension with the first usable nilpotent affine derivation."""
    n = L.dim
    candidates: list[Matrix] = []
    if n:
        prod = affine_product_from(L, theta)
        candidates = [D for D in affine_derivations(prod) if is_nilpotent_matrix(D)]
    candidates.append(linalg.zeros(n, n))
    last: Exception | None = None
    for D in candidates:
        try:
            L2, theta1 = double_extension(L, theta, D, name=name)
        except StructureError as exc:
            last = exc
            continue
        if is_nilpotent(L) and not is_nilpotent(L2):
            continue
        return L2, theta1, D
    raise last or StructureError("no-derivation")
