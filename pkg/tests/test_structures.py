import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import h3
from nilsym import LieAlgebra, PForm, StructureError, decide_symplectic, is_nilpotent
from nilsym.catalog import list_entries, named
from nilsym.structures import (
    affine_derivations,
    affine_product_from,
    check_complex_structure,
    check_quadratic,
    double_extension,
    extension_step,
    is_affine_derivation,
    is_nilpotent_matrix,
    kaehler_check,
    quadratic_symplectic_derivation,
    require_symplectic,
)
from nilsym.symplectic import is_symplectic_form

S = [[0, 1], [-1, 0]]
S2 = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]


def eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def split(n):
    return PForm(n, 2, {(2 * b, 2 * b + 1): 1 for b in range(n // 2)})


class TestRequireSymplectic:
    def test_degenerate(self):
        with pytest.raises(StructureError) as exc:
            require_symplectic(LieAlgebra.abelian(4), PForm.basis(4, 0, 1))
        assert exc.value.reason == "degenerate"

    def test_not_closed(self):
        theta = PForm.basis(4, 0, 1) + PForm.basis(4, 2, 3)
        with pytest.raises(StructureError) as exc:
            require_symplectic(named("h3_a1").algebra, theta)
        assert exc.value.reason == "not-closed"


class TestAffineProduct:
    def test_abelian_zero(self):
        prod = affine_product_from(LieAlgebra.abelian(2), split(2))
        assert all(x == 0 for t in prod.tables for row in t for x in row)

    def test_h3_a1(self):
        L = named("h3_a1").algebra
        prod = affine_product_from(L, decide_symplectic(L).witness)
        assert prod.commutator_residuals(L) == []
        assert prod.left_symmetry_residuals() == []

    def test_h82_rigid(self):
        e = named("h82_rigid")
        prod = affine_product_from(e.algebra, e.expected.witness)
        assert prod.commutator_residuals(e.algebra) == []
        assert prod.left_symmetry_residuals() == []

    def test_defining_identity(self):
        # theta(X.Y, Z) = -theta(Y, [X, Z]) on every basis triple
        e = named("filiform6")
        L, theta = e.algebra, e.expected.witness
        prod = affine_product_from(L, theta)
        n = L.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    xy = prod.product(L.basis_vector(i), L.basis_vector(j))
                    lhs = theta.evaluate([xy, L.basis_vector(k)])
                    rhs = -theta.evaluate([L.basis_vector(j), L.bracket(L.basis_vector(i), L.basis_vector(k))])
                    assert lhs == rhs

    def test_derivations_are_derivations(self):
        e = named("dim6_1")
        prod = affine_product_from(e.algebra, e.expected.witness)
        ders = affine_derivations(prod)
        assert ders
        assert all(is_affine_derivation(prod, D) for D in ders)


class TestQuadratic:
    def test_abelian_identity(self):
        assert check_quadratic(LieAlgebra.abelian(3), eye(3))

    def test_h3_identity(self):
        assert not check_quadratic(h3(), eye(3))

    def test_degenerate(self):
        assert not check_quadratic(LieAlgebra.abelian(2), [[1, 0], [0, 0]])

    def test_a2(self):
        rep = quadratic_symplectic_derivation(LieAlgebra.abelian(2), eye(2), split(2))
        assert rep.ok and rep.D == [[0, 1], [-1, 0]]

    def test_a4(self):
        rep = quadratic_symplectic_derivation(LieAlgebra.abelian(4), eye(4), split(4))
        assert rep.ok and rep.invertible and rep.is_skew

    def test_not_quadratic(self):
        L = named("h3_a1").algebra
        with pytest.raises(StructureError) as exc:
            quadratic_symplectic_derivation(L, eye(4), decide_symplectic(L).witness)
        assert exc.value.reason == "not-quadratic"


class TestComplex:
    def test_abelian(self):
        assert check_complex_structure(LieAlgebra.abelian(2), S)

    def test_identity_fails(self):
        assert not check_complex_structure(LieAlgebra.abelian(2), eye(2))

    def test_h3_a1_decided_by_tensor(self):
        # X1 -> X2, X2 -> -X1, X3 -> X4, X4 -> -X3; the Nijenhuis tensor on (X1, X2)
        # is [JX1,JX2] - [X1,X2] - J[JX1,X2] - J[X1,JX2] = X3 - X3 - 0 - 0 = 0
        L = named("h3_a1").algebra
        assert check_complex_structure(L, S2)

    def test_kaehler_a2(self):
        ok, B = kaehler_check(LieAlgebra.abelian(2), split(2), S)
        assert ok and B == eye(2)

    def test_kaehler_bad_j(self):
        assert kaehler_check(LieAlgebra.abelian(2), split(2), eye(2)) == (False, None)

    def test_kaehler_a4(self):
        ok, B = kaehler_check(LieAlgebra.abelian(4), split(4), S2)
        assert ok and B == eye(4)


class TestDoubleExtension:
    def test_base_case(self):
        L2, theta = double_extension(LieAlgebra.abelian(0), None, [])
        assert L2 == LieAlgebra.abelian(2)
        assert theta.coeffs == {(0, 1): 1}

    def test_a2_zero_derivation(self):
        L4, theta = double_extension(LieAlgebra.abelian(2), split(2), [[0, 0], [0, 0]])
        assert L4 == LieAlgebra.abelian(4)
        assert is_symplectic_form(L4, theta)

    def test_three_rounds(self):
        L, theta = LieAlgebra.abelian(0), None
        dims = []
        for _ in range(3):
            L, theta, D = extension_step(L, theta)
            dims.append(L.dim)
            assert is_nilpotent(L)
            assert is_symplectic_form(L, theta)
            assert decide_symplectic(L).decision
        assert dims == [2, 4, 6]

    def test_not_a_derivation(self):
        e = named("h3_a1")
        theta = decide_symplectic(e.algebra).witness
        bad = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
        prod = affine_product_from(e.algebra, theta)
        if not is_affine_derivation(prod, bad):
            with pytest.raises(StructureError) as exc:
                double_extension(e.algebra, theta, bad)
            assert exc.value.reason == "not-a-derivation"

    @given(st.integers(0, 10**6))
    def test_random_nilpotent_derivations(self, seed):
        rng = random.Random(seed)
        e = rng.choice([named(n) for n in ("dim6_1", "dim6_2", "filiform6")])
        L, theta = e.algebra, e.expected.witness
        prod = affine_product_from(L, theta)
        ders = [D for D in affine_derivations(prod)]
        n = L.dim
        D = [[Fraction(0)] * n for _ in range(n)]
        for basis_D in ders:
            c = rng.randint(-2, 2)
            for i in range(n):
                for j in range(n):
                    D[i][j] += c * basis_D[i][j]
        try:
            L2, theta1 = double_extension(L, theta, D)
        except StructureError as exc:
            assert exc.reason == "g-not-exact"
            return
        assert is_symplectic_form(L2, theta1)
        if is_nilpotent_matrix(D):
            assert is_nilpotent(L2)


class TestSymplecticCatalogAffine:
    def test_identities_on_witnessed_entries(self):
        for e in list_entries():
            cert = decide_symplectic(e.algebra)
            if not cert.decision:
                continue
            prod = affine_product_from(e.algebra, cert.witness)
            assert prod.commutator_residuals(e.algebra) == [], e.name
            assert prod.left_symmetry_residuals() == [], e.name
