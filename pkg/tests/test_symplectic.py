import random
import pytest
from hypothesis import given, strategies as st

from conftest import h3, two_step_algebras
from nilsym import (
    InvalidAlgebraError,
    LieAlgebra,
    PForm,
    SizeLimitError,
    central_series_obstruction,
    closed_two_forms,
    decide_symplectic,
    exact_symplectic_scan,
    pfaffian,
    verify_certificate,
)
from nilsym.catalog import list_entries, named
from nilsym.symplectic import (
    MAX_EXPANSION_VARS,
    _integer_grams,
    central_series_dims,
    generic_pfaffian,
    is_symplectic_form,
)


def _split(n):
    return PForm(n, 2, {(2 * b, 2 * b + 1): 1 for b in range(n // 2)})


class TestClosedForms:
    def test_abelian(self):
        assert len(closed_two_forms(LieAlgebra.abelian(4))) == 6

    def test_h3(self):
        assert len(closed_two_forms(h3())) == 3

    def test_k8(self):
        assert len(closed_two_forms(named("k8").algebra)) == 15


class TestIsSymplecticForm:
    def test_split(self):
        assert is_symplectic_form(LieAlgebra.abelian(4), _split(4))

    def test_degenerate(self):
        assert not is_symplectic_form(LieAlgebra.abelian(4), PForm.basis(4, 0, 1))

    def test_not_closed(self):
        # on h3 + line, alpha1^alpha2 is closed but alpha3^alpha4 is not
        L = named("h3_a1").algebra
        theta = PForm.basis(4, 0, 1) + PForm.basis(4, 2, 3)
        assert not is_symplectic_form(L, theta)

    def test_h82_rigid(self):
        e = named("h82_rigid")
        assert is_symplectic_form(e.algebra, e.expected.witness)


class TestDecide:
    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_abelian_even(self, p):
        cert = decide_symplectic(LieAlgebra.abelian(2 * p))
        assert cert.decision and cert.proof == "witness-verified"

    def test_odd(self):
        cert = decide_symplectic(h3())
        assert not cert.decision and cert.proof == "odd-dimension"

    def test_h5_a1(self):
        cert = decide_symplectic(named("h5_a1").algebra)
        assert not cert.decision and cert.proof == "pfaffian-identically-zero"

    @pytest.mark.parametrize("name", ["nosym8", "k8"])
    def test_not_symplectic(self, name):
        cert = decide_symplectic(named(name).algebra)
        assert not cert.decision and cert.proof == "pfaffian-identically-zero"

    def test_zero_dim(self):
        assert decide_symplectic(LieAlgebra.abelian(0)).decision

    def test_invalid_algebra_rejected(self):
        with pytest.raises(InvalidAlgebraError):
            decide_symplectic(LieAlgebra(3, {(0, 1): {0: 1}, (0, 2): {2: 1}}))

    def test_witness_independent_of_seed(self):
        L = named("h82_rigid").algebra
        assert decide_symplectic(L, seed=1).witness == decide_symplectic(L, seed=99).witness

    def test_seed_env(self, monkeypatch):
        monkeypatch.setenv("NILSYM_SEED", "17")
        assert decide_symplectic(named("g32").algebra).decision

    def test_witness_is_integral(self):
        w = decide_symplectic(named("dim6_2").algebra).witness
        assert all(c.denominator == 1 for c in w.coeffs.values())

    @given(two_step_algebras())
    def test_certificates_verify(self, L):
        cert = decide_symplectic(L)
        assert verify_certificate(L, cert)

    def test_forged_certificate_rejected(self):
        L = named("g32").algebra
        cert = decide_symplectic(L)
        forged = type(cert)(True, "witness-verified", cert.closed_space_dim, witness=PForm.basis(8, 0, 1))
        assert not verify_certificate(L, forged)
        lie = type(cert)(False, "pfaffian-identically-zero", cert.closed_space_dim)
        assert not verify_certificate(L, lie)


class TestGenericPfaffian:
    def test_size_guard(self):
        grams = [[[0] * 4 for _ in range(4)] for _ in range(MAX_EXPANSION_VARS + 1)]
        with pytest.raises(SizeLimitError):
            generic_pfaffian(grams, 4)

    @given(st.integers(0, 10**6))
    def test_matches_exact_evaluation(self, seed):
        rng = random.Random(seed)
        L = rng.choice([named(n).algebra for n in ("dim6_1", "filiform6", "h3_a1", "h5_a1", "n32")])
        grams = _integer_grams(closed_two_forms(L))
        poly = generic_pfaffian(grams, L.dim)
        pt = [rng.randint(-4, 4) for _ in grams]
        n = L.dim
        mat = [[sum(t * g[i][j] for t, g in zip(pt, grams)) for j in range(n)] for i in range(n)]
        assert poly.evaluate(pt) == pfaffian(mat)

    @given(st.integers(0, 10**6), st.booleans())
    def test_permuted_reexpansion(self, seed, prefer_last):
        L = named("dim6_3").algebra
        grams = _integer_grams(closed_two_forms(L))
        perm = list(range(len(grams)))
        random.Random(seed).shuffle(perm)
        assert generic_pfaffian(grams, L.dim, var_order=perm, prefer_last=prefer_last) == generic_pfaffian(
            grams, L.dim
        )

    def test_degree(self):
        L = named("filiform6").algebra
        poly = generic_pfaffian(_integer_grams(closed_two_forms(L)), 6)
        assert poly.total_degree() == 3


class TestObstruction:
    def test_abelian(self):
        assert central_series_obstruction(LieAlgebra.abelian(4))[0] is False

    def test_h5_a1_one_sided(self):
        # passes the test yet is not symplectic
        L = named("h5_a1").algebra
        assert central_series_obstruction(L)[0] is False
        assert not decide_symplectic(L).decision

    def test_free_two_step_violates(self):
        # n_{4,2}: C^1 and the centre both have dimension 6 > 10 - 6
        L = named("n42").algebra
        violated, j = central_series_obstruction(L)
        assert violated and j == 1

    def test_never_fires_on_symplectic_entries(self):
        for e in list_entries():
            if decide_symplectic(e.algebra).decision:
                assert central_series_obstruction(e.algebra)[0] is False, e.name

    def test_c2_member_equality(self):
        lower, upper = central_series_dims(named("h82_s21").algebra)
        assert [a + b for a, b in zip(lower, upper)] == [8, 8, 8]

    def test_c1_members_below_dim(self):
        # in C1 the centre is at most 4-dimensional while C^1 has dimension 3
        for name in ("h81_s21", "nosym8", "g32"):
            lower, upper = central_series_dims(named(name).algebra)
            assert lower[1] + upper[1] < 8, name


class TestFrobenius:
    def test_odd_dim(self):
        assert exact_symplectic_scan(h3()) is False

    @pytest.mark.parametrize("name", ["k8", "g32", "h82_rigid", "filiform6"])
    def test_nilpotent_never(self, name):
        assert exact_symplectic_scan(named(name).algebra) is False

    def test_solvable_frobenius(self):
        # the 2-dim non-abelian algebra [X1,X2]=X2 is frobeniusian: d(alpha2) = -alpha1^alpha2
        L = LieAlgebra(2, {(0, 1): {1: 1}})
        assert exact_symplectic_scan(L) is True
