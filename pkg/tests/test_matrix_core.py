import numpy as np
import pytest
from scipy.linalg import expm

from matsusy.core.errors import DimensionError
from matsusy.core.matrix_core import (
    anticommutator,
    commutator,
    conjugate,
    conjugate_field,
    gelfand_tsetlin_transform,
    half_turn,
    hermitian_eigen,
    is_hermitian,
    is_unitary,
    pauli,
    random_hermitian,
    random_unitary,
    rotation,
    sigma_minus,
    sigma_plus,
    spin1,
)


class TestPauli:

    def test_algebra(self):
        X, Y, Z = pauli(1), pauli(2), pauli(3)
        assert np.allclose(commutator(X, Y), 2j * Z)
        assert np.allclose(commutator(Y, Z), 2j * X)
        assert np.allclose(commutator(Z, X), 2j * Y)
        for a in (X, Y, Z):
            assert np.allclose(a @ a, pauli(0))
        assert np.allclose(anticommutator(X, Z), 0)

    def test_projectors(self):
        p, m = sigma_plus(), sigma_minus()
        assert np.allclose(p @ p, p)
        assert np.allclose(p @ m, 0)
        assert np.allclose(p + m, np.eye(2))

    def test_returns_copies(self):
        a = pauli(1)
        a[0, 0] = 5
        assert pauli(1)[0, 0] == 0

    def test_bad_index(self):
        with pytest.raises(IndexError):
            pauli(4)


class TestSpin1:

    @pytest.mark.parametrize("basis", ["cartesian", "gelfand_tsetlin"])
    def test_commutation(self, basis):
        s1, s2, s3 = (spin1(k, basis) for k in (1, 2, 3))
        assert np.allclose(commutator(s1, s2), 1j * s3)
        assert np.allclose(commutator(s2, s3), 1j * s1)
        assert np.allclose(commutator(s3, s1), 1j * s2)
        casimir = s1 @ s1 + s2 @ s2 + s3 @ s3
        assert np.allclose(casimir, 2 * np.eye(3))

    def test_cartesian_squares_are_diagonal_projectors(self):
        for k in (1, 2, 3):
            s = spin1(k)
            sq = s @ s
            assert np.allclose(sq, np.diag(np.diag(sq)))
            assert np.isclose(np.trace(sq).real, 2)

    def test_gelfand_tsetlin_transform(self):
        V = gelfand_tsetlin_transform()
        assert is_unitary(V)
        for k in (1, 2, 3):
            assert np.allclose(conjugate(V, spin1(k)), spin1(k, "gelfand_tsetlin"), atol=1e-12)

    def test_unknown_basis(self):
        with pytest.raises(ValueError):
            spin1(1, "spherical")


class TestConjugation:

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            commutator(pauli(1), spin1(1))
        with pytest.raises(DimensionError):
            conjugate(np.eye(2), np.eye(3))

    def test_field_matches_pointwise(self, rng):
        U = random_unitary(3, rng)
        field = np.stack([random_hermitian(3, rng) for _ in range(5)])
        out = conjugate_field(U, field)
        for a, b in zip(field, out):
            assert np.allclose(conjugate(U, a), b)

    def test_conjugation_preserves_hermiticity(self, rng):
        U = random_unitary(4, rng)
        H = random_hermitian(4, rng)
        assert is_hermitian(conjugate(U, H), 1e-12)

    def test_half_turn_matches_exponential(self):
        for k in (1, 2, 3):
            g = pauli(k)
            assert np.allclose(half_turn(g, 1), expm(1j * np.pi / 4 * g))
            assert np.allclose(half_turn(g, -1), rotation(g, -np.pi / 4))

    def test_half_turn_sign_fixes_sigma1_orientation(self):
        # hydrogenlike takes sign −1: σ₂ → −σ₁
        assert np.allclose(conjugate(half_turn(pauli(3), 1), pauli(2)), pauli(1))
        assert np.allclose(conjugate(half_turn(pauli(3), -1), pauli(2)), -pauli(1))
        assert np.allclose(conjugate(half_turn(pauli(3), -1), pauli(3)), pauli(3))


class TestHermitianEigen:

    def test_reconstruction_and_phase(self, rng):
        H = random_hermitian(3, rng)
        w, v = hermitian_eigen(H)
        assert np.all(np.diff(w) >= 0)
        assert np.allclose(v @ np.diag(w) @ v.conj().T, H)
        for k in range(3):
            pivot = v[np.argmax(np.abs(v[:, k])), k]
            assert abs(pivot.imag) < 1e-14 and pivot.real > 0

    def test_deterministic(self, rng):
        H = random_hermitian(3, rng)
        w1, v1 = hermitian_eigen(H)
        w2, v2 = hermitian_eigen(H.copy())
        assert np.array_equal(w1, w2) and np.array_equal(v1, v2)
