import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conflat.clifford import (
    CliffordError,
    Multivector,
    SingularError,
    basis_vector,
    blade_name,
    geometric_product,
    norm,
    product_coeffs,
    reversion,
    scalar,
    vector,
    vector_inverse,
)


def e(n, *js):
    out = scalar(1.0, n)
    for j in js:
        out = out * basis_vector(n, j)
    return out


# Independent oracle: a faithful complex matrix representation of Cl_n built
# from Jordan-Wigner gamma matrices, e_j = i * Gamma_j with Gamma_j^2 = 1.
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]])
_Z = np.diag([1.0 + 0j, -1.0])
_I = np.eye(2, dtype=complex)


def _kron(ms):
    out = np.eye(1, dtype=complex)
    for m in ms:
        out = np.kron(out, m)
    return out


def gamma_rep(n):
    q = (n + 1) // 2 + 1
    gens = []
    for j in range(n):
        k, r = divmod(j, 2)
        ms = [_Z] * k + [_X if r == 0 else _Y] + [_I] * (q - k - 1)
        gens.append(1j * _kron(ms))
    return gens


def as_matrix(a: Multivector):
    gens = gamma_rep(a.dim)
    out = np.zeros_like(gens[0])
    for b, c in enumerate(a.coeffs):
        if c == 0:
            continue
        m = np.eye(len(gens[0]), dtype=complex)
        for j in range(a.dim):
            if b >> j & 1:
                m = m @ gens[j]
        out += c * m
    return out


coeff_arrays = lambda n: arrays(np.float64, 1 << n, elements=st.floats(-2, 2))


class TestProduct:
    def test_generator_squares_to_minus_one(self):
        assert e(3, 1, 1) == scalar(-1.0, 3)

    def test_distinct_generators_anticommute(self):
        assert e(3, 1, 2).terms() == {"e12": 1.0}
        assert e(3, 2, 1).terms() == {"e12": -1.0}

    def test_one_plus_minus(self):
        e1 = basis_vector(3, 1)
        assert (1 + e1) * (1 - e1) == scalar(2.0, 3)

    @pytest.mark.parametrize("n", [2, 5, 8, 12])
    def test_anticommutation_exact(self, n):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                s = e(n, i, j) + e(n, j, i)
                expected = scalar(-2.0 if i == j else 0.0, n)
                assert s == expected

    def test_dimension_mismatch(self):
        with pytest.raises(CliffordError):
            geometric_product(scalar(1, 2), scalar(1, 3))

    def test_bad_coefficient_length(self):
        with pytest.raises(CliffordError):
            Multivector(3, [1.0, 2.0])

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_matches_matrix_representation(self, n, rng):
        for _ in range(5):
            a = Multivector(n, rng.normal(size=1 << n))
            b = Multivector(n, rng.normal(size=1 << n))
            lhs = as_matrix(a * b)
            rhs = as_matrix(a) @ as_matrix(b)
            assert np.allclose(lhs, rhs, atol=1e-12)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_associativity(self, n, rng):
        worst = 0.0
        for _ in range(1000 // 3):
            a, b, c = (Multivector(n, rng.normal(size=1 << n)) for _ in range(3))
            d = norm((a * b) * c - a * (b * c)) / (norm(a) * norm(b) * norm(c))
            worst = max(worst, d)
        assert worst <= 1e-12

    def test_batched_product_matches(self, rng):
        A = rng.normal(size=(7, 16))
        B = rng.normal(size=(7, 16))
        P = product_coeffs(A, B, 4)
        for a, b, p in zip(A, B, P):
            assert np.allclose((Multivector(4, a) * Multivector(4, b)).coeffs, p, atol=1e-13)


class TestReversion:
    def test_examples(self):
        assert ~basis_vector(3, 1) == basis_vector(3, 1)
        assert ~e(3, 1, 2) == -e(3, 1, 2)
        assert ~e(3, 1, 2, 3) == -e(3, 1, 2, 3)

    @given(coeff_arrays(4), coeff_arrays(4))
    def test_anti_automorphism(self, a, b):
        A, B = Multivector(4, a), Multivector(4, b)
        assert reversion(A * B).allclose(reversion(B) * reversion(A), atol=1e-12)
        assert ~~A == A

    def test_exact_on_blades(self):
        n = 4
        for i in range(16):
            for j in range(16):
                A = Multivector(n, np.eye(16)[i])
                B = Multivector(n, np.eye(16)[j])
                assert ~(A * B) == (~B) * (~A)


class TestVectorInverse:
    def test_examples(self):
        assert vector_inverse(vector([2.0, 0, 0])) == vector([-0.5, 0, 0])
        assert vector_inverse(vector([1.0, 1.0, 0])).allclose(vector([-0.5, -0.5, 0]))

    def test_random_vectors(self, rng):
        for _ in range(100):
            x = vector(rng.normal(size=4))
            assert (x * vector_inverse(x)).allclose(scalar(1.0, 4), atol=1e-13)

    def test_zero_vector(self):
        with pytest.raises(SingularError):
            vector_inverse(vector([0.0, 0.0, 0.0]))

    def test_rejects_non_vector(self):
        with pytest.raises(CliffordError):
            vector_inverse(e(3, 1, 2))


class TestNorm:
    def test_examples(self):
        assert norm(vector([1.0, 1.0, 0.0])) == pytest.approx(np.sqrt(2))
        assert norm(Multivector(3)) == 0.0

    @given(arrays(np.float64, 5, elements=st.floats(-3, 3)),
           arrays(np.float64, 5, elements=st.floats(-3, 3)))
    def test_multiplicative_on_vectors(self, u, v):
        a, b = vector(u), vector(v)
        assert norm(a * b) == pytest.approx(norm(a) * norm(b), rel=1e-12, abs=1e-12)

    @given(arrays(np.float64, 6, elements=st.floats(-10, 10)))
    def test_vector_square(self, v):
        x = vector(v)
        sq = x * x
        n2 = float(np.dot(v, v))
        assert sq.grade_mass(range(1, 7)) <= 1e-14 * max(n2, 1e-300)
        assert sq.scalar == pytest.approx(-n2, rel=1e-14, abs=1e-300)


def test_blade_names():
    assert blade_name(0) == "1"
    assert blade_name(0b101) == "e13"
    assert blade_name((1 << 9) | 1) == "e1_10"
