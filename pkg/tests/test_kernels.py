import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conflat.clifford import Multivector, SingularError, basis_vector, vector, vector_inverse
from conflat.diffops import FieldFn, dirac_fd, dirac_fd_batch, laplacian_fd
from conflat.kernels import (
    KernelSpec,
    TruncationPolicy,
    cot_kernel,
    cot_regime,
    default_truncation,
    euclid_G,
    euclid_Gk,
    gk_constant,
    hopf_collapse_constant,
    hopf_kernel,
    hopf_poisson,
    hopf_transfer,
    kernel_batch,
    rp_kernel,
    semidirect_kernel,
    sphere_Gs,
    sphere_Hs,
    tail_estimate,
    transversion_kernel,
)
from conflat.moebius import VahlenMatrix, apply_moebius, weight_j

nonzero3 = arrays(np.float64, 3, elements=st.floats(-3, 3)).filter(lambda v: np.linalg.norm(v) > 0.1)


def e(n, j):
    return basis_vector(n, j)


def unit(rng, N):
    p = rng.normal(size=N)
    return p / np.linalg.norm(p)


class TestEuclid:
    def test_examples(self):
        assert euclid_G([1.0, 0, 0]) == e(3, 1)
        assert euclid_G([0, 2.0, 0]).allclose(e(3, 2) * 0.25, atol=1e-16)

    @given(nonzero3)
    def test_odd(self, v):
        assert euclid_G(-v) == -euclid_G(v)

    @given(nonzero3)
    def test_q1_matches_G(self, v):
        assert euclid_Gk(v, 1).allclose(euclid_G(v), atol=1e-15)

    def test_higher_orders(self):
        assert euclid_Gk([2.0, 0, 0, 0], 2).terms() == {"1": 0.25}
        assert euclid_Gk([2.0, 0, 0, 0], 3).allclose(e(4, 1) * 0.5, atol=1e-16)

    @pytest.mark.parametrize("n,q", [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4)])
    def test_dirac_lowers_order(self, n, q):
        f = FieldFn(lambda X: np.stack([euclid_Gk(p, q).coeffs for p in X]), n)
        x = np.linspace(0.3, 0.9, n)
        assert dirac_fd(f, x).allclose(euclid_Gk(x, q - 1) * gk_constant(n, q), atol=1e-8)

    def test_errors(self):
        with pytest.raises(SingularError):
            euclid_G([0.0, 0.0, 0.0])
        with pytest.raises(ValueError):
            euclid_Gk([1.0, 0, 0], 3)


class TestSphere:
    def test_gs_examples(self):
        x, y = [1.0, 0, 0], [-1.0, 0, 0]
        assert sphere_Gs(x, y, 2).allclose(e(3, 1) * 0.5)
        assert sphere_Gs([1.0, 0, 0], [0, 1.0, 0], 2).allclose((e(3, 1) - e(3, 2)) * 0.5)

    def test_chordal_identity(self, rng):
        for _ in range(100):
            x, y = unit(rng, 3), unit(rng, 3)
            assert np.sum((x - y) ** 2) == pytest.approx(2 - 2 * x @ y, abs=1e-14)
            alt = (x - y) / abs(2 - 2 * x @ y) ** 1.0
            assert np.allclose(sphere_Gs(x, y, 2).vector_part(), alt, rtol=1e-12)

    def test_hs_examples(self):
        assert sphere_Hs([1.0, 0, 0, 0], [-1.0, 0, 0, 0], 3).scalar == pytest.approx(0.5)
        assert sphere_Hs([1.0, 0, 0, 0], [0, 1.0, 0, 0], 3).scalar == pytest.approx(2**-0.5)

    def test_hs_symmetric(self, rng):
        for _ in range(20):
            x, y = unit(rng, 5), unit(rng, 5)
            assert sphere_Hs(x, y, 4) == sphere_Hs(y, x, 4)

    def test_errors(self):
        with pytest.raises(ValueError):
            sphere_Gs([1.0, 1.0, 0], [1.0, 0, 0], 2)
        with pytest.raises(ValueError):
            sphere_Hs([1.0, 0, 0], [0, 1.0, 0], 2)
        with pytest.raises(SingularError):
            sphere_Gs([1.0, 0, 0], [1.0, 0, 0], 2)


class TestRP:
    def test_examples(self):
        x, y = [1.0, 0, 0], [0, 1.0, 0]
        assert rp_kernel(x, y, 2, "plus").allclose(-e(3, 2))
        assert rp_kernel(x, y, 2, "minus").allclose(e(3, 1))
        assert rp_kernel([1.0, 0, 0, 0], [0, 1.0, 0, 0], 3, "minus", 2).allclose(Multivector(4))

    def test_antipodal_singularity(self):
        with pytest.raises(SingularError):
            rp_kernel([1.0, 0, 0], [-1.0, 0, 0], 2)

    def test_bundle_parity(self, rng):
        for _ in range(10):
            x, y = unit(rng, 4), unit(rng, 4)
            for bundle, s in (("plus", 1), ("minus", -1)):
                assert rp_kernel(-x, y, 3, bundle) == rp_kernel(x, y, 3, bundle) * s


class TestKernelSpec:
    def test_json_roundtrip(self):
        spec = KernelSpec("cot", 3, q=1, k=2, l=1, trunc=TruncationPolicy(radius=12))
        assert KernelSpec.from_json(spec.to_json()) == spec

    def test_unknown_fields(self):
        with pytest.raises(ValueError, match="unknown KernelSpec fields"):
            KernelSpec.from_dict({"family": "cot", "n": 3, "k": 1, "colour": "red"})
        with pytest.raises(ValueError, match="unknown TruncationPolicy fields"):
            KernelSpec.from_dict({"family": "cot", "n": 3, "k": 1, "trunc": {"R": 3}})

    def test_invariants(self):
        with pytest.raises(ValueError):
            KernelSpec("cot", 3, k=1, l=2)
        with pytest.raises(ValueError):
            KernelSpec("torus", 3)
        with pytest.raises(ValueError):
            TruncationPolicy(radius=0)

    def test_defaults(self):
        assert default_truncation(1).radius == 60
        assert default_truncation(2).radius == 40
        assert default_truncation(3).radius == 20
        assert KernelSpec("hopf", 3).trunc.radius == 60
        assert json.loads(KernelSpec("cot", 3, k=1).to_json())["a"] is None


class TestCot:
    # Independent oracle: mpmath.nsum over all of Z at 30 digits,
    # x - y = (0.3, 0.2, -0.1), n = 3, q = 1, k = 1.
    REF_L0 = np.array([4.2858879901108615756, 4.4969314760428707298, -2.2484657380214353649])
    REF_L1 = np.array([6.8057812783177450288, 3.271503955828173889, -1.6357519779140869445])
    V = [0.3, 0.2, -0.1]

    def test_regimes(self):
        assert cot_regime(3, 1, 1) == "generic"
        assert cot_regime(3, 1, 2) == "critical"
        assert cot_regime(3, 1, 3) == "supercritical"
        with pytest.raises(ValueError):
            cot_regime(3, 2, 3)

    def test_nsum_oracle(self):
        spec = KernelSpec("cot", 3, k=1)
        val = cot_kernel(spec, self.V, [0, 0, 0]).vector_part()
        assert np.abs(val - self.REF_L0).max() <= tail_estimate(spec)
        rich = KernelSpec("cot", 3, k=1, trunc=TruncationPolicy(radius=60, summation="richardson"))
        assert np.abs(cot_kernel(rich, self.V, [0, 0, 0]).vector_part() - self.REF_L0).max() < 1e-8

    def test_nsum_oracle_signed(self):
        spec = KernelSpec("cot", 3, k=1, l=1)
        val = cot_kernel(spec, self.V, [0, 0, 0]).vector_part()
        assert np.abs(val - self.REF_L1).max() <= tail_estimate(spec)

    def test_tail_slope(self):
        errs, radii = [], [25, 50, 100, 200]
        for R in radii:
            spec = KernelSpec("cot", 3, k=1, trunc=TruncationPolicy(radius=R))
            errs.append(np.abs(cot_kernel(spec, self.V, [0, 0, 0]).vector_part() - self.REF_L0).max())
        slope = np.polyfit(np.log(radii), np.log(errs), 1)[0]
        assert abs(slope + 2) <= 0.3

    def test_tail_estimate_monotone(self):
        vals = [tail_estimate(KernelSpec("cot", 3, k=2, trunc=TruncationPolicy(radius=R)))
                for R in (10, 20, 40)]
        assert all(np.isfinite(vals)) and vals[0] > vals[1] > vals[2]
        a = tail_estimate(KernelSpec("cot", 5, k=1, trunc=TruncationPolicy(radius=10)))
        b = tail_estimate(KernelSpec("cot", 5, k=1, trunc=TruncationPolicy(radius=20)))
        assert b <= a / 2

    def test_tail_estimate_supercritical(self):
        with pytest.raises(ValueError):
            tail_estimate(KernelSpec("cot", 3, k=3))

    @pytest.mark.parametrize("n,q,k,l", [(3, 1, 1, 0), (3, 1, 1, 1), (3, 1, 2, 1), (4, 2, 1, 1)])
    def test_periodicity_signs(self, n, q, k, l):
        spec = KernelSpec("cot", n, q=q, k=k, l=l)
        x = np.linspace(0.21, 0.37, n)
        y = np.zeros(n)
        base = cot_kernel(spec, x, y)
        tol = 2 * tail_estimate(spec)
        for j in range(1, k + 1):
            s = -1.0 if j <= l else 1.0
            shifted = cot_kernel(spec, x + np.eye(n)[j - 1], y)
            assert np.abs((shifted - base * s).coeffs).max() <= tol

    @pytest.mark.parametrize("n,q,k,l", [(3, 1, 1, 0), (3, 1, 2, 0), (3, 1, 3, 0), (4, 2, 2, 1)])
    def test_monogenic_and_grade_clean(self, n, q, k, l):
        spec = KernelSpec("cot", n, q=q, k=k, l=l, trunc=TruncationPolicy(radius=20))
        y = np.zeros(n)
        K = kernel_batch(spec)
        X = np.array([np.linspace(0.21, 0.37, n), np.linspace(-0.3, 0.15, n)])
        vals = K(X, y)
        from conflat.clifford import blade_grades
        g = blade_grades(n)
        assert np.abs(vals[:, g >= 2]).max() <= 1e-10 * np.abs(vals).max()
        if q == 1:
            f = FieldFn(lambda P: K(P, y), n)
            assert np.abs(dirac_fd_batch(f, X)).max() <= 1e-5 + 10 * (
                tail_estimate(spec) if cot_regime(n, q, k) != "supercritical" else 0)

    def test_singular_on_orbit(self):
        with pytest.raises(SingularError):
            cot_kernel(KernelSpec("cot", 3, k=1), [1.0, 0, 0], [0, 0, 0])

    def test_supercritical_rejects_congruent_points(self):
        spec = KernelSpec("cot", 3, k=3, a=(0.5, 0, 0), b=(1.5, 0, 0))
        with pytest.raises(ValueError):
            cot_kernel(spec, [0.2, 0.1, 0.3], [0, 0, 0])


class TestSemidirect:
    @pytest.mark.parametrize("bundle,s", [("plus", 1.0), ("minus", -1.0)])
    def test_parity(self, bundle, s):
        spec = KernelSpec("semidirect", 3, k=1, bundle_sign=bundle)
        x, y = np.array([0.3, 0.2, -0.1]), np.array([0.1, 0.05, 0.2])
        a, b = semidirect_kernel(spec, x, y), semidirect_kernel(spec, -x, y)
        assert np.abs((b - a * s).coeffs).max() <= 2 * tail_estimate(spec)

    def test_symmetric_configuration(self):
        # G_2 is even, so with y = 0 the reflected term equals the direct one
        spec = KernelSpec("semidirect", 4, q=2, k=1, bundle_sign="plus")
        cot = KernelSpec("cot", 4, q=2, k=1)
        x, y = np.array([0.3, 0.2, -0.1, 0.4]), np.zeros(4)
        direct = cot_kernel(cot, x, y)
        assert np.abs(direct.coeffs).max() > 0.1
        assert np.abs((semidirect_kernel(spec, x, y) - direct * 2).coeffs).max() \
            <= 2 * tail_estimate(cot)


class TestHopf:
    def test_literal_collapse(self, rng):
        n = 3
        # geometric series by homogeneity of G and the m = 0 identity
        r = 2.0 ** (1 - n)
        closed = 1 / (1 - r) - 2.0 ** (2 - 2 * n) * r / (1 - r)
        assert hopf_collapse_constant(n) == pytest.approx(closed, rel=1e-15)
        spec = KernelSpec("hopf", n, mode="literal")
        for _ in range(5):
            x, y = rng.uniform(0.5, 1.5, size=(2, n))
            assert hopf_kernel(spec, x, y).allclose(euclid_G(x - y) * closed, atol=1e-12)

    def test_literal_dilation_ratio(self):
        spec = KernelSpec("hopf", 3, mode="literal")
        x, y = np.array([1.2, 0.3, -0.4]), np.array([0.9, -0.5, 0.6])
        assert hopf_kernel(spec, 2 * x, 2 * y).allclose(hopf_kernel(spec, x, y) * 0.25, atol=1e-13)

    def test_orbit_monogenic(self, rng):
        spec = KernelSpec("hopf", 3)
        y = np.array([0.9, -0.5, 0.6])
        K = kernel_batch(spec)
        X = rng.normal(size=(20, 3))
        X *= rng.uniform(1.05, 1.9, size=(20, 1)) / np.linalg.norm(X, axis=1, keepdims=True)
        f = FieldFn(lambda P: K(P, y), 3)
        assert np.abs(dirac_fd_batch(f, X)).max() < 1e-5

    def test_orbit_singular(self):
        with pytest.raises(SingularError):
            hopf_kernel(KernelSpec("hopf", 3), [2.0, 0, 0], [1.0, 0, 0])

    def test_poisson(self):
        x = np.array([1.2, 0.3, 0.0])
        f = FieldFn(lambda Y: np.pad(np.array([[hopf_poisson(x, p, 3)] for p in Y]),
                                     ((0, 0), (0, 7))), 3)
        for y in ([0.9, -0.5, 0.6], [1.3, 0.2, -0.4], [0.4, 0.7, 0.5]):
            assert isinstance(hopf_poisson(x, y, 3), float)
            assert abs(laplacian_fd(f, y, 5e-3).scalar) < 1e-4
        vals = [abs(hopf_poisson(x, x + [0, 0, t], 3)) for t in (1e-1, 1e-2, 1e-3)]
        assert vals[0] < vals[1] < vals[2]

    def test_transfer_with_G_is_literal(self):
        x, y = np.array([1.2, 0.3, -0.4]), np.array([0.9, -0.5, 0.6])
        lit = hopf_kernel(KernelSpec("hopf", 3, mode="literal"), x, y)
        assert hopf_transfer(euclid_G, x, y, 3) == lit

    def test_transfer_even_kernel_direct_sum(self):
        n = 3
        x, y = np.array([1.2, 0.3, -0.4]), np.array([0.9, -0.5, 0.6])
        K = lambda w: euclid_Gk(w, 2)
        depth = 50
        wx = vector_inverse(vector(x)).vector_part()
        wy = vector_inverse(vector(y)).vector_part()
        first = sum((K(2.0**j * (x - y)) for j in range(depth + 1)), Multivector(n))
        inner = sum((K(2.0**j * (wx - wy)) for j in range(1, depth + 1)), Multivector(n))
        direct = first + euclid_G(x) * inner * euclid_G(y) * 2.0 ** (2 - 2 * n)
        got = hopf_transfer(K, x, y, n, TruncationPolicy(radius=depth))
        assert got.allclose(direct, atol=1e-12)

    def test_transfer_linear(self):
        x, y = np.array([1.2, 0.3, -0.4]), np.array([0.9, -0.5, 0.6])
        K1, K2 = euclid_G, (lambda w: euclid_Gk(w, 2))
        lhs = hopf_transfer(lambda w: K1(w) + K2(w), x, y, 3)
        rhs = hopf_transfer(K1, x, y, 3) + hopf_transfer(K2, x, y, 3)
        assert lhs.allclose(rhs, atol=1e-12)


class TestTransversion:
    def test_m0_identity(self, rng):
        for _ in range(100):
            x, y = rng.normal(size=(2, 3))
            w = vector_inverse(vector(x)).vector_part() - vector_inverse(vector(y)).vector_part()
            lhs = euclid_G(x) * euclid_G(w) * euclid_G(y)
            rhs = -euclid_G(x - y)
            assert np.abs((lhs - rhs).coeffs).max() <= 1e-12 * np.abs(rhs.coeffs).max()

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_automorphy(self, k, rng):
        n = 3
        spec = KernelSpec("transversion", n, k=k, trunc=TruncationPolicy(radius=8))
        x, y = np.array([0.7, -0.4, 0.5]), np.array([-0.3, 0.9, 0.2])
        m0 = np.zeros(n)
        m0[:k] = [1, -2, 1][:k]
        M = VahlenMatrix.transversion(m0)
        u, v = apply_moebius(M, x).vector_part(), apply_moebius(M, y).vector_part()
        lhs = weight_j(M, x, 1) * transversion_kernel(spec, u, v) * ~weight_j(M, y, 1)
        rhs = transversion_kernel(spec, x, y)
        assert np.abs((lhs - rhs).coeffs).max() <= 1e-10 * np.abs(rhs.coeffs).max()

    def test_kelvin_structure(self):
        # k < n - 1: G(x) cot_{1,k,l}(x^-1, y^-1) G(y)
        n = 4
        spec = KernelSpec("transversion", n, k=1, l=1, trunc=TruncationPolicy(radius=10))
        cot = KernelSpec("cot", n, k=1, l=1, trunc=TruncationPolicy(radius=10))
        x, y = np.array([0.7, -0.4, 0.5, 0.1]), np.array([-0.3, 0.9, 0.2, 0.4])
        wx = vector_inverse(vector(x)).vector_part()
        wy = vector_inverse(vector(y)).vector_part()
        assembled = euclid_G(x) * cot_kernel(cot, wx, wy) * euclid_G(y)
        assert transversion_kernel(spec, x, y).allclose(assembled, atol=1e-13)
