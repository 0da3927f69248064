import math

import numpy as np
import pytest

from conflat.clifford import basis_vector, scalar, vectors_to_coeffs
from conflat.diffops import FieldFn
from conflat.kernels import KernelSpec, hopf_collapse_constant, kernel_batch
from conflat.quadrature import (
    PointMeasure,
    QuadratureError,
    antipodal,
    cap_boundary,
    cauchy_reproduce,
    euclidean_sphere,
    higher_order_reproduce,
    hopf_complement_connected,
    hopf_reproduce,
    measure_convolution,
    omega,
    plemelj_limit,
    reproduction_constant,
    rp_symmetric_identities,
    surface_from_dict,
    surface_from_json,
    surface_integral,
    union,
)

G3 = kernel_batch(KernelSpec("euclid", 3))


def const_field(c):
    return FieldFn(lambda X: np.broadcast_to(c.coeffs, (len(X), len(c.coeffs))), c.dim)


def G_at(a):
    a = np.asarray(a, dtype=float)
    return FieldFn(lambda X: G3(X, a), 3, name="G(x-a)")


LINEAR = FieldFn(lambda X: vectors_to_coeffs(X[:, :2] * [1.0, -1.0], 3), 3)


def err(a, b):
    return float(np.max(np.abs(a.coeffs - b.coeffs)))


@pytest.fixture(scope="module")
def unit_sphere():
    return euclidean_sphere([0, 0, 0], 1.0, [64, 128])


class TestSurface:
    def test_omega(self):
        assert omega(2) == pytest.approx(2 * math.pi)
        assert omega(3) == pytest.approx(4 * math.pi)
        assert omega(4) == pytest.approx(2 * math.pi**2)

    def test_area_and_normals(self, unit_sphere):
        assert abs(unit_sphere.area - 4 * math.pi) < 1e-10
        assert np.abs(np.linalg.norm(unit_sphere.normals, axis=1) - 1).max() < 1e-12

    @pytest.mark.parametrize("d,counts", [(2, [40]), (4, [12, 12, 24])])
    def test_area_other_dims(self, d, counts):
        s = euclidean_sphere(np.zeros(d), 2.0, counts)
        assert s.area == pytest.approx(omega(d) * 2.0 ** (d - 1), rel=1e-12)

    def test_cap_geometry(self):
        s = cap_boundary([0, 0, 1], 0.9, [64])
        assert s.area == pytest.approx(2 * math.pi * math.sin(0.9), rel=1e-12)
        assert np.allclose(np.linalg.norm(s.nodes, axis=1), 1.0)
        assert np.abs(np.sum(s.nodes * s.normals, axis=1)).max() < 1e-14
        assert np.all(s.normals[:, 2] < 0)

    def test_integrals(self, unit_sphere):
        ones = np.zeros((len(unit_sphere.nodes), 8))
        ones[:, 0] = 1
        assert surface_integral(unit_sphere, ones).scalar == pytest.approx(4 * math.pi, abs=1e-10)
        x1sq = lambda X: np.pad(X[:, :1] ** 2, ((0, 0), (0, 7)))
        assert surface_integral(unit_sphere, x1sq).scalar == pytest.approx(4 * math.pi / 3, abs=1e-8)
        x1 = lambda X: np.pad(X[:, :1], ((0, 0), (0, 7)))
        assert abs(surface_integral(unit_sphere, x1).scalar) < 1e-12

    def test_non_finite_names_node(self, unit_sphere):
        vals = np.zeros((len(unit_sphere.nodes), 8))
        vals[17, 3] = np.nan
        with pytest.raises(QuadratureError, match="node 17"):
            surface_integral(unit_sphere, vals)

    def test_json_roundtrip(self):
        s = euclidean_sphere([0.5, 0, 0], 0.3, [8, 16])
        d = s.to_dict()
        assert {"kind", "center", "radius", "counts"} <= set(d)
        t = surface_from_json(s.to_json())
        assert np.array_equal(t.nodes, s.nodes) and np.array_equal(t.weights, s.weights)
        u = union(cap_boundary([0, 0, 1], 0.5, [16]), antipodal(cap_boundary([0, 0, 1], 0.5, [16])))
        assert np.array_equal(surface_from_dict(u.to_dict()).nodes, u.nodes)

    def test_json_rejects_unknown(self):
        with pytest.raises(QuadratureError):
            surface_from_dict({"kind": "sphere", "center": [0, 0, 0], "radius": 1, "counts": [4, 8],
                               "colour": "red"})
        with pytest.raises(QuadratureError):
            surface_from_dict({"kind": "torus"})


class TestCauchy:
    def test_reproduce_one(self, unit_sphere):
        one = const_field(scalar(1.0, 3))
        assert err(cauchy_reproduce(G3, unit_sphere, one, [0.2, 0, 0]), scalar(1.0, 3)) < 1e-8

    def test_exterior(self, unit_sphere):
        one = const_field(scalar(1.0, 3))
        assert np.abs(cauchy_reproduce(G3, unit_sphere, one, [3.0, 0, 0]).coeffs).max() < 1e-8

    def test_linear(self, unit_sphere):
        y = [0.1, 0.2, -0.1]
        assert err(cauchy_reproduce(G3, unit_sphere, LINEAR, y), LINEAR.at(y)) < 1e-7

    def test_y_on_surface(self, unit_sphere):
        with pytest.raises(QuadratureError):
            cauchy_reproduce(G3, unit_sphere, LINEAR, [1.0, 0, 0])

    def test_refinement(self):
        f = G_at([1.6, 0.2, 0.1])
        y = np.array([0.3, -0.1, 0.2])
        errs = [err(cauchy_reproduce(G3, euclidean_sphere([0, 0, 0], 1.0, [m, 2 * m]), f, y), f.at(y))
                for m in (8, 16)]
        assert errs[1] <= errs[0] / 4

    def test_constant_is_stable(self, rng):
        cs = []
        for _ in range(5):
            c = rng.uniform(-0.5, 0.5, size=3)
            r = rng.uniform(0.5, 1.0)
            s = euclidean_sphere(c, r, [48, 96])
            y = c + rng.uniform(-0.3, 0.3, size=3) * r
            a = c + 3 * rng.normal(size=3) / np.sqrt(3) + 2 * r
            f = G_at(a)
            cs.append(reproduction_constant(cauchy_reproduce(G3, s, f, y), f.at(y))[0])
        assert max(cs) - min(cs) < 1e-3 and abs(np.mean(cs) - 1) < 1e-3

    def test_reproduction_constant(self):
        t = basis_vector(3, 1) + 2.0
        c, r = reproduction_constant(t * 3.0, t)
        assert c == pytest.approx(3.0) and r < 1e-14
        with pytest.raises(QuadratureError):
            reproduction_constant(t, t * 0.0)


class TestMeasures:
    def test_distinct_atoms(self):
        with pytest.raises(QuadratureError):
            PointMeasure([[1.0, 0, 0], [1.0, 0, 0]], [scalar(1, 3), scalar(2, 3)])

    def test_single_atom(self):
        w = scalar(1.0, 3) + basis_vector(3, 2)
        mu = PointMeasure([[0.5, 0.1, 0.0]], [w])
        x = np.array([0.1, 0.7, -0.3])
        expected = G_at([0.5, 0.1, 0.0]).at(x) * w
        assert measure_convolution(G3, mu, x) == expected

    @pytest.mark.parametrize("bundle,parity", [("plus", 1.0), ("minus", -1.0)])
    def test_parity(self, bundle, parity, rng):
        K = kernel_batch(KernelSpec("rp", 2, bundle_sign=bundle))
        loc = np.array([0.6, 0.0, 0.8])
        mu = PointMeasure([loc], [scalar(1.0, 3) + basis_vector(3, 1)]).symmetrized(1.0)
        for _ in range(5):
            x = rng.normal(size=3)
            x /= np.linalg.norm(x)
            a, b = measure_convolution(K, mu, x), measure_convolution(K, mu, -x)
            assert np.abs((b - a * parity).coeffs).max() <= 1e-12 * max(1.0, np.abs(a.coeffs).max())


def rp_setup(bundle):
    K = kernel_batch(KernelSpec("rp", 2, bundle_sign=bundle))
    loc = np.array([math.cos(0.2), 0.0, math.sin(0.2)])
    mu = PointMeasure([loc], [scalar(1.0, 3) + basis_vector(3, 2) * 0.5])
    f = FieldFn(lambda X: np.stack([measure_convolution(K, mu, x).coeffs for x in X]), 3)
    y = np.array([0.0, 0.3, math.sqrt(0.91)])
    return cap_boundary([0, 0, 1], 0.9, [96]), f, y


class TestRPIdentities:
    @pytest.mark.parametrize("bundle", ["plus", "minus"])
    def test_hemisphere(self, bundle):
        cap, f, y = rp_setup(bundle)
        hemi, _ = rp_symmetric_identities(bundle, cap, f, y)
        assert err(hemi, f.at(y)) < 1e-5

    def test_minus_symmetric_zero(self):
        cap, f, y = rp_setup("minus")
        _, sym = rp_symmetric_identities("minus", cap, f, y)
        assert np.abs(sym.coeffs).max() < 1e-5

    @pytest.mark.xfail(strict=True, reason="plus bundle over S u -S gives 0, not 2 f(y)")
    def test_plus_symmetric_factor_two(self):
        cap, f, y = rp_setup("plus")
        _, sym = rp_symmetric_identities("plus", cap, f, y)
        assert err(sym, f.at(y) * 2.0) < 1e-5

    def test_plus_symmetric_is_zero(self):
        cap, f, y = rp_setup("plus")
        _, sym = rp_symmetric_identities("plus", cap, f, y)
        assert np.abs(sym.coeffs).max() < 1e-5

    def test_parity_violation(self):
        cap, f, y = rp_setup("plus")
        with pytest.raises(QuadratureError, match="not odd"):
            rp_symmetric_identities("minus", cap, f, y)


class TestHigherOrder:
    def test_q1_is_cauchy(self):
        spec = KernelSpec("cot", 3, q=1, k=1)
        K = kernel_batch(spec)
        y0 = np.array([0.3, 0.9, 0.2])
        f = FieldFn(lambda X: K(X, y0), 3)
        s = euclidean_sphere([0, 0, 0], 0.4, [24, 48])
        y = np.array([0.1, -0.05, 0.12])
        a = higher_order_reproduce(spec, s, f, y)
        b = cauchy_reproduce(K, s, f, y)
        assert a.allclose(b, atol=1e-15)
        assert err(a, f.at(y)) < 1e-4

    def test_rejects_large_sphere(self):
        spec = KernelSpec("cot", 3, q=1, k=1)
        with pytest.raises(QuadratureError, match="diameter"):
            higher_order_reproduce(spec, euclidean_sphere([0, 0, 0], 0.6, [8, 16]), LINEAR, [0, 0, 0.1])

    def test_rejects_non_periodic(self):
        spec = KernelSpec("cot", 3, q=1, k=1)
        with pytest.raises(QuadratureError, match="periodicity"):
            higher_order_reproduce(spec, euclidean_sphere([0, 0, 0], 0.4, [8, 16]), LINEAR, [0, 0, 0.1])


class TestHopf:
    def test_connectivity(self):
        assert hopf_complement_connected([0, 0, 0], 1.5)
        assert not hopf_complement_connected([1.5, 0, 0], 0.3)
        with pytest.raises(QuadratureError):
            hopf_complement_connected([1.5, 0, 0], 1.4)

    @pytest.mark.parametrize("mode", ["orbit", "literal"])
    def test_reproduce(self, mode):
        spec = KernelSpec("hopf", 3, mode=mode)
        s = euclidean_sphere([1.5, 0, 0], 0.3, [32, 64])
        g = G_at([0.2, 3.0, -4.0])
        y = np.array([1.45, 0.1, 0.05])
        c, _ = reproduction_constant(hopf_reproduce(spec, s, g, y), g.at(y))
        expected = 1.0 if mode == "orbit" else hopf_collapse_constant(3)
        assert abs(c - expected) < 1e-5
        assert np.abs(hopf_reproduce(spec, s, g, [1.2, 0.5, 0.3]).coeffs).max() < 1e-6

    def test_outside_annulus(self):
        with pytest.raises(QuadratureError, match="annulus"):
            hopf_reproduce(KernelSpec("hopf", 3), euclidean_sphere([0.9, 0, 0], 0.2, [8, 16]),
                           G_at([0.2, 3.0, -4.0]), [0.9, 0, 0])


class TestPlemelj:
    def test_constant_jump(self, unit_sphere):
        e1 = const_field(basis_vector(3, 1))
        w = np.array([0.6, 0.0, 0.8])
        ri = plemelj_limit(G3, unit_sphere, e1, w, "inner")
        ro = plemelj_limit(G3, unit_sphere, e1, w, "outer")
        assert err(ri.value - ro.value, e1.at(w)) < 1e-2
        assert err((ri.value + ro.value) * 0.5, ri.pv) < 5e-2
        assert ri.pv_converged and ri.hardy_split is None

    def test_hopf_flag(self):
        s = euclidean_sphere([0, 0, 0], 2.0, [24, 48])
        H = kernel_batch(KernelSpec("hopf", 3, mode="literal"))
        r = plemelj_limit(H, s, const_field(basis_vector(3, 1)), [1.2, 0.0, 1.6], "outer",
                          hopf_sphere=([0, 0, 0], 2.0))
        assert r.hardy_split is False and "no_hardy_split" in r.flags
        assert np.all(np.isfinite(r.value.coeffs))

    def test_bad_inputs(self, unit_sphere):
        e1 = const_field(basis_vector(3, 1))
        with pytest.raises(QuadratureError):
            plemelj_limit(G3, unit_sphere, e1, [0.6, 0, 0.8], "sideways")
        with pytest.raises(QuadratureError):
            plemelj_limit(G3, unit_sphere, e1, [0.5, 0, 0.5], "inner")
