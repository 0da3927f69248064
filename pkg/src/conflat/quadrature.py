"""Surface quadrature and Cauchy-type integral formulas.

Surfaces are round spheres in R^d and boundaries of geodesic caps on the unit
sphere S^n in R^(n+1), plus unions and antipodal images of those. Rules are
tensor products of Gauss-Legendre nodes in the polar angles and uniform nodes
in the last azimuth. The polar axis ("pole") of a rule can be aimed at any
point, which lets principal values cut a symmetric cap around that point.

Reproduction formulas use the inward normal, so a correctly normalized
Euclidean Cauchy kernel reproduces with constant 1:

    f(y) = (1/omega) int_S K(x, y) n_in(x) f(x) dsigma(x).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .clifford import Multivector, SingularError, product_coeffs, vectors_to_coeffs
from .diffops import FieldFn, dirac_power_batch
from .kernels import KernelSpec, cot_regime, gk_normalization, kernel_batch

__all__ = [
    "Surface",
    "PointMeasure",
    "PlemeljResult",
    "QuadratureError",
    "omega",
    "euclidean_sphere",
    "cap_boundary",
    "antipodal",
    "union",
    "surface_from_dict",
    "surface_from_json",
    "surface_integral",
    "cauchy_reproduce",
    "reproduction_constant",
    "rp_symmetric_identities",
    "higher_order_reproduce",
    "hopf_reproduce",
    "hopf_complement_connected",
    "principal_value",
    "plemelj_limit",
    "measure_convolution",
]

Kernel = Callable[[np.ndarray, np.ndarray], np.ndarray]

EPSILONS = (0.2, 0.1, 0.05)
OFFSETS = (0.2, 0.1, 0.05)
ON_SURFACE_TOL = 1e-9


class QuadratureError(ValueError):
    """Bad surface, integrand, or violated precondition of a formula."""


def omega(n: int) -> float:
    """Area of the unit sphere S^(n-1) in R^n."""
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


# ---------------------------------------------------------------------------
# Rules on the unit sphere S^(d-1) in R^d, pole at e_1


def _sphere_rule(d: int, counts: Sequence[int], theta_min: float = 0.0):
    counts = [int(c) for c in counts]
    if len(counts) != d - 1 or min(counts) < 1:
        raise QuadratureError(f"S^{d - 1} needs {d - 1} positive node counts, got {counts}")
    if d == 2:
        m = counts[0]
        if theta_min > 0:
            t, w = np.polynomial.legendre.leggauss(m)
            a, b = theta_min, 2 * math.pi - theta_min
            phi = 0.5 * (b - a) * t + 0.5 * (a + b)
            w = 0.5 * (b - a) * w
        else:
            phi = 2 * math.pi * (np.arange(m) + 0.5) / m
            w = np.full(m, 2 * math.pi / m)
        return np.stack([np.cos(phi), np.sin(phi)], axis=1), w
    t, w = np.polynomial.legendre.leggauss(counts[0])
    theta = 0.5 * (math.pi - theta_min) * t + 0.5 * (math.pi + theta_min)
    w = 0.5 * (math.pi - theta_min) * w * np.sin(theta) ** (d - 2)
    sub, sw = _sphere_rule(d - 1, counts[1:])
    pts = np.concatenate([
        np.repeat(np.cos(theta), len(sub))[:, None],
        (np.sin(theta)[:, None, None] * sub[None]).reshape(-1, d - 1),
    ], axis=1)
    return pts, np.outer(w, sw).ravel()


def _frame(pole: np.ndarray, d: int) -> np.ndarray:
    """Orthonormal d x d matrix whose first column is `pole`."""
    pole = pole / np.linalg.norm(pole)
    M = np.concatenate([pole[:, None], np.eye(d)], axis=1)
    Q, _ = np.linalg.qr(M)
    Q = Q[:, :d]
    if Q[:, 0] @ pole < 0:
        Q = -Q
    return Q


def _complement_basis(c: np.ndarray) -> np.ndarray:
    """(d, d-1) orthonormal basis of the plane orthogonal to c."""
    return _frame(c, len(c))[:, 1:]


# ---------------------------------------------------------------------------


@dataclass
class Surface:
    """Closed hypersurface sampled by nodes, outward unit normals and weights.

    `weights` already include the surface Jacobian. `desc` is the JSON
    description the surface was built from.
    """

    nodes: np.ndarray
    normals: np.ndarray
    weights: np.ndarray
    ambient: str
    desc: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.ambient not in ("euclidean", "sphere"):
            raise QuadratureError(f"ambient must be euclidean or sphere, got {self.ambient!r}")
        if not (len(self.nodes) == len(self.normals) == len(self.weights)):
            raise QuadratureError("nodes, normals and weights differ in length")

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    @property
    def area(self) -> float:
        return math.fsum(self.weights)

    def to_dict(self) -> dict:
        return json.loads(json.dumps(self.desc))

    def to_json(self) -> str:
        return json.dumps(self.desc, sort_keys=True)

    # geometry, delegated to the description
    def contains(self, p) -> bool:
        return _contains(self.desc, np.asarray(p, dtype=float))

    def normal_at(self, p) -> np.ndarray:
        return _normal_at(self.desc, np.asarray(p, dtype=float))

    def with_pole(self, points: Sequence, exclude: float = 0.0) -> Surface:
        """Rebuild with the rule's pole at whichever of `points` lies on each
        component, optionally cutting a cap of angular radius `exclude` there."""
        pts = [np.asarray(p, dtype=float) for p in points]
        return surface_from_dict(_repole(self.desc, pts, exclude))


def euclidean_sphere(center, radius: float, counts: Sequence[int], pole=None,
                     exclude: float = 0.0) -> Surface:
    """Round sphere |x - center| = radius in R^d, d = len(center)."""
    c = np.asarray(center, dtype=float)
    d = len(c)
    if radius <= 0:
        raise QuadratureError("radius must be positive")
    p = np.eye(d)[-1] if pole is None else np.asarray(pole, dtype=float)
    u, w = _sphere_rule(d, counts, exclude)
    dirs = u @ _frame(p, d).T
    desc = {"kind": "sphere", "center": c.tolist(), "radius": float(radius),
            "counts": [int(k) for k in counts], "pole": (p / np.linalg.norm(p) + 0.0).tolist(),
            "exclude": float(exclude)}
    return Surface(c + radius * dirs, dirs, w * radius ** (d - 1), "euclidean", desc)


def cap_boundary(center, alpha: float, counts: Sequence[int], pole=None,
                 exclude: float = 0.0) -> Surface:
    """Boundary of the geodesic cap {<x, c> >= cos alpha} on S^n, n = len(center) - 1.

    The normal points away from the cap centre, tangent to S^n.
    """
    c = np.asarray(center, dtype=float)
    c = c / np.linalg.norm(c)
    if not 0 < alpha < math.pi:
        raise QuadratureError("cap radius alpha must lie in (0, pi)")
    N = len(c)
    B = _complement_basis(c)
    if pole is None:
        p = B[:, -1]
    else:
        p = np.asarray(pole, dtype=float)
        p = p - (p @ c) * c
        if np.linalg.norm(p) < 1e-12:
            raise QuadratureError("pole direction is parallel to the cap centre")
        p = p / np.linalg.norm(p)
    u, w = _sphere_rule(N - 1, counts, exclude)
    om = u @ _frame(B.T @ p, N - 1).T @ B.T
    ca, sa = math.cos(alpha), math.sin(alpha)
    desc = {"kind": "cap", "center": c.tolist(), "radius": float(alpha),
            "counts": [int(k) for k in counts], "pole": (p + 0.0).tolist(), "exclude": float(exclude)}
    return Surface(ca * c + sa * om, -sa * c + ca * om, w * sa ** (N - 2), "sphere", desc)


def antipodal(s: Surface) -> Surface:
    """The image of s under x -> -x, with normals carried along."""
    return Surface(-s.nodes, -s.normals, s.weights.copy(), s.ambient,
                   {"kind": "antipodal", "of": s.to_dict()})


def union(*parts: Surface) -> Surface:
    if len({p.ambient for p in parts}) != 1 or len({p.dim for p in parts}) != 1:
        raise QuadratureError("union of surfaces in different ambient spaces")
    return Surface(np.concatenate([p.nodes for p in parts]),
                   np.concatenate([p.normals for p in parts]),
                   np.concatenate([p.weights for p in parts]),
                   parts[0].ambient, {"kind": "union", "parts": [p.to_dict() for p in parts]})


_KINDS = {"sphere", "cap", "antipodal", "union"}
_FIELDS = {
    "sphere": {"kind", "center", "radius", "counts", "pole", "exclude"},
    "cap": {"kind", "center", "radius", "counts", "pole", "exclude"},
    "antipodal": {"kind", "of"},
    "union": {"kind", "parts"},
}


def surface_from_dict(d: dict) -> Surface:
    kind = d.get("kind")
    if kind not in _KINDS:
        raise QuadratureError(f"unknown surface kind {kind!r}")
    extra = set(d) - _FIELDS[kind]
    if extra:
        raise QuadratureError(f"unknown surface fields {sorted(extra)}")
    if kind == "antipodal":
        return antipodal(surface_from_dict(d["of"]))
    if kind == "union":
        return union(*(surface_from_dict(p) for p in d["parts"]))
    build = euclidean_sphere if kind == "sphere" else cap_boundary
    return build(d["center"], d["radius"], d["counts"], d.get("pole"), d.get("exclude", 0.0))


def surface_from_json(text: str) -> Surface:
    return surface_from_dict(json.loads(text))


def _contains(d: dict, p: np.ndarray) -> bool:
    kind = d["kind"]
    if kind == "union":
        return any(_contains(q, p) for q in d["parts"])
    if kind == "antipodal":
        return _contains(d["of"], -p)
    c = np.asarray(d["center"])
    if kind == "sphere":
        return abs(np.linalg.norm(p - c) - d["radius"]) < ON_SURFACE_TOL
    return (abs(np.linalg.norm(p) - 1) < ON_SURFACE_TOL
            and abs(p @ c - math.cos(d["radius"])) < ON_SURFACE_TOL)


def _normal_at(d: dict, p: np.ndarray) -> np.ndarray:
    if not _contains(d, p):
        raise QuadratureError("point is not on the surface")
    kind = d["kind"]
    if kind == "union":
        return next(_normal_at(q, p) for q in d["parts"] if _contains(q, p))
    if kind == "antipodal":
        return -_normal_at(d["of"], -p)
    c = np.asarray(d["center"])
    if kind == "sphere":
        return (p - c) / d["radius"]
    a = d["radius"]
    om = (p - math.cos(a) * c) / math.sin(a)
    return -math.sin(a) * c + math.cos(a) * om


def _repole(d: dict, pts: list[np.ndarray], exclude: float) -> dict:
    kind = d["kind"]
    if kind == "union":
        return {"kind": "union", "parts": [_repole(q, pts, exclude) for q in d["parts"]]}
    if kind == "antipodal":
        return {"kind": "antipodal", "of": _repole(d["of"], [-p for p in pts], exclude)}
    out = dict(d)
    on = [p for p in pts if _contains(d, p)]
    out["exclude"] = 0.0
    if on:
        c = np.asarray(d["center"])
        out["pole"] = ((on[0] - c) if kind == "sphere" else on[0]).tolist()
        out["exclude"] = float(exclude)
    return out


# ---------------------------------------------------------------------------


@dataclass
class PointMeasure:
    """Finite Clifford-valued measure sum_i w_i delta_{p_i}."""

    locations: np.ndarray
    weights: list[Multivector]

    def __post_init__(self):
        self.locations = np.atleast_2d(np.asarray(self.locations, dtype=float))
        if len(self.locations) != len(self.weights):
            raise QuadratureError("one weight per atom location")
        for i in range(len(self.locations)):
            for j in range(i):
                if np.array_equal(self.locations[i], self.locations[j]):
                    raise QuadratureError(f"atoms {j} and {i} share a location")

    def symmetrized(self, sign: float = 1.0) -> PointMeasure:
        """mu + sign * (mu pushed forward by x -> -x)."""
        return PointMeasure(np.concatenate([self.locations, -self.locations]),
                            list(self.weights) + [w * sign for w in self.weights])


def measure_convolution(kernel: Kernel, mu: PointMeasure, x) -> Multivector:
    """sum_i K(x, p_i) w_i."""
    x = np.asarray(x, dtype=float)
    dim = mu.weights[0].dim
    out = np.zeros(1 << dim)
    for loc, w in zip(mu.locations, mu.weights):
        out += product_coeffs(np.asarray(kernel(x[None], loc))[0], w.coeffs, dim)
    return Multivector(dim, out)


# ---------------------------------------------------------------------------


def surface_integral(s: Surface, integrand) -> Multivector:
    """sum_i w_i F(x_i), summed exactly rounded per blade in node order.

    `integrand` is an (N, 2^d) array of values at the nodes or a callable
    taking the (N, d) nodes and returning one.
    """
    vals = integrand(s.nodes) if callable(integrand) else integrand
    vals = np.asarray(vals, dtype=float)
    if vals.ndim != 2 or len(vals) != len(s.nodes):
        raise QuadratureError(f"integrand shape {vals.shape} does not match {len(s.nodes)} nodes")
    bad = ~np.isfinite(vals).all(axis=1)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise QuadratureError(f"non-finite integrand at node {i}, x = {s.nodes[i].tolist()}")
    dim = int(round(math.log2(vals.shape[1])))
    weighted = vals * s.weights[:, None]
    return Multivector(dim, [math.fsum(col) for col in weighted.T])


def _kernel_values(kernel: Kernel, s: Surface, y: np.ndarray) -> np.ndarray:
    try:
        return np.asarray(kernel(s.nodes, y), dtype=float)
    except SingularError as exc:
        raise QuadratureError(f"kernel singular on the surface: {exc}") from exc


def _default_omega(s: Surface) -> float:
    return omega(s.dim if s.ambient == "euclidean" else s.dim - 1)


def _cauchy_integrand(kernel: Kernel, s: Surface, fvals: np.ndarray, y: np.ndarray) -> np.ndarray:
    d = s.dim
    nin = vectors_to_coeffs(-s.normals, d)
    return product_coeffs(product_coeffs(_kernel_values(kernel, s, y), nin, d), fvals, d)


def cauchy_reproduce(kernel: Kernel, s: Surface, f: FieldFn, y,
                     omega_: float | None = None) -> Multivector:
    """(1/omega) int_S K(x, y) n_in(x) f(x) dsigma(x)."""
    y = np.asarray(y, dtype=float)
    if s.contains(y):
        raise QuadratureError("y lies on the surface")
    om = _default_omega(s) if omega_ is None else omega_
    return surface_integral(s, _cauchy_integrand(kernel, s, f(s.nodes), y)) * (1.0 / om)


def reproduction_constant(value: Multivector, target: Multivector) -> tuple[float, float]:
    """Least-squares c with value ~ c * target, and the residual |value - c target|."""
    t = target.coeffs
    tt = float(t @ t)
    if tt == 0.0:
        raise QuadratureError("target vanishes; constant undefined")
    c = float(value.coeffs @ t) / tt
    return c, float(np.linalg.norm(value.coeffs - c * t))


# ---------------------------------------------------------------------------


def _parity_check(f: FieldFn, s: Surface, parity: float, tol: float = 1e-8) -> None:
    X = s.nodes[:: max(1, len(s.nodes) // 64)]
    a, b = f(X), f(-X)
    defect = float(np.max(np.abs(b - parity * a)))
    scale = max(1.0, float(np.max(np.abs(a))))
    if defect > tol * scale:
        kind = "even" if parity > 0 else "odd"
        raise QuadratureError(f"f is not {kind}: sampled defect {defect:.3g}")


def rp_symmetric_identities(bundle: str, s: Surface, f: FieldFn, y,
                            omega_: float | None = None) -> tuple[Multivector, Multivector]:
    """Reproduction with G_s(x,y) +- G_s(-x,y) over s and over s u (-s).

    s is a surface on S^n in one open hemisphere; the plus bundle pairs with
    even f and the minus bundle with odd f. Returns (hemisphere value,
    symmetric value).
    """
    sign = {"plus": 1.0, "minus": -1.0}[bundle]
    if s.ambient != "sphere":
        raise QuadratureError("RP^n identities need a surface on the sphere")
    n = s.dim - 1
    _parity_check(f, s, sign)
    kernel = kernel_batch(KernelSpec("rp", n, q=1, bundle_sign=bundle))
    hemi = cauchy_reproduce(kernel, s, f, y, omega_)
    sym = cauchy_reproduce(kernel, union(s, antipodal(s)), f, y, omega_)
    return hemi, sym


# ---------------------------------------------------------------------------


def _periodicity_defect(spec: KernelSpec, f: FieldFn, X: np.ndarray) -> float:
    base = f(X)
    scale = max(float(np.max(np.abs(base))), 1e-300)
    worst = 0.0
    for j in range(spec.k):
        e = np.zeros(spec.n)
        e[j] = 1.0
        s = -1.0 if j < spec.l else 1.0
        worst = max(worst, float(np.max(np.abs(f(X + e) - s * base))) / scale)
    return worst


def higher_order_reproduce(spec: KernelSpec, s: Surface, f: FieldFn, y,
                           h: float | None = None, periodicity_tol: float = 1e-2,
                           omega_: float | None = None) -> Multivector:
    """(1/omega) int_S sum_{j<q} (-1)^j K_{j+1}(x,y) n_in(x) D^j f(x) dsigma(x).

    K_{j+1} is cot_{j+1,k,l} divided by c_2...c_{j+1}, the factor with
    D G_{j+1} = c_{j+1} G_j, so that the Stokes telescoping closes.
    """
    if spec.family != "cot":
        raise QuadratureError("higher-order reproduction uses the cot family")
    if s.ambient != "euclidean":
        raise QuadratureError("higher-order reproduction needs a Euclidean surface")
    if s.desc.get("kind") != "sphere" or 2 * s.desc["radius"] >= 1.0:
        raise QuadratureError("need a sphere of diameter < 1 so the enclosed ball "
                              "meets none of its lattice translates")
    for j in range(1, spec.q + 1):
        if cot_regime(spec.n, j, spec.k) == "supercritical":
            raise QuadratureError(f"cot_{j} is supercritical for n={spec.n}, k={spec.k}")
    y = np.asarray(y, dtype=float)
    if s.contains(y):
        raise QuadratureError("y lies on the surface")
    sample = s.nodes[:: max(1, len(s.nodes) // 16)]
    defect = _periodicity_defect(spec, f, sample)
    if defect > periodicity_tol:
        raise QuadratureError(f"f fails the bundle periodicity check (defect {defect:.3g})")
    d = s.dim
    nin = vectors_to_coeffs(-s.normals, d)
    total = np.zeros((len(s.nodes), 1 << d))
    for j in range(spec.q):
        kj = kernel_batch(KernelSpec("cot", spec.n, q=j + 1, k=spec.k, l=spec.l,
                                     a=spec.a, b=spec.b, trunc=spec.trunc))
        K = _kernel_values(kj, s, y) / gk_normalization(spec.n, j + 1)
        Dj = dirac_power_batch(f, s.nodes, j, h)
        total += (-1) ** j * product_coeffs(product_coeffs(K, nin, d), Dj, d)
    om = omega(d) if omega_ is None else omega_
    return surface_integral(s, total) * (1.0 / om)


# ---------------------------------------------------------------------------


def hopf_complement_connected(center, radius: float) -> bool:
    """Whether the image of the sphere |x - center| = radius in the Hopf
    manifold (R^n minus 0 modulo x -> 2x) has connected complement.

    A sphere around the origin is identified with its dilates, so the inside
    and outside regions glue into one annulus: connected. A sphere bounding a
    ball that misses the origin and all its dyadic images splits the quotient
    into the ball and the rest.
    """
    c = np.asarray(center, dtype=float)
    dist = float(np.linalg.norm(c))
    if dist + radius <= 0 or radius <= 0:
        raise QuadratureError("degenerate sphere")
    if dist < radius:
        # outer radius must stay below twice the inner one to embed
        if dist + radius >= 2 * (radius - dist):
            raise QuadratureError("sphere meets its dyadic image; not embedded in the quotient")
        return True
    lo, hi = dist - radius, dist + radius
    if lo <= 0 or hi >= 2 * lo:
        raise QuadratureError("ball meets its dyadic image; not embedded in the quotient")
    return False


def hopf_reproduce(spec: KernelSpec, s: Surface, f: FieldFn, y,
                   omega_: float | None = None) -> Multivector:
    """Cauchy reproduction with the Hopf kernel over a sphere inside 1 <= |x| < 2."""
    if spec.family != "hopf":
        raise QuadratureError("hopf_reproduce needs a hopf kernel spec")
    r = np.linalg.norm(s.nodes, axis=1)
    if r.min() < 1.0 or r.max() >= 2.0:
        raise QuadratureError(f"surface leaves the fundamental annulus 1 <= |x| < 2 "
                              f"(|x| in [{r.min():.4g}, {r.max():.4g}])")
    return cauchy_reproduce(kernel_batch(spec), s, f, y, omega_)


# ---------------------------------------------------------------------------


@dataclass
class PlemeljResult:
    """One-sided boundary limit of a Cauchy-type integral at w."""

    value: Multivector
    side: str
    samples: list[Multivector]
    pv: Multivector
    pv_samples: list[Multivector]
    pv_converged: bool
    hardy_split: bool | None = None
    flags: list[str] = field(default_factory=list)


def _extrapolate(ts: Sequence[float], vals: list[Multivector]) -> Multivector:
    """Value at t = 0 of the quadratic through the three samples."""
    ts = np.asarray(ts, dtype=float)
    V = np.stack([v.coeffs for v in vals])
    A = np.vander(ts, 3, increasing=True)
    coef = np.linalg.solve(A, V)
    return Multivector(vals[0].dim, coef[0])


def _singular_points(s: Surface, w: np.ndarray) -> list[np.ndarray]:
    pts = [w]
    if s.contains(-w):
        pts.append(-w)
    return pts


def principal_value(kernel: Kernel, s: Surface, eta: FieldFn, w, omega_: float | None = None,
                    epsilons: Sequence[float] = EPSILONS):
    """PV of (1/omega) int K(x, w) n_in(x) eta(x) dsigma(x) by cap exclusion.

    Caps of angular radius eps are cut symmetrically around w (and around -w
    when that is on s too) for three eps, then extrapolated to eps = 0.
    Returns (value, samples, converged).
    """
    w = np.asarray(w, dtype=float)
    if not s.contains(w):
        raise QuadratureError("w is not on the surface")
    om = _default_omega(s) if omega_ is None else omega_
    pts = _singular_points(s, w)
    samples = []
    for eps in epsilons:
        se = s.with_pole(pts, eps)
        samples.append(surface_integral(se, _cauchy_integrand(kernel, se, eta(se.nodes), w))
                       * (1.0 / om))
    d1 = np.linalg.norm(samples[1].coeffs - samples[0].coeffs)
    d2 = np.linalg.norm(samples[2].coeffs - samples[1].coeffs)
    scale = max(1.0, max(np.linalg.norm(v.coeffs) for v in samples))
    converged = bool(d2 <= 1e-10 * scale or d2 <= 0.75 * d1)
    return _extrapolate(epsilons, samples), samples, converged


def _approach(s: Surface, w: np.ndarray, t: float, side: str) -> np.ndarray:
    n = s.normal_at(w)
    sgn = 1.0 if side == "outer" else -1.0
    if s.ambient == "euclidean":
        return w + sgn * t * n
    return math.cos(t) * w + sgn * math.sin(t) * n


def plemelj_limit(kernel: Kernel, s: Surface, eta: FieldFn, w, side: str = "inner",
                  offsets: Sequence[float] = OFFSETS, omega_: float | None = None,
                  hopf_sphere: tuple | None = None) -> PlemeljResult:
    """Limit of the Cauchy-type integral as y -> w along the normal.

    y(t) moves a distance t off w (geodesically on spheres) toward the inside
    or outside of s; the three samples are extrapolated to t = 0. When
    `hopf_sphere` = (center, radius) is given the result also records whether
    the surface splits the Hopf quotient into two sides.
    """
    if side not in ("inner", "outer"):
        raise QuadratureError("side must be inner or outer")
    w = np.asarray(w, dtype=float)
    om = _default_omega(s) if omega_ is None else omega_
    sp = s.with_pole(_singular_points(s, w))
    fvals = eta(sp.nodes)
    samples = []
    for t in offsets:
        y = _approach(s, w, t, side)
        samples.append(surface_integral(sp, _cauchy_integrand(kernel, sp, fvals, y)) * (1.0 / om))
    pv, pv_samples, ok = principal_value(kernel, s, eta, w, omega_)
    res = PlemeljResult(_extrapolate(offsets, samples), side, samples, pv, pv_samples, ok)
    if not ok:
        res.flags.append("pv_not_converged")
    if hopf_sphere is not None:
        res.hardy_split = not hopf_complement_connected(*hopf_sphere)
        if not res.hardy_split:
            res.flags.append("no_hardy_split")
    return res
