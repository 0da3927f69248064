"""Cauchy and Green kernels: Euclidean, spherical, RP^n, Z^k-periodic
(cotangent type), Hopf, transversion and semidirect families.

Every kernel has a batched core working on numpy arrays (points on the last
axis, Clifford coefficients on the last axis of the result) and a thin
Multivector wrapper for single evaluations.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, Sequence

import numpy as np

from .clifford import (
    CliffordError,
    Multivector,
    SingularError,
    product_coeffs,
    vectors_to_coeffs,
)
from .lattice import enumerate_shells, half_lattice, kahan_prefix, shell_sums

__all__ = [
    "FAMILIES",
    "TruncationPolicy",
    "KernelSpec",
    "default_truncation",
    "euclid_G",
    "euclid_Gk",
    "gk_constant",
    "gk_normalization",
    "sphere_Gs",
    "sphere_Hs",
    "rp_kernel",
    "cot_regime",
    "cot_kernel",
    "hopf_kernel",
    "hopf_collapse_constant",
    "hopf_poisson",
    "hopf_transfer",
    "transversion_kernel",
    "transversion_swapped_batch",
    "semidirect_kernel",
    "tail_estimate",
    "kernel_batch",
    "enumerate_shells",
    "half_lattice",
]

FAMILIES = (
    "euclid",
    "euclid_k",
    "sphere_cauchy",
    "sphere_green",
    "rp",
    "cot",
    "hopf",
    "transversion",
    "semidirect",
    "hopf_poisson",
    "hopf_transfer",
)

SINGULAR_TOL = 1e-14
SPHERE_TOL = 1e-12
DEFAULT_A = (0.5, 0.0)
DEFAULT_B = (0.25, 0.25)
HOPF_DEPTH = 60


@dataclass(frozen=True)
class TruncationPolicy:
    radius: int = 40
    summation: str = "symmetric_shells"
    compensation: str = "kahan"
    tail_report: bool = False

    def __post_init__(self):
        if int(self.radius) < 1:
            raise ValueError("truncation radius must be >= 1")
        if self.summation not in ("symmetric_shells", "richardson"):
            raise ValueError(f"unknown summation {self.summation!r}")
        if self.compensation != "kahan":
            raise ValueError(f"unknown compensation {self.compensation!r}")


def default_truncation(k: int, family: str = "cot") -> TruncationPolicy:
    if family in ("hopf", "hopf_poisson", "hopf_transfer"):
        return TruncationPolicy(radius=HOPF_DEPTH)
    return TruncationPolicy(radius={1: 60, 2: 40}.get(k, 20))


@dataclass(frozen=True)
class KernelSpec:
    """Which kernel to evaluate, with bundle parameters and truncation."""

    family: str
    n: int
    q: int = 1
    k: int = 0
    l: int = 0
    bundle_sign: str = "plus"
    a: tuple | None = None
    b: tuple | None = None
    mode: str = "orbit"
    trunc: TruncationPolicy = field(default=None)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}")
        if self.bundle_sign not in ("plus", "minus"):
            raise ValueError(f"bundle_sign must be plus or minus, got {self.bundle_sign!r}")
        if self.mode not in ("literal", "orbit"):
            raise ValueError(f"mode must be literal or orbit, got {self.mode!r}")
        if not 0 <= self.l <= self.k <= self.n:
            raise ValueError(f"need 0 <= l <= k <= n, got l={self.l}, k={self.k}, n={self.n}")
        if self.trunc is None:
            object.__setattr__(self, "trunc", default_truncation(self.k, self.family))
        for name in ("a", "b"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, tuple(float(t) for t in v))

    @property
    def sign(self) -> float:
        return 1.0 if self.bundle_sign == "plus" else -1.0

    def point_a(self) -> np.ndarray:
        return _pad(self.a if self.a is not None else DEFAULT_A, self.n)

    def point_b(self) -> np.ndarray:
        return _pad(self.b if self.b is not None else DEFAULT_B, self.n)

    def with_radius(self, radius: int) -> KernelSpec:
        return replace(self, trunc=replace(self.trunc, radius=int(radius)))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["a"] = list(self.a) if self.a is not None else None
        d["b"] = list(self.b) if self.b is not None else None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> KernelSpec:
        allowed = {f.name for f in fields(cls)}
        unknown = set(d) - allowed
        if unknown:
            raise ValueError(f"unknown KernelSpec fields: {sorted(unknown)}")
        d = dict(d)
        if d.get("trunc") is not None:
            t = d["trunc"]
            t_allowed = {f.name for f in fields(TruncationPolicy)}
            bad = set(t) - t_allowed
            if bad:
                raise ValueError(f"unknown TruncationPolicy fields: {sorted(bad)}")
            d["trunc"] = TruncationPolicy(**t)
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> KernelSpec:
        return cls.from_dict(json.loads(text))


def _pad(v: Sequence[float], n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if len(v) > n:
        raise ValueError(f"point of length {len(v)} does not fit in R^{n}")
    out = np.zeros(n)
    out[: len(v)] = v
    return out


def _vec(x, n: int | None = None) -> np.ndarray:
    if isinstance(x, Multivector):
        if not x.is_vector(1e-12):
            raise CliffordError("expected a vector argument")
        return x.vector_part()
    x = np.asarray(x, dtype=float)
    if n is not None and x.shape[-1] != n:
        raise CliffordError(f"expected vectors in R^{n}, got shape {x.shape}")
    return x


def _check_nonsingular(r: np.ndarray, what: str = "kernel") -> None:
    if np.any(r < SINGULAR_TOL):
        raise SingularError(f"{what} evaluated on its singular set")


# ---------------------------------------------------------------------------
# Euclidean fundamental solutions


def gk_compact(w: np.ndarray, n: int, q: int) -> np.ndarray:
    """G_q on (..., n) vectors in compact form.

    Odd q gives (..., n) vector components of w/|w|^(n-q+1); even q gives
    (..., 1) holding 1/|w|^(n-q).
    """
    r = np.linalg.norm(w, axis=-1)
    _check_nonsingular(r)
    if q % 2:
        return w / r[..., None] ** (n - q + 1)
    return (1.0 / r ** (n - q))[..., None]


def _embed(compact: np.ndarray, n: int) -> np.ndarray:
    if compact.shape[-1] == 1:
        out = np.zeros(compact.shape[:-1] + (1 << n,))
        out[..., 0] = compact[..., 0]
        return out
    return vectors_to_coeffs(compact, n)


def _check_q(n: int, q: int) -> None:
    if not 1 <= q <= n - 1:
        raise ValueError(f"order q={q} outside 1..n-1 for n={n}")


def euclid_G(v) -> Multivector:
    """G(v) = v / |v|^n."""
    v = _vec(v)
    n = len(v)
    return Multivector(n, _embed(gk_compact(v, n, 1), n))


def euclid_Gk(v, q: int) -> Multivector:
    """Fundamental solution of D^q: v/|v|^(n-q+1) for odd q, |v|^(q-n) for even q."""
    v = _vec(v)
    n = len(v)
    _check_q(n, q)
    return Multivector(n, _embed(gk_compact(v, n, q), n))


def gk_constant(n: int, q: int) -> float:
    """c_q with D G_q = c_q G_{q-1}; q - n for even q and 1 - q for odd q."""
    return float(q - n) if q % 2 == 0 else float(1 - q)


def gk_normalization(n: int, q: int) -> float:
    """Product c_2 ... c_q, so G_q / gk_normalization satisfies D^(q-1) -> G_1."""
    out = 1.0
    for j in range(2, q + 1):
        out *= gk_constant(n, j)
    return out


# ---------------------------------------------------------------------------
# Sphere S^n in R^{n+1}


def _on_sphere(x: np.ndarray) -> None:
    if np.any(np.abs(np.linalg.norm(x, axis=-1) - 1.0) > SPHERE_TOL):
        raise CliffordError("point is not on the unit sphere")


def sphere_Gs_batch(X: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    d = X - y
    r = np.linalg.norm(d, axis=-1)
    _check_nonsingular(r)
    return vectors_to_coeffs(d / r[..., None] ** n, n + 1)


def sphere_Hs_batch(X: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    if n <= 2:
        raise ValueError("spherical Green kernel needs n > 2")
    r = np.linalg.norm(X - y, axis=-1)
    _check_nonsingular(r)
    out = np.zeros(r.shape + (1 << (n + 1),))
    out[..., 0] = 1.0 / ((n - 2) * r ** (n - 2))
    return out


def sphere_Gs(x, y, n: int) -> Multivector:
    x, y = _vec(x, n + 1), _vec(y, n + 1)
    _on_sphere(x)
    _on_sphere(y)
    return Multivector(n + 1, sphere_Gs_batch(x, y, n))


def sphere_Hs(x, y, n: int) -> Multivector:
    if n <= 2:
        raise ValueError("spherical Green kernel needs n > 2")
    x, y = _vec(x, n + 1), _vec(y, n + 1)
    _on_sphere(x)
    _on_sphere(y)
    return Multivector(n + 1, sphere_Hs_batch(x, y, n))


def rp_batch(X: np.ndarray, y: np.ndarray, n: int, sign: float, order: int) -> np.ndarray:
    base = sphere_Gs_batch if order == 1 else sphere_Hs_batch
    return base(X, y, n) + sign * base(-X, y, n)


def rp_kernel(x, y, n: int, bundle: str = "plus", order: int = 1) -> Multivector:
    """G_s(x,y) +- G_s(-x,y) (order 1) or H_s(x,y) +- H_s(-x,y) (order 2)."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    sign = {"plus": 1.0, "minus": -1.0}[bundle]
    x, y = _vec(x, n + 1), _vec(y, n + 1)
    _on_sphere(x)
    _on_sphere(y)
    return Multivector(n + 1, rp_batch(x, y, n, sign, order))


# ---------------------------------------------------------------------------
# Z^k-periodic (cotangent type) kernels


def cot_regime(n: int, q: int, k: int) -> str:
    if k < 1:
        raise ValueError("lattice rank k must be >= 1")
    _check_q(n, q)
    if k < n - q:
        return "generic"
    if k == n - q:
        return "critical"
    if k == n - q + 1:
        return "supercritical"
    raise ValueError(f"no cotangent kernel for n={n}, q={q}, k={k}")


def _lattice_vectors(k: int, R: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    m = enumerate_shells(k, R)
    L = np.zeros((len(m), n))
    L[:, :k] = m
    return m, L


def _signs(m: np.ndarray, l: int) -> np.ndarray:
    if l == 0:
        return np.ones(len(m))
    return np.where(m[:, :l].sum(axis=1) % 2 == 0, 1.0, -1.0)


def _richardson(values: np.ndarray, radii: Sequence[int]) -> np.ndarray:
    rho = np.asarray(radii, dtype=float) + 0.5
    A = np.stack([np.ones_like(rho), 1 / rho, 1 / rho**2], axis=1)
    flat = values.reshape(len(radii), -1)
    return np.linalg.solve(A, flat)[0].reshape(values.shape[1:])


def _radii(trunc: TruncationPolicy) -> list[int]:
    R = int(trunc.radius)
    return [R, 2 * R, 4 * R] if trunc.summation == "richardson" else [R]


def _finish(partials: np.ndarray, trunc: TruncationPolicy) -> np.ndarray:
    if trunc.summation == "richardson":
        return _richardson(partials, _radii(trunc))
    return partials[0]


_CHUNK = 2_000_000


def _signed_sum(V: np.ndarray, n: int, q: int, k: int, l: int,
                trunc: TruncationPolicy, skip_origin: bool = False) -> np.ndarray:
    """sum_m s(m) G_q(v + m) over shells, compact form, all requested radii.

    Returns (len(radii), M, C).
    """
    radii = _radii(trunc)
    Rmax = radii[-1]
    m, L = _lattice_vectors(k, Rmax, n)
    s = _signs(m, l)
    if skip_origin:
        s = s.copy()
        s[0] = 0.0
    V = np.atleast_2d(V)
    M = len(V)
    C = n if q % 2 else 1
    out = np.empty((len(radii), M, C))
    step = max(1, _CHUNK // max(1, len(L) * n))
    for i in range(0, M, step):
        W = V[i:i + step, None, :] + L[None, :, :]
        if skip_origin:
            W[:, 0, :] = 1.0  # placeholder, weight is zero
        terms = gk_compact(W, n, q) * s[None, :, None]
        out[:, i:i + step] = kahan_prefix(shell_sums(terms, k, Rmax), radii)
    return out


def _lattice_constant(n: int, q: int, k: int, l: int, a: np.ndarray, b: np.ndarray,
                      trunc: TruncationPolicy) -> np.ndarray:
    """sum_{m != 0} s(m) [G_q(m - a) - G_q(m - b)] at every requested radius."""
    return (_signed_sum(-a[None], n, q, k, l, trunc, skip_origin=True)
            - _signed_sum(-b[None], n, q, k, l, trunc, skip_origin=True))


def cot_batch(spec: KernelSpec, V: np.ndarray, q: int | None = None) -> np.ndarray:
    """Cotangent kernel at differences V = x - y, shape (M, n) -> (M, 2^n)."""
    n, k, l = spec.n, spec.k, spec.l
    q = spec.q if q is None else q
    regime = cot_regime(n, q, k)
    V = np.atleast_2d(np.asarray(V, dtype=float))
    if regime in ("generic", "critical"):
        partial = _signed_sum(V, n, q, k, l, spec.trunc)
    else:
        a, b = spec.point_a(), spec.point_b()
        if _congruent(a, b, k) or _on_lattice(a, k) or _on_lattice(b, k):
            raise ValueError("supercritical regime needs a, b off Z^k and a != b mod Z^k")
        partial = (_signed_sum(V - a, n, q, k, l, spec.trunc)
                   - _signed_sum(V - b, n, q, k, l, spec.trunc))
        if l == 0:
            partial = partial - _lattice_constant(n, q, k, l, a, b, spec.trunc)
    return _embed(_finish(partial, spec.trunc), n)


def _on_lattice(p: np.ndarray, k: int) -> bool:
    frac = p[:k] - np.round(p[:k])
    return bool(np.all(np.abs(frac) < 1e-12) and np.all(np.abs(p[k:]) < 1e-12))


def _congruent(a: np.ndarray, b: np.ndarray, k: int) -> bool:
    return _on_lattice(a - b, k)


def cot_kernel(spec: KernelSpec, x, y) -> Multivector:
    """Signed Z^k-periodization of G_q at x - y.

    The regime follows from (n, q, k): generic for k < n - q, critical for
    k = n - q, supercritical (regularised by the points a, b) for
    k = n - q + 1. All three are summed over sup-norm shells with m and -m
    adjacent, which is exactly the half-lattice pairing of the critical case.
    """
    n = spec.n
    v = _vec(x, n) - _vec(y, n)
    return Multivector(n, cot_batch(spec, v[None])[0])


def tail_estimate(spec: KernelSpec, paired: bool = True) -> float:
    """Size of one boundary shell of the truncated lattice sum.

    A face of the sup-norm box carries (2R+1)^(k-1) terms of size about
    R^(q-n); the 2k faces give the paired-summation bound, which also bounds
    the defect of the translation identities. The unpaired tail integrates
    this over all outer shells and diverges unless k < n - q.
    """
    n, q, k = spec.n, spec.q, spec.k
    regime = cot_regime(n, q, k)
    if regime == "supercritical":
        raise ValueError("tail_estimate applies to the generic and critical regimes")
    R = _radii(spec.trunc)[-1]
    face = 2 * k * (2 * R + 1) ** (k - 1) * float(R) ** (q - n)
    if paired:
        return face
    if k >= n - q:
        return math.inf
    return 2 * k * 2 ** (k - 1) * float(R) ** (k - (n - q)) / ((n - q) - k)


# ---------------------------------------------------------------------------
# Hopf manifold S^1 x S^{n-1}


def _kelvin(v: np.ndarray) -> np.ndarray:
    """Clifford inverse -v/|v|^2 of vectors along the last axis."""
    r2 = np.sum(v * v, axis=-1)
    _check_nonsingular(np.sqrt(r2), "vector inverse")
    return -v / r2[..., None]


def _G_coeffs(v: np.ndarray, n: int) -> np.ndarray:
    return vectors_to_coeffs(gk_compact(v, n, 1), n)


def _hopf_literal(X: np.ndarray, y: np.ndarray, n: int, depth: int,
                  K: Callable[[np.ndarray], np.ndarray] | None = None) -> np.ndarray:
    K = (lambda w: _G_coeffs(w, n)) if K is None else K
    d = X - y
    wd = _kelvin(X) - _kelvin(y)
    first = sum(K(2.0**j * d) for j in range(depth + 1))
    inner = sum(K(2.0**j * wd) for j in range(1, depth + 1))
    second = product_coeffs(product_coeffs(_G_coeffs(X, n), inner, n), _G_coeffs(y, n), n)
    return first + 2.0 ** (2 - 2 * n) * second


def _hopf_orbit(X: np.ndarray, y: np.ndarray, n: int, depth: int) -> np.ndarray:
    gx = gk_compact(X, n, 1)
    total = gk_compact(X - y, n, 1)
    for j in range(1, depth + 1):
        total = total + (2.0 ** (j * (n - 1)) * gk_compact(2.0**j * X - y, n, 1) - gx)
        total = total + 2.0 ** (-j * (n - 1)) * gk_compact(2.0**-j * X - y, n, 1)
    return vectors_to_coeffs(total, n)


def _hopf_check(X: np.ndarray, y: np.ndarray, depth: int) -> None:
    _check_nonsingular(np.linalg.norm(X, axis=-1), "Hopf kernel")
    _check_nonsingular(np.atleast_1d(np.linalg.norm(y)), "Hopf kernel")
    for j in range(-depth, depth + 1):
        _check_nonsingular(np.linalg.norm(2.0**j * X - y, axis=-1), "Hopf kernel")


def hopf_batch(spec: KernelSpec, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    depth = int(spec.trunc.radius)
    _hopf_check(X, y, depth)
    if spec.mode == "literal":
        return _hopf_literal(X, y, spec.n, depth)
    return _hopf_orbit(X, y, spec.n, depth)


def hopf_kernel(spec: KernelSpec, x, y) -> Multivector:
    """Cauchy kernel for the Hopf manifold (R^n minus 0 modulo x -> 2x).

    literal: sum_{j>=0} G(2^j(x-y)) + 2^(2-2n) G(x) [sum_{j>=1} G(2^j(x^-1 - y^-1))] G(y).
    orbit: G(x-y) + sum_{j>=1} [2^(j(n-1)) G(2^j x - y) - G(x)]
           + sum_{j>=1} 2^(-j(n-1)) G(2^-j x - y).
    """
    n = spec.n
    return Multivector(n, hopf_batch(spec, _vec(x, n)[None], _vec(y, n))[0])


def hopf_collapse_constant(n: int) -> float:
    """Literal Hopf series divided by G(x - y)."""
    return (1 - 2.0 ** (3 - 3 * n)) / (1 - 2.0 ** (1 - n))


def hopf_poisson(x, y, n: int, trunc: TruncationPolicy | None = None,
                 mode: str = "orbit") -> float:
    """Scalar part of 2 C(x, y) e_n."""
    spec = KernelSpec("hopf", n, mode=mode,
                      trunc=trunc or default_truncation(0, "hopf"))
    en = np.zeros(1 << n)
    en[1 << (n - 1)] = 1.0
    c = hopf_batch(spec, _vec(x, n)[None], _vec(y, n))
    return float(2.0 * product_coeffs(c, en, n)[0, 0])


def hopf_transfer(K: Callable, x, y, n: int,
                  trunc: TruncationPolicy | None = None) -> Multivector:
    """Dyadic assembly of a homogeneous kernel K in place of G.

    K maps a vector (numpy array of length n) to a Multivector.
    """
    depth = int((trunc or default_truncation(0, "hopf")).radius)
    x, y = _vec(x, n), _vec(y, n)
    _hopf_check(x[None], y, depth)

    def Kc(w):
        return np.stack([K(wi).coeffs for wi in np.atleast_2d(w)])

    return Multivector(n, _hopf_literal(x[None], y, n, depth, Kc)[0])


# ---------------------------------------------------------------------------
# Transversion group x -> x (m x + 1)^-1


def transversion_regime(n: int, k: int) -> str:
    if k < n - 1:
        return "generic"
    if k == n - 1:
        return "critical"
    if k == n:
        return "supercritical"
    raise ValueError(f"transversion kernel needs k <= n, got k={k}, n={n}")


def _transversion_inner(spec: KernelSpec, W: np.ndarray) -> np.ndarray:
    n, k = spec.n, spec.k
    regime = transversion_regime(n, k)
    if regime != cot_regime(n, 1, k):
        raise AssertionError("transversion and cotangent regimes disagree")
    if regime == "critical":
        # G(w) + sum_{m != 0} s(m) [G(w + m) - G(m)]
        partial = (_signed_sum(W, n, 1, k, spec.l, spec.trunc)
                   - _signed_sum(np.zeros((1, n)), n, 1, k, spec.l, spec.trunc,
                                 skip_origin=True))
        return _embed(_finish(partial, spec.trunc), n)
    return cot_batch(replace(spec, family="cot", q=1), W)


def transversion_batch(spec: KernelSpec, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = spec.n
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    inner = _transversion_inner(spec, _kelvin(X) - _kelvin(y))
    return product_coeffs(product_coeffs(_G_coeffs(X, n), inner, n),
                          _G_coeffs(y, n), n)


def transversion_swapped_batch(spec: KernelSpec, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """K(y, x) evaluated over a batch of x: G(y) S(y^-1 - x^-1) G(x).

    This orientation is right monogenic in x, the one a Cauchy integral
    int K(x, y) n(x) f(x) needs.
    """
    n = spec.n
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    inner = _transversion_inner(spec, _kelvin(y) - _kelvin(X))
    return product_coeffs(product_coeffs(_G_coeffs(y, n), inner, n),
                          _G_coeffs(X, n), n)


def transversion_kernel(spec: KernelSpec, x, y) -> Multivector:
    """G(x) [sum_m s(m) G(x^-1 - y^-1 + m)] G(y), regularised for k >= n - 1."""
    n = spec.n
    return Multivector(n, transversion_batch(spec, _vec(x, n)[None], _vec(y, n))[0])


# ---------------------------------------------------------------------------
# Semidirect product of Z^k with {1, -1}


def semidirect_batch(spec: KernelSpec, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    return cot_batch(spec, X - y) + spec.sign * cot_batch(spec, -X - y)


def semidirect_kernel(spec: KernelSpec, x, y) -> Multivector:
    """cot_{q,k,l}(x, y) +- cot_{q,k,l}(-x, y)."""
    n = spec.n
    return Multivector(n, semidirect_batch(spec, _vec(x, n)[None], _vec(y, n))[0])


# ---------------------------------------------------------------------------


def kernel_batch(spec: KernelSpec) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Batched kernel (X (M, d), y (d,)) -> (M, 2^d) coefficients for a spec."""
    n, fam = spec.n, spec.family
    if fam == "euclid":
        return lambda X, y: _embed(gk_compact(np.atleast_2d(X) - y, n, 1), n)
    if fam == "euclid_k":
        return lambda X, y: _embed(gk_compact(np.atleast_2d(X) - y, n, spec.q), n)
    if fam == "sphere_cauchy":
        return lambda X, y: sphere_Gs_batch(np.atleast_2d(X), y, n)
    if fam == "sphere_green":
        return lambda X, y: sphere_Hs_batch(np.atleast_2d(X), y, n)
    if fam == "rp":
        return lambda X, y: rp_batch(np.atleast_2d(X), y, n, spec.sign, spec.q)
    if fam == "cot":
        return lambda X, y: cot_batch(spec, np.atleast_2d(X) - y)
    if fam == "hopf":
        return lambda X, y: hopf_batch(spec, X, y)
    if fam == "transversion":
        return lambda X, y: transversion_batch(spec, X, y)
    if fam == "semidirect":
        return lambda X, y: semidirect_batch(spec, X, y)
    raise ValueError(f"family {fam!r} has no batched two-point kernel")
