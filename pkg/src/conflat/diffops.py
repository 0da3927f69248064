"""Finite-difference Dirac-type operators used as residual oracles.

Central differences are combined with one Richardson step,
(4 A(h/2) - A(h)) / 3, which removes the O(h^2) term. Spherical derivatives
use exact plane rotations so every stencil point stays on the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .clifford import Multivector, SingularError, product_coeffs, vectors_to_coeffs

__all__ = [
    "FieldFn",
    "SingularProximityError",
    "partials_fd",
    "dirac_fd",
    "dirac_fd_batch",
    "dirac_iter",
    "dirac_power_batch",
    "laplacian_fd",
    "spherical_dirac",
    "spherical_dirac_batch",
    "spherical_laplacian_check",
    "relative_dirac_residual",
    "ResidualSummary",
    "residual_scan",
    "DEFAULT_H",
    "NESTED_H",
]

DEFAULT_H = 1e-3
NESTED_H = 5e-3


class SingularProximityError(SingularError):
    """A stencil would touch (or come within 2h of) the singular set."""


class FieldFn:
    """Clifford-valued field on R^dim, evaluated on batches of points.

    `func` maps (M, dim) points to (M, 2**dim) coefficients. With
    ``batched=False`` it instead maps one point (numpy vector) to a
    Multivector and is looped over. `singular_distance`, when given, maps
    points to their distance from the singular set.
    """

    def __init__(self, func: Callable, dim: int, *, batched: bool = True,
                 singular_distance: Callable[[np.ndarray], np.ndarray] | None = None,
                 name: str = "f"):
        self.func = func
        self.dim = int(dim)
        self.batched = batched
        self.singular_distance = singular_distance
        self.name = name

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        flat = X.reshape(-1, self.dim)
        if self.batched:
            out = np.asarray(self.func(flat), dtype=float)
        else:
            out = np.stack([self.func(p).coeffs for p in flat])
        return out.reshape(X.shape[:-1] + (1 << self.dim,))

    def at(self, x) -> Multivector:
        return Multivector(self.dim, self(np.asarray(x, dtype=float)[None])[0])

    def check_clearance(self, X: np.ndarray, h: float) -> None:
        if self.singular_distance is None:
            return
        d = np.asarray(self.singular_distance(np.atleast_2d(X)))
        if np.any(d <= 2 * h):
            raise SingularProximityError(
                f"{self.name}: evaluation point within 2h={2 * h:g} of the singular set"
            )

    def __add__(self, other: FieldFn) -> FieldFn:
        return FieldFn(lambda X: self(X) + other(X), self.dim, name=f"{self.name}+{other.name}")

    def scaled(self, c: float) -> FieldFn:
        return FieldFn(lambda X: c * self(X), self.dim, name=f"{c}*{self.name}")

    @classmethod
    def pointwise(cls, f: Callable[[np.ndarray], Multivector], dim: int, **kw) -> FieldFn:
        return cls(f, dim, batched=False, **kw)


def _eval(f: FieldFn, P: np.ndarray) -> np.ndarray:
    try:
        return f(P)
    except SingularError as exc:
        raise SingularProximityError(str(exc)) from exc


def _unit_coeffs(dim: int) -> np.ndarray:
    return vectors_to_coeffs(np.eye(dim), dim)


def partials_fd(f: FieldFn, X: np.ndarray, h: float = DEFAULT_H) -> np.ndarray:
    """Richardson-combined central differences, shape (M, dim, 2^dim)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    f.check_clearance(X, h)
    n = f.dim
    E = np.eye(n)
    steps = np.array([h, h / 2])
    # (M, 2 steps, n dirs, 2 signs, n coords)
    P = X[:, None, None, None, :] + (steps[:, None, None, None]
                                      * np.array([1.0, -1.0])[None, None, :, None]
                                      * E[None, :, None, :])[None]
    vals = _eval(f, P)
    central = (vals[:, :, :, 0] - vals[:, :, :, 1]) / (2 * steps[None, :, None, None])
    return (4 * central[:, 1] - central[:, 0]) / 3


def _apply_dirac(partials: np.ndarray, n: int) -> np.ndarray:
    units = _unit_coeffs(n)
    return sum(product_coeffs(units[j], partials[:, j], n) for j in range(n))


def dirac_fd_batch(f: FieldFn, X: np.ndarray, h: float = DEFAULT_H) -> np.ndarray:
    return _apply_dirac(partials_fd(f, X, h), f.dim)


def dirac_fd(f: FieldFn, x, h: float = DEFAULT_H) -> Multivector:
    """sum_j e_j d_j f at x."""
    return Multivector(f.dim, dirac_fd_batch(f, np.asarray(x, dtype=float)[None], h)[0])


def dirac_iter(f: FieldFn, x, q: int, h: float | None = None) -> Multivector:
    """D^q f at x by nesting the first-order stencil q times."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if h is None:
        h = DEFAULT_H if q == 1 else NESTED_H
    g = f
    for _ in range(q - 1):
        g = _dirac_field(g, h)
    return dirac_fd(g, x, h)


def _dirac_field(f: FieldFn, h: float) -> FieldFn:
    return FieldFn(lambda X: dirac_fd_batch(f, X, h), f.dim,
                   singular_distance=None if f.singular_distance is None
                   else (lambda X: f.singular_distance(X) - 2 * h),
                   name=f"D{f.name}")


def laplacian_fd(f: FieldFn, x, h: float = DEFAULT_H) -> Multivector:
    """Componentwise Laplacian by Richardson-combined second differences."""
    x = np.asarray(x, dtype=float)
    f.check_clearance(x[None], h)
    n = f.dim
    E = np.eye(n)
    center = _eval(f, x[None])[0]

    def second(s):
        P = np.concatenate([x + s * E, x - s * E])
        v = _eval(f, P)
        return (v[:n] + v[n:] - 2 * center).sum(axis=0) / s**2

    return Multivector(n, (4 * second(h / 2) - second(h)) / 3)


def relative_dirac_residual(f: FieldFn, X: np.ndarray, h: float | np.ndarray = DEFAULT_H) -> np.ndarray:
    """|D f| / sum_j |d_j f| per point; scale free, so conformal weights drop out.

    `h` may be a per-point array of step sizes.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    hs = np.broadcast_to(np.asarray(h, dtype=float), (len(X),))
    out = np.empty(len(X))
    for i, (p, hi) in enumerate(zip(X, hs)):
        parts = partials_fd(f, p[None], float(hi))
        d = _apply_dirac(parts, f.dim)[0]
        out[i] = np.linalg.norm(d) / np.linalg.norm(parts[0], axis=-1).sum()
    return out


# ---------------------------------------------------------------------------
# Sphere S^n in R^{n+1}


def _rotate(X: np.ndarray, i: int, j: int, t: float) -> np.ndarray:
    Y = X.copy()
    c, s = np.cos(t), np.sin(t)
    Y[..., i] = c * X[..., i] - s * X[..., j]
    Y[..., j] = s * X[..., i] + c * X[..., j]
    return Y


def _check_sphere(X: np.ndarray) -> None:
    if np.any(np.abs(np.linalg.norm(X, axis=-1) - 1.0) > 1e-10):
        raise ValueError("spherical operators need points on the unit sphere")


def spherical_dirac_batch(f: FieldFn, X: np.ndarray, h: float = DEFAULT_H) -> np.ndarray:
    """x (Lambda + n/2) f with Lambda = sum_{i<j} e_i e_j (x_i d_j - x_j d_i)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    _check_sphere(X)
    f.check_clearance(X, h)
    N = f.dim
    n = N - 1
    units = _unit_coeffs(N)
    lam = np.zeros((len(X), 1 << N))
    for i in range(N):
        for j in range(i + 1, N):
            def rot_diff(s):
                return (_eval(f, _rotate(X, i, j, s)) - _eval(f, _rotate(X, i, j, -s))) / (2 * s)
            d = (4 * rot_diff(h / 2) - rot_diff(h)) / 3
            eij = product_coeffs(units[i], units[j], N)
            lam += product_coeffs(eij, d, N)
    inner = lam + 0.5 * n * _eval(f, X)
    return product_coeffs(vectors_to_coeffs(X, N), inner, N)


def spherical_dirac(f: FieldFn, x, n: int, h: float = DEFAULT_H) -> Multivector:
    if f.dim != n + 1:
        raise ValueError(f"field lives in R^{f.dim}, expected R^{n + 1} for S^{n}")
    return Multivector(f.dim, spherical_dirac_batch(f, np.asarray(x, dtype=float)[None], h)[0])


def spherical_laplacian_check(f: FieldFn, x, n: int, h: float = NESTED_H,
                              sign: float = 1.0) -> Multivector:
    """D_s((D_s + sign * x) f) at x, with nested stencils.

    The default sign = +1 is the composition D_s(D_s + x). With the Lambda
    sign fixed by D_s G_s = 0 it does not annihilate H_s (the residual is of
    the size of H_s itself); sign = -1, i.e. D_s(D_s - x) = (D_s + x) D_s,
    does.
    """
    if n <= 2:
        raise ValueError("spherical Laplacian check needs n > 2")
    if f.dim != n + 1:
        raise ValueError(f"field lives in R^{f.dim}, expected R^{n + 1} for S^{n}")
    N = f.dim
    x = np.asarray(x, dtype=float)

    def inner(X):
        return (spherical_dirac_batch(f, X, h)
                + sign * product_coeffs(vectors_to_coeffs(X, N), f(X), N))

    return Multivector(N, spherical_dirac_batch(FieldFn(inner, N, name=f"(Ds+x){f.name}"),
                                                x[None], h)[0])


# ---------------------------------------------------------------------------


@dataclass
class ResidualSummary:
    op: str
    per_point: list[float] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)

    @property
    def max(self) -> float:
        return max(self.per_point) if self.per_point else 0.0

    @property
    def mean(self) -> float:
        return float(np.mean(self.per_point)) if self.per_point else 0.0

    @property
    def count(self) -> int:
        return len(self.per_point)


_OPS = ("dirac", "dirac2", "laplacian", "spherical_dirac", "spherical_laplacian")


def residual_scan(f: FieldFn, points: Sequence, op: str = "dirac",
                  h: float | None = None, sign: float = 1.0) -> ResidualSummary:
    """Norm of op(f) at every point, in input order; singular points are skipped."""
    if op not in _OPS:
        raise ValueError(f"unknown operator {op!r}; choose from {_OPS}")
    summary = ResidualSummary(op)
    for i, p in enumerate(points):
        p = np.asarray(p, dtype=float)
        try:
            if op == "dirac":
                r = dirac_fd(f, p, h or DEFAULT_H)
            elif op == "dirac2":
                r = dirac_iter(f, p, 2, h or NESTED_H)
            elif op == "laplacian":
                r = laplacian_fd(f, p, h or NESTED_H)
            elif op == "spherical_dirac":
                r = spherical_dirac(f, p, f.dim - 1, h or DEFAULT_H)
            else:
                r = spherical_laplacian_check(f, p, f.dim - 1, h or NESTED_H, sign)
        except SingularError:
            summary.skipped.append(i)
            continue
        summary.per_point.append(float(np.linalg.norm(r.coeffs)))
    return summary


def dirac_power_batch(f: FieldFn, X: np.ndarray, q: int, h: float | None = None) -> np.ndarray:
    """D^q f on a batch of points (q = 0 returns f itself)."""
    if q == 0:
        return f(np.atleast_2d(X))
    if h is None:
        h = DEFAULT_H if q == 1 else NESTED_H
    g = f
    for _ in range(q - 1):
        g = _dirac_field(g, h)
    return dirac_fd_batch(g, X, h)
