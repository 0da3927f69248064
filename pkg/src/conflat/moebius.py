"""Möbius transformations x -> (ax + b)(cx + d)^-1 in Vahlen form."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import (
    CliffordError,
    Multivector,
    SingularError,
    blade_grades,
    norm,
    reversion,
    scalar,
    vector,
)
from .diffops import FieldFn

__all__ = [
    "VahlenMatrix",
    "ValidityReport",
    "PointAtInfinity",
    "UnsupportedWeightError",
    "validate_vahlen",
    "apply_moebius",
    "weight_j",
    "pullback_monogenic",
    "pullback_field",
    "conformal_stretch",
]

VAHLEN_TOL = 1e-10
POLE_TOL = 1e-14


class PointAtInfinity(SingularError):
    """cx + d vanishes: the point is sent to infinity."""


class UnsupportedWeightError(ValueError):
    pass


def _mv(v, dim: int) -> Multivector:
    if isinstance(v, Multivector):
        return v
    if np.ndim(v) == 0:
        return scalar(float(v), dim)
    return vector(v, dim)


@dataclass(frozen=True)
class VahlenMatrix:
    a: Multivector
    b: Multivector
    c: Multivector
    d: Multivector

    @property
    def dim(self) -> int:
        return self.a.dim

    @classmethod
    def of(cls, a, b, c, d, dim: int) -> VahlenMatrix:
        return cls(_mv(a, dim), _mv(b, dim), _mv(c, dim), _mv(d, dim))

    @classmethod
    def identity(cls, dim: int) -> VahlenMatrix:
        return cls.of(1.0, 0.0, 0.0, 1.0, dim)

    @classmethod
    def translation(cls, b, dim: int | None = None) -> VahlenMatrix:
        b = np.asarray(b, dtype=float)
        dim = dim or len(b)
        return cls.of(1.0, b, 0.0, 1.0, dim)

    @classmethod
    def dilation(cls, factor: float, dim: int) -> VahlenMatrix:
        r = math.sqrt(factor)
        return cls.of(r, 0.0, 0.0, 1.0 / r, dim)

    @classmethod
    def kelvin(cls, dim: int) -> VahlenMatrix:
        """x -> -x^-1 = x / |x|^2."""
        return cls.of(0.0, -1.0, 1.0, 0.0, dim)

    @classmethod
    def transversion(cls, m, dim: int | None = None) -> VahlenMatrix:
        """x -> x (m x + 1)^-1."""
        m = np.asarray(m, dtype=float)
        dim = dim or len(m)
        return cls.of(1.0, 0.0, m, 1.0, dim)

    def __neg__(self) -> VahlenMatrix:
        return VahlenMatrix(-self.a, -self.b, -self.c, -self.d)

    def pseudo_determinant(self) -> Multivector:
        return self.a * reversion(self.d) - self.b * reversion(self.c)

    def inverse(self) -> VahlenMatrix:
        """Matrix inverse (~d, -~b; -~c, ~a), divided by the pseudo-determinant sign."""
        s = self.pseudo_determinant().scalar
        if abs(abs(s) - 1.0) > VAHLEN_TOL:
            raise CliffordError("inverse needs pseudo-determinant +-1")
        sign = 1.0 if s > 0 else -1.0
        r = reversion
        return VahlenMatrix(sign * r(self.d), -sign * r(self.b), -sign * r(self.c), sign * r(self.a))

    def compose(self, other: VahlenMatrix) -> VahlenMatrix:
        """Matrix product: self applied after other."""
        return VahlenMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


@dataclass
class ValidityReport:
    residuals: dict[str, float] = field(default_factory=dict)
    pseudo_det: float = float("nan")
    tol: float = VAHLEN_TOL

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())


def _off_vector_mass(m: Multivector) -> float:
    g = blade_grades(m.dim)
    return float(np.linalg.norm(m.coeffs[g != 1]))


def validate_vahlen(M: VahlenMatrix, tol: float = VAHLEN_TOL) -> ValidityReport:
    """Check that a~c, c~d, d~b, b~a are vectors and a~d - b~c = +-1."""
    r = reversion
    rep = ValidityReport(tol=tol)
    for name, prod in (("a~c", M.a * r(M.c)), ("c~d", M.c * r(M.d)),
                       ("d~b", M.d * r(M.b)), ("b~a", M.b * r(M.a))):
        rep.residuals[name] = _off_vector_mass(prod)
    pd = M.pseudo_determinant()
    s = pd.scalar
    rep.pseudo_det = s
    off = float(np.linalg.norm(pd.coeffs[1:]))
    rep.residuals["pseudo_det"] = min(abs(s - 1.0), abs(s + 1.0)) + off
    return rep


def _xvec(x, dim: int) -> Multivector:
    if isinstance(x, Multivector):
        return x
    return vector(np.asarray(x, dtype=float), dim)


def _denominator(M: VahlenMatrix, x: Multivector) -> Multivector:
    den = M.c * x + M.d
    size = norm(den)
    if size < POLE_TOL:
        raise PointAtInfinity("cx + d vanishes")
    g = blade_grades(M.dim)
    high = float(np.linalg.norm(den.coeffs[g >= 2]))
    if 0.0 < high < 1e-10 * size:
        den = Multivector(den.dim, np.where(g <= 1, den.coeffs, 0.0))
    return den


def apply_moebius(M: VahlenMatrix, x) -> Multivector:
    x = _xvec(x, M.dim)
    den = _denominator(M, x)
    y = (M.a * x + M.b) * den.inverse()
    off = _off_vector_mass(y)
    if off > 1e-10 * max(1.0, norm(y)):
        raise CliffordError(f"image is not a vector (off-grade mass {off:.3g}); invalid Vahlen matrix?")
    return Multivector(y.dim, np.where(blade_grades(y.dim) == 1, y.coeffs, 0.0))


def weight_j(M: VahlenMatrix, x, k: int = 1) -> Multivector:
    """Conformal weight J_1 = ~(cx+d)/|cx+d|^n or J_2 = |cx+d|^(2-n)."""
    if k not in (1, 2):
        raise UnsupportedWeightError(f"J_k only implemented for k in (1, 2), got {k}")
    x = _xvec(x, M.dim)
    den = _denominator(M, x)
    n = M.dim
    size = norm(den)
    if k == 1:
        return reversion(den) * (1.0 / size**n)
    return scalar(1.0 / size ** (n - 2), n)


def conformal_stretch(M: VahlenMatrix, x) -> float:
    """Local length scale factor of the map at x, 1 / |cx + d|^2."""
    return 1.0 / norm(_denominator(M, _xvec(x, M.dim))) ** 2


def pullback_monogenic(M: VahlenMatrix, f: FieldFn, x) -> Multivector:
    """J_1(M, x) f(M x), left monogenic whenever f is."""
    y = apply_moebius(M, x)
    return weight_j(M, x, 1) * f.at(y.vector_part())


def pullback_field(M: VahlenMatrix, f: FieldFn) -> FieldFn:
    def one(p):
        return pullback_monogenic(M, f, p)

    return FieldFn.pointwise(one, M.dim, name=f"pullback({f.name})")

