"""Dense real Clifford algebra Cl_n with e_i e_j + e_j e_i = -2 delta_ij.

A multivector stores all 2**n coefficients indexed by blade bitmask: bit j of
the index is set when generator e_{j+1} is present, so the grade of a blade is
the popcount of its index.

    >>> e1, e2 = basis_vector(3, 1), basis_vector(3, 2)
    >>> (e1 * e1).scalar
    -1.0
    >>> print(e1 * e2)
    1 e12
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 12

__all__ = [
    "MAX_DIM",
    "CliffordError",
    "SingularError",
    "Multivector",
    "blade_name",
    "blade_grades",
    "basis_vector",
    "vector",
    "scalar",
    "geometric_product",
    "reversion",
    "vector_inverse",
    "norm",
    "product_signs",
    "left_matrix",
    "vectors_to_coeffs",
    "coeffs_vector_part",
    "product_coeffs",
    "reversion_coeffs",
]


class CliffordError(ValueError):
    """Rejected input to an algebra operation."""


class SingularError(ArithmeticError):
    """Evaluation at a singular point (zero vector, pole, kernel orbit)."""


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    count = np.zeros_like(a)
    while np.any(a):
        count += a & 1
        a = a >> 1
    return count


@lru_cache(maxsize=None)
def blade_grades(n: int) -> np.ndarray:
    return _popcount(np.arange(1 << n))


@lru_cache(maxsize=None)
def product_signs(n: int) -> np.ndarray:
    """Sign table S[a, b] with e_a e_b = S[a, b] e_{a ^ b}.

    The sign counts the transpositions needed to merge the generator lists,
    plus one factor -1 for every generator shared by both blades.
    """
    size = 1 << n
    a = np.arange(size, dtype=np.int64)[:, None]
    b = np.arange(size, dtype=np.int64)[None, :]
    swaps = np.zeros((size, size), dtype=np.int64)
    for j in range(n):
        bit_j = (b >> j) & 1
        swaps += bit_j * _popcount(a >> (j + 1))
    swaps += _popcount(a & b)
    signs = np.where(swaps % 2 == 0, 1, -1).astype(np.int8)
    signs.setflags(write=False)
    return signs


def blade_name(index: int) -> str:
    if index == 0:
        return "1"
    gens = [str(j + 1) for j in range(index.bit_length()) if index >> j & 1]
    sep = "_" if any(len(g) > 1 for g in gens) else ""
    return "e" + sep.join(gens)


class Multivector:
    """Element of Cl_n as a dense coefficient table over bitmask blades."""

    __slots__ = ("dim", "coeffs")
    __array_priority__ = 100

    def __init__(self, dim: int, coeffs: Iterable[float] | None = None):
        if not 1 <= dim <= MAX_DIM:
            raise CliffordError(f"dimension {dim} outside 1..{MAX_DIM}")
        self.dim = int(dim)
        if coeffs is None:
            c = np.zeros(1 << dim)
        else:
            c = np.array(coeffs, dtype=float)
            if c.shape != (1 << dim,):
                raise CliffordError(
                    f"expected {1 << dim} coefficients for n={dim}, got shape {c.shape}"
                )
        self.coeffs = c

    # construction helpers
    @classmethod
    def from_vector(cls, v: Sequence[float], dim: int | None = None) -> Multivector:
        v = np.asarray(v, dtype=float)
        n = len(v) if dim is None else dim
        if len(v) > n:
            raise CliffordError(f"vector of length {len(v)} does not fit in Cl_{n}")
        out = cls(n)
        out.coeffs[1 << np.arange(len(v))] = v
        return out

    @classmethod
    def from_scalar(cls, s: float, dim: int) -> Multivector:
        out = cls(dim)
        out.coeffs[0] = s
        return out

    # views
    @property
    def scalar(self) -> float:
        return float(self.coeffs[0])

    def vector_part(self) -> np.ndarray:
        return self.coeffs[1 << np.arange(self.dim)].copy()

    def grade(self, r: int) -> Multivector:
        out = Multivector(self.dim)
        mask = blade_grades(self.dim) == r
        out.coeffs[mask] = self.coeffs[mask]
        return out

    def grade_mass(self, grades: Iterable[int]) -> float:
        """Euclidean norm of the coefficients carried by the given grades."""
        mask = np.isin(blade_grades(self.dim), list(grades))
        return float(np.linalg.norm(self.coeffs[mask]))

    def is_vector(self, tol: float = 0.0) -> bool:
        off = blade_grades(self.dim) != 1
        return bool(np.all(np.abs(self.coeffs[off]) <= tol))

    def copy(self) -> Multivector:
        return Multivector(self.dim, self.coeffs)

    # arithmetic
    def _check(self, other: Multivector) -> None:
        if other.dim != self.dim:
            raise CliffordError(f"dimension mismatch: Cl_{self.dim} vs Cl_{other.dim}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.dim, self.coeffs + other.coeffs)
        out = self.copy()
        out.coeffs[0] += other
        return out

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.dim, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self.dim, self.coeffs * other)

    def __rmul__(self, other):
        return Multivector(self.dim, other * self.coeffs)

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            return self * other.inverse()
        return Multivector(self.dim, self.coeffs / other)

    def __invert__(self):
        return reversion(self)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __abs__(self) -> float:
        return norm(self)

    def inverse(self) -> Multivector:
        """Two-sided inverse.

        Versor-like elements (a * ~a scalar) use ~a / (a ~a); anything else
        falls back to solving the left-multiplication system.
        """
        rev = reversion(self)
        prod = geometric_product(self, rev)
        s = prod.coeffs[0]
        scale = max(np.abs(prod.coeffs).max(), 1e-300)
        if abs(s) > 1e-14 * scale and np.all(np.abs(prod.coeffs[1:]) <= 1e-12 * abs(s)):
            return rev * (1.0 / s)
        mat = left_matrix(self)
        rhs = np.zeros(1 << self.dim)
        rhs[0] = 1.0
        try:
            sol = np.linalg.solve(mat, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularError("multivector is not invertible") from exc
        return Multivector(self.dim, sol)

    def allclose(self, other, atol: float = 1e-12, rtol: float = 0.0) -> bool:
        if not isinstance(other, Multivector):
            other = Multivector.from_scalar(float(other), self.dim)
        self._check(other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=rtol))

    def terms(self, tol: float = 0.0) -> dict[str, float]:
        return {
            blade_name(i): float(c)
            for i, c in enumerate(self.coeffs)
            if abs(c) > tol
        }

    def __repr__(self) -> str:
        return f"Multivector({self.dim}, {self.terms()})"

    def __str__(self) -> str:
        parts = [f"{c:.15g} {name}" if name != "1" else f"{c:.15g}"
                 for name, c in self.terms().items()]
        return " + ".join(parts) if parts else "0"


def left_matrix(a: Multivector) -> np.ndarray:
    """Matrix L with (a * b).coeffs == L @ b.coeffs."""
    n = a.dim
    size = 1 << n
    signs = product_signs(n)
    idx = np.arange(size)
    mat = np.zeros((size, size))
    for i in np.flatnonzero(a.coeffs):
        mat[i ^ idx, idx] += a.coeffs[i] * signs[i]
    return mat


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    if a.dim != b.dim:
        raise CliffordError(f"dimension mismatch: Cl_{a.dim} vs Cl_{b.dim}")
    n = a.dim
    signs = product_signs(n)
    idx = np.arange(1 << n)
    out = np.zeros(1 << n)
    bnz = b.coeffs
    for i in np.flatnonzero(a.coeffs):
        out[i ^ idx] += a.coeffs[i] * signs[i] * bnz
    return Multivector(n, out)


def reversion(a: Multivector) -> Multivector:
    g = blade_grades(a.dim)
    flip = np.where((g * (g - 1) // 2) % 2 == 0, 1.0, -1.0)
    return Multivector(a.dim, a.coeffs * flip)


def norm(a: Multivector) -> float:
    return float(np.linalg.norm(a.coeffs))


def vector_inverse(x: Multivector) -> Multivector:
    """x^{-1} = -x / |x|^2 for a nonzero vector x."""
    if not x.is_vector():
        raise CliffordError("vector_inverse needs a grade-1 multivector")
    n2 = float(np.dot(x.coeffs, x.coeffs))
    if n2 == 0.0:
        raise SingularError("zero vector has no inverse")
    return x * (-1.0 / n2)


def basis_vector(dim: int, j: int) -> Multivector:
    """e_j with 1-based j."""
    if not 1 <= j <= dim:
        raise CliffordError(f"no generator e_{j} in Cl_{dim}")
    out = Multivector(dim)
    out.coeffs[1 << (j - 1)] = 1.0
    return out


def vector(components: Sequence[float], dim: int | None = None) -> Multivector:
    return Multivector.from_vector(components, dim)


def scalar(s: float, dim: int) -> Multivector:
    return Multivector.from_scalar(s, dim)


# Batched coefficient-array helpers. Arrays carry blades on the last axis.

def vectors_to_coeffs(v: np.ndarray, dim: int | None = None) -> np.ndarray:
    """Embed (..., m) vectors as (..., 2**dim) coefficient arrays."""
    v = np.asarray(v, dtype=float)
    n = v.shape[-1] if dim is None else dim
    out = np.zeros(v.shape[:-1] + (1 << n,))
    out[..., 1 << np.arange(v.shape[-1])] = v
    return out


def coeffs_vector_part(c: np.ndarray, dim: int) -> np.ndarray:
    return c[..., 1 << np.arange(dim)]


def product_coeffs(a: np.ndarray, b: np.ndarray, dim: int) -> np.ndarray:
    """Geometric product of broadcastable coefficient arrays."""
    signs = product_signs(dim).astype(float)
    idx = np.arange(1 << dim)
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape)
    nz = np.flatnonzero(np.any(a.reshape(-1, 1 << dim) != 0, axis=0))
    for i in nz:
        out[..., i ^ idx] += a[..., i, None] * signs[i] * b
    return out


def reversion_coeffs(c: np.ndarray, dim: int) -> np.ndarray:
    g = blade_grades(dim)
    return c * np.where((g * (g - 1) // 2) % 2 == 0, 1.0, -1.0)
