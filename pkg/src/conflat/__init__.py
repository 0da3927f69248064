"""Clifford analysis on conformally flat manifolds: kernels, operators and quadrature."""

from .clifford import Multivector, basis_vector, scalar, vector
from .kernels import KernelSpec, TruncationPolicy, kernel_batch

__version__ = "0.1.0"

__all__ = [
    "Multivector",
    "basis_vector",
    "scalar",
    "vector",
    "KernelSpec",
    "TruncationPolicy",
    "kernel_batch",
    "__version__",
]
