"""Lattice enumeration and deterministic shell-ordered summation over Z^k."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["enumerate_shells", "half_lattice", "shell_offsets", "shell_sums", "kahan_prefix"]


def _in_half(points: np.ndarray) -> np.ndarray:
    """True where the last nonzero coordinate is positive."""
    out = np.zeros(len(points), dtype=bool)
    decided = np.zeros(len(points), dtype=bool)
    for j in range(points.shape[1] - 1, -1, -1):
        c = points[:, j]
        fresh = ~decided & (c != 0)
        out[fresh] = c[fresh] > 0
        decided |= fresh
    return out


@lru_cache(maxsize=64)
def _ordered(k: int, R: int) -> tuple[np.ndarray, np.ndarray]:
    if k < 1 or R < 0:
        raise ValueError(f"need k >= 1 and R >= 0, got k={k}, R={R}")
    g = np.arange(-R, R + 1)
    pts = np.stack(np.meshgrid(*([g] * k), indexing="ij"), axis=-1).reshape(-1, k)
    shell = np.abs(pts).max(axis=1)
    half = pts[_in_half(pts)]
    half_shell = np.abs(half).max(axis=1)
    blocks = [np.zeros((1, k), dtype=np.int64)]
    offsets = [0]
    pos = 1
    for r in range(1, R + 1):
        h = half[half_shell == r]
        h = h[np.lexsort(h.T[::-1])]
        block = np.empty((2 * len(h), k), dtype=np.int64)
        block[0::2] = h
        block[1::2] = -h
        blocks.append(block)
        offsets.append(pos)
        pos += len(block)
    ordered = np.concatenate(blocks)
    assert len(ordered) == len(pts) == len(shell)
    ordered.setflags(write=False)
    offs = np.array(offsets)
    offs.setflags(write=False)
    return ordered, offs


def enumerate_shells(k: int, R: int) -> np.ndarray:
    """All m in Z^k with sup-norm <= R, shell by shell, m and -m adjacent.

    >>> enumerate_shells(1, 2).ravel().tolist()
    [0, 1, -1, 2, -2]
    """
    return _ordered(k, R)[0]


def shell_offsets(k: int, R: int) -> np.ndarray:
    """Start index of each shell r = 0..R inside enumerate_shells(k, R)."""
    return _ordered(k, R)[1]


def half_lattice(r: int, R: int) -> np.ndarray:
    """One representative of each pair {m, -m} of Z^r \\ {0}, sup-norm <= R.

    The representative is the one whose last nonzero coordinate is positive.
    """
    if r < 1:
        raise ValueError("half_lattice needs r >= 1")
    pts = enumerate_shells(r, R)[1:]
    return pts[0::2].copy()


def shell_sums(terms: np.ndarray, k: int, R: int) -> np.ndarray:
    """Per-shell partial sums along axis -2 of (..., N, C) terms."""
    offs = shell_offsets(k, R)
    return np.add.reduceat(terms, offs, axis=-2)


def kahan_prefix(shells: np.ndarray, radii) -> np.ndarray:
    """Kahan-compensated running sum over shells (axis -2), read at given radii.

    Returns an array with a new leading axis indexing `radii`.
    """
    radii = list(radii)
    want = {r: i for i, r in enumerate(radii)}
    total = np.zeros(shells.shape[:-2] + shells.shape[-1:])
    comp = np.zeros_like(total)
    out = np.empty((len(radii),) + total.shape)
    for r in range(shells.shape[-2]):
        yk = shells[..., r, :] - comp
        t = total + yk
        comp = (t - total) - yk
        total = t
        if r in want:
            out[want[r]] = total
    return out
