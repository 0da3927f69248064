"""Truncation-radius convergence tables for lattice kernels."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .clifford import blade_name
from .kernels import KernelSpec, kernel_batch

__all__ = ["ConvergenceTable", "convergence_study", "observed_orders"]


@dataclass
class ConvergenceTable:
    spec: KernelSpec
    radii: list[int]
    values: np.ndarray  # (len(radii), 2^d)
    deltas: list[float]
    orders: list[float]
    dim: int

    def columns(self) -> list[int]:
        """Blades carrying a nonzero coefficient at some radius."""
        used = np.flatnonzero(np.any(self.values != 0, axis=0))
        return used.tolist() or [0]

    def to_csv(self) -> str:
        cols = self.columns()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["R"] + [blade_name(c) for c in cols] + ["delta", "order"])
        for R, v, d, p in zip(self.radii, self.values, self.deltas, self.orders):
            w.writerow([R] + [repr(float(v[c])) for c in cols]
                       + [repr(float(d)), "" if math.isnan(p) else repr(float(p))])
        return buf.getvalue()


def observed_orders(radii: Sequence[int], values: np.ndarray) -> list[float]:
    """Per-row convergence order from three consecutive radii.

    order_i = log(|v_i - v_{i+1}| / |v_{i+1} - v_{i+2}|) / log(R_{i+1} / R_i),
    NaN where the triple is unavailable or the differences vanish.
    """
    out = [math.nan] * len(radii)
    for i in range(len(radii) - 2):
        a = np.linalg.norm(values[i] - values[i + 1])
        b = np.linalg.norm(values[i + 1] - values[i + 2])
        if a > 0 and b > 0:
            out[i] = math.log(a / b) / math.log(radii[i + 1] / radii[i])
    return out


def convergence_study(spec: KernelSpec, x, y, radii: Sequence[int]) -> ConvergenceTable:
    """Kernel value at (x, y) for each truncation radius.

    delta is the distance from the largest-radius value.
    """
    radii = [int(r) for r in radii]
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be a non-empty increasing sequence")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rows = []
    for R in radii:
        s = replace(spec, trunc=replace(spec.trunc, radius=R))
        rows.append(np.asarray(kernel_batch(s)(x[None], y))[0])
    values = np.stack(rows)
    deltas = [float(np.linalg.norm(v - values[-1])) for v in values]
    return ConvergenceTable(spec, radii, values, deltas, observed_orders(radii, values),
                            values.shape[1].bit_length() - 1)
