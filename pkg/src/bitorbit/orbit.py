"""Truncated block-difference orbits: row ``n`` is the ``n``-th iterate."""

from dataclasses import dataclass

import numpy as np

from bitorbit.difference import block_diff, triangle_apply
from bitorbit.streams import materialize

__all__ = ["OrbitMatrix", "build_orbit", "orbit_demand"]


@dataclass(frozen=True)
class OrbitMatrix:
    base: object
    d: int
    cols: int
    rows: tuple

    @property
    def nrows(self):
        return len(self.rows)

    def cell(self, n, i):
        return self.rows[n].get(i)

    def to_array(self):
        if not self.rows:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return np.stack([r.to_array() for r in self.rows])


def orbit_demand(d, rows, cols):
    """Base bits needed so that every one of ``rows`` rows has ``cols`` valid columns."""
    return cols + d * (rows - 1)


def build_orbit(base, d, rows, cols, *, method="sequential", store=None):
    """Materialize ``rows`` x ``cols`` of the orbit of ``base`` under ``block_diff(d, .)``.

    ``method="sequential"`` differences row by row (the reference);
    ``method="triangle"`` computes every row independently from the base
    prefix through its parity row.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    if d < 0:
        raise ValueError("d must be >= 0")
    w = materialize(base, orbit_demand(d, rows, cols), store=store)
    if method == "sequential":
        out = [w.take(cols)]
        for _ in range(rows - 1):
            w = block_diff(d, w)
            out.append(w.take(cols))
    elif method == "triangle":
        out = [triangle_apply(d, n, w).take(cols) for n in range(rows)]
    else:
        raise ValueError("unknown method %r" % method)
    return OrbitMatrix(base, d, cols, tuple(out))
