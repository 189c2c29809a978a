"""PBM orbit fingerprints and SVG turtle curves.

In a fingerprint 0s are black and 1s are white. PBM counts 1 as black, so the
pixel bit is the complement of the stream bit.
"""

import math
from dataclasses import dataclass

import numpy as np

from bitorbit.errors import FormatError

__all__ = ["render_orbit_pbm", "decode_pbm", "TurtlePath", "turtle_path", "render_arrowhead_svg"]


def render_orbit_pbm(m):
    """Binary PBM (P4) of an orbit matrix: width = columns, height = rows."""
    cells = m.to_array()
    pixels = np.packbits(1 - cells, axis=1)  # MSB first; row padding bits are 0
    header = b"P4\n%d %d\n" % (m.cols, m.nrows)
    return header + pixels.tobytes()


def decode_pbm(data):
    """Stream bits (rows x cols, uint8) of a P4 fingerprint written by :func:`render_orbit_pbm`."""
    fields = []
    pos = 0
    while len(fields) < 3:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos)
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("truncated PBM header")
        fields.append(data[start:pos])
    if fields[0] != b"P4":
        raise FormatError("not a binary PBM (magic %r)" % fields[0])
    width, height = int(fields[1]), int(fields[2])
    pos += 1  # single whitespace byte after the header
    stride = (width + 7) // 8
    payload = np.frombuffer(data[pos:pos + stride * height], dtype=np.uint8)
    if payload.size != stride * height:
        raise FormatError("PBM payload has %d bytes, expected %d" % (payload.size, stride * height))
    pixels = np.unpackbits(payload.reshape(height, stride), axis=1)[:, :width]
    return 1 - pixels


# unit steps on the triangular lattice, in basis e1 = (1, 0), e2 = (1/2, sqrt(3)/2);
# direction k points at angle k * pi / 3
_STEPS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
_HALF_SQRT3 = math.sqrt(3) / 2


@dataclass(frozen=True)
class TurtlePath:
    """Vertices of a unit-step turtle walk; ``lattice`` holds exact lattice coordinates."""
    lattice: tuple
    heading_index: int

    @property
    def vertices(self):
        return [(a + b / 2, b * _HALF_SQRT3) for a, b in self.lattice]

    @property
    def heading(self):
        """Final heading in radians, in ``[0, 2*pi)``."""
        return self.heading_index * math.pi / 3

    def bounding_box(self):
        xs, ys = zip(*self.vertices)
        return min(xs), min(ys), max(xs), max(ys)

    def __len__(self):
        return len(self.lattice)


def turtle_path(w):
    """Per bit: step forward one unit, then turn left pi/3 on 1 or right pi/3 on 0."""
    a = b = 0
    k = 0
    points = [(0, 0)]
    for bit in w:
        da, db = _STEPS[k]
        a += da
        b += db
        points.append((a, b))
        k = (k + 1) % 6 if bit else (k - 1) % 6
    return TurtlePath(tuple(points), k)


def render_arrowhead_svg(w):
    """SVG 1.1 document with one polyline tracing :func:`turtle_path` of ``w``."""
    path = turtle_path(w)
    # SVG's y axis points down; flip so the curve is not mirrored
    pts = [(x, -y) for x, y in path.vertices]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    margin = 0.05 * max(x1 - x0, y1 - y0) or 0.5
    view = (x0 - margin, y0 - margin, (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin)
    coords = " ".join("%.6f,%.6f" % (x + 0.0, y + 0.0) for x, y in pts)
    doc = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="%.6f %.6f %.6f %.6f">\n'
        '<polyline fill="none" stroke="black" stroke-width="0.05" '
        'stroke-linejoin="round" points="%s"/>\n'
        '</svg>\n'
    ) % (view + (coords,))
    return doc.encode("ascii")
