import math
import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitorbit.bitword import BitWord
from bitorbit.errors import FormatError
from bitorbit.orbit import build_orbit
from bitorbit.render import decode_pbm, render_arrowhead_svg, render_orbit_pbm, turtle_path
from bitorbit.streams import EvP, Named, Point, gen_named

W = BitWord.from_text


# ---- PBM --------------------------------------------------------------------------------

def test_pbm_single_row_example():
    m = build_orbit(EvP("", "01101001"), 1, 1, 8)
    data = render_orbit_pbm(m)
    assert data == b"P4\n8 1\n" + bytes([0b10010110])


def test_pbm_padding_is_zero():
    # 10 columns of zeros: all black, final byte padded with white (0) bits
    m = build_orbit(EvP("", "0"), 1, 2, 10)
    data = render_orbit_pbm(m)
    assert data == b"P4\n10 2\n" + bytes([0xFF, 0xC0]) * 2


def test_pbm_thue_morse_400():
    m = build_orbit(Named("thue-morse"), 1, 400, 400)
    a = render_orbit_pbm(m)
    b = render_orbit_pbm(build_orbit(Named("thue-morse"), 1, 400, 400))
    assert a == b
    assert a.startswith(b"P4\n400 400\n")
    assert len(a) == len(b"P4\n400 400\n") + 50 * 400
    bits = decode_pbm(a)
    assert bits.shape == (400, 400)
    assert np.array_equal(bits, m.to_array())
    assert BitWord.from_array(bits[0]) == gen_named("thue-morse", 400)


def test_pbm_point_511_bottom_row_white():
    data = render_orbit_pbm(build_orbit(Point(511), 1, 512, 512))
    body = data[len(b"P4\n512 512\n"):]
    assert body[-64:] == bytes(64)
    assert decode_pbm(data)[-1].all()


@given(st.integers(1, 12), st.integers(1, 40), st.text("01", min_size=1, max_size=9))
def test_pbm_roundtrip(rows, cols, cycle):
    m = build_orbit(EvP("1", cycle), 2, rows, cols)
    assert np.array_equal(decode_pbm(render_orbit_pbm(m)), m.to_array())


def test_decode_rejects_bad_input():
    with pytest.raises(FormatError):
        decode_pbm(b"P1\n1 1\n0")
    with pytest.raises(FormatError):
        decode_pbm(b"P4\n16 2\n\x00")


def test_decode_accepts_comment():
    assert decode_pbm(b"P4\n# note\n8 1\n\x96").tolist() == [[0, 1, 1, 0, 1, 0, 0, 1]]


# ---- turtle -----------------------------------------------------------------------------

def test_turtle_empty():
    p = turtle_path(BitWord.empty())
    assert p.vertices == [(0.0, 0.0)]
    assert p.heading == 0


def test_turtle_hexagon_closes():
    p = turtle_path(W("111111"))
    assert len(p.vertices) == 7
    x, y = p.vertices[-1]
    assert math.hypot(x, y) < 1e-9
    # exterior angles of a regular hexagon: one vertex per 60 degrees
    for k, (vx, vy) in enumerate(p.vertices[1:4], 1):
        assert math.isclose(vx, sum(math.cos(j * math.pi / 3) for j in range(k)), abs_tol=1e-12)
        assert math.isclose(vy, sum(math.sin(j * math.pi / 3) for j in range(k)), abs_tol=1e-12)


@given(st.lists(st.integers(0, 1), max_size=300))
def test_turtle_unit_steps_and_heading(bits):
    p = turtle_path(BitWord.from_bits(bits))
    v = p.vertices
    assert len(v) == len(bits) + 1
    for (x0, y0), (x1, y1) in zip(v, v[1:]):
        assert math.isclose(math.hypot(x1 - x0, y1 - y0), 1.0, rel_tol=1e-12)
    turns = sum(bits) - (len(bits) - sum(bits))
    expected = (turns * math.pi / 3) % (2 * math.pi)
    assert math.isclose(p.heading, expected, abs_tol=1e-9) or \
        math.isclose(abs(p.heading - expected), 2 * math.pi, abs_tol=1e-9)


def _segments_intersect(p, q, r, s, eps=1e-9):
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if abs(v) < eps else (1 if v > 0 else -1)

    def on_seg(a, b, c):
        return (min(a[0], b[0]) - eps <= c[0] <= max(a[0], b[0]) + eps
                and min(a[1], b[1]) - eps <= c[1] <= max(a[1], b[1]) + eps)

    o1, o2, o3, o4 = orient(p, q, r), orient(p, q, s), orient(r, s, p), orient(r, s, q)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return ((o1 == 0 and on_seg(p, q, r)) or (o2 == 0 and on_seg(p, q, s))
            or (o3 == 0 and on_seg(r, s, p)) or (o4 == 0 and on_seg(r, s, q)))


def test_sierpinski_path_self_avoiding():
    v = turtle_path(gen_named("sierpinski", 3 ** 5)).vertices
    segs = list(zip(v, v[1:]))
    for i in range(len(segs)):
        for j in range(i + 2, len(segs)):
            assert not _segments_intersect(*segs[i], *segs[j]), (i, j)


def test_sierpinski_aspect_ratio():
    x0, y0, x1, y1 = turtle_path(gen_named("sierpinski", 3 ** 7)).bounding_box()
    ratio = (x1 - x0) / (y1 - y0)
    assert abs(ratio / (2 / math.sqrt(3)) - 1) < 0.02


# ---- SVG --------------------------------------------------------------------------------

def _points(svg):
    root = ET.fromstring(svg)
    poly = root.findall("{http://www.w3.org/2000/svg}polyline")
    assert len(poly) == 1
    return root, poly[0], [tuple(map(float, p.split(","))) for p in poly[0].get("points").split()]


def test_svg_empty_is_valid():
    root, poly, pts = _points(render_arrowhead_svg(BitWord.empty()))
    assert pts == [(0.0, 0.0)]
    assert root.get("version") == "1.1"


def test_svg_s45_vertex_count_and_format():
    svg = render_arrowhead_svg(gen_named("sierpinski", 45))
    root, poly, pts = _points(svg)
    assert len(pts) == 46
    assert poly.get("stroke-width") == "0.05"
    assert all(re.fullmatch(r"-?\d+\.\d{6},-?\d+\.\d{6}", p) for p in poly.get("points").split())
    assert svg == render_arrowhead_svg(gen_named("sierpinski", 45))


def test_svg_viewbox_fits_with_margin():
    w = gen_named("sierpinski", 81)
    root, _, pts = _points(render_arrowhead_svg(w))
    vx, vy, vw, vh = map(float, root.get("viewBox").split())
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    margin = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys))
    assert math.isclose(vx, min(xs) - margin, abs_tol=1e-5)
    assert math.isclose(vy, min(ys) - margin, abs_tol=1e-5)
    assert math.isclose(vw, max(xs) - min(xs) + 2 * margin, abs_tol=1e-5)
    assert math.isclose(vh, max(ys) - min(ys) + 2 * margin, abs_tol=1e-5)
    # y is flipped relative to the turtle frame
    path = turtle_path(w).vertices
    assert all(math.isclose(py, -ty, abs_tol=1e-5) for (_, py), (_, ty) in zip(pts, path))
