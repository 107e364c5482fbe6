from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from influencekit.geometry import (barycenter, barycentric_coords, hull_2d,
                                   hull_contains, interior_margin)
from influencekit.model import SystemState


def _state(x, m):
    return SystemState.initial(np.asarray(x, dtype=float), np.asarray(m, dtype=float))


# ---------------------------------------------------------------------------
# barycenter
# ---------------------------------------------------------------------------

def test_barycenter_weighted_pair():
    st = _state([[0.0], [2.0]], [3.0, 1.0])
    np.testing.assert_allclose(barycenter(st), [0.5])


def test_barycenter_uniform_triangle():
    st = _state([[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]], [1.0, 1.0, 1.0])
    np.testing.assert_allclose(barycenter(st), [1.0, 1.0])


def test_barycenter_single_agent():
    st = _state([[4.0, -1.0]], [2.0])
    np.testing.assert_allclose(barycenter(st), [4.0, -1.0])


def test_barycenter_uses_current_masses():
    st = _state([[0.0], [1.0]], [1.0, 1.0])
    shifted = SystemState(x=st.x, m=np.array([3.0, 1.0]), M=st.M, t=0.0)
    np.testing.assert_allclose(barycenter(shifted), [0.25])


# ---------------------------------------------------------------------------
# planar hull
# ---------------------------------------------------------------------------

def _in_hull_2d(q, pts):
    # membership oracle for planar point sets via triangle decomposition
    if len(pts) == 1:
        return np.allclose(q, pts[0], atol=1e-12)
    if len(pts) == 2:
        a, b = pts
        ab = b - a
        t = np.dot(q - a, ab) / max(np.dot(ab, ab), 1e-300)
        return 0.0 <= t <= 1.0 and np.linalg.norm(a + t * ab - q) <= 1e-9
    for tri in itertools.combinations(range(len(pts)), 3):
        a, b, c = pts[list(tri)]
        det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(det) < 1e-12:
            continue
        l1 = ((c[1] - a[1]) * (q[0] - a[0]) - (c[0] - a[0]) * (q[1] - a[1])) / det
        l2 = (-(b[1] - a[1]) * (q[0] - a[0]) + (b[0] - a[0]) * (q[1] - a[1])) / det
        if l1 >= -1e-9 and l2 >= -1e-9 and l1 + l2 <= 1.0 + 1e-9:
            return True
    return False


def _brute_vertices(pts):
    out = []
    for i in range(len(pts)):
        others = np.delete(pts, i, axis=0)
        if not _in_hull_2d(pts[i], others):
            out.append(pts[i])
    return np.array(out)


def test_hull_2d_unit_square_with_interior_point():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]])
    verts = hull_2d(pts).vertices
    assert len(verts) == 4
    got = {tuple(v) for v in np.round(verts, 12)}
    assert got == {(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)}


def test_hull_2d_counterclockwise_order():
    pts = np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 2.0]])
    verts = hull_2d(pts).vertices
    area2 = 0.0
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        area2 += a[0] * b[1] - b[0] * a[1]
    assert area2 > 0


def test_hull_2d_collinear_and_degenerate():
    line = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    assert len(hull_2d(line).vertices) == 2
    same = np.tile([[0.3, 0.7]], (4, 1))
    verts = hull_2d(same).vertices
    assert len(verts) == 1
    np.testing.assert_allclose(verts[0], [0.3, 0.7])


def test_hull_2d_random_against_brute_force():
    rng = np.random.default_rng(31)
    for _ in range(50):
        pts = rng.normal(size=(int(rng.integers(3, 12)), 2))
        verts = hull_2d(pts).vertices
        brute = _brute_vertices(pts)
        got = {tuple(v) for v in np.round(verts, 9)}
        want = {tuple(v) for v in np.round(brute, 9)}
        assert got == want


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

TRIANGLE = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0]])


def test_hull_contains_interior_point():
    status, dist = hull_contains(TRIANGLE, np.array([1.0, 1.0]), tol=1e-9)
    assert status == "inside"
    assert dist <= 1e-9


def test_hull_contains_outside_point_distance():
    status, dist = hull_contains(TRIANGLE, np.array([2.5, 2.5]), tol=1e-6)
    assert status == "outside"
    # nearest point on the edge x + y = 4 is (2, 2)
    assert dist == pytest.approx(math.sqrt(0.5), abs=1e-6)


def test_hull_contains_edge_midpoint_is_boundary():
    status, dist = hull_contains(TRIANGLE, np.array([2.0, 0.0]), tol=1e-6)
    assert status == "boundary"
    assert dist <= 1e-6


def test_hull_contains_vertex_is_boundary():
    status, dist = hull_contains(TRIANGLE, np.array([0.0, 0.0]), tol=1e-6)
    assert status == "boundary"
    assert dist <= 1e-6


def test_hull_contains_far_point():
    status, dist = hull_contains(TRIANGLE, np.array([10.0, 10.0]), tol=1e-6)
    assert status == "outside"
    # nearest hull point is (2, 2), the midpoint of the far edge
    assert dist == pytest.approx(8.0 * math.sqrt(2.0), rel=1e-6)


def test_hull_contains_rejects_bad_tol():
    with pytest.raises(ValueError, match="tol must be positive"):
        hull_contains(TRIANGLE, np.array([1.0, 1.0]), tol=0.0)


def test_hull_contains_agrees_with_polygon_oracle():
    rng = np.random.default_rng(202)
    pts = rng.uniform(0.0, 1.0, (8, 2))
    for _ in range(1000):
        q = rng.uniform(-0.3, 1.3, 2)
        status, dist = hull_contains(pts, q, tol=1e-9)
        oracle = _in_hull_2d(q, pts)
        if oracle:
            assert status in ("inside", "boundary")
        else:
            assert status == "outside"
            assert dist > 0.0


def test_hull_contains_simplex_in_3d():
    pts = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0],
                    [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    status, dist = hull_contains(pts, np.full(3, 0.25), tol=1e-9)
    assert status == "inside"
    assert dist <= 1e-9
    status, dist = hull_contains(pts, np.array([1.0, 1.0, 1.0]), tol=1e-6)
    assert status == "outside"
    # distance from (1,1,1) to the plane x + y + z = 1
    assert dist == pytest.approx(2.0 / math.sqrt(3.0), rel=1e-6)


# ---------------------------------------------------------------------------
# simplex coefficients
# ---------------------------------------------------------------------------

def test_barycentric_coords_segment():
    res = barycentric_coords(np.array([[0.0], [1.0]]), np.array([0.25]), tau_min=1e-3)
    np.testing.assert_allclose(res.tau, [0.75, 0.25], atol=1e-9)
    assert res.residual <= 1e-8 * 1.25


def test_barycentric_coords_centroid_of_simplex():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    res = barycentric_coords(pts, np.array([1.0 / 3.0, 1.0 / 3.0]), tau_min=1e-3)
    np.testing.assert_allclose(res.tau, np.full(3, 1.0 / 3.0), atol=1e-8)


def test_barycentric_coords_square_center_prefers_uniform():
    # the center of a square has many representations; the uniform one wins
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    res = barycentric_coords(pts, np.array([0.5, 0.5]), tau_min=1e-3)
    np.testing.assert_allclose(res.tau, np.full(4, 0.25), atol=1e-8)


def test_barycentric_coords_reconstruction_property():
    rng = np.random.default_rng(61)
    checked = 0
    for _ in range(40):
        n = int(rng.integers(3, 9))
        pts = rng.normal(size=(n, 2))
        w = rng.uniform(0.2, 1.0, n)
        w /= w.sum()
        q = w @ pts
        if interior_margin(pts, q) < 0.05:
            continue  # strictly interior targets only
        res = barycentric_coords(pts, q, tau_min=1e-6)
        checked += 1
        assert res.tau.min() >= 1e-6
        np.testing.assert_allclose(res.tau.sum(), 1.0, atol=1e-10)
        assert np.linalg.norm(res.tau @ pts - q) <= 1e-8 * (1.0 + np.linalg.norm(q))
    assert checked >= 20


def test_barycentric_coords_outside_raises():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError, match="target outside hull"):
        barycentric_coords(pts, np.array([2.0, 2.0]), tau_min=1e-3)


def test_barycentric_coords_boundary_raises():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError, match="target too close to boundary"):
        barycentric_coords(pts, np.array([0.5, 0.0]), tau_min=1e-3)


# ---------------------------------------------------------------------------
# interior margin
# ---------------------------------------------------------------------------

def test_interior_margin_triangle():
    # distance from (1, 1) to the nearest edge of the right triangle
    assert interior_margin(TRIANGLE, np.array([1.0, 1.0])) == pytest.approx(1.0, abs=1e-9)


def test_interior_margin_vertex_is_zero():
    assert interior_margin(TRIANGLE, np.array([0.0, 0.0])) == pytest.approx(0.0, abs=1e-9)


def test_interior_margin_outside_is_zero():
    assert interior_margin(TRIANGLE, np.array([5.0, 5.0])) == 0.0


def test_interior_margin_1d():
    pts = np.array([[0.0], [2.0]])
    assert interior_margin(pts, np.array([0.5])) == pytest.approx(0.5, abs=1e-12)


def test_interior_margin_high_dim_certificate():
    # sampled-direction estimate: positive for the simplex centroid,
    # zero for a point outside
    pts = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0],
                    [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    assert interior_margin(pts, np.full(3, 0.25)) > 0.0
    assert interior_margin(pts, np.array([1.0, 1.0, 1.0])) == 0.0
