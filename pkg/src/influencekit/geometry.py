"""Convex geometry of agent configurations.

Provides the weighted barycenter, planar convex hulls, a membership test for
the convex hull of a point cloud in any dimension, and simplex coefficients
expressing an interior target as a convex combination of agent positions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import SystemState


def barycenter(state: SystemState) -> np.ndarray:
    """Weight-averaged position (sum m_i x_i) / (sum m_i)."""
    return (state.m @ state.x) / state.m.sum()


# ---------------------------------------------------------------------------
# planar hulls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hull2D:
    """Convex hull of a planar point set, vertices counterclockwise.

    Collinear interior points are dropped; degenerate inputs give one vertex
    (all points coincident) or two (all points collinear).
    """

    vertices: np.ndarray


def _cross2(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_2d(points) -> Hull2D:
    """Monotone-chain convex hull; keeps only strict corner vertices."""
    pts = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    if pts.shape[0] == 1:
        return Hull2D(vertices=pts.copy())

    def build(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2 and _cross2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(pts[::-1])
    verts = lower[:-1] + upper[:-1]
    return Hull2D(vertices=np.array(verts))


def interior_margin(points, q) -> float:
    """Distance from q to the hull boundary if q is strictly inside, else 0.

    Exact for d = 1 and d = 2.  In higher dimension the value is an estimate
    from sampled support directions and should be treated as a certificate
    only: positive means an interior point was confirmed along every sampled
    direction.
    """
    P = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float).ravel()
    d = P.shape[1]
    if d == 1:
        lo, hi = float(P.min()), float(P.max())
        return max(0.0, min(q[0] - lo, hi - q[0]))
    if d == 2:
        hull = hull_2d(P)
        verts = hull.vertices
        if verts.shape[0] < 3:
            return 0.0
        worst = math.inf
        k = verts.shape[0]
        for i in range(k):
            a = verts[i]
            b = verts[(i + 1) % k]
            e = b - a
            length = math.hypot(e[0], e[1])
            inner = (e[0] * (q[1] - a[1]) - e[1] * (q[0] - a[0])) / length
            worst = min(worst, inner)
        return max(0.0, worst)
    # sampled support directions: pairwise differences plus a fixed random batch
    dirs = []
    n = P.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            v = P[i] - P[j]
            norm = np.linalg.norm(v)
            if norm > 0:
                dirs.append(v / norm)
    rng = np.random.Generator(np.random.Philox(1234))
    extra = rng.normal(size=(256, d))
    extra /= np.linalg.norm(extra, axis=1, keepdims=True)
    dirs.extend(extra)
    worst = math.inf
    for v in dirs:
        worst = min(worst, float((P @ v).max() - q @ v))
    return max(0.0, worst)


# ---------------------------------------------------------------------------
# hull membership in any dimension
# ---------------------------------------------------------------------------

_MAX_MEMBERSHIP_ITERS = 100_000


def hull_contains(points, q, tol: float) -> tuple[str, float]:
    """Classify q against the convex hull of the points.

    Runs a Frank-Wolfe solve (with away steps) of the distance from q to the
    hull over simplex coefficients.  Returns (status, distance_estimate) with
    status one of "inside", "boundary", "outside":

        distance <= tol and positive interior margin  ->  inside
        distance <= tol otherwise                     ->  boundary
        distance  > tol                               ->  outside

    Raises RuntimeError if no classification is reached within the iteration
    budget.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    P = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float).ravel()
    n = P.shape[0]
    xi = np.full(n, 1.0 / n)
    status = None
    dist = 0.0
    for _ in range(_MAX_MEMBERSHIP_ITERS):
        r = xi @ P - q
        f = 0.5 * float(r @ r)
        dist = math.sqrt(2.0 * f)
        grad = P @ r
        s = int(np.argmin(grad))
        gap = float(grad @ xi - grad[s])
        if dist <= tol:
            status = "in"
            break
        lower = math.sqrt(max(dist * dist - 2.0 * gap, 0.0))
        if lower > tol and gap <= 1e-13 * (1.0 + f):
            status = "outside"
            break
        active = np.nonzero(xi > 0.0)[0]
        a_idx = int(active[np.argmax(grad[active])])
        d_fw = -xi.copy()
        d_fw[s] += 1.0
        d_aw = xi.copy()
        d_aw[a_idx] -= 1.0
        if float(grad @ d_fw) <= float(grad @ d_aw) or xi[a_idx] >= 1.0:
            direction, step_max = d_fw, 1.0
        else:
            direction, step_max = d_aw, xi[a_idx] / (1.0 - xi[a_idx])
        pd = direction @ P
        curv = float(pd @ pd)
        if curv <= 0.0:
            raise RuntimeError("membership solver stalled")
        step = min(step_max, -float(grad @ direction) / curv)
        if step <= 0.0:
            raise RuntimeError("membership solver stalled")
        xi = xi + step * direction
        np.maximum(xi, 0.0, out=xi)
        xi /= xi.sum()
    else:
        raise RuntimeError("membership solver stalled")
    if status == "outside":
        return "outside", dist
    margin = interior_margin(P, q)
    return ("inside" if margin > tol else "boundary"), dist


# ---------------------------------------------------------------------------
# simplex coefficients for interior targets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BarycentricCoords:
    """Convex-combination coefficients tau with the achieved position residual."""

    tau: np.ndarray
    residual: float


def _project_simplex(v: np.ndarray) -> np.ndarray:
    # Euclidean projection onto {w >= 0, sum w = 1}
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / ks > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def barycentric_coords(points, q, tau_min: float, max_iter: int = 60_000) -> BarycentricCoords:
    """Coefficients tau on the simplex with sum tau_i x_i = q, biased toward
    the uniform vector among valid choices.

    The primary path solves the position and normalization constraints
    exactly on a shrinking support, always taking the representation closest
    to uniform; an accelerated projected-gradient polish on the squared
    position mismatch covers configurations the direct path cannot settle.

    Raises ValueError("target outside hull") when no coefficients reproduce q
    within 1e-8 * (1 + |q|), and ValueError("target too close to boundary for
    strictly positive coefficients") when the selected coefficients fall below
    tau_min.
    """
    P = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float).ravel()
    n = P.shape[0]
    uniform = np.full(n, 1.0 / n)
    threshold = 1e-8 * (1.0 + float(np.linalg.norm(q)))

    A_full = np.vstack([P.T, np.ones((1, n))])
    b = np.concatenate([q, [1.0]])

    # active-set sweep: least-distance-to-uniform solution of the equality
    # constraints, dropping the most negative coefficient until feasible
    support = np.arange(n)
    tau = None
    for _ in range(n):
        A = A_full[:, support]
        u_s = np.full(support.size, 1.0 / n)
        corr, *_ = np.linalg.lstsq(A, b - A @ u_s, rcond=None)
        cand = u_s + corr
        if cand.min() >= -1e-12:
            tau = np.zeros(n)
            tau[support] = np.maximum(cand, 0.0)
            break
        if support.size == 1:
            break
        support = np.delete(support, int(np.argmin(cand)))

    if tau is None:
        tau = _project_simplex(uniform.copy())
    residual = float(np.linalg.norm(tau @ P - q))

    if residual > 0.25 * threshold:
        # accelerated projected-gradient polish on the position mismatch
        L = 2.0 * (np.linalg.norm(P, 2) ** 2 + 1e-12)
        y = tau.copy()
        t_mom = 1.0
        best, best_resid = tau.copy(), residual
        for _ in range(max_iter):
            grad = 2.0 * (P @ (y @ P - q))
            tau_new = _project_simplex(y - grad / L)
            t_new = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t_mom * t_mom))
            y = tau_new + ((t_mom - 1.0) / t_new) * (tau_new - tau)
            tau, t_mom = tau_new, t_new
            resid = float(np.linalg.norm(tau @ P - q))
            if resid < best_resid:
                best, best_resid = tau.copy(), resid
            if best_resid <= 0.25 * threshold:
                break
        tau, residual = best, best_resid

    if residual > threshold:
        raise ValueError("target outside hull")
    tau = np.maximum(tau, 0.0)
    tau /= tau.sum()
    if tau.min() < tau_min:
        raise ValueError("target too close to boundary for strictly positive coefficients")
    return BarycentricCoords(tau=tau, residual=residual)
