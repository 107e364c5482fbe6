"""Measure-valued view of the particle system.

A finite configuration is read as the empirical measure with one atom per
agent, weighted by relative influence.  This module evaluates the induced
velocity field, the weight source term, and weak-form residuals against
smooth test functions, which is how runs are checked against the
continuity-equation description of the dynamics.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .integrate import Trajectory
from .model import InteractionKernel, SystemState, _velocities


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Weighted atoms.  Weights must be positive unless signed=True (source
    terms produce signed measures)."""

    x: np.ndarray
    w: np.ndarray
    signed: bool = False

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        w = np.asarray(self.w, dtype=float).ravel()
        if x.ndim != 2:
            raise ValueError("atom array must be 2-dimensional")
        if x.shape[0] != w.size:
            raise ValueError("atom and weight counts differ")
        if not self.signed and (w <= 0).any():
            raise ValueError("weights must be positive")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "w", w)

    @property
    def total(self) -> float:
        return float(self.w.sum())


def from_state(state: SystemState) -> EmpiricalMeasure:
    return EmpiricalMeasure(x=state.x.copy(), w=state.m / state.M)


def velocity_field(mu: EmpiricalMeasure, kernel: InteractionKernel,
                   q: np.ndarray) -> np.ndarray:
    """Transport velocity the measure induces at each query point.

    Every atom pulls the query toward itself with strength set by the
    interaction kernel at their separation, weighted by the atom's mass
    fraction.
    """
    q = np.asarray(q, dtype=float)
    single = q.ndim == 1
    q2 = np.atleast_2d(q)
    pts = np.vstack([q2, mu.x])
    wts = np.concatenate([np.zeros(q2.shape[0]), mu.w])
    # zero-weight query atoms feel the field without sourcing it
    vel = _velocities(pts, wts, 1.0, kernel)
    out = vel[: q2.shape[0]]
    return out[0] if single else out


def source_atoms(mu: EmpiricalMeasure, S: Callable[[np.ndarray, np.ndarray], float]) -> EmpiricalMeasure:
    """Signed measure of per-atom weight growth under a pairwise coupling."""
    n = mu.x.shape[0]
    smat = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            smat[i, j] = S(mu.x[i], mu.x[j])
    return EmpiricalMeasure(x=mu.x.copy(), w=mu.w * (smat @ mu.w), signed=True)


def kinetic_variance(mu: EmpiricalMeasure, target: np.ndarray) -> float:
    """Squared norm of the weighted mean displacement from the target."""
    target = np.asarray(target, dtype=float).ravel()
    return float(np.linalg.norm(mu.w @ (mu.x - target)) ** 2)


@dataclass(frozen=True)
class TestFunction:
    """Smooth scalar observables with analytic gradients, for weak-form
    checks: coordinate projections, squared distance to a point, and a
    gaussian bump."""

    __test__ = False  # not a pytest case despite the name

    kind: str
    k: int = 0
    p: Optional[np.ndarray] = None
    sigma: float = 1.0

    @classmethod
    def coordinate(cls, k: int) -> "TestFunction":
        return cls(kind="coordinate", k=int(k))

    @classmethod
    def quadratic(cls, p) -> "TestFunction":
        return cls(kind="quadratic", p=np.asarray(p, dtype=float).ravel())

    @classmethod
    def gaussian_bump(cls, p, sigma: float) -> "TestFunction":
        if not sigma > 0:
            raise ValueError("sigma must be positive")
        return cls(kind="gaussian_bump", p=np.asarray(p, dtype=float).ravel(),
                   sigma=float(sigma))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.kind == "coordinate":
            return x[:, self.k].copy()
        if self.kind == "quadratic":
            d = x - self.p
            return (d * d).sum(axis=1)
        if self.kind == "gaussian_bump":
            d = x - self.p
            return np.exp(-(d * d).sum(axis=1) / self.sigma ** 2)
        raise ValueError(f"unknown test function kind: {self.kind!r}")

    def gradient(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.kind == "coordinate":
            g = np.zeros_like(x)
            g[:, self.k] = 1.0
            return g
        if self.kind == "quadratic":
            return 2.0 * (x - self.p)
        if self.kind == "gaussian_bump":
            d = x - self.p
            vals = np.exp(-(d * d).sum(axis=1) / self.sigma ** 2)
            return -2.0 * d * (vals / self.sigma ** 2)[:, None]
        raise ValueError(f"unknown test function kind: {self.kind!r}")


def _sample_index(traj: Trajectory, t: float) -> int:
    idx = int(np.argmin(np.abs(traj.t - t)))
    if abs(traj.t[idx] - t) > 1e-9 * max(1.0, abs(t)):
        raise ValueError(f"time {t} is not on the recorded grid")
    return idx


def weak_form_residual(traj: Trajectory, f: TestFunction, t: float,
                       dt_fd: float) -> float:
    """Defect of the continuity equation at time t, tested against f.

    The time derivative of the observable's average is approximated by a
    centered difference over dt_fd; the transport and source integrals are
    evaluated exactly on the atoms.  Requires an uncontrolled run whose
    weight dynamics are a pairwise coupling, so the source term has the
    bilinear form the measure equation uses.  t - dt_fd and t + dt_fd must
    land on recorded samples.
    """
    if traj.psi.kind != "pairwise":
        raise ValueError("weak-form residual needs pairwise weight dynamics")
    if traj.psi.S is None:
        raise ValueError("weak-form residual needs a pairwise coupling function")
    if not dt_fd > 0:
        raise ValueError("dt_fd must be positive")

    k0 = _sample_index(traj, t)
    km = _sample_index(traj, t - dt_fd)
    kp = _sample_index(traj, t + dt_fd)

    def avg(k: int) -> float:
        return float((traj.m[k] / traj.M) @ f(traj.x[k]))

    dIdt = (avg(kp) - avg(km)) / (traj.t[kp] - traj.t[km])

    mu = EmpiricalMeasure(x=traj.x[k0], w=traj.m[k0] / traj.M)
    vel = _velocities(mu.x, mu.w, 1.0, traj.kernel)
    transport = float((mu.w[:, None] * f.gradient(mu.x) * vel).sum())
    src = source_atoms(mu, traj.psi.S)
    source = float(src.w @ f(src.x))
    return abs(dIdt - transport - source)


def merge_coincident(state: SystemState, pos_tol: float) -> SystemState:
    """Collapse agents closer than pos_tol into single agents carrying the
    summed weight.  Greedy: each agent joins the first earlier representative
    within tolerance, so the merged positions are the first occurrences."""
    if not pos_tol >= 0:
        raise ValueError("pos_tol must be nonnegative")
    reps: list[int] = []
    owner = np.empty(state.n_agents, dtype=int)
    for i in range(state.n_agents):
        for r in reps:
            if np.linalg.norm(state.x[i] - state.x[r]) <= pos_tol:
                owner[i] = r
                break
        else:
            owner[i] = i
            reps.append(i)
    xs = state.x[reps]
    ms = np.array([state.m[owner == r].sum() for r in reps])
    return SystemState(t=state.t, x=xs, m=ms, M=state.M)
