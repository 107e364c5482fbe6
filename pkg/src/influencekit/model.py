"""Core model: agent states, interaction kernels, and weight dynamics.

The system couples N agents in R^d.  Each agent carries a position (its
opinion) and a strictly positive influence weight.  Positions relax toward
a weighted mean of the other agents, with the pull between two agents set
by a nonnegative interaction kernel evaluated at their distance:

    dx_i/dt = (1/M) * sum_j m_j a(|x_i - x_j|) (x_j - x_i)

where M is the total weight at time zero, kept as a fixed reference.
Weights evolve multiplicatively.  Their relative growth rate is the sum of
a built-in term (``MassDynamics``) and an external control u:

    dm_i/dt = m_i * (psi_i(x, m) + u_i)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class SystemState:
    """Positions and influence weights of the agent system at one instant.

    Attributes:
        t: current time.
        x: (N, d) agent positions.
        m: (N,) strictly positive influence weights.
        M: reference total mass, the sum of weights at time zero.
    """

    t: float
    x: np.ndarray
    m: np.ndarray
    M: float

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        m = np.asarray(self.m, dtype=float).ravel()
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "M", float(self.M))
        if x.ndim != 2:
            raise ValueError("positions must be a (N, d) array")
        if x.shape[0] != m.shape[0] or x.shape[0] < 1:
            raise ValueError("positions and weights must have matching agent count")
        if not (np.isfinite(x).all() and np.isfinite(m).all() and math.isfinite(self.t)):
            raise ValueError("non-finite state")
        if (m <= 0).any():
            raise ValueError("weights must be positive")
        if not self.M > 0:
            raise ValueError("reference mass must be positive")

    @classmethod
    def initial(cls, x, m, t: float = 0.0) -> "SystemState":
        """Build a time-zero state; the reference mass is the weight total."""
        m = np.asarray(m, dtype=float).ravel()
        return cls(t=t, x=np.asarray(x, dtype=float), m=m, M=float(m.sum()))

    @property
    def n_agents(self) -> int:
        return self.x.shape[0]

    @property
    def dim(self) -> int:
        return self.x.shape[1]

    @property
    def total_mass(self) -> float:
        return float(self.m.sum())


# ---------------------------------------------------------------------------
# interaction kernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InteractionKernel:
    """Distance-dependent interaction strength ``a(s) >= 0``.

    ``a`` must accept an ndarray of distances and evaluate elementwise.
    ``calibrated`` caches two scalars used by a-priori bounds over a diameter
    range [0, D0]: ``delta``, the sup of s*a(s), and ``a_min``, the inf of a.
    """

    a: Callable[[np.ndarray], np.ndarray]
    kind: str
    D0: float | None = None
    delta: float | None = None
    a_min: float | None = None

    @classmethod
    def gaussian(cls) -> "InteractionKernel":
        return cls(a=lambda s: np.exp(-np.square(s)), kind="gaussian")

    @classmethod
    def constant(cls, value: float) -> "InteractionKernel":
        if value < 0:
            raise ValueError("kernel value must be nonnegative")
        value = float(value)
        return cls(a=lambda s: np.full_like(np.asarray(s, dtype=float), value), kind="constant")

    @classmethod
    def tabulated(cls, s, values) -> "InteractionKernel":
        s = np.asarray(s, dtype=float).ravel()
        values = np.asarray(values, dtype=float).ravel()
        if s.shape != values.shape or s.size < 2:
            raise ValueError("tabulated kernel needs matching s and a arrays of length >= 2")
        if (np.diff(s) <= 0).any():
            raise ValueError("tabulated abscissae must be strictly increasing")
        if (values < 0).any():
            raise ValueError("tabulated kernel values must be nonnegative")
        return cls(a=lambda q: np.interp(q, s, values), kind="tabulated")

    def calibrated(self, D0: float) -> "InteractionKernel":
        """Return a copy with delta and a_min cached for diameters up to D0."""
        return replace(
            self,
            D0=float(D0),
            delta=compute_delta(self, D0),
            a_min=compute_a_min(self, D0),
        )


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_refine(f, lo: float, hi: float, maximize: bool) -> float:
    # golden-section scan of [lo, hi]; returns the best objective value seen
    sign = 1.0 if maximize else -1.0
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = sign * float(f(c))
    fd = sign * float(f(d))
    best = max(fc, fd, sign * float(f(a)), sign * float(f(b)))
    for _ in range(200):
        if b - a <= 1e-13 * max(1.0, abs(a) + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = sign * float(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = sign * float(f(d))
        best = max(best, fc, fd)
    return sign * best


def compute_delta(kernel: InteractionKernel, D0: float) -> float:
    """Sup of s*a(s) over [0, D0], by dense grid plus golden-section refinement."""
    if D0 < 0:
        raise ValueError("D0 must be nonnegative")
    if D0 == 0:
        return 0.0
    s = np.linspace(0.0, D0, 10001)
    g = s * np.asarray(kernel.a(s), dtype=float)
    k = int(np.argmax(g))
    lo = s[max(k - 1, 0)]
    hi = s[min(k + 1, s.size - 1)]
    refined = _golden_refine(lambda q: q * float(kernel.a(np.asarray(q))), lo, hi, maximize=True)
    return float(max(g.max(), refined))


def compute_a_min(kernel: InteractionKernel, D0: float) -> float:
    """Inf of a(s) over [0, D0], by dense grid plus golden-section refinement."""
    if D0 < 0:
        raise ValueError("D0 must be nonnegative")
    s = np.linspace(0.0, max(D0, 0.0), 10001) if D0 > 0 else np.zeros(1)
    vals = np.asarray(kernel.a(s), dtype=float)
    if D0 == 0:
        return float(vals[0])
    k = int(np.argmin(vals))
    lo = s[max(k - 1, 0)]
    hi = s[min(k + 1, s.size - 1)]
    refined = _golden_refine(lambda q: float(kernel.a(np.asarray(q))), lo, hi, maximize=False)
    return float(min(vals.min(), refined))


# ---------------------------------------------------------------------------
# weight dynamics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MassDynamics:
    """Built-in relative growth rate psi for the influence weights.

    Kinds:
        zero            psi = 0
        uniform_decay   psi_i = -rate for every agent
        pairwise        psi_i = (1/M) sum_j m_j S(x_i, x_j)
        triple          psi_i = (1/M^2) sum_j sum_k m_j m_k S3(x_i, x_j, x_k)

    ``pair_values`` and ``vector_eval`` are optional vectorized evaluators
    the factories attach so built-in dynamics avoid Python-level loops.
    A skew-symmetric pairwise S (S(x, y) = -S(y, x)) conserves total mass.
    """

    kind: str
    rate: float = 0.0
    S: Callable | None = None
    S3: Callable | None = None
    skew_symmetric: bool = False
    pair_values: Callable | None = None
    vector_eval: Callable | None = None

    @classmethod
    def zero(cls) -> "MassDynamics":
        return cls(kind="zero")

    @classmethod
    def uniform_decay(cls, rate: float) -> "MassDynamics":
        if rate < 0:
            raise ValueError("decay rate must be nonnegative")
        return cls(kind="uniform_decay", rate=float(rate))

    @classmethod
    def pairwise(cls, S, skew_symmetric: bool = False, pair_values=None) -> "MassDynamics":
        return cls(kind="pairwise", S=S, skew_symmetric=skew_symmetric, pair_values=pair_values)

    @classmethod
    def triple(cls, S3) -> "MassDynamics":
        return cls(kind="triple", S3=S3)

    @classmethod
    def coordinate_drift(cls, gain: float, axis: int = 0) -> "MassDynamics":
        """Skew-symmetric pairwise dynamics: weight flows down one coordinate."""
        gain = float(gain)

        def s(xi, xj):
            return gain * (xj[axis] - xi[axis])

        def pair_values(x):
            col = x[:, axis]
            return gain * (col[None, :] - col[:, None])

        return cls(kind="pairwise", S=s, skew_symmetric=True, pair_values=pair_values)

    @classmethod
    def influence_gain(cls, kernel: InteractionKernel) -> "MassDynamics":
        """Mass-conserving triple dynamics: weights grow for agents whose
        interaction activity exceeds the mass-weighted population average."""

        def s3(xi, xj, xk):
            dij = float(np.linalg.norm(xi - xj))
            djk = float(np.linalg.norm(xj - xk))
            return float(kernel.a(np.asarray(dij))) * dij - float(kernel.a(np.asarray(djk))) * djk

        def vector_eval(x, m, M):
            diff = x[None, :, :] - x[:, None, :]
            dist = np.linalg.norm(diff, axis=-1)
            g = np.asarray(kernel.a(dist), dtype=float) * dist
            flux = g @ m
            return (m.sum() * flux - m @ flux) / (M * M)

        return cls(kind="triple", S3=s3, vector_eval=vector_eval)


def _psi_values(x: np.ndarray, m: np.ndarray, M: float, psi: MassDynamics) -> np.ndarray:
    n = x.shape[0]
    if psi.kind == "zero":
        return np.zeros(n)
    if psi.kind == "uniform_decay":
        return np.full(n, -psi.rate)
    if psi.kind == "pairwise":
        if psi.pair_values is not None:
            smat = np.asarray(psi.pair_values(x), dtype=float)
        else:
            smat = np.empty((n, n))
            for i in range(n):
                for j in range(n):
                    smat[i, j] = psi.S(x[i], x[j])
        return (smat @ m) / M
    if psi.kind == "triple":
        if psi.vector_eval is not None:
            return np.asarray(psi.vector_eval(x, m, M), dtype=float)
        out = np.zeros(n)
        for i in range(n):
            acc = 0.0
            for j in range(n):
                for k in range(n):
                    acc += m[j] * m[k] * psi.S3(x[i], x[j], x[k])
            out[i] = acc / (M * M)
        return out
    raise ValueError(f"unknown mass dynamics kind {psi.kind!r}")


def eval_psi(state: SystemState, psi: MassDynamics) -> np.ndarray:
    """Relative weight growth rates psi_i(x, m) at the given state."""
    return _psi_values(state.x, state.m, state.M, psi)


# ---------------------------------------------------------------------------
# right-hand sides
# ---------------------------------------------------------------------------

def _velocities(x: np.ndarray, m: np.ndarray, M: float, kernel: InteractionKernel) -> np.ndarray:
    diff = x[None, :, :] - x[:, None, :]  # diff[i, j] = x_j - x_i
    dist = np.linalg.norm(diff, axis=-1)
    coef = np.asarray(kernel.a(dist), dtype=float) * m[None, :]
    return (coef[:, :, None] * diff).sum(axis=1) / M


def rhs_positions(state: SystemState, kernel: InteractionKernel) -> np.ndarray:
    """Velocities of all agents: each is pulled toward a weighted mean of the rest."""
    return _velocities(state.x, state.m, state.M, kernel)


def rhs_masses(state: SystemState, psi: MassDynamics, u: np.ndarray) -> np.ndarray:
    """Weight rates m_i * (psi_i + u_i) for a fixed control vector u."""
    u = np.asarray(u, dtype=float).ravel()
    if u.shape[0] != state.n_agents:
        raise ValueError("control vector length mismatch")
    return state.m * (eval_psi(state, psi) + u)


def diameter(state: SystemState) -> float:
    """Largest pairwise distance between agent positions."""
    return _diameter_of(state.x)


def _diameter_of(x: np.ndarray) -> float:
    if x.shape[0] < 2:
        return 0.0
    diff = x[None, :, :] - x[:, None, :]
    return float(np.linalg.norm(diff, axis=-1).max())
