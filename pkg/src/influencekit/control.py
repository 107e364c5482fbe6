"""Weight controls that steer the barycenter toward a target point.

The squared distance X(t) = |xbar - x*|^2 obeys

    dX/dt = (2 / sum_i m_i) * sum_i m_i <xbar - x*, x_i - xbar> u_i

so every law here picks u to make that derivative as negative as its
constraint set allows.  Two constraint families are supported, each with a
mass-conserving variant that additionally keeps sum_i m_i u_i = 0:

    max_i |u_i| <= alpha        (box)
    sum_i |u_i| <= A            (cross-polytope)

On the conserving subspace the free-form cost m_i <xbar - x*, x_i - xbar>
and the pinned-form cost m_i <xbar - x*, x_i - x*> give the same objective,
which is what makes the box and cross-polytope linear programs below
interchangeable between the two cost conventions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import barycenter, barycentric_coords
from .model import SystemState

_RATIO_TIE_TOL = 1e-13
_SIGN_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class ControlSet:
    """Admissible control vectors: a norm bound, optionally mass-conserving."""

    norm: str  # "linf" | "l1"
    bound: float
    mass_conserving: bool = False

    def __post_init__(self):
        if self.norm not in ("linf", "l1"):
            raise ValueError("norm must be 'linf' or 'l1'")
        if not self.bound > 0:
            raise ValueError("control bound must be positive")

    @classmethod
    def linf(cls, alpha: float, mass_conserving: bool = False) -> "ControlSet":
        return cls(norm="linf", bound=float(alpha), mass_conserving=mass_conserving)

    @classmethod
    def l1(cls, A: float, mass_conserving: bool = False) -> "ControlSet":
        return cls(norm="l1", bound=float(A), mass_conserving=mass_conserving)


def cost_vector(state: SystemState, target, form: str = "conserving") -> np.ndarray:
    """Per-agent coefficients c_i of the decrease rate sum_i c_i u_i.

    form "conserving" pins the moment arm at the target, form "free" at the
    barycenter; the two agree whenever sum m_i u_i = 0.
    """
    target = np.asarray(target, dtype=float).ravel()
    xbar = barycenter(state)
    direction = xbar - target
    if form == "conserving":
        ref = target
    elif form == "free":
        ref = xbar
    else:
        raise ValueError("form must be 'conserving' or 'free'")
    return state.m * ((state.x - ref) @ direction)


# ---------------------------------------------------------------------------
# linear programs over the two conserving constraint sets
# ---------------------------------------------------------------------------

def solve_box_hyperplane(c, m, alpha: float) -> np.ndarray:
    """Minimize sum c_i u_i subject to |u_i| <= alpha and sum m_i u_i = 0.

    Substituting v_i = m_i u_i turns this into a fractional-knapsack split:
    sort the ratios c_i / m_i in descending order, saturate the top of the
    list at -alpha and the bottom at +alpha, and let the single index where
    the cumulative capacity crosses half the total take the balancing value.
    Equal ratios are ordered by index.  Returns zeros when every ratio is
    equal (any feasible point is then optimal).
    """
    c = np.asarray(c, dtype=float).ravel()
    m = np.asarray(m, dtype=float).ravel()
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if (m <= 0).any():
        raise ValueError("weights must be positive")
    n = c.size
    r = c / m
    if r.max() - r.min() <= _RATIO_TIE_TOL * max(1.0, float(np.abs(r).max())):
        return np.zeros(n)
    order = np.lexsort((np.arange(n), -r))
    caps = alpha * m[order]
    total = caps.sum()
    csum = np.cumsum(caps)
    k = int(np.searchsorted(csum, 0.5 * total))
    u = np.empty(n)
    u[order[:k]] = -alpha
    u[order[k + 1:]] = alpha
    prev = csum[k - 1] if k > 0 else 0.0
    u[order[k]] = (2.0 * prev + caps[k] - total) / m[order[k]]
    return u


def solve_diamond_hyperplane(c, m, A: float) -> np.ndarray:
    """Minimize sum c_i u_i subject to sum |u_i| <= A and sum m_i u_i = 0.

    An optimal vertex moves weight between a single pair of agents: for the
    pair (i, j) the transfer w = m_i u_i = -m_j u_j saturating the budget has
    |w| = A m_i m_j / (m_i + m_j) and objective -|w| |r_i - r_j| with
    r = c / m.  The best pair is found by exhaustive scan, ties broken by
    lowest (i, j).  Returns zeros when every ratio is equal.
    """
    c = np.asarray(c, dtype=float).ravel()
    m = np.asarray(m, dtype=float).ravel()
    if not A > 0:
        raise ValueError("A must be positive")
    if (m <= 0).any():
        raise ValueError("weights must be positive")
    n = c.size
    r = c / m
    if n < 2 or r.max() - r.min() <= _RATIO_TIE_TOL * max(1.0, float(np.abs(r).max())):
        return np.zeros(n)
    harm = (m[:, None] * m[None, :]) / (m[:, None] + m[None, :])
    score = harm * np.abs(r[:, None] - r[None, :])
    score[np.tril_indices(n)] = -np.inf
    i, j = np.unravel_index(int(np.argmax(score)), score.shape)
    w = -math.copysign(A * harm[i, j], r[i] - r[j])
    u = np.zeros(n)
    u[i] = w / m[i]
    u[j] = -w / m[j]
    return u


# ---------------------------------------------------------------------------
# steepest-descent feedback laws
# ---------------------------------------------------------------------------

def steepest_descent(state: SystemState, target, control_set: ControlSet) -> np.ndarray:
    """Minimizer of the barycenter-distance decrease rate over the control set.

    The mass-conserving variants solve the matching linear program; the free
    variants have closed forms: sign saturation for the box, and the whole
    budget split across the top-scoring agents for the cross-polytope.
    """
    target = np.asarray(target, dtype=float).ravel()
    m = state.m
    if control_set.mass_conserving:
        c = cost_vector(state, target, form="conserving")
        if control_set.norm == "linf":
            return solve_box_hyperplane(c, m, control_set.bound)
        return solve_diamond_hyperplane(c, m, control_set.bound)

    xbar = barycenter(state)
    g = (state.x - xbar) @ (xbar - target)
    scale = float(np.abs(g).max())
    if scale == 0.0:
        return np.zeros(state.n_agents)
    if control_set.norm == "linf":
        u = -control_set.bound * np.sign(g)
        u[np.abs(g) <= _SIGN_ZERO_TOL * scale] = 0.0
        return u
    scores = m * np.abs(g)
    smax = float(scores.max())
    if smax <= 0.0:
        return np.zeros(state.n_agents)
    active = scores >= smax * (1.0 - _SIGN_ZERO_TOL)
    u = np.zeros(state.n_agents)
    u[active] = -(control_set.bound / active.sum()) * np.sign(g[active])
    return u


def active_components(u, tol: float = 1e-9) -> int:
    """Number of control entries exceeding a relative magnitude threshold."""
    u = np.asarray(u, dtype=float).ravel()
    scale = max(1.0, float(np.abs(u).max()))
    return int(np.count_nonzero(np.abs(u) > tol * scale))


# ---------------------------------------------------------------------------
# constructive controls
# ---------------------------------------------------------------------------

def extremal_pair_control(state: SystemState, target, alpha: float,
                          clamp: bool = True) -> tuple[np.ndarray, bool]:
    """Move weight between the two score-extreme agents.

    Scores s_i = m_i <xbar - x*, x_i - x*> rank how much each agent pulls the
    barycenter away from the target; weight is grown on the argmin and shed
    from the argmax at the rate bound alpha (ties resolved to the lower
    index).  The raw growth entry alpha * m_plus / m_minus can exceed alpha;
    with clamp=True both entries are rescaled by m_minus / m_plus so the law
    stays inside the box, and the returned flag records that this happened.
    Returns (u, clamped); u = 0 when the barycenter already sits on the
    target.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    target = np.asarray(target, dtype=float).ravel()
    xbar = barycenter(state)
    if float(np.linalg.norm(xbar - target)) == 0.0:
        return np.zeros(state.n_agents), False
    s = state.m * ((state.x - target) @ (xbar - target))
    i_minus = int(np.argmin(s))
    i_plus = int(np.argmax(s))
    u = np.zeros(state.n_agents)
    if i_minus == i_plus:
        return u, False
    u[i_minus] = alpha * state.m[i_plus] / state.m[i_minus]
    u[i_plus] = -alpha
    clamped = False
    if clamp and state.m[i_plus] > state.m[i_minus]:
        u *= state.m[i_minus] / state.m[i_plus]
        clamped = True
    return u, clamped


def open_loop_weight_control(x0, m0, target, alpha: float, alpha_tilde: float,
                             tau_min: float = 1e-3) -> "OpenLoopLaw":
    """Constant control driving the weights onto a scaled copy of the
    simplex coefficients of the target.

    With tau the coefficients of the target inside the initial hull and
    r_i = ln(m_i / tau_i), the horizon is T = (max r - min r) / (alpha -
    alpha_tilde) (floored at 1e-6 when the weights already match tau), the
    common scale is kappa = exp(min r - alpha_tilde T), and

        u_i = -(1/T) ln(m_i / (kappa tau_i))

    which lands every component in [-alpha, -alpha_tilde] and yields
    m_i(T) = kappa tau_i exactly for the weight subsystem.
    """
    if not (alpha > alpha_tilde > 0):
        raise ValueError("need alpha > alpha_tilde > 0")
    x0 = np.asarray(x0, dtype=float)
    m0 = np.asarray(m0, dtype=float).ravel()
    if (m0 <= 0).any():
        raise ValueError("weights must be positive")
    coords = barycentric_coords(x0, target, tau_min)
    r = np.log(m0 / coords.tau)
    r_min = float(r.min())
    r_max = float(r.max())
    horizon = max((r_max - r_min) / (alpha - alpha_tilde), 1e-6)
    kappa = math.exp(r_min - alpha_tilde * horizon)
    u = -(r - math.log(kappa)) / horizon
    if u.max() > -alpha_tilde + 1e-10 or u.min() < -alpha - 1e-10:
        raise RuntimeError("open-loop construction out of bounds")
    return OpenLoopLaw(
        u=u,
        horizon=horizon,
        kappa=kappa,
        tau=coords.tau,
        target=np.asarray(target, dtype=float).ravel(),
    )


# ---------------------------------------------------------------------------
# law objects with a common evaluate(state) -> (u, clamped) protocol
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroLaw:
    """No control; a target may still be supplied for distance reporting."""

    target: np.ndarray | None = None
    conserves_mass = False

    def evaluate(self, state: SystemState) -> tuple[np.ndarray, bool]:
        return np.zeros(state.n_agents), False


@dataclass(frozen=True)
class SteepestDescentLaw:
    target: np.ndarray
    control_set: ControlSet

    @property
    def conserves_mass(self) -> bool:
        return self.control_set.mass_conserving

    def evaluate(self, state: SystemState) -> tuple[np.ndarray, bool]:
        return steepest_descent(state, self.target, self.control_set), False


@dataclass(frozen=True)
class ExtremalPairLaw:
    target: np.ndarray
    alpha: float
    clamp: bool = True
    conserves_mass = True

    def evaluate(self, state: SystemState) -> tuple[np.ndarray, bool]:
        return extremal_pair_control(state, self.target, self.alpha, self.clamp)


@dataclass(frozen=True)
class OpenLoopLaw:
    """Precomputed constant control, switched off after its horizon."""

    u: np.ndarray
    horizon: float
    kappa: float
    tau: np.ndarray
    target: np.ndarray
    conserves_mass = False

    def evaluate(self, state: SystemState) -> tuple[np.ndarray, bool]:
        if state.t < self.horizon - 1e-12:
            return self.u.copy(), False
        return np.zeros(state.n_agents), False
