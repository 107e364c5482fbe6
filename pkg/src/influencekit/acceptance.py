"""Built-in verification suite.

Thirteen end-to-end checks covering conservation laws, decay-rate bounds,
LP solver correctness against exhaustive vertex enumeration, hull geometry,
the constructive control laws, weak-form consistency of the measure view,
and integrator convergence order.  Each criterion returns a result row with
the measured value, the bound it is held to, and a verdict; the CLI's
`acceptance` subcommand runs them all and writes the report.

Scenario-based criteria use the bundled seed scenario so the whole suite is
deterministic.  Randomized criteria draw from fixed-seed Philox generators.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import cli
from .control import ExtremalPairLaw, ZeroLaw, open_loop_weight_control, \
    solve_box_hyperplane, solve_diamond_hyperplane
from .geometry import hull_contains
from .integrate import IntegratorConfig, simulate
from .meanfield import TestFunction, merge_coincident, weak_form_residual
from .model import (InteractionKernel, MassDynamics, SystemState,
                    compute_a_min, compute_delta)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    measured: float
    bound: float
    passed: bool
    detail: str


# ---------------------------------------------------------------------------
# shared fixtures
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _seed_config() -> "cli.ScenarioConfig":
    return cli.load_config(cli.seed_scenario_path())


@lru_cache(maxsize=None)
def _seed_run(strategy: str):
    """Simulate the seed scenario under one strategy; cached across criteria."""
    config = replace(_seed_config(), strategy=strategy)
    x0, m0 = cli.initial_state(config)
    kernel = cli.build_kernel(config)
    psi = cli.build_psi(config, kernel)
    target = cli.resolve_target(config, x0)
    law = cli.build_law(config, x0, m0, target)
    return simulate(x0, m0, law, psi, kernel, config.integrator)


@lru_cache(maxsize=1)
def _uncontrolled_run():
    """Seed positions and weights, no control, no weight dynamics, long horizon."""
    config = _seed_config()
    x0, m0 = cli.initial_state(config)
    kernel = cli.build_kernel(config)
    traj = simulate(x0, m0, ZeroLaw(), MassDynamics.zero(), kernel,
                    IntegratorConfig(h=1e-3, t_end=5.0))
    return traj


# ---------------------------------------------------------------------------
# exhaustive LP oracles (small N only)
# ---------------------------------------------------------------------------

def _box_vertex_minimum(c, m, alpha):
    """Minimize c.u over {|u_i| <= alpha, sum m_i u_i = 0} by enumerating
    every vertex: all but one coordinate at +-alpha, the last balancing."""
    n = m.size
    best = 0.0
    found = False
    for free in range(n):
        others = [i for i in range(n) if i != free]
        for signs in itertools.product((-1.0, 1.0), repeat=n - 1):
            u = np.zeros(n)
            for s, i in zip(signs, others):
                u[i] = s * alpha
            u[free] = -(u[others] @ m[others]) / m[free]
            if abs(u[free]) <= alpha * (1.0 + 1e-12):
                u[free] = min(max(u[free], -alpha), alpha)
                val = float(c @ u)
                if not found or val < best:
                    best, found = val, True
    return min(best, 0.0) if found else 0.0


def _diamond_vertex_minimum(c, m, bound):
    """Minimize c.u over {sum |u_i| <= bound, sum m_i u_i = 0}: the vertices
    are the hyperplane crossings of the cross-polytope's edges."""
    n = m.size
    best = 0.0
    for i, j in itertools.combinations(range(n), 2):
        for sigma in (1.0, -1.0):
            u = np.zeros(n)
            u[i] = sigma * bound * m[j] / (m[i] + m[j])
            u[j] = -sigma * bound * m[i] / (m[i] + m[j])
            best = min(best, float(c @ u))
    return best


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def criterion_barycenter_conservation() -> CriterionResult:
    traj = _uncontrolled_run()
    drift = np.linalg.norm(traj.bary - traj.bary[0], axis=1).max()
    return CriterionResult(
        name="barycenter_conservation",
        measured=float(drift),
        bound=1e-6,
        passed=bool(drift <= 1e-6),
        detail="max weighted-average drift, no control, no weight dynamics, t_end=5",
    )


def criterion_consensus_rate() -> CriterionResult:
    traj = _uncontrolled_run()
    d0 = traj.diameter[0]
    a_min = compute_a_min(traj.kernel, d0)
    envelope = d0 * np.exp(-a_min * traj.t)
    ratio = float((traj.diameter / envelope).max())
    bound = 1.0 + 1e-6
    return CriterionResult(
        name="consensus_rate",
        measured=ratio,
        bound=bound,
        passed=bool(ratio <= bound),
        detail=f"max D(t)/(D(0)exp(-a_min t)), a_min={a_min:.6g}",
    )


def criterion_pair_transfer_decay() -> CriterionResult:
    config = _seed_config()
    x0, _ = cli.initial_state(config)
    m0 = np.ones(config.N)  # equal weights keep the donor below the receiver
    kernel = cli.build_kernel(config)
    target = cli.resolve_target(config, x0)
    alpha = config.alpha
    law = ExtremalPairLaw(target, alpha, clamp=False)
    traj = simulate(x0, m0, law, MassDynamics.zero(), kernel, config.integrator)

    rate = alpha / config.N
    envelope = traj.dist[0] * np.exp(-rate * traj.t)
    ratio = float((traj.dist / envelope).max())
    bound = 1.0 + 1e-2

    # the decay argument needs the donor (score argmax) no heavier than the
    # receiver (score argmin) and the target inside the moving hull
    ordering_ok = True
    for k in range(traj.n_samples):
        xbar = traj.bary[k]
        s = traj.m[k] * ((traj.x[k] - target) @ (xbar - target))
        if traj.m[k][int(np.argmax(s))] > traj.m[k][int(np.argmin(s))] * (1 + 1e-12):
            ordering_ok = False
            break
    interior_ok = all(
        hull_contains(traj.x[k], target, 1e-9)[0] != "outside"
        for k in range(0, traj.n_samples, 100)
    ) and hull_contains(traj.x[-1], target, 1e-9)[0] != "outside"

    return CriterionResult(
        name="pair_transfer_decay",
        measured=ratio,
        bound=bound,
        passed=bool(ratio <= bound and ordering_ok and interior_ok),
        detail=f"rate alpha/N={rate:.3g}; weight ordering held: {ordering_ok}; "
               f"target interior: {interior_ok}",
    )


def criterion_lp_oracle_equivalence() -> CriterionResult:
    rng = np.random.Generator(np.random.Philox(20260417))
    worst_gap = 0.0
    worst_feas = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 7))
        m = rng.uniform(0.2, 2.0, n)
        c = rng.normal(0.0, 1.0, n)
        bound = float(rng.uniform(0.5, 3.0))

        u = solve_box_hyperplane(c, m, bound)
        worst_gap = max(worst_gap, abs(float(c @ u) - _box_vertex_minimum(c, m, bound)))
        worst_feas = max(worst_feas, abs(float(m @ u)),
                         max(0.0, float(np.abs(u).max()) - bound))

        v = solve_diamond_hyperplane(c, m, bound)
        worst_gap = max(worst_gap, abs(float(c @ v) - _diamond_vertex_minimum(c, m, bound)))
        worst_feas = max(worst_feas, abs(float(m @ v)),
                         max(0.0, float(np.abs(v).sum()) - bound))

    return CriterionResult(
        name="lp_oracle_equivalence",
        measured=worst_gap,
        bound=1e-9,
        passed=bool(worst_gap <= 1e-9 and worst_feas <= 1e-10),
        detail=f"200 instances, N<=6, both solvers; worst feasibility residual {worst_feas:.3g}",
    )


def criterion_mass_conservation() -> CriterionResult:
    worst = 0.0
    for strategy in ("linf_um", "l1_um"):
        traj = _seed_run(strategy)
        worst = max(worst, float(np.abs(traj.total_mass - traj.M).max()))
    traj = _seed_run("linf_um")
    bound = 1e-8 * traj.M
    return CriterionResult(
        name="mass_conservation",
        measured=worst,
        bound=bound,
        passed=bool(worst <= bound),
        detail="max |total weight - reference| over linf_um and l1_um runs",
    )


def criterion_hull_contraction() -> CriterionResult:
    traj = _seed_run("linf_um")
    stride = max(1, (traj.n_samples - 1) // 5)
    picks = list(range(0, traj.n_samples, stride))
    if picks[-1] != traj.n_samples - 1:
        picks.append(traj.n_samples - 1)
    worst = 0.0
    checked = 0
    for a, b in itertools.combinations(picks, 2):
        for i in range(traj.x.shape[1]):
            status, dist = hull_contains(traj.x[a], traj.x[b][i], 1e-7)
            checked += 1
            if status == "outside":
                worst = max(worst, dist)
    return CriterionResult(
        name="hull_contraction",
        measured=worst,
        bound=1e-7,
        passed=bool(worst <= 1e-7),
        detail=f"{checked} membership checks of later positions in earlier hulls",
    )


def criterion_open_loop_terminal_masses() -> CriterionResult:
    x0 = np.array([[0.0], [1.0]])
    m0 = np.array([1.0, 1.0])
    target = np.array([0.25])
    law = open_loop_weight_control(x0, m0, target, alpha=2.0, alpha_tilde=1.0)
    kernel = InteractionKernel.gaussian()
    config = IntegratorConfig(h=law.horizon / 1000, t_end=law.horizon,
                              mass_mode="exact_exponential_splitting")
    traj = simulate(x0, m0, law, MassDynamics.zero(), kernel, config)
    mass_err = float(np.abs(traj.m[-1] - np.array([1.0 / 3.0, 1.0 / 9.0])).max())
    delta = compute_delta(kernel, traj.diameter[0])
    dist_bound = delta / 1.0
    final_dist = float(traj.dist[-1])
    return CriterionResult(
        name="open_loop_terminal_masses",
        measured=mass_err,
        bound=1e-6,
        passed=bool(mass_err <= 1e-6 and final_dist <= dist_bound),
        detail=f"u={np.round(law.u, 12).tolist()}, T={law.horizon:.6g}; "
               f"final dist {final_dist:.4g} <= {dist_bound:.4g}",
    )


def criterion_confinement() -> CriterionResult:
    config = _seed_config()
    x0, m0 = cli.initial_state(config)
    kernel = cli.build_kernel(config)
    a_const = 5.0
    traj = simulate(x0, m0, ZeroLaw(), MassDynamics.uniform_decay(a_const),
                    kernel, IntegratorConfig(h=1e-3, t_end=1.0))
    # positions cannot leave a small neighborhood, so the kernel range only
    # needs to cover slightly more than the initial diameter
    delta = compute_delta(kernel, traj.diameter[0] + 1.0)
    budget = (delta / a_const) * (1.0 - np.exp(-a_const * traj.t))
    moved = np.linalg.norm(traj.x - traj.x[0][None, :, :], axis=2)
    excess = float((moved - budget[:, None]).max())
    return CriterionResult(
        name="confinement",
        measured=excess,
        bound=1e-6,
        passed=bool(excess <= 1e-6),
        detail=f"uniform decay rate {a_const}, displacement minus budget, delta={delta:.6g}",
    )


def criterion_weak_form_residual() -> CriterionResult:
    rng = np.random.Generator(np.random.Philox(99))
    x0 = rng.random((5, 2))
    m0 = rng.uniform(0.5, 1.5, 5)
    kernel = InteractionKernel.gaussian()
    psi = MassDynamics.coordinate_drift(0.8, axis=0)
    traj = simulate(x0, m0, ZeroLaw(), psi, kernel,
                    IntegratorConfig(h=1e-4, t_end=0.1))
    f = TestFunction.gaussian_bump(np.array([0.6, 0.4]), sigma=0.8)
    coarse = weak_form_residual(traj, f, 0.05, 2e-3)
    fine = weak_form_residual(traj, f, 0.05, 1e-3)
    ratio = coarse / fine if fine > 0 else math.inf
    passed = 3.0 <= ratio <= 5.0 and fine <= 1e-4
    return CriterionResult(
        name="weak_form_residual",
        measured=float(ratio),
        bound=5.0,
        passed=bool(passed),
        detail=f"halving ratio in [3,5]; residual {fine:.3g} <= 1e-4 at dt_fd=1e-3",
    )


def criterion_indistinguishability() -> CriterionResult:
    x0 = np.array([[0.2, 0.3], [0.8, 0.5], [0.4, 0.9], [0.2, 0.3]])
    m0 = np.array([0.7, 1.1, 0.9, 0.5])
    merged0 = merge_coincident(SystemState.initial(x0, m0), 1e-12)
    kernel = InteractionKernel.gaussian()
    psi = MassDynamics.coordinate_drift(0.5, axis=0)
    config = IntegratorConfig(h=1e-3, t_end=2.0)
    split = simulate(x0, m0, ZeroLaw(), psi, kernel, config)
    lumped = simulate(merged0.x, merged0.m, ZeroLaw(), psi, kernel, config)
    pos_err = float(np.abs(split.x[:, :3, :] - lumped.x).max())
    coincide_err = float(np.abs(split.x[:, 3, :] - split.x[:, 0, :]).max())
    mass_err = float(np.abs(split.m[:, 0] + split.m[:, 3] - lumped.m[:, 0]).max())
    rest_err = float(np.abs(split.m[:, 1:3] - lumped.m[:, 1:3]).max())
    worst = max(pos_err, coincide_err, mass_err, rest_err)
    return CriterionResult(
        name="indistinguishability",
        measured=worst,
        bound=1e-8,
        passed=bool(worst <= 1e-8),
        detail="split pair vs merged agent over t in [0,2], positions and summed weights",
    )


def criterion_sparsity_pattern() -> CriterionResult:
    free = _seed_run("l1_free")
    um = _seed_run("l1_um")
    frac_free = float(np.mean(free.active_count == 1))
    frac_um = float(np.mean((um.active_count == 2) | (um.active_count == 3)))
    return CriterionResult(
        name="sparsity_pattern",
        measured=frac_free,
        bound=0.95,
        passed=bool(frac_free >= 0.95 and frac_um == 1.0),
        detail=f"l1_free single-component fraction; l1_um 2-or-3 fraction {frac_um:.4f}",
    )


def criterion_strategy_ordering() -> CriterionResult:
    times = {}
    for strategy in ("linf_free", "linf_um", "l1_free", "l1_um"):
        traj = _seed_run(strategy)
        reached = traj.dist <= cli.THRESHOLD
        times[strategy] = float(traj.t[int(np.argmax(reached))]) if reached.any() else math.inf
    gap = max(times["linf_free"] - times["linf_um"], times["l1_free"] - times["l1_um"])
    passed = (times["linf_free"] < times["linf_um"]
              and times["l1_free"] < times["l1_um"])
    return CriterionResult(
        name="strategy_ordering",
        measured=gap,
        bound=0.0,
        passed=bool(passed),
        detail="time-to-threshold " + ", ".join(f"{k}={v:.3g}" for k, v in times.items()),
    )


def criterion_integrator_order(base_h: float = 0.02, smooth: bool = True) -> CriterionResult:
    rng = np.random.Generator(np.random.Philox(7))
    x0 = rng.random((6, 2))
    m0 = rng.uniform(0.5, 1.5, 6)
    kernel = InteractionKernel.gaussian()
    psi = MassDynamics.influence_gain(kernel)
    if smooth:
        law = ZeroLaw()
    else:
        # feedback switching destroys smoothness, a deliberate negative control
        target = np.array([0.4, 0.4])
        law = ExtremalPairLaw(target, alpha=2.0, clamp=True)

    def terminal(h):
        traj = simulate(x0, m0, law, psi, kernel, IntegratorConfig(h=h, t_end=0.5))
        return np.concatenate([traj.x[-1].ravel(), traj.m[-1]])

    y1 = terminal(base_h)
    y2 = terminal(base_h / 2)
    y3 = terminal(base_h / 4)
    e1 = float(np.abs(y1 - y2).max())
    e2 = float(np.abs(y2 - y3).max())
    ratio = e1 / e2 if e2 > 0 else math.inf
    return CriterionResult(
        name="integrator_order",
        measured=float(ratio),
        bound=32.0,
        passed=bool(8.0 <= ratio <= 32.0),
        detail=f"Richardson ratio halving h from {base_h}, errors {e1:.3g}/{e2:.3g}",
    )


CRITERIA = {
    "barycenter_conservation": criterion_barycenter_conservation,
    "consensus_rate": criterion_consensus_rate,
    "pair_transfer_decay": criterion_pair_transfer_decay,
    "lp_oracle_equivalence": criterion_lp_oracle_equivalence,
    "mass_conservation": criterion_mass_conservation,
    "hull_contraction": criterion_hull_contraction,
    "open_loop_terminal_masses": criterion_open_loop_terminal_masses,
    "confinement": criterion_confinement,
    "weak_form_residual": criterion_weak_form_residual,
    "indistinguishability": criterion_indistinguishability,
    "sparsity_pattern": criterion_sparsity_pattern,
    "strategy_ordering": criterion_strategy_ordering,
    "integrator_order": criterion_integrator_order,
}


def run_all(criteria=None) -> list[CriterionResult]:
    """Run the named criteria (all thirteen when criteria is None)."""
    if criteria is None:
        names = list(CRITERIA)
    else:
        names = list(criteria)
        for name in names:
            if name not in CRITERIA:
                raise ValueError(f"unknown criterion '{name}'")
    return [CRITERIA[name]() for name in names]
