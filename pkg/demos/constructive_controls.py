"""
The two constructive laws in action.

Part 1: the extremal-pair transfer law moves weight between the two
score-extreme agents each step; the barycenter-target distance decays at
least as fast as exp(-(alpha/N) t) while positions stay in the initial hull.

Part 2: the open-loop law precomputes one constant control from the initial
data.  At its horizon T the weights land exactly on kappa * tau, where tau
are the convex coefficients of the target in the initial positions.
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from influencekit import (ExtremalPairLaw, IntegratorConfig, InteractionKernel,
                          MassDynamics, open_loop_weight_control, simulate)

SEED = 5
OUT_DIR = os.path.join(os.path.dirname(__file__), "output")
KERNEL = InteractionKernel.gaussian()
NO_PSI = MassDynamics.zero()


def extremal_pair_panel(ax):
    rng = np.random.Generator(np.random.Philox(SEED))
    n = 8
    x0 = rng.uniform(0.0, 1.0, (n, 2))
    m0 = np.ones(n)
    target = np.array([0.45, 0.55])
    alpha = 2.0

    traj = simulate(x0, m0, ExtremalPairLaw(target=target, alpha=alpha, clamp=False),
                    NO_PSI, KERNEL, IntegratorConfig(h=0.002, t_end=4.0))
    envelope = traj.dist[0] * np.exp(-(alpha / n) * traj.t)
    print(f"extremal pair: dist {traj.dist[0]:.4f} -> {traj.dist[-1]:.2e}, "
          f"envelope end {envelope[-1]:.2e}")
    print(f"total mass drift {abs(traj.total_mass - traj.M).max():.2e}")

    ax.semilogy(traj.t, traj.dist, label="|barycenter - target|")
    ax.semilogy(traj.t, envelope, "--", label="exp(-(alpha/N) t) envelope")
    ax.set_xlabel("t")
    ax.legend(fontsize=8)
    ax.set_title("pair transfer law")


def open_loop_panel(ax):
    # the 1d worked case: two agents, target a quarter of the way across
    x0 = np.array([[0.0], [1.0]])
    m0 = np.array([1.0, 1.0])
    law = open_loop_weight_control(x0, m0, np.array([0.25]),
                                   alpha=2.0, alpha_tilde=1.0)
    print(f"open loop: u = {law.u}, T = {law.horizon:.5f}, kappa = {law.kappa:.5f}")

    config = IntegratorConfig(h=law.horizon / 500.0, t_end=law.horizon,
                              mass_mode="exact_exponential_splitting")
    traj = simulate(x0, m0, law, NO_PSI, KERNEL, config)
    m_T = traj.m[-1]
    print(f"m(T) = {m_T}, kappa*tau = {law.kappa * law.tau}, "
          f"error {np.abs(m_T - law.kappa * law.tau).max():.2e}")

    ax.plot(traj.t, traj.m[:, 0], label="m_1")
    ax.plot(traj.t, traj.m[:, 1], label="m_2")
    ax.scatter([law.horizon] * 2, law.kappa * law.tau, marker="x", s=60,
               color="k", zorder=3, label="kappa * tau")
    ax.set_xlabel("t")
    ax.set_ylabel("weight")
    ax.legend(fontsize=8)
    ax.set_title("open-loop weight steering")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    extremal_pair_panel(ax1)
    open_loop_panel(ax2)
    fig.tight_layout()
    out = os.path.join(OUT_DIR, "constructive_controls.png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
