"""
Uncontrolled run: the agent cloud contracts and the diameter stays under the
exponential envelope D(0) * exp(-a_min * t) set by the kernel's minimum
strength over the initial diameter.
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from influencekit import (IntegratorConfig, InteractionKernel, MassDynamics,
                          ZeroLaw, compute_a_min, simulate)

SEED = 12
N_AGENTS = 12
T_END = 6.0
OUT_DIR = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    rng = np.random.Generator(np.random.Philox(SEED))
    x0 = rng.uniform(0.0, 1.0, (N_AGENTS, 2))
    m0 = rng.uniform(0.5, 1.5, N_AGENTS)

    kernel = InteractionKernel.gaussian()
    traj = simulate(x0, m0, ZeroLaw(), MassDynamics.zero(), kernel,
                    IntegratorConfig(h=0.005, t_end=T_END))

    a_min = compute_a_min(kernel, traj.diameter[0])
    envelope = traj.diameter[0] * np.exp(-a_min * traj.t)
    print(f"initial diameter {traj.diameter[0]:.4f}, a_min {a_min:.4f}")
    print(f"final diameter   {traj.diameter[-1]:.3e} "
          f"(envelope {envelope[-1]:.3e})")
    assert (traj.diameter <= envelope + 1e-9).all()

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.semilogy(traj.t, traj.diameter, label="diameter")
    ax1.semilogy(traj.t, envelope, "--", label="exp(-a_min t) envelope")
    ax1.set_xlabel("t")
    ax1.set_ylabel("diameter")
    ax1.legend()

    for i in range(N_AGENTS):
        ax2.plot(traj.x[:, i, 0], traj.x[:, i, 1], lw=0.8)
    ax2.scatter(x0[:, 0], x0[:, 1], s=12, color="k", label="start")
    ax2.scatter(*traj.bary[-1], marker="*", s=120, color="tab:red", label="final barycenter")
    ax2.set_aspect("equal")
    ax2.legend()

    fig.tight_layout()
    out = os.path.join(OUT_DIR, "consensus_contraction.png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
