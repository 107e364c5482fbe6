"""
Measure-valued reading of a run: the velocity field the empirical measure
induces on the plane, and the weak-form residual of the continuity equation
shrinking quadratically as the finite-difference window tightens.
"""
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from influencekit import (IntegratorConfig, InteractionKernel, MassDynamics,
                          TestFunction, ZeroLaw, from_state, simulate,
                          velocity_field, weak_form_residual)

SEED = 99
OUT_DIR = os.path.join(os.path.dirname(__file__), "output")
KERNEL = InteractionKernel.gaussian()


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    rng = np.random.Generator(np.random.Philox(SEED))
    n = 6
    x0 = rng.uniform(0.0, 1.0, (n, 2))
    m0 = rng.uniform(0.5, 1.5, n)
    psi = MassDynamics.coordinate_drift(0.8, axis=0)

    traj = simulate(x0, m0, ZeroLaw(), psi, KERNEL,
                    IntegratorConfig(h=1e-4, t_end=0.1))

    # residual of the weak-form balance at t = 0.05, halving the window
    f = TestFunction.gaussian_bump([0.6, 0.4], sigma=0.8)
    print("dt_fd      residual")
    prev = None
    for dt_fd in (8e-3, 4e-3, 2e-3, 1e-3):
        res = weak_form_residual(traj, f, t=0.05, dt_fd=dt_fd)
        ratio = "" if prev is None else f"  (ratio {prev / res:.2f})"
        print(f"{dt_fd:.0e}   {res:.3e}{ratio}")
        prev = res

    # quiver of the induced field around the final configuration
    mu = from_state(traj.state_at(traj.n_samples - 1))
    grid = np.linspace(-0.1, 1.1, 18)
    qx, qy = np.meshgrid(grid, grid)
    pts = np.column_stack([qx.ravel(), qy.ravel()])
    vel = velocity_field(mu, KERNEL, pts)

    fig, ax = plt.subplots(figsize=(5.5, 5))
    ax.quiver(pts[:, 0], pts[:, 1], vel[:, 0], vel[:, 1],
              np.linalg.norm(vel, axis=1), cmap="viridis", scale=8)
    ax.scatter(mu.x[:, 0], mu.x[:, 1], s=120 * mu.w / mu.w.max(),
               color="tab:red", zorder=3, label="atoms (size = weight)")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    out = os.path.join(OUT_DIR, "measure_view.png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
