"""Simulation and steering of weighted opinion-dynamics systems.

Agents carry positions and positive influence weights; positions relax
toward weighted averages through an interaction kernel while weights evolve
under built-in dynamics plus bounded controls.  The package provides the
coupled model, convex-hull geometry for target placement, steepest-descent
and constructive control laws, fixed-step integrators, a measure-valued
view for weak-form verification, and a reproducible CSV experiment runner.
"""
from .control import (ControlSet, ExtremalPairLaw, OpenLoopLaw,
                      SteepestDescentLaw, ZeroLaw, active_components,
                      cost_vector, extremal_pair_control,
                      open_loop_weight_control, solve_box_hyperplane,
                      solve_diamond_hyperplane, steepest_descent)
from .geometry import (BarycentricCoords, Hull2D, barycenter,
                       barycentric_coords, hull_2d, hull_contains,
                       interior_margin)
from .integrate import (IntegratorConfig, SimulationError, Trajectory,
                        simulate, step)
from .meanfield import (EmpiricalMeasure, TestFunction, from_state,
                        kinetic_variance, merge_coincident, source_atoms,
                        velocity_field, weak_form_residual)
from .model import (InteractionKernel, MassDynamics, SystemState,
                    compute_a_min, compute_delta, diameter, eval_psi,
                    rhs_masses, rhs_positions)

__version__ = "0.1.0"

__all__ = [
    "BarycentricCoords",
    "ControlSet",
    "EmpiricalMeasure",
    "ExtremalPairLaw",
    "Hull2D",
    "IntegratorConfig",
    "InteractionKernel",
    "MassDynamics",
    "OpenLoopLaw",
    "SimulationError",
    "SteepestDescentLaw",
    "SystemState",
    "TestFunction",
    "Trajectory",
    "ZeroLaw",
    "active_components",
    "barycenter",
    "barycentric_coords",
    "compute_a_min",
    "compute_delta",
    "cost_vector",
    "diameter",
    "eval_psi",
    "extremal_pair_control",
    "from_state",
    "hull_2d",
    "hull_contains",
    "interior_margin",
    "kinetic_variance",
    "merge_coincident",
    "open_loop_weight_control",
    "rhs_masses",
    "rhs_positions",
    "simulate",
    "solve_box_hyperplane",
    "solve_diamond_hyperplane",
    "source_atoms",
    "steepest_descent",
    "step",
    "velocity_field",
    "weak_form_residual",
]
