"""Cubic B-spline collocation solver for the Gardner (KdV-mKdV) equation.

The equation ``u_t + alpha*u*u_x + beta*u^2*u_x + mu*u_xxx = 0`` is
integrated with Crank-Nicolson time averaging and a one-shot linearization
of the nonlinear products, collocated on either polynomial or
trigonometric cubic B-splines.  Four benchmark scenarios (bell solitary,
kink front, wave generation, two-wave collision) ship with the package and
are reachable from the ``gardner`` command line.
"""

from .banded import BandedMatrix, SingularMatrixError, multiply, solve
from .basis import BasisKind, NodalWeights, nodal_weights, segment_value
from .diagnostics import (
    ConservedTriple,
    Peak,
    conserved,
    conserved_of_field,
    find_peaks,
    linf_error,
    relative_changes,
)
from .field import Closure, GhostRule, Grid, SplineField, ghost_rule, interpolate
from .runner import DiagnosticsRow, RunConfig, RunReport, Snapshot, initial_state, run
from .scenarios import (
    SCENARIO_NAMES,
    Scenario,
    bell_solution,
    generation_ic,
    interaction_ic,
    kink_solution,
    scenario_config,
)
from .stability import (
    FourierProbe,
    StabilityReport,
    coupled_spectral_radius,
    rho_constraint,
    rho_momentum,
    stability_sweep,
)
from .stepper import EtaRow, GardnerParams, State, assemble, linearize, step

__version__ = "0.1.0"

__all__ = [
    "BandedMatrix",
    "BasisKind",
    "Closure",
    "ConservedTriple",
    "DiagnosticsRow",
    "EtaRow",
    "FourierProbe",
    "GardnerParams",
    "GhostRule",
    "Grid",
    "NodalWeights",
    "Peak",
    "RunConfig",
    "RunReport",
    "SCENARIO_NAMES",
    "Scenario",
    "SingularMatrixError",
    "Snapshot",
    "SplineField",
    "StabilityReport",
    "State",
    "assemble",
    "bell_solution",
    "conserved",
    "conserved_of_field",
    "coupled_spectral_radius",
    "find_peaks",
    "generation_ic",
    "ghost_rule",
    "initial_state",
    "interaction_ic",
    "interpolate",
    "kink_solution",
    "linearize",
    "linf_error",
    "multiply",
    "nodal_weights",
    "relative_changes",
    "rho_constraint",
    "rho_momentum",
    "run",
    "scenario_config",
    "segment_value",
    "solve",
    "stability_sweep",
    "step",
]
