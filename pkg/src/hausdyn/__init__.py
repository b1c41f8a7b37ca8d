"""Housing-price dynamics under housing stock and flow taxes.

Typical use::

    from hausdyn import default_calibration, TaxPolicy, run_sweep
    sweep = run_sweep(default_calibration(), "fig5", [0.0, 0.05, 0.1])
"""
from hausdyn.errors import (
    ConfigParseError,
    ConfigValidationError,
    HausdynError,
    Indeterminacy,
    InconsistentInputs,
    InvalidCalibration,
    NoConvergence,
    NoStableRoot,
)
from hausdyn.linear import LinearSystem, linearize
from hausdyn.model import (
    Calibration,
    ModelCoefficients,
    TaxPolicy,
    compute_coefficients,
    default_calibration,
    demand_foc_residual,
    derive_beta,
)
from hausdyn.simulation import (
    Experiment,
    ImpulseResponse,
    ShockKind,
    ShockSpec,
    SweepResult,
    compare_reinforcement,
    impulse_response,
    run_sweep,
    solve_model,
    stochastic_simulate,
)
from hausdyn.solver import PolicyFunction, extended_path, solve_saddle_path

__version__ = "0.1.0"
