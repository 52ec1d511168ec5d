"""Rough Heston simulation and pricing engine (C++ core)."""

from rheston._core import (  # noqa: F401
    ConfigError,
    HolderReport,
    InvariantSweep,
    Kernel,
    MartingaleCheck,
    McConfig,
    McEstimate,
    ModelParams,
    PathFaultError,
    Payoff,
    SchemeKind,
    SchemeOptions,
    SolverError,
    TimeGrid,
    char_fn_logS,
    char_fn_X,
    expected_integrated_variance,
    holder_scaling_report,
    load_config_prices,
    martingale_mean_check,
    price,
    reference_european_call,
    reference_variance_call,
    simulate_v_path,
    simulate_x_path,
    structural_invariant_sweep,
    verify_regularity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
