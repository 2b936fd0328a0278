"""Two-phase spin-rotation estimation toolbox (C++ core bindings)."""

from ._core import (  # noqa: F401
    crb_total_sensitivity,
    eigenbasis,
    joint_sensitivity,
    minimize_trace_inverse,
    qfi_analytic,
    qfi_numeric,
    scan,
    sequential_sensitivity,
    simulate,
    spin_ops,
    spin_sequential_sensitivity,
    spin_squeezing,
    sql_sensitivity,
    state,
    two_mode_squeezing,
    verify,
)

__all__ = [
    "crb_total_sensitivity",
    "eigenbasis",
    "joint_sensitivity",
    "minimize_trace_inverse",
    "qfi_analytic",
    "qfi_numeric",
    "scan",
    "sequential_sensitivity",
    "simulate",
    "spin_ops",
    "spin_sequential_sensitivity",
    "spin_squeezing",
    "sql_sensitivity",
    "state",
    "two_mode_squeezing",
    "verify",
]
