"""Certified quadrature: integral approximations with closed-form error bounds."""

from ._certquad import (
    __version__,
    eval_jet,
    expect,
    integrate,
    kernel_value,
    point,
    reference_integral,
    table1,
    verify,
)

__all__ = [
    "__version__",
    "eval_jet",
    "expect",
    "integrate",
    "kernel_value",
    "point",
    "reference_integral",
    "table1",
    "verify",
]
