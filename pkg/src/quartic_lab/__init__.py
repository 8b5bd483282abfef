"""Quartic integral lab: exact certificate checks and three-way numerics."""
from .arith import MultiPoly, RatFunc
from .evaluate import (
    IntegralParams,
    boros_moll_coeffs,
    closed_form_t1,
    integral_quadrature,
    series_sum,
)
from .holonomic import (
    Certificate,
    CertifiedIntegrand,
    DiffOp,
    ode_to_recurrence,
    telescoping_residual,
    unroll,
    verify_certificate,
)

__all__ = [
    "MultiPoly",
    "RatFunc",
    "IntegralParams",
    "boros_moll_coeffs",
    "closed_form_t1",
    "integral_quadrature",
    "series_sum",
    "Certificate",
    "CertifiedIntegrand",
    "DiffOp",
    "ode_to_recurrence",
    "telescoping_residual",
    "unroll",
    "verify_certificate",
]
