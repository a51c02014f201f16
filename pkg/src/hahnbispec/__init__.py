"""Exact rational verification of a bispectral triple of difference
operators acting on a finite grid, with Hahn-type rational eigenbases."""
from .errors import HahnError
from .kernel import PartialFractions, Poly, RatFun, hyp_sum_terminating, partial_fractions, pochhammer
from .matrix import ExactMatrix
from .params import Params, draw_many
from .operators import DiffOp, make_X, make_Y, make_Z, make_operator, make_tilde
from .bases import build_U_recurrence, build_U_series, build_V, phi, weight
from .bispectral import lam, mu_coeffs, nu_coeffs
from .algebra import casimir_value, xi_params
from .report import VerificationReport
from .suite import CHECKS, SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "HahnError", "PartialFractions", "Poly", "RatFun", "hyp_sum_terminating",
    "partial_fractions", "pochhammer", "ExactMatrix", "Params", "draw_many",
    "DiffOp", "make_X", "make_Y", "make_Z", "make_operator", "make_tilde",
    "build_U_recurrence", "build_U_series", "build_V", "phi", "weight",
    "lam", "mu_coeffs", "nu_coeffs", "casimir_value", "xi_params",
    "VerificationReport", "CHECKS", "SuiteConfig", "run_suite",
]
