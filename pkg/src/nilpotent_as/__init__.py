"""Exact computation of presentations mod C3 for nilpotent Artin-Schreier Galois groups of higher local fields."""

from .asops import op_R, op_R_lie, op_S, op_S_lie, split_check
from .base import GFElem, frobenius, get_field, gf_mul, index_in_Zplus, trace, trace_and_alpha0
from .chgroup import adjoint, ch_compose, ch_inverse, group_commutator, trunc_exp, trunc_log
from .liealg import D0, LieElt, LieSeries, Universe, bracket, gen_D, gen_L, sigma_act, weight_of
from .presentation import (Presentation, Relation, char0_presentation, char0_setup, closed_form_V0, closed_form_Va,
                           eliminate_generators, emit, parse_json, relations_mod_C3)
from .series import Omega, Series, apply_h, artin_hasse, omega_A_coeffs, ser_invert
from .solver import (GeneratorWindow, Setup, bracket_lij, build_e, check_lift_congruences, solve_c1, solve_lift_pair)

__version__ = "0.1.0"
