"""Exact restricted partition function p_a(n) and its Sylvester wave,
quasi-polynomial and partial-fraction structure."""
from .core import (
    FVector,
    QuasiPolynomial,
    TupleSpec,
    congruence_data,
    f_vector,
    make_spec,
    oracle_count,
    partition_box_product,
    partition_from_f,
    polynomial_part,
    quasipolynomial,
    vanishing_test,
)
from .cyclotomic import CyclotomicNumber, NotRational, root_power
from .frobenius import frobenius_bound, frobenius_dual_closed_form, frobenius_number
from .pfd import PfdTable, pfd_coefficients, rademacher, reexpand
from .waves import WaveTable, reconstruct, wave_eval, wave_table

__version__ = "0.1.0"
