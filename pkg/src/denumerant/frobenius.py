"""Frobenius numbers: a period-based upper bound, exact search, and the dual-tuple formula."""
from __future__ import annotations

import math
from typing import Sequence

from .core import TupleSpec, make_spec, oracle_table, vanishing_test
from .waves import AuditError, NotPairwiseCoprime, is_pairwise_coprime

__all__ = [
    "GcdNotOne",
    "frobenius_bound",
    "frobenius_number",
    "frobenius_dual_closed_form",
]


class GcdNotOne(ValueError):
    pass


def _require_gcd_one(spec: TupleSpec) -> None:
    if math.gcd(*spec.a) != 1:
        raise GcdNotOne(f"gcd of {spec.a} is not 1; infinitely many gaps")


def frobenius_bound(spec: TupleSpec) -> int:
    """lcm(a) (r - 1) - sigma.

    The lcm is used even when the spec carries a larger period, so the bound
    does not depend on the period choice.
    """
    _require_gcd_one(spec)
    return spec.lcm * (spec.r - 1) - spec.sigma


def frobenius_number(spec: TupleSpec, confirm: bool = True) -> int:
    """Largest n with p_a(n) = 0, or -1 when every n >= 0 is representable.

    Scans downward from :func:`frobenius_bound` with the f-vector residue
    test; with ``confirm`` the answer is re-checked against the DP oracle.
    """
    bound = frobenius_bound(spec)
    result = -1
    for n in range(bound, -1, -1):
        if vanishing_test(spec, n):
            result = n
            break
    if confirm and bound >= 0:
        p = oracle_table(spec.a, bound)
        gaps = [n for n in range(bound + 1) if p[n] == 0]
        expected = gaps[-1] if gaps else -1
        if expected != result:
            raise AuditError(f"residue scan gave {result}, DP oracle gave {expected}")
    return result


def frobenius_dual_closed_form(a: Sequence[int]) -> tuple[TupleSpec, int]:
    """For pairwise coprime a with D = prod a_i, the dual tuple A_i = D/a_i
    and its Frobenius number D (r - 1) - sum A_i."""
    a = tuple(a)
    if not is_pairwise_coprime(a):
        raise NotPairwiseCoprime(f"{a} is not pairwise coprime")
    D = math.prod(a)
    dual = make_spec([D // ai for ai in a])
    return dual, D * (len(a) - 1) - dual.sigma
