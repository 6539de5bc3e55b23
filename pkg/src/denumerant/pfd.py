"""Partial fractions of 1 / prod_i (1 - z^{a_i}) and Rademacher's coefficients.

The decomposition is written

    sum_n p_a(n) z^n = sum_lambda sum_{l=1}^{m(lambda)} c_{lambda,l} / (lambda - z)^l

("lambda-minus-z" convention).  Rademacher's coefficients use (z - omega)^l
instead and differ by the factor (-1)^l.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import TupleSpec, make_spec
from .cyclotomic import CyclotomicNumber, GroupRingSum
from .exact import binomial, power_sum_series, stirling_partition
from .waves import (
    multiplicity,
    relevant_roots,
    root_multiplicity,
    root_order,
    root_polynomial_part_at,
    grouped_wave_polynomial,
)

__all__ = [
    "IndexOutOfRange",
    "BadIndex",
    "PfdTable",
    "pfd_coefficients",
    "reexpand",
    "coefficients_from_polynomial_part",
    "grouped_pfd_coefficient",
    "c_unit_root",
    "rademacher",
    "rademacher_table",
    "rademacher_unit_closed_form",
]

CONVENTION = "lambda-minus-z"


class IndexOutOfRange(ValueError):
    pass


class BadIndex(ValueError):
    pass


@dataclass(frozen=True)
class PfdTable:
    spec: TupleSpec
    entries: dict  # t -> (c_{lambda,1}, ..., c_{lambda,m(lambda)}), lambda = zeta_D^t

    def coefficient(self, t: int, ell: int) -> CyclotomicNumber:
        coeffs = self.entries[t % self.spec.D]
        if not 1 <= ell <= len(coeffs):
            raise IndexOutOfRange(f"order {ell} outside 1..{len(coeffs)}")
        return coeffs[ell - 1]

    def to_json(self) -> list:
        return [
            {
                "root": {"level": self.spec.D, "power": t},
                "order": ell,
                "coefficient": c.to_json(),
                "convention": CONVENTION,
            }
            for t, coeffs in sorted(self.entries.items())
            for ell, c in enumerate(coeffs, start=1)
        ]


def coefficients_from_polynomial_part(
    R: tuple[CyclotomicNumber, ...], t: int, mult: int
) -> tuple[CyclotomicNumber, ...]:
    """Invert P_gamma(n) = sum_l c_l gamma^(-l) C(n+l-1, l-1) for gamma = zeta_D^t.

    c_{gamma,m} = gamma^m (m-1)! sum_{l=m}^{mult} (-1)^(l-m) S(l, m) R_l,
    where R_l is the coefficient of n^(l-1) and S the Stirling numbers of
    the second kind.
    """
    out = []
    for m in range(1, mult + 1):
        acc = GroupRingSum(R[0].level)
        for ell in range(m, mult + 1):
            sign = -1 if (ell - m) % 2 else 1
            acc.add(R[ell - 1], shift=t * m, scale=sign * stirling_partition(ell, m) * math.factorial(m - 1))
        out.append(acc.value())
    return tuple(out)


def pfd_coefficients(spec: TupleSpec) -> PfdTable:
    entries = {}
    for t in relevant_roots(spec):
        R = root_polynomial_part_at(spec, t)
        entries[t] = coefficients_from_polynomial_part(R, t, len(R))
    return PfdTable(spec, entries)


def reexpand(table: PfdTable, n: int) -> Fraction:
    """Coefficient of z^n of the decomposition; equals p_a(n).

    Uses 1/(lambda - z)^l = sum_n C(n+l-1, l-1) lambda^(-n-l) z^n.
    """
    acc = GroupRingSum(table.spec.D)
    for t, coeffs in table.entries.items():
        for ell, c in enumerate(coeffs, start=1):
            acc.add(c, shift=-t * (n + ell), scale=binomial(n + ell - 1, ell - 1))
    return acc.value().as_rational()


def grouped_pfd_coefficient(spec: TupleSpec, j: int, m: int) -> CyclotomicNumber:
    """c_{rho_j,m} built from the residue-grouped wave polynomial of rho_j."""
    mult = multiplicity(spec, j)
    if not 1 <= m <= mult:
        raise IndexOutOfRange(f"order {m} outside 1..{mult} for j={j}")
    R = grouped_wave_polynomial(spec, j)
    return coefficients_from_polynomial_part(R, spec.D // j, mult)[m - 1]


def c_unit_root(spec: TupleSpec, m: int, sign: str = "uniform") -> Fraction:
    """c_{1,m} from Bernoulli numbers.

    c_{1,m} = (m-1)!/(a_1...a_r) * (-1)^(r-m) * sum_{l=m}^{r} S(l, m)/(l-1)! * beta_{r-l}

    with beta_u the Bernoulli power sums.  ``sign="alternating"`` puts
    (-1)^(l-m) inside the sum instead; that variant does not reproduce the
    decomposition and is kept only so the audit can show the mismatch.
    """
    r = spec.r
    if not 1 <= m <= r:
        raise IndexOutOfRange(f"order {m} outside 1..{r}")
    if sign not in ("uniform", "alternating"):
        raise ValueError("sign must be 'uniform' or 'alternating'")
    beta = power_sum_series(spec.a, r - 1)
    total = Fraction(0)
    for ell in range(m, r + 1):
        term = Fraction(stirling_partition(ell, m), math.factorial(ell - 1)) * beta[r - ell]
        if sign == "alternating":
            term *= (-1) ** (ell - m)
        total += term
    if sign == "uniform":
        total *= (-1) ** (r - m)
    return Fraction(math.factorial(m - 1), math.prod(spec.a)) * total


def _rademacher_spec(r: int, period: int | None = None) -> TupleSpec:
    return make_spec(range(1, r + 1), period)


def rademacher(r: int, h: int, k: int, ell: int, period: int | None = None) -> CyclotomicNumber:
    """c_{hkl}(r) for 1/((1-z)...(1-z^r)) in the (z - omega_{hk})^(-l) convention."""
    if r < 1:
        raise BadIndex("r must be >= 1")
    if not (0 <= h < k <= r) or math.gcd(h, k) != 1:
        raise BadIndex(f"need 0 <= h < k <= r with gcd(h, k) = 1, got h={h}, k={k}")
    if not 1 <= ell <= r // k:
        raise BadIndex(f"order {ell} outside 1..{r // k}")
    spec = _rademacher_spec(r, period)
    t = h * (spec.D // k)
    R = root_polynomial_part_at(spec, t)
    c = coefficients_from_polynomial_part(R, t, len(R))[ell - 1]
    return c if ell % 2 == 0 else -c


def rademacher_table(r: int, period: int | None = None) -> list[dict]:
    """Every c_{hkl}(r), ordered by (k, h, l)."""
    spec = _rademacher_spec(r, period)
    rows = []
    for k in range(1, r + 1):
        for h in range(k):
            if math.gcd(h, k) != 1:
                continue
            t = h * (spec.D // k)
            assert root_order(spec, t) == k and root_multiplicity(spec, t) == r // k
            R = root_polynomial_part_at(spec, t)
            cs = coefficients_from_polynomial_part(R, t, len(R))
            for ell, c in enumerate(cs, start=1):
                rows.append({"h": h, "k": k, "order": ell, "value": c if ell % 2 == 0 else -c})
    return rows


def rademacher_unit_closed_form(r: int, m: int) -> Fraction:
    """c_{01m}(r) = (-1)^r (m-1)!/r! * sum_{l=m}^{r} S(l, m)/(l-1)! * beta_{r-l}(1..r)."""
    if not 1 <= m <= r:
        raise IndexOutOfRange(f"order {m} outside 1..{r}")
    beta = power_sum_series(range(1, r + 1), r - 1)
    total = sum(
        (Fraction(stirling_partition(ell, m), math.factorial(ell - 1)) * beta[r - ell]
         for ell in range(m, r + 1)),
        Fraction(0),
    )
    return (-1) ** r * Fraction(math.factorial(m - 1), math.factorial(r)) * total
