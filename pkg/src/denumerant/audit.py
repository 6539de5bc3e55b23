"""Cross-formula audit for one tuple: every route to p_a(n) and its relatives must agree."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .core import (
    TupleSpec,
    congruence_data,
    f_from_box_product,
    f_vector,
    make_spec,
    oracle_table,
    partition_box_product,
    partition_from_f,
    polynomial_part,
    quasipolynomial,
    vanishing_test,
)
from .cyclotomic import NotRational
from .exact import binomial
from .frobenius import frobenius_bound, frobenius_number
from .pfd import (
    c_unit_root,
    grouped_pfd_coefficient,
    pfd_coefficients,
    rademacher_unit_closed_form,
    reexpand,
)
from .waves import (
    AuditError,
    grouped_wave_polynomial,
    multiplicity,
    reconstruct,
    root_polynomial_part_at,
    wave_indices,
)

__all__ = ["CheckResult", "run_audit", "CHECKS"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    first_failure: Optional[int] = None
    skipped: bool = False

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "status": "skipped" if self.skipped else ("pass" if self.passed else "fail"),
            "first_failing_n": self.first_failure,
            "detail": self.detail,
        }


def _scan(name: str, nmax: int, ok: Callable[[int], bool]) -> CheckResult:
    for n in range(nmax + 1):
        if not ok(n):
            return CheckResult(name, False, f"mismatch at n={n}", first_failure=n)
    return CheckResult(name, True, f"n = 0..{nmax}")


def check_counts(spec, nmax, p):
    qp = quasipolynomial(spec)
    return _scan(
        "partition routes agree (oracle, box product, f inversion, quasi-polynomial)",
        nmax,
        lambda n: p[n] == partition_box_product(spec, n) == partition_from_f(spec, n) == qp(n),
    )


def check_fvector(spec, nmax, p):
    fv = f_vector(spec)
    f, d = fv.f, spec.d
    if len(f) != d + 1 or f[0] != 1:
        return CheckResult("f-vector laws", False, "wrong length or f(0) != 1")
    for n in range(d + 1):
        if f[n] != f[d - n]:
            return CheckResult("f-vector laws", False, "reciprocity fails", first_failure=n)
    mass = math.prod(spec.D // ai for ai in spec.a)
    if sum(f) != mass:
        return CheckResult("f-vector laws", False, f"mass {sum(f)} != {mass}")
    return CheckResult("f-vector laws", True, f"d={d}, mass={mass}")


def check_f_roundtrip(spec, nmax, p):
    fv = f_vector(spec)
    top = spec.d + 3 * spec.D
    q = oracle_table(spec.a, top)
    r, D = spec.r, spec.D

    def ok(n):
        alt = sum(binomial(r, j) * (-1) ** j * q[n - j * D] for j in range(n // D + 1))
        return alt == fv[n]

    return _scan("alternating sum of p recovers f", top, ok)


def check_f_box_product(spec, nmax, p):
    fv = f_vector(spec)
    return _scan(
        "box product substituted into the alternating sum recovers f",
        spec.d,
        lambda n: f_from_box_product(spec, n) == fv[n],
    )


def check_waves(spec, nmax, p):
    return _scan("sylvester waves sum to p", nmax, lambda n: reconstruct(spec, n) == p[n])


def check_grouped_waves(spec, nmax, p):
    for j in wave_indices(spec):
        grouped = grouped_wave_polynomial(spec, j)
        direct = root_polynomial_part_at(spec, spec.D // j)
        m = multiplicity(spec, j)
        if grouped[:m] != direct or any(not c.is_zero() for c in grouped[m:]):
            return CheckResult("residue-grouped wave polynomial", False, f"mismatch at j={j}")
    return CheckResult("residue-grouped wave polynomial", True, f"j in {wave_indices(spec)}")


def check_polynomial_part(spec, nmax, p):
    bern = polynomial_part(spec)
    w1 = root_polynomial_part_at(spec, 0)
    qp = quasipolynomial(spec)
    avg = tuple(sum(row) / spec.D for row in qp.coeffs)
    if tuple(c.as_rational() for c in w1) != bern or avg != bern:
        return CheckResult("Bernoulli polynomial part", False, "disagrees with W_1 or the average")
    return CheckResult("Bernoulli polynomial part", True)


def check_pfd(spec, nmax, p):
    table = pfd_coefficients(spec)
    return _scan("partial fractions re-expand to p", nmax, lambda n: reexpand(table, n) == p[n])


def check_grouped_pfd(spec, nmax, p):
    table = pfd_coefficients(spec)
    for j in wave_indices(spec):
        for m in range(1, multiplicity(spec, j) + 1):
            if grouped_pfd_coefficient(spec, j, m) != table.coefficient(spec.D // j, m):
                return CheckResult("residue-grouped pole coefficients", False, f"j={j}, m={m}")
    return CheckResult("residue-grouped pole coefficients", True)


def check_unit_root(spec, nmax, p):
    table = pfd_coefficients(spec)
    for m in range(1, spec.r + 1):
        if c_unit_root(spec, m) != table.coefficient(0, m):
            return CheckResult("Bernoulli residues at z=1", False, f"m={m}")
    r = spec.r
    unit = make_spec(range(1, r + 1))
    for m in range(1, r + 1):
        if rademacher_unit_closed_form(r, m) != (-1) ** m * c_unit_root(unit, m):
            return CheckResult("Bernoulli residues at z=1", False, f"Rademacher r={r}, m={m}")
    return CheckResult("Bernoulli residues at z=1", True, f"m = 1..{r}, Rademacher r={r}")


def check_congruence(spec, nmax, p):
    def ok(n):
        _, modulus, value = congruence_data(spec, n)
        return value % modulus == 0

    return _scan("(r-1)! p(n) divisibility", nmax, ok)


def check_vanishing(spec, nmax, p):
    return _scan("residue-class vanishing test", nmax, lambda n: vanishing_test(spec, n) == (p[n] == 0))


def check_frobenius(spec, nmax, p):
    name = "Frobenius bound"
    if math.gcd(*spec.a) != 1:
        return CheckResult(name, True, "gcd != 1", skipped=True)
    bound = frobenius_bound(spec)
    value = frobenius_number(spec)
    if value > bound:
        return CheckResult(name, False, f"F={value} exceeds bound {bound}")
    for n in range(max(bound + 1, 0), bound + 2 * spec.D + 1):
        if vanishing_test(spec, n):
            return CheckResult(name, False, "gap above the bound", first_failure=n)
    return CheckResult(name, True, f"F={value} <= {bound}")


CHECKS = (
    check_counts,
    check_fvector,
    check_f_roundtrip,
    check_f_box_product,
    check_vanishing,
    check_polynomial_part,
    check_waves,
    check_grouped_waves,
    check_pfd,
    check_grouped_pfd,
    check_unit_root,
    check_congruence,
    check_frobenius,
)


def run_audit(spec: TupleSpec, nmax: int = 200) -> list[CheckResult]:
    p = oracle_table(spec.a, nmax)
    results = []
    for check in CHECKS:
        try:
            results.append(check(spec, nmax, p))
        except (AuditError, NotRational, ArithmeticError) as exc:
            name = check.__name__.removeprefix("check_")
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
