"""Sylvester wave decomposition of p_a(n).

Every D-th root of unity lambda = zeta_D^t with m(lambda) = #{i : lambda^{a_i} = 1} > 0
contributes P_lambda(n) * lambda^(-n), where P_lambda is the polynomial part of
lambda^n p_a(n).  Roots are addressed by their exponent t at level D.

Two aggregation modes exist for the wave W_j:

* ``"single"`` uses only rho_j = zeta_j;
* ``"sylvester"`` sums over all primitive j-th roots and is always rational.

Only the sylvester waves add up to p_a(n).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import TupleSpec, f_vector, polynomial_part, quasipolynomial
from .cyclotomic import CyclotomicNumber, GroupRingSum, root_power
from .exact import binomial, stirling_cycle

__all__ = [
    "NotARoot",
    "NotAWaveIndex",
    "NotPairwiseCoprime",
    "AuditError",
    "WaveTable",
    "MODES",
    "multiplicity",
    "root_order",
    "root_multiplicity",
    "root_exponent",
    "relevant_roots",
    "wave_indices",
    "primitive_exponents",
    "root_polynomial_part",
    "root_polynomial_part_at",
    "wave_table",
    "wave_eval",
    "grouped_wave_polynomial",
    "reconstruct",
    "is_pairwise_coprime",
    "pairwise_coprime_partition",
]

MODES = ("single", "sylvester")


class NotARoot(ValueError):
    """The argument is not a D-th root of unity."""


class NotAWaveIndex(ValueError):
    """j divides none of the a_i, so there is no wave W_j."""


class NotPairwiseCoprime(ValueError):
    pass


class AuditError(ArithmeticError):
    """An identity that must hold exactly failed."""


def multiplicity(spec: TupleSpec, j: int) -> int:
    """Number of a_i divisible by j."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return sum(1 for ai in spec.a if ai % j == 0)


def root_order(spec: TupleSpec, t: int) -> int:
    return spec.D // math.gcd(t % spec.D, spec.D)


def root_multiplicity(spec: TupleSpec, t: int) -> int:
    return multiplicity(spec, root_order(spec, t))


def wave_indices(spec: TupleSpec) -> list[int]:
    """All j >= 1 dividing at least one a_i, increasing."""
    return sorted({j for ai in set(spec.a) for j in range(1, ai + 1) if ai % j == 0})


def primitive_exponents(spec: TupleSpec, j: int) -> list[int]:
    """Exponents t (level D) of the primitive j-th roots of unity."""
    step = spec.D // j
    return [nu * step for nu in range(j) if math.gcd(nu, j) == 1]


def relevant_roots(spec: TupleSpec) -> list[int]:
    """Exponents t of every root lambda = zeta_D^t with m(lambda) >= 1."""
    return sorted(t for j in wave_indices(spec) for t in primitive_exponents(spec, j))


@lru_cache(maxsize=64)
def _root_table(D: int) -> dict:
    return {root_power(D, t): t for t in range(D)}


def root_exponent(spec: TupleSpec, gamma: CyclotomicNumber) -> int:
    """The t with gamma = zeta_D^t, or :class:`NotARoot`."""
    if gamma.level != spec.D:
        raise NotARoot(f"root must be given at level {spec.D}, got {gamma.level}")
    try:
        return _root_table(spec.D)[gamma]
    except KeyError:
        raise NotARoot(f"{gamma!r} is not a {spec.D}-th root of unity") from None


@lru_cache(maxsize=4096)
def root_polynomial_part_at(spec: TupleSpec, t: int) -> tuple[CyclotomicNumber, ...]:
    """R_{lambda,1..m(lambda)} for lambda = zeta_D^t, from the quasi-polynomial.

    R_{lambda,m} = (1/D) sum_v lambda^v d_{m-1}(v).  Coefficients past
    m(lambda) are computed as well and must vanish exactly.
    """
    D = spec.D
    t %= D
    qp = quasipolynomial(spec)
    out = []
    for row in qp.coeffs:
        acc = GroupRingSum(D)
        for v, c in enumerate(row):
            acc.add_root(t * v, c / D)
        out.append(acc.value())
    mult = root_multiplicity(spec, t)
    for m in range(mult, spec.r):
        if not out[m].is_zero():
            raise AuditError(
                f"coefficient of n^{m} at root zeta_{D}^{t} should vanish, got {out[m]!r}"
            )
    return tuple(out[:mult])


def root_polynomial_part(spec: TupleSpec, gamma: CyclotomicNumber) -> tuple[CyclotomicNumber, ...]:
    return root_polynomial_part_at(spec, root_exponent(spec, gamma))


@dataclass(frozen=True)
class WaveTable:
    spec: TupleSpec
    entries: dict  # t -> tuple[CyclotomicNumber, ...]

    def polynomial(self, t: int) -> tuple[CyclotomicNumber, ...]:
        return self.entries[t % self.spec.D]

    def term(self, t: int, n: int) -> CyclotomicNumber:
        """P_lambda(n) lambda^(-n) for lambda = zeta_D^t."""
        acc = GroupRingSum(self.spec.D)
        _add_term(acc, self.polynomial(t), t, n)
        return acc.value()

    def to_json(self) -> list:
        return [
            {
                "root": {"level": self.spec.D, "power": t},
                "order": root_order(self.spec, t),
                "coefficients": [c.to_json() for c in coeffs],
            }
            for t, coeffs in sorted(self.entries.items())
        ]


def wave_table(spec: TupleSpec) -> WaveTable:
    return WaveTable(spec, {t: root_polynomial_part_at(spec, t) for t in relevant_roots(spec)})


def _add_term(acc: GroupRingSum, coeffs, t: int, n: int) -> None:
    shift = -t * n
    npow = 1
    for c in coeffs:
        acc.add(c, shift=shift, scale=npow)
        npow *= n


def wave_eval(spec: TupleSpec, j: int, n: int, mode: str = "sylvester"):
    """W_j(n).

    ``mode="single"`` returns P_{rho_j}(n) rho_j^(-n) as a CyclotomicNumber;
    ``mode="sylvester"`` returns the rational sum over all primitive j-th roots.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if multiplicity(spec, j) == 0:
        raise NotAWaveIndex(f"{j} divides no entry of {spec.a}")
    D = spec.D
    exps = [D // j] if mode == "single" else primitive_exponents(spec, j)
    acc = GroupRingSum(D)
    for t in exps:
        _add_term(acc, root_polynomial_part_at(spec, t), t, n)
    value = acc.value()
    if mode == "sylvester":
        return value.as_rational()
    return value


def reconstruct(spec: TupleSpec, n: int) -> Fraction:
    """sum_j W_j(n) over sylvester waves; equals p_a(n)."""
    return sum((wave_eval(spec, j, n) for j in wave_indices(spec)), Fraction(0))


def _residue_moments(spec: TupleSpec, j: int) -> list[list[int]]:
    """mom[l][e] = sum over s = l (mod j) of f(s) s^e, for 0 <= e < r."""
    fv = f_vector(spec)
    r = spec.r
    mom = [[0] * r for _ in range(j)]
    for s, c in fv.support():
        row = mom[s % j]
        p = c
        for e in range(r):
            row[e] += p
            p *= s
    return mom


def grouped_wave_polynomial(spec: TupleSpec, j: int, nu: int = 1) -> tuple[CyclotomicNumber, ...]:
    """Coefficients of P_lambda(n) for lambda = rho_j^nu, straight from the f-vector.

    Tuples are grouped by their weighted sum modulo j:

        coefficient of n^(m-1) = 1/(D (r-1)!) sum_{l=1}^{j} lambda^l
            sum_{k=m-1}^{r-1} c(r, k+1) (-1)^(k-m+1) C(k, m-1)
            sum_{s = l (mod j)} f(s) D^(-k) s^(k-m+1)

    with c the unsigned Stirling numbers of the first kind.  The result is
    the polynomial part only; the wave itself carries the extra lambda^(-n).
    Returns r coefficients; those past m(j) vanish.
    """
    if multiplicity(spec, j) == 0:
        raise NotAWaveIndex(f"{j} divides no entry of {spec.a}")
    D, r = spec.D, spec.r
    t = (nu * (D // j)) % D
    mom = _residue_moments(spec, j)
    prefactor = Fraction(1, D * math.factorial(r - 1))
    out = []
    for m in range(1, r + 1):
        acc = GroupRingSum(D)
        for ell in range(1, j + 1):
            row = mom[ell % j]
            inner = Fraction(0)
            for k in range(m - 1, r):
                sign = -1 if (k - m + 1) % 2 else 1
                inner += Fraction(
                    stirling_cycle(r, k + 1) * sign * binomial(k, m - 1) * row[k - m + 1],
                    D**k,
                )
            acc.add_root(t * ell, prefactor * inner)
        out.append(acc.value())
    return tuple(out)


def is_pairwise_coprime(a) -> bool:
    return all(math.gcd(x, y) == 1 for i, x in enumerate(a) for y in a[i + 1:])


def pairwise_coprime_partition(spec: TupleSpec, n: int) -> int:
    """p_a(n) for pairwise coprime a: polynomial part plus constant waves.

    The polynomial part comes from the Bernoulli closed form; every other
    wave is a constant times lambda^(-n), summed over all primitive roots.
    """
    if not is_pairwise_coprime(spec.a):
        raise NotPairwiseCoprime(f"{spec.a} is not pairwise coprime")
    D = spec.D
    value = Fraction(0)
    for c in reversed(polynomial_part(spec)):
        value = value * n + c
    acc = GroupRingSum(D)
    for j in wave_indices(spec):
        if j == 1:
            continue
        for nu in range(1, j):
            if math.gcd(nu, j) != 1:
                continue
            coeffs = grouped_wave_polynomial(spec, j, nu)
            if any(not c.is_zero() for c in coeffs[1:]):
                raise AuditError(f"wave {j} is not constant for a pairwise coprime tuple")
            acc.add(coeffs[0], shift=-nu * (D // j) * n)
    value += acc.value().as_rational()
    if value.denominator != 1:
        raise AuditError(f"non-integral partition count {value}")
    return int(value)
