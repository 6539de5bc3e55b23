"""The restricted partition function p_a(n) and its box-sum machinery.

Everything here is driven by the f-vector: the coefficients of

    F_a(z) = (1 - z^D)^r / prod_i (1 - z^{a_i}) = prod_i (1 + z^{a_i} + ... + z^{a_i (D/a_i - 1)}),

so f(s) counts tuples 0 <= j_i < D/a_i with sum a_i j_i = s.  Any sum over
such tuples that depends only on the weighted sum s is evaluated as a sum over
s weighted by f(s).
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exact import (
    binomial,
    power_sum_series,
    shifted_factorial_coeffs,
)

__all__ = [
    "EmptyTuple",
    "NotCommonMultiple",
    "InvalidTuple",
    "TupleSpec",
    "FVector",
    "QuasiPolynomial",
    "make_spec",
    "oracle_count",
    "oracle_table",
    "f_vector",
    "f_from_partition",
    "partition_from_f",
    "partition_box_product",
    "box_product_sum",
    "f_from_box_product",
    "quasipolynomial",
    "polynomial_part",
    "vanishing_test",
    "congruence_data",
]


class InvalidTuple(ValueError):
    pass


class EmptyTuple(InvalidTuple):
    pass


class NotCommonMultiple(InvalidTuple):
    pass


@dataclass(frozen=True)
class TupleSpec:
    a: tuple[int, ...]
    D: int

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def sigma(self) -> int:
        return sum(self.a)

    @property
    def d(self) -> int:
        return self.r * self.D - self.sigma

    @property
    def lcm(self) -> int:
        return math.lcm(*self.a)

    def with_period(self, D: int) -> "TupleSpec":
        return make_spec(self.a, D)


def make_spec(a: Sequence[int], period_override: Optional[int] = None) -> TupleSpec:
    a = tuple(int(x) for x in a)
    if not a:
        raise EmptyTuple("the tuple must have at least one entry")
    if any(x < 1 for x in a):
        raise InvalidTuple(f"entries must be positive integers, got {a}")
    D = math.lcm(*a)
    if period_override is not None:
        if period_override < 1 or period_override % D:
            raise NotCommonMultiple(
                f"{period_override} is not a common multiple of {a}"
            )
        D = int(period_override)
    return TupleSpec(a, D)


# -- brute-force oracle -----------------------------------------------------

def oracle_table(a: Sequence[int], nmax: int) -> list[int]:
    """Coin-counting DP: entry n is the number of ways to write n with parts a."""
    ways = [0] * (nmax + 1)
    ways[0] = 1
    for part in a:
        for n in range(part, nmax + 1):
            ways[n] += ways[n - part]
    return ways


def oracle_count(spec: TupleSpec, n: int) -> int:
    if n < 0:
        return 0
    return oracle_table(spec.a, n)[n]


# -- f-vector ---------------------------------------------------------------

@dataclass(frozen=True)
class FVector:
    spec: TupleSpec
    f: tuple[int, ...]

    def __getitem__(self, s: int) -> int:
        if 0 <= s < len(self.f):
            return self.f[s]
        return 0

    def __len__(self) -> int:
        return len(self.f)

    def support(self):
        """(s, f(s)) pairs with f(s) > 0."""
        return [(s, c) for s, c in enumerate(self.f) if c]


@lru_cache(maxsize=256)
def f_vector(spec: TupleSpec) -> FVector:
    coeffs = [1]
    for ai in spec.a:
        # multiply by the geometric block 1 + z^ai + ... + z^(D - ai)
        # via a running window sum: out[s] = sum_{k < D/ai} coeffs[s - k ai]
        block = spec.D // ai
        out = [0] * (len(coeffs) + spec.D - ai)
        for s in range(len(out)):
            acc = out[s - ai] if s >= ai else 0
            if s < len(coeffs):
                acc += coeffs[s]
            drop = s - block * ai
            if 0 <= drop < len(coeffs):
                acc -= coeffs[drop]
            out[s] = acc
        coeffs = out
    return FVector(spec, tuple(coeffs))


def f_from_partition(spec: TupleSpec, n: int) -> int:
    """f(n) as the alternating sum of p(n - jD) weighted by C(r, j)(-1)^j."""
    if n < 0:
        return 0
    D, r = spec.D, spec.r
    p = oracle_table(spec.a, n)
    return sum(binomial(r, j) * (-1) ** j * p[n - j * D] for j in range(n // D + 1))


def partition_from_f(spec: TupleSpec, n: int) -> int:
    """p(n) as sum_j C(r+j-1, j) f(n - jD)."""
    if n < 0:
        return 0
    fv = f_vector(spec)
    D, r = spec.D, spec.r
    return sum(binomial(r + j - 1, j) * fv[n - j * D] for j in range(n // D + 1))


def _rising_from_one(x: Fraction, r: int) -> Fraction:
    """prod_{l=1}^{r-1} (x + l)."""
    out = Fraction(1)
    for ell in range(1, r):
        out *= x + ell
    return out


def box_product_sum(spec: TupleSpec, n: int, shift: int = 0) -> Fraction:
    """sum over s = n (mod D) of f(s) prod_{l=1}^{r-1} ((n - s)/D + l - shift)."""
    fv = f_vector(spec)
    D, r = spec.D, spec.r
    total = Fraction(0)
    for s in range(n % D, len(fv), D):
        c = fv.f[s]
        if c:
            total += c * _rising_from_one(Fraction(n - s, D) - shift, r)
    return total


def partition_box_product(spec: TupleSpec, n: int) -> int:
    """p(n) as (1/(r-1)!) sum_s f(s) prod_l ((n - s)/D + l) over s = n (mod D)."""
    if n < 0:
        return 0
    value = box_product_sum(spec, n) / math.factorial(spec.r - 1)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral box product sum {value} at n={n}")
    return int(value)


def f_from_box_product(spec: TupleSpec, n: int) -> int:
    """f(n) from the box product formula substituted into the alternating sum."""
    if n < 0:
        return 0
    r, D = spec.r, spec.D
    total = sum(
        binomial(r, j) * (-1) ** j * box_product_sum(spec, n, shift=j)
        for j in range(n // D + 1)
    )
    value = total / math.factorial(r - 1)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral value {value} at n={n}")
    return int(value)


# -- quasi-polynomial ------------------------------------------------------

@dataclass(frozen=True)
class QuasiPolynomial:
    """p(n) = sum_m coeffs[m][n mod D] * n^m."""

    spec: TupleSpec
    coeffs: tuple[tuple[Fraction, ...], ...]

    @property
    def period(self) -> int:
        return self.spec.D

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n: int) -> Fraction:
        v = n % self.period
        total = Fraction(0)
        for m in range(len(self.coeffs) - 1, -1, -1):
            total = total * n + self.coeffs[m][v]
        return total

    def constituent(self, v: int) -> tuple[Fraction, ...]:
        """Polynomial (constant term first) valid on the residue class v."""
        return tuple(row[v % self.period] for row in self.coeffs)

    def refold(self, period: int) -> "QuasiPolynomial":
        """Same function written with a multiple of the current period."""
        if period % self.period:
            raise ValueError("new period must be a multiple of the old one")
        coeffs = tuple(
            tuple(row[v % self.period] for v in range(period)) for row in self.coeffs
        )
        return QuasiPolynomial(self.spec.with_period(period), coeffs)

    def fold(self, period: int) -> "QuasiPolynomial":
        """Rewrite with a divisor of the current period, if that is a valid period."""
        if self.period % period:
            raise ValueError("new period must divide the old one")
        for row in self.coeffs:
            if any(row[v] != row[v % period] for v in range(self.period)):
                raise ValueError(f"{period} is not a period of this quasi-polynomial")
        coeffs = tuple(row[:period] for row in self.coeffs)
        return QuasiPolynomial(self.spec.with_period(period), coeffs)


@lru_cache(maxsize=256)
def _weights(spec: TupleSpec) -> list[list[Fraction]]:
    # w[m][k] = e_k (-1)^(k-m) C(k, m) / (D^k (r-1)!), e_k = coefficient of x^k
    # in prod_{l<r} (x + l), i.e. stirling_cycle(r, k + 1)
    r, D = spec.r, spec.D
    e = shifted_factorial_coeffs(r)
    fact = math.factorial(r - 1)
    return [
        [
            Fraction(e[k] * (-1) ** ((k - m) % 2) * binomial(k, m), D**k * fact)
            for k in range(r)
        ]
        for m in range(r)
    ]


def box_moment_coefficients(spec: TupleSpec, s: int) -> list[Fraction]:
    """Contribution of one box tuple with weighted sum s to each d_m.

    Entry m is (1/(r-1)!) sum_{k>=m} e_k (-1)^(k-m) C(k, m) D^(-k) s^(k-m).
    """
    w = _weights(spec)
    r = spec.r
    return [sum(w[m][k] * s ** (k - m) for k in range(m, r)) for m in range(r)]


CACHE_ENV = "PARTITION_CACHE_DIR"


def _cache_file(spec: TupleSpec) -> Optional[str]:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    name = "qp_" + "-".join(map(str, spec.a)) + f"_D{spec.D}.json"
    return os.path.join(root, name)


def _compute_quasipolynomial(spec: TupleSpec) -> QuasiPolynomial:
    r, D = spec.r, spec.D
    fv = f_vector(spec)
    table = [[Fraction(0)] * D for _ in range(r)]
    for s, c in fv.support():
        g = box_moment_coefficients(spec, s)
        v = s % D
        for m in range(r):
            table[m][v] += c * g[m]
    return QuasiPolynomial(spec, tuple(tuple(row) for row in table))


@lru_cache(maxsize=256)
def quasipolynomial(spec: TupleSpec) -> QuasiPolynomial:
    """Period-D coefficient table d_m(v) of p_a.

    d_m(v) = (1/(r-1)!) sum_{s = v (mod D)} f(s)
             sum_{k=m}^{r-1} c(r, k+1) (-1)^(k-m) C(k, m) D^(-k) s^(k-m)

    When PARTITION_CACHE_DIR is set, tables are persisted there as JSON.
    """
    path = _cache_file(spec)
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        if tuple(data["a"]) == spec.a and data["D"] == spec.D:
            coeffs = tuple(tuple(Fraction(c) for c in row) for row in data["coeffs"])
            return QuasiPolynomial(spec, coeffs)
    qp = _compute_quasipolynomial(spec)
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + f".{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            json.dump(
                {"a": list(spec.a), "D": spec.D,
                 "coeffs": [[str(c) for c in row] for row in qp.coeffs]},
                fh,
            )
        os.replace(tmp, path)
    return qp


def polynomial_part(spec: TupleSpec) -> tuple[Fraction, ...]:
    """Coefficients (constant term first) of the polynomial part of p_a.

    The coefficient of n^(r-1-u) is
    (-1)^u / (a_1...a_r (r-1-u)!) * beta_u, with beta_u the Bernoulli power
    sum from :func:`~denumerant.exact.power_sum_series`.
    """
    r = spec.r
    beta = power_sum_series(spec.a, r - 1)
    prod_a = math.prod(spec.a)
    coeffs = [Fraction(0)] * r
    for u in range(r):
        coeffs[r - 1 - u] = (-1) ** u * beta[u] / (prod_a * math.factorial(r - 1 - u))
    return tuple(coeffs)


# -- vanishing and congruences ---------------------------------------------

def vanishing_test(spec: TupleSpec, n: int) -> bool:
    """True iff p(n) = 0, decided from the residue class of n in the f-vector."""
    fv = f_vector(spec)
    for s in range(n % spec.D, min(n, len(fv) - 1) + 1, spec.D):
        if fv.f[s]:
            return False
    return True


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


def congruence_data(spec: TupleSpec, n: int) -> tuple[int, int, int]:
    """(k, M, (r-1)! p(n)) where M is a guaranteed divisor of the last entry.

    k = floor(n/D) - ceil((n + sigma)/D) + r and
    M = prod_{t = floor(n/D) + 1}^{ceil((n + sigma)/D) - 1} t.
    """
    D, r = spec.D, spec.r
    lo = n // D
    hi = _ceil_div(n + spec.sigma, D)
    k = lo - hi + r
    modulus = math.prod(range(lo + 1, hi))
    value = math.factorial(r - 1) * partition_from_f(spec, n)
    return k, modulus, value
