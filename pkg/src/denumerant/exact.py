"""Exact integer and rational helpers shared by every formula in the package.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Integer polynomials are plain tuples of ints indexed by degree.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Sequence

__all__ = [
    "Rational",
    "IntPolynomial",
    "binomial",
    "bernoulli",
    "stirling_cycle",
    "stirling_partition",
    "shifted_factorial_coeffs",
    "poly_trim",
    "poly_mul",
    "poly_divexact",
    "power_sum_series",
    "format_rational",
    "parse_rational",
]

Rational = Fraction
IntPolynomial = tuple  # tuple[int, ...], index = degree


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k is outside 0..n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# -- Bernoulli numbers ------------------------------------------------------

_bernoulli_lock = threading.Lock()
_bernoulli_table: list[Fraction] = [Fraction(1)]


def bernoulli(ell: int) -> Fraction:
    """Bernoulli number B_ell for the generating function t/(e^t - 1).

    With this convention B_1 = -1/2.  Values come from the recurrence
    sum_{k=0}^{m} C(m+1, k) B_k = 0 and are memoized.
    """
    if ell < 0:
        raise ValueError("Bernoulli index must be non-negative")
    table = _bernoulli_table
    if ell < len(table):
        return table[ell]
    with _bernoulli_lock:
        while len(table) <= ell:
            m = len(table)
            if m > 1 and m % 2 == 1:
                table.append(Fraction(0))
                continue
            s = sum(math.comb(m + 1, k) * table[k] for k in range(m))
            table.append(-s / (m + 1))
    return table[ell]


# -- Stirling numbers -------------------------------------------------------

class _TriangularTable:
    """Row-wise cache for a triangular recurrence, grown on demand."""

    def __init__(self, step):
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._step = step
        self._lock = threading.Lock()

    def row(self, n: int) -> tuple[int, ...]:
        rows = self._rows
        if n >= len(rows):
            with self._lock:
                while len(rows) <= n:
                    rows.append(self._step(len(rows), rows[-1]))
        return rows[n]

    def __call__(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError("n must be non-negative")
        if k < 0 or k > n:
            return 0
        return self.row(n)[k]


def _cycle_step(n: int, prev: tuple[int, ...]) -> tuple[int, ...]:
    # c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k)
    out = [0] * (n + 1)
    for k in range(1, n + 1):
        out[k] = prev[k - 1] + ((n - 1) * prev[k] if k < n else 0)
    return tuple(out)


def _partition_step(n: int, prev: tuple[int, ...]) -> tuple[int, ...]:
    # S(n, k) = k S(n-1, k) + S(n-1, k-1)
    out = [0] * (n + 1)
    for k in range(1, n + 1):
        out[k] = prev[k - 1] + (k * prev[k] if k < n else 0)
    return tuple(out)


stirling_cycle = _TriangularTable(_cycle_step)
stirling_cycle.__doc__ = "Unsigned Stirling number of the first kind c(n, k)."

stirling_partition = _TriangularTable(_partition_step)
stirling_partition.__doc__ = "Stirling number of the second kind S(n, k)."


def shifted_factorial_coeffs(r: int) -> tuple[int, ...]:
    """Coefficients of (x+1)(x+2)...(x+r-1) in x, constant term first.

    Entry k equals ``stirling_cycle(r, k + 1)``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    coeffs: tuple[int, ...] = (1,)
    for ell in range(1, r):
        coeffs = poly_mul(coeffs, (ell, 1))
    return coeffs


# -- dense integer polynomials ---------------------------------------------

def poly_trim(p: Sequence) -> tuple:
    end = len(p)
    while end > 0 and p[end - 1] == 0:
        end -= 1
    return tuple(p[:end])


def poly_mul(p: Sequence, q: Sequence) -> tuple:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divexact(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Quotient p / q for a monic-or-unit-leading q that divides p exactly."""
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = q[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    rem = list(poly_trim(p))
    dq = len(q) - 1
    if len(rem) - 1 < dq:
        if rem:
            raise ValueError("inexact polynomial division")
        return ()
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i] * lead
        if c:
            quot[i - dq] = c
            for k, b in enumerate(q):
                rem[i - dq + k] -= c * b
    if any(rem):
        raise ValueError("inexact polynomial division")
    return poly_trim(quot)


def power_sum_series(a: Sequence[int], order: int) -> list[Fraction]:
    """Coefficients beta_0..beta_order of prod_i sum_k B_k (a_i t)^k / k!.

    beta_u is the sum over i_1 + ... + i_r = u of
    prod B_{i_k} a_k^{i_k} / i_k!, the quantity feeding the Bernoulli-number
    closed forms for the polynomial part and the residue at z = 1.
    """
    series = [Fraction(0)] * (order + 1)
    series[0] = Fraction(1)
    for ai in a:
        factor = [bernoulli(k) * ai**k / math.factorial(k) for k in range(order + 1)]
        series = [
            sum(series[i] * factor[u - i] for i in range(u + 1))
            for u in range(order + 1)
        ]
    return series


# -- serialization ----------------------------------------------------------

def format_rational(x) -> str:
    """Canonical "p/q" string, or "p" when the value is an integer."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)
