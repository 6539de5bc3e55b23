"""Exact arithmetic in the cyclotomic field Q(zeta_D).

A :class:`CyclotomicNumber` stores the canonical remainder modulo the D-th
cyclotomic polynomial, so equality is coefficient-wise and rationality is a
syntactic check.  Sums of root powers are usually built in the group ring
Q[x]/(x^D - 1) (see :class:`GroupRingSum`) and reduced once at the end.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .exact import format_rational, poly_divexact

__all__ = [
    "MAX_LEVEL",
    "LevelError",
    "NotRational",
    "CyclotomicNumber",
    "GroupRingSum",
    "cyclotomic_polynomial",
    "root_power",
    "lift",
    "descend",
]

MAX_LEVEL = 10080


class LevelError(ValueError):
    """Operands live at different levels, or a level exceeds the cap."""


class NotRational(ArithmeticError):
    """A quantity expected to be rational has irrational cyclotomic part."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(j: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_j, constant term first."""
    if j < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num: tuple[int, ...] = (-1,) + (0,) * (j - 1) + (1,)
    for d in range(1, j):
        if j % d == 0:
            num = poly_divexact(num, cyclotomic_polynomial(d))
    return num


class _Reducer:
    """Residues of x^k mod Phi_D for 0 <= k < D, as integer vectors."""

    def __init__(self, level: int):
        phi = cyclotomic_polynomial(level)
        deg = len(phi) - 1
        self.level = level
        self.degree = deg
        rows: list[tuple[int, ...]] = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(level):
            rows.append(tuple(cur))
            # multiply by x then reduce with the monic Phi_D
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(deg):
                    cur[i] -= top * phi[i]
        self.rows = rows

    def reduce(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Reduce a group-ring vector (length D) to canonical coefficients."""
        deg = self.degree
        out = [Fraction(0)] * deg
        for k, c in enumerate(vec):
            if not c:
                continue
            if k < deg:
                out[k] += c
            else:
                row = self.rows[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)


_reducer_lock = threading.Lock()


@lru_cache(maxsize=None)
def _reducer(level: int) -> _Reducer:
    if level < 1:
        raise LevelError("level must be >= 1")
    if level > MAX_LEVEL:
        raise LevelError(f"level {level} exceeds the cap {MAX_LEVEL}")
    with _reducer_lock:
        return _Reducer(level)


Scalar = Union[int, Fraction]


class CyclotomicNumber:
    """An element of Q(zeta_D) in canonical form."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Iterable[Scalar]):
        red = _reducer(level)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != red.degree:
            raise ValueError(
                f"level {level} needs {red.degree} coefficients, got {len(coeffs)}"
            )
        self.level = level
        self.coeffs = coeffs

    # construction ---------------------------------------------------------

    @classmethod
    def from_group_ring(cls, level: int, vec: Sequence[Scalar]) -> "CyclotomicNumber":
        """Image of sum_k vec[k] x^k under Q[x]/(x^D - 1) -> Q(zeta_D)."""
        if len(vec) > level:
            folded = [Fraction(0)] * level
            for k, c in enumerate(vec):
                folded[k % level] += c
            vec = folded
        obj = cls.__new__(cls)
        obj.level = level
        obj.coeffs = _reducer(level).reduce(vec)
        return obj

    @classmethod
    def rational(cls, level: int, value: Scalar) -> "CyclotomicNumber":
        deg = _reducer(level).degree
        return cls(level, (Fraction(value),) + (0,) * (deg - 1))

    @classmethod
    def zero(cls, level: int) -> "CyclotomicNumber":
        return cls.rational(level, 0)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "CyclotomicNumber") -> None:
        if other.level != self.level:
            raise LevelError(
                f"level mismatch {self.level} vs {other.level}; lift first"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(self.level, other)
        elif not isinstance(other, CyclotomicNumber):
            return NotImplemented
        self._check(other)
        return _raw(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "CyclotomicNumber":
        c = Fraction(c)
        return _raw(self.level, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        self._check(other)
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CyclotomicNumber.from_group_ring(self.level, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers need division, which is not provided")
        result = CyclotomicNumber.rational(self.level, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def times_root(self, t: int) -> "CyclotomicNumber":
        """Multiply by zeta_D^t (cheap: a rotation followed by one reduction)."""
        D = self.level
        vec = [Fraction(0)] * D
        for i, a in enumerate(self.coeffs):
            if a:
                vec[(i + t) % D] += a
        return CyclotomicNumber.from_group_ring(D, vec)

    # comparison / conversion ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        """Floating embedding zeta_D -> exp(2 pi i / D), for display only."""
        z = complex(math.cos(2 * math.pi / self.level), math.sin(2 * math.pi / self.level))
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return cls(int(data["level"]), [Fraction(c) for c in data["coeffs"]])

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            terms.append(format_rational(c) + ("*" + mono if mono else ""))
        body = " + ".join(terms) if terms else "0"
        return f"CyclotomicNumber({self.level}: {body})"


def _raw(level: int, coeffs: tuple) -> CyclotomicNumber:
    obj = CyclotomicNumber.__new__(CyclotomicNumber)
    obj.level = level
    obj.coeffs = coeffs
    return obj


def root_power(D: int, t: int) -> CyclotomicNumber:
    """zeta_D^(t mod D)."""
    vec = [0] * D
    vec[t % D] = 1
    return CyclotomicNumber.from_group_ring(D, vec)


def lift(x: CyclotomicNumber, D: int) -> CyclotomicNumber:
    """Embed x from level j into level D (j | D) via zeta_j -> zeta_D^(D/j)."""
    j = x.level
    if D % j:
        raise LevelError(f"cannot lift level {j} to level {D}")
    step = D // j
    vec = [Fraction(0)] * D
    for i, c in enumerate(x.coeffs):
        vec[i * step] = c
    return CyclotomicNumber.from_group_ring(D, vec)


@lru_cache(maxsize=256)
def _descent_basis(j: int, D: int) -> list[tuple[Fraction, ...]]:
    return [lift(root_power(j, i), D).coeffs for i in range(_reducer(j).degree)]


def descend(x: CyclotomicNumber, j: int) -> CyclotomicNumber:
    """Inverse of :func:`lift`: rewrite x at level j, where j | x.level.

    Raises :class:`LevelError` when x does not lie in Q(zeta_j).
    """
    D = x.level
    if D % j:
        raise LevelError(f"level {j} does not divide {D}")
    if j == D:
        return x
    basis = _descent_basis(j, D)
    k = len(basis)
    # solve sum_i y_i basis[i] = x by elimination on the augmented columns
    rows = [[basis[i][e] for i in range(k)] + [x.coeffs[e]] for e in range(len(x.coeffs))]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((i for i in range(row, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for i in range(len(rows)):
            if i != row and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
    if any(r[-1] for r in rows[row:]):
        raise LevelError(f"{x!r} does not lie in the level-{j} subfield")
    y = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        y[col] = rows[i][-1]
    return CyclotomicNumber(j, y)


class GroupRingSum:
    """Accumulator for sum_k c_k zeta_D^k; reduce once with :meth:`value`."""

    __slots__ = ("level", "vec")

    def __init__(self, level: int):
        _reducer(level)
        self.level = level
        self.vec = [Fraction(0)] * level

    def add_root(self, t: int, c: Scalar) -> None:
        if c:
            self.vec[t % self.level] += c

    def add(self, x: CyclotomicNumber, shift: int = 0, scale: Scalar = 1) -> None:
        """Add scale * zeta_D^shift * x."""
        if x.level != self.level:
            raise LevelError("level mismatch")
        D = self.level
        vec = self.vec
        for i, c in enumerate(x.coeffs):
            if c:
                vec[(i + shift) % D] += c * scale

    def value(self) -> CyclotomicNumber:
        return CyclotomicNumber.from_group_ring(self.level, self.vec)
