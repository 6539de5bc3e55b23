import math
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from denumerant import core
from denumerant.core import (
    EmptyTuple,
    InvalidTuple,
    NotCommonMultiple,
    congruence_data,
    f_from_box_product,
    f_from_partition,
    f_vector,
    make_spec,
    oracle_count,
    partition_box_product,
    partition_from_f,
    polynomial_part,
    quasipolynomial,
    vanishing_test,
)

import oracles
from oracles import CORPUS


def test_make_spec_examples():
    s = make_spec((1, 2))
    assert (s.r, s.D, s.sigma, s.d) == (2, 2, 3, 1)
    s = make_spec((2, 3))
    assert (s.r, s.D, s.sigma, s.d) == (2, 6, 5, 7)
    s = make_spec((2, 3), 12)
    assert (s.D, s.d) == (12, 19)


def test_make_spec_errors():
    with pytest.raises(EmptyTuple):
        make_spec(())
    with pytest.raises(NotCommonMultiple):
        make_spec((2, 3), 9)
    with pytest.raises(InvalidTuple):
        make_spec((0, 2))


def test_oracle_examples():
    assert all(oracle_count(make_spec((1,)), n) == 1 for n in range(20))
    assert oracle_count(make_spec((1, 2)), 4) == 3
    assert oracle_count(make_spec((3, 5)), 7) == 0


@pytest.mark.parametrize("a", [(1, 2), (2, 3), (3, 5), (1, 2, 3), (2, 3, 5)])
def test_oracle_against_enumeration(a):
    spec = make_spec(a)
    for n in range(40):
        assert oracle_count(spec, n) == oracles.count_solutions(a, n)


def test_f_vector_examples():
    assert f_vector(make_spec((1, 1))).f == (1,)
    assert f_vector(make_spec((1, 2))).f == (1, 1)
    assert f_vector(make_spec((2, 3))).f == (1, 0, 1, 1, 1, 1, 0, 1)


@pytest.mark.parametrize("a", [a for a in CORPUS if math.prod(math.lcm(*a) // x for x in a) < 50000])
def test_f_vector_against_box_enumeration(a):
    spec = make_spec(a)
    assert list(f_vector(spec).f) == oracles.box_counts(a, spec.D)


@pytest.mark.parametrize("a", CORPUS)
def test_f_vector_laws(a):
    spec = make_spec(a)
    f = f_vector(spec).f
    d = spec.d
    assert len(f) == d + 1 and f[0] == 1
    assert all(f[d - n] == f[n] for n in range(d + 1))
    assert sum(f) == math.prod(spec.D // ai for ai in a)


def test_f_from_partition_examples():
    assert f_from_partition(make_spec((1, 2)), 4) == 0
    assert f_from_partition(make_spec((1, 2)), 0) == 1
    assert f_from_partition(make_spec((2, 3)), 7) == 1


@pytest.mark.parametrize("a", CORPUS)
def test_f_from_partition_roundtrip(a):
    spec = make_spec(a)
    fv = f_vector(spec)
    for n in range(0, spec.d + 3 * spec.D + 1, max(1, (spec.d + 3 * spec.D) // 60)):
        assert f_from_partition(spec, n) == fv[n]


def test_partition_from_f_examples():
    assert partition_from_f(make_spec((1, 2)), 0) == 1
    assert partition_from_f(make_spec((1, 2)), 4) == 3
    assert partition_from_f(make_spec((2, 3)), 7) == 1


def test_partition_box_product_examples():
    assert partition_box_product(make_spec((1, 2)), 4) == 3
    assert partition_box_product(make_spec((1, 1)), 7) == 8
    assert partition_box_product(make_spec((3, 5)), 7) == 0


def test_quasipolynomial_examples():
    qp = quasipolynomial(make_spec((1, 2)))
    assert qp.coeffs[1] == (Fraction(1, 2), Fraction(1, 2))
    assert qp.coeffs[0] == (Fraction(1), Fraction(1, 2))
    assert quasipolynomial(make_spec((1,))).coeffs == ((Fraction(1),),)
    assert quasipolynomial(make_spec((1, 1))).coeffs == ((Fraction(1),), (Fraction(1),))


def test_quasipolynomial_fit_by_interpolation():
    # each constituent, solved from oracle values on its residue class
    a = (2, 3, 4)
    spec = make_spec(a)
    qp = quasipolynomial(spec)
    p = oracles.dp_counts(a, 40 * spec.D)
    for v in range(spec.D):
        pts = [v + spec.D * i for i in range(spec.r)]
        rows = [[Fraction(x) ** m for m in range(spec.r)] for x in pts]
        sol = oracles.solve_exact(rows, [p[x] for x in pts])
        assert tuple(sol) == qp.constituent(v)


@pytest.mark.parametrize("a", CORPUS)
def test_leading_coefficient_nonzero(a):
    qp = quasipolynomial(make_spec(a))
    assert any(qp.coeffs[-1])


def test_polynomial_part_examples():
    assert polynomial_part(make_spec((1,))) == (1,)
    assert polynomial_part(make_spec((1, 1))) == (1, 1)
    assert polynomial_part(make_spec((1, 2))) == (Fraction(3, 4), Fraction(1, 2))


@pytest.mark.parametrize("a", CORPUS)
def test_polynomial_part_is_average_of_quasipolynomial(a):
    spec = make_spec(a)
    qp = quasipolynomial(spec)
    assert polynomial_part(spec) == tuple(sum(row) / spec.D for row in qp.coeffs)


def test_vanishing_examples():
    assert vanishing_test(make_spec((3, 5)), 7) is True
    assert vanishing_test(make_spec((1, 2)), 0) is False
    assert vanishing_test(make_spec((3, 5)), 8) is False


@pytest.mark.parametrize("a", CORPUS)
def test_vanishing_matches_oracle(a):
    spec = make_spec(a)
    p = oracles.dp_counts(a, 300)
    assert all(vanishing_test(spec, n) == (p[n] == 0) for n in range(301))


def test_congruence_examples():
    # k = floor(5/1) - ceil(7/1) + 2 = 0
    assert congruence_data(make_spec((1, 1)), 5) == (0, 6, 6)
    _, modulus, value = congruence_data(make_spec((1, 1, 1)), 4)
    assert (modulus, value) == (30, 30)
    _, modulus, value = congruence_data(make_spec((1, 2)), 4)
    assert (modulus, value) == (3, 3)


@pytest.mark.parametrize("a", CORPUS)
def test_f_from_box_product(a):
    spec = make_spec(a)
    fv = f_vector(spec)
    step = max(1, spec.d // 40)
    for n in list(range(0, spec.d + 1, step)) + [spec.d]:
        assert f_from_box_product(spec, n) == fv[n]


@pytest.mark.parametrize("a", [(1, 2), (2, 3), (1, 2, 3), (3, 5, 7), (4, 6, 10)])
def test_period_override_independence(a):
    s1 = make_spec(a)
    s2 = make_spec(a, 2 * s1.D)
    for n in range(0, 250):
        assert partition_box_product(s1, n) == partition_box_product(s2, n)
        assert partition_from_f(s1, n) == partition_from_f(s2, n)
    assert polynomial_part(s1) == polynomial_part(s2)
    q1, q2 = quasipolynomial(s1), quasipolynomial(s2)
    assert q1.refold(s2.D).coeffs == q2.coeffs
    assert q2.fold(s1.D).coeffs == q1.coeffs


def test_fold_rejects_non_period():
    qp = quasipolynomial(make_spec((2, 3)))
    with pytest.raises(ValueError):
        qp.fold(3)


tuples = st.lists(st.integers(1, 7), min_size=1, max_size=4).map(tuple)


@settings(max_examples=60, deadline=None)
@given(tuples, st.integers(0, 150))
def test_routes_agree_on_random_tuples(a, n):
    spec = make_spec(a)
    expected = oracles.dp_counts(a, n)[n]
    assert partition_box_product(spec, n) == expected
    assert partition_from_f(spec, n) == expected
    assert quasipolynomial(spec)(n) == expected
    k, modulus, value = congruence_data(spec, n)
    assert value % modulus == 0


def test_cache_dir_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("PARTITION_CACHE_DIR", str(tmp_path))
    spec = make_spec((2, 5, 7))
    core.quasipolynomial.cache_clear()
    first = quasipolynomial(spec)
    files = os.listdir(tmp_path)
    assert files == ["qp_2-5-7_D70.json"]
    core.quasipolynomial.cache_clear()
    assert quasipolynomial(spec) == first
