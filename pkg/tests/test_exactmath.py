import random
from fractions import Fraction

import pytest

from fuzzyip.exactmath import (
    as_int_matrix,
    as_int_vector,
    exact_nth_root,
    format_rational,
    int_nth_root,
    lcm_denominators,
    parse_rational,
    rat_dot,
)


def test_lcm_denominators_paper_example():
    # the worked transformation's M = 12
    values = [Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(35, 4)]
    assert lcm_denominators(values) == 12


def test_lcm_denominators_empty():
    assert lcm_denominators([]) == 1


def test_lcm_denominators_mixed():
    assert lcm_denominators([Fraction(5), Fraction(7, 2), Fraction(1, 6)]) == 6


def test_lcm_denominators_minimality():
    rng = random.Random(7)
    for _ in range(50):
        values = [Fraction(rng.randint(-20, 20), rng.randint(1, 12))
                  for _ in range(rng.randint(1, 5))]
        m = lcm_denominators(values)
        assert all((m * v).denominator == 1 for v in values)
        for smaller in range(1, m):
            assert not all((smaller * v).denominator == 1 for v in values)


def test_rat_dot_hand_value():
    # (1/3)*3 + (-2/3)*3 = -1
    assert rat_dot((Fraction(1, 3), Fraction(-2, 3)), (3, 3)) == -1


def test_rat_dot_zero_vector():
    assert rat_dot((0, 0, 0), (4, -1, 9)) == 0


def test_rat_dot_example1_objective():
    assert rat_dot((2, 5), (5, 3)) == 25


def test_rat_dot_length_mismatch():
    with pytest.raises(ValueError):
        rat_dot((1, 2), (1, 2, 3))


def test_rationals_form_exact_field():
    rng = random.Random(11)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        assert (a + b) - b == a
        if b != 0:
            assert (a * b) / b == a
        assert a.denominator > 0
        import math
        assert math.gcd(abs(a.numerator), a.denominator) == 1


def test_vector_matrix_validation():
    assert as_int_vector([1, -2, 3]) == (1, -2, 3)
    with pytest.raises(TypeError):
        as_int_vector([1, 2.5])
    with pytest.raises(TypeError):
        as_int_vector([True])
    with pytest.raises(ValueError):
        as_int_matrix([[1, 2], [3]])


def test_parse_and_format_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(-7) == Fraction(-7)
    assert parse_rational("-7") == Fraction(-7)
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(5)) == "5"
    for bad in ("9.5", "1/0", "1e3", "", "a/b"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_integer_roots():
    assert int_nth_root(0, 3) == 0
    assert int_nth_root(26, 3) == 2
    assert int_nth_root(27, 3) == 3
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(0, 10 ** 9)
        k = rng.randint(1, 6)
        r = int_nth_root(n, k)
        assert r ** k <= n < (r + 1) ** k
    assert exact_nth_root(Fraction(9, 16), 2) == Fraction(3, 4)
    assert exact_nth_root(Fraction(2), 2) is None
    assert exact_nth_root(Fraction(27, 8), 3) == Fraction(3, 2)
