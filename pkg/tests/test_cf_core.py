"""Digit maps, convergents, singularization."""

import math
import random
from fractions import Fraction as F

import pytest

from nicfdim.cf_core import (
    Word,
    admissible_pair,
    convergents,
    evaluate,
    evaluate_digits,
    is_admissible_digits,
    nicf_digits,
    rcf_digits,
    singularize,
)


def _approx(v: float, bits: int = 80) -> F:
    return F(round(v * 2 ** bits), 2 ** bits)


SQRT2 = F(math.isqrt(2 * 4 ** 80), 2 ** 80)
SQRT5 = F(math.isqrt(5 * 4 ** 80), 2 ** 80)


def test_nicf_fixed_points():
    assert nicf_digits(SQRT2 - 1, 5) == [2, 2, 2, 2, 2]
    assert nicf_digits(-(3 - SQRT5) / 2, 4) == [-3, 3, -3, 3]
    assert nicf_digits(F(1, 3), 5) == [3]


def test_nicf_domain_error():
    with pytest.raises(ValueError):
        nicf_digits(F(3, 5), 3)
    with pytest.raises(ValueError):
        nicf_digits(F(-2, 3), 3)


def test_nicf_boundary_tie_rounds_half_up():
    # at x = 2/5 the digit choice is a tie: 1/x + 1/2 = 3 exactly, and the
    # half-up convention picks 3 with iterate -1/2, then digit -2
    assert nicf_digits(F(2, 5), 3) == [3, -2]
    assert nicf_digits(F(1, 2), 3) == [2]


def test_rcf_examples():
    golden = (SQRT5 - 1) / 2
    assert rcf_digits(golden, 4) == [1, 1, 1, 1]
    assert rcf_digits(F(4, 11), 3) == [2, 1, 3]
    assert rcf_digits(F(1, 2), 2) == [2]
    with pytest.raises(ValueError):
        rcf_digits(F(3, 2), 2)


def test_rcf_truncation_error_bound():
    rng = random.Random(3)
    for _ in range(50):
        x = F(rng.getrandbits(64) | 1, (rng.getrandbits(64) | 1) * 4 + 1)
        x = x - math.floor(x)
        if x == 0 or x >= 1:
            continue
        digits = rcf_digits(x, 12)
        # standard convergents of the positive expansion
        p0, p1, q0, q1 = 1, 0, 0, 1
        for a in digits:
            p0, p1 = p1, a * p1 + p0
            q0, q1 = q1, a * q1 + q0
        err = abs(x - F(p1, q1))
        assert err <= F(1, q1 ** 2)


def test_singularize_examples():
    assert singularize([2, 1, 3]) == [3, -4]
    assert evaluate_digits([3, -4]) == F(4, 11) == evaluate_digits([2, 1, 3])
    assert singularize([2, 3, 2]) == [2, 3, 2]
    assert singularize([]) == []


def test_singularize_ones_run_carries():
    carry, digits = singularize([1] * 12, return_carry=True)
    assert carry == 1
    assert digits[:4] == [-3, 3, -3, 3]
    assert carry + evaluate_digits(digits) == evaluate_digits([1] * 12)


def test_singularize_value_preserved():
    rng = random.Random(21)
    for _ in range(200):
        rcf = [rng.randint(1, 6) for _ in range(rng.randint(1, 14))]
        carry, digits = singularize(rcf, return_carry=True)
        lhs = evaluate_digits(rcf)
        rhs = carry + (evaluate_digits(digits) if digits else F(0))
        assert lhs == rhs, rcf
        if digits:
            assert all(abs(d) >= 2 for d in digits)
            assert is_admissible_digits(digits)


def test_singularize_rejects_bad_digits():
    with pytest.raises(ValueError):
        singularize([2, 0, 3])


def test_word_convergents_example():
    w = Word([3, -3, 3])
    assert w.q == (1, 3, -8, -21)
    assert w.p == (0, 1, -3, -8)
    assert convergents(w) == [(0, 1), (1, 3), (-3, -8), (-8, -21)]
    assert evaluate(w) == F(8, 21)
    # nested evaluation oracle
    assert 1 / (3 + 1 / (-3 + F(1, 3))) == F(8, 21)


def test_word_single_letter():
    w = Word([2])
    assert w.q == (1, 2) and w.p == (0, 1)
    assert evaluate(w, F(1, 2)) == F(2, 5)
    assert evaluate(Word([3])) == F(1, 3)


def test_determinant_identity_random():
    rng = random.Random(9)
    for _ in range(300):
        digits = []
        prev = None
        for _ in range(rng.randint(1, 25)):
            mag = rng.randint(2, 9)
            sign = rng.choice((-1, 1))
            if prev == 2:
                sign = 1
            elif prev == -2:
                sign = -1
            d = sign * mag
            digits.append(d)
            prev = d
        w = Word(digits)
        for n in range(1, len(w) + 1):
            assert w.p[n - 1] * w.q[n] - w.q[n - 1] * w.p[n] == (-1) ** n
        for n in range(1, len(w) + 1):
            assert math.gcd(w.p[n], w.q[n]) == 1
        for n in range(1, len(w) + 1):
            assert abs(w.q[n - 1]) <= abs(w.q[n])


def test_admissibility_of_produced_sequences():
    rng = random.Random(33)
    for _ in range(100):
        x = F(rng.getrandbits(128) | 1, rng.getrandbits(128) | 3)
        x -= round(x)
        if x == 0:
            continue
        digits = nicf_digits(x, 30)
        assert is_admissible_digits(digits)
        assert all(abs(d) >= 2 for d in digits)


def test_admissible_pair_table():
    assert admissible_pair(2, 3) and not admissible_pair(2, -3)
    assert admissible_pair(-2, -4) and not admissible_pair(-2, 4)
    assert admissible_pair(5, -5) and admissible_pair(-7, 2)
    with pytest.raises(ValueError):
        admissible_pair(1, 3)


def test_roundtrip_high_precision():
    rng = random.Random(41)
    for _ in range(60):
        x = F(rng.getrandbits(256) | 1, rng.getrandbits(256) | 3)
        x -= round(x)
        if x == 0:
            continue
        digits = nicf_digits(x, 25)
        err = abs(evaluate(Word(digits)) - x)
        assert err <= F(1, 2 ** 40)


def test_singularize_prefix_matches_digit_map():
    rng = random.Random(55)
    for _ in range(120):
        x = F(rng.getrandbits(256) | 1, rng.getrandbits(256) | 3)
        x -= round(x)
        if x == 0:
            continue
        nd = nicf_digits(x, 20)
        if x > 0:
            sd = singularize(rcf_digits(x, 60))
        else:
            sd = [-d for d in singularize(rcf_digits(-x, 60))]
        k = min(15, len(nd), len(sd))
        assert nd[:k] == sd[:k]
