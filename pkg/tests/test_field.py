import random
from fractions import Fraction

import pytest

from qvertex import field
from qvertex.field import EvalPoint, Scalar, UnsupportedInputError


def test_power_examples():
    x = Scalar(3, 7)
    assert field.power(x, 0) == 1
    assert field.power(Scalar(1, 2), -2) == 4
    assert field.power(Scalar(3, 5), 3) == Scalar(27, 125)


def test_power_zero_base_negative_exponent():
    with pytest.raises(ZeroDivisionError):
        field.power(Scalar(0), -1)


def test_power_additivity():
    rng = random.Random(11)
    for _ in range(25):
        x = field.random_scalar(rng)
        a = rng.randint(-20, 20)
        b = rng.randint(-20, 20)
        assert field.power(x, a + b) == field.power(x, a) * field.power(x, b)


def test_scalar_equality_is_canonical():
    assert Scalar(2, 4) == Scalar(1, 2)
    assert field.scalar("2/4") == field.scalar(1, 2)
    assert hash(Scalar(2, 4)) == hash(Scalar(1, 2))


def test_format_parse_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        x = field.random_scalar(rng)
        assert field.parse_scalar(field.format_scalar(x)) == x


# ---- evaluation points -------------------------------------------------


def test_evalpoint_basic():
    p = EvalPoint.at("1/2", "1/3", mu="1/5")
    assert p.q == Scalar(1, 4)
    assert p.qq == Scalar(1, 16)
    assert p.lam2 == Scalar(1, 9)
    assert p.lam_required() == Scalar(1, 3)
    assert p.mu_required() == Scalar(1, 5)


def test_evalpoint_square_only():
    p = EvalPoint.at_square("1/2", "1/32")
    assert p.lam2 == Scalar(1, 32)
    with pytest.raises(UnsupportedInputError):
        p.lam_required()
    with pytest.raises(UnsupportedInputError):
        p.mu_required()


def test_evalpoint_rejects_degenerate():
    with pytest.raises(ValueError):
        EvalPoint.at(0, 1)
    with pytest.raises(ValueError):
        EvalPoint.at("1/2", 0)
    with pytest.raises(ValueError):
        EvalPoint(r=Scalar(1, 2), lam2=Scalar(1, 9), lam=Scalar(1, 2))


def test_evalpoint_with_lambda_and_float():
    p = EvalPoint.at_square("1/2", "1/9").with_lambda("1/3")
    assert p.lam == Scalar(1, 3)
    f = p.as_float()
    assert isinstance(f.r, float) and f.q == pytest.approx(0.25)


def test_random_scalar_bounds():
    rng = random.Random(1)
    for _ in range(200):
        x = field.random_scalar(rng, bound=7)
        assert x != 0
        assert abs(x.numerator) <= 7 and x.denominator <= 7
