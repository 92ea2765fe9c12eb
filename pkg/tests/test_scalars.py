import random

import pytest

from ainfbench.scalars import FieldSpec, field_arith, parse_scalar


def test_rational_add():
    Q = FieldSpec(0)
    assert field_arith(Q.scalar(1, 2), Q.scalar(1, 3), "add") == Q.scalar(5, 6)


def test_mod5_inverse():
    F5 = FieldSpec(5)
    assert parse_scalar("1/2", F5) == F5.scalar(3)
    assert F5.scalar(2) * F5.scalar(3) == F5.one()


def test_noninvertible_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1/6", FieldSpec(3))
    with pytest.raises(ZeroDivisionError):
        parse_scalar("3/4", FieldSpec(2))


def test_division_by_zero():
    Q = FieldSpec(0)
    with pytest.raises(ZeroDivisionError):
        field_arith(Q.one(), Q.zero(), "div")


def test_spec_mismatch():
    with pytest.raises(ValueError):
        field_arith(FieldSpec(0).one(), FieldSpec(5).one(), "add")


def test_characteristic_must_be_prime():
    with pytest.raises(ValueError):
        FieldSpec(6)
    with pytest.raises(ValueError):
        FieldSpec(2**63 + 9)
    FieldSpec(2**31 - 1)  # large primes within a machine word are fine


@pytest.mark.parametrize("char", [0, 2, 3, 5])
def test_field_axioms_randomized(char):
    spec = FieldSpec(char)
    rng = random.Random(20240 + char)

    def rand():
        num = rng.randint(-30, 30)
        den = rng.randint(1, 12)
        while char and den % char == 0:
            den = rng.randint(1, 12)
        return spec.scalar(num, den)

    for _ in range(200):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == spec.zero()
        if b:
            assert (a / b) * b == a


@pytest.mark.parametrize(
    "text,want",
    [("-9", "-9"), ("5/12", "5/12"), ("+3", "3"), ("10/4", "5/2"), ("0", "0")],
)
def test_parse_print_roundtrip(text, want):
    assert str(parse_scalar(text, FieldSpec(0))) == want


@pytest.mark.parametrize("bad", ["", "1/", "/2", "a", "1/2/3", "1.5", "2/-3"])
def test_malformed_literals(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(bad, FieldSpec(0))
