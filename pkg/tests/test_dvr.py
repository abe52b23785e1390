import random

import pytest

from quatfact.dvr import (
    INFINITY,
    DvrConfig,
    DvrElement,
    ResidueClass,
    format_rational,
    int_valuation,
    parse_rational,
    rational,
)
from quatfact.errors import MembershipError, NotPrimeError, ParseError

D3 = DvrConfig(3)


def test_prime_validation():
    DvrConfig(2)
    DvrConfig(97)
    with pytest.raises(NotPrimeError):
        DvrConfig(4)
    with pytest.raises(NotPrimeError):
        DvrConfig(1)


def test_ring_ops_examples():
    half = D3.element(1, 2)
    assert (half + half) == D3.element(1)
    prod = D3.element(12) * D3.element(5, 7)
    assert prod == D3.element(60, 7)
    assert prod.in_ring
    third = D3.element(1) / D3.element(3)
    assert third == D3.element(1, 3)
    assert not third.in_ring  # in K but not in D
    with pytest.raises(ZeroDivisionError):
        D3.element(1) / D3.element(0)


def test_valuation_examples():
    assert D3.element(12).valuation() == 1
    assert D3.element(5, 7).valuation() == 0
    assert D3.element(0).valuation() == INFINITY
    assert D3.element(1, 3).valuation() == -1


def test_is_unit_examples():
    assert D3.element(5, 7).is_unit()
    assert not D3.element(3).is_unit()
    assert not D3.element(0).is_unit()
    with pytest.raises(MembershipError):
        D3.element(1, 3).is_unit()


def test_residue_examples():
    assert D3.element(7).residue(1) == ResidueClass(1, 1, 3)
    # oracle: the representative of 1/2 mod 9 is the inverse of 2 mod 9
    inv2 = pow(2, -1, 9)
    assert inv2 == 5 and (2 * inv2) % 9 == 1
    assert D3.element(1, 2).residue(2).representative == inv2
    assert D3.element(-4).residue(0).representative == 0
    with pytest.raises(ValueError):
        D3.residue(rational(1), -1)
    with pytest.raises(MembershipError):
        D3.element(1, 3).residue(2)


def _random_d_element(rng, p):
    while True:
        den = rng.randint(1, 40)
        if den % p:
            break
    return rational(rng.randint(-200, 200), den)


def test_valuation_multiplicative_and_ultrametric():
    rng = random.Random(11)
    for p in (2, 3, 5):
        dvr = DvrConfig(p)
        for _ in range(300):
            x = _random_d_element(rng, p)
            y = _random_d_element(rng, p)
            if x and y:
                assert dvr.valuation(x * y) == dvr.valuation(x) + dvr.valuation(y)
            s = x + y
            lo = min(dvr.valuation(x), dvr.valuation(y))
            assert dvr.valuation(s) >= lo
            if x and y and dvr.valuation(x) != dvr.valuation(y):
                assert dvr.valuation(s) == lo


def test_residue_is_ring_homomorphism():
    rng = random.Random(12)
    for p, m in ((2, 3), (3, 2), (5, 2)):
        dvr = DvrConfig(p)
        mod = p**m
        for _ in range(200):
            x = _random_d_element(rng, p)
            y = _random_d_element(rng, p)
            rx, ry = dvr.residue(x, m), dvr.residue(y, m)
            assert dvr.residue(x + y, m) == (rx + ry) % mod
            assert dvr.residue(x * y, m) == (rx * ry) % mod


def test_unit_iff_invertible_in_ring():
    rng = random.Random(13)
    for _ in range(200):
        x = _random_d_element(rng, 3)
        if not x:
            continue
        inverse_in_d = D3.in_ring(1 / x)
        assert D3.is_unit(x) == inverse_in_d


def test_parse_and_format():
    assert format_rational(parse_rational("60/7")) == "60/7"
    assert format_rational(parse_rational("-5")) == "-5"
    assert format_rational(rational(6, 4)) == "3/2"
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("x")


def test_int_valuation():
    assert int_valuation(12, 3) == 1
    assert int_valuation(0, 3) == INFINITY
    assert int_valuation(-27, 3) == 3


def test_element_hash_and_str():
    assert hash(D3.element(1, 2)) == hash(D3.element(2, 4))
    assert str(D3.element(60, 7)) == "60/7"
    assert str(D3.element(5)) == "5"
    direct = DvrElement(rational(3, 4), D3)
    assert direct == D3.element(3, 4) and direct.valuation() == 1
