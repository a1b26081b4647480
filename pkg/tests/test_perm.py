import pytest
from hypothesis import given, strategies as st

from formax.perm import DegreeMismatch, PermParseError, Permutation, parse_perm


def test_compose_follows_points_left_to_right():
    a = parse_perm("(1 2)", 3)
    b = parse_perm("(2 3)", 3)
    assert (a * b).cycle_text() == "(1 3 2)"


def test_identity_law():
    x = parse_perm("(1 4 2)(3 5)")
    e = Permutation.identity(5)
    assert e * x == x
    assert x * e == x


def test_inverse_law():
    x = parse_perm("(1 2 3)")
    assert (x * parse_perm("(1 3 2)")).is_identity()
    assert (x * x.inverse()).is_identity()


def test_degree_mismatch_raises():
    with pytest.raises(DegreeMismatch):
        parse_perm("(1 2)", 2) * parse_perm("(1 2)", 3)


def test_parse_whitespace_and_commas():
    assert parse_perm("(1 2 3)( 4  5 )") == parse_perm("(1,2,3)(4,5)")
    assert parse_perm("()", 4) == Permutation.identity(4)


def test_parse_errors_carry_position():
    with pytest.raises(PermParseError):
        parse_perm("(1 2")
    with pytest.raises(PermParseError):
        parse_perm("(1 2)(2 3)")  # repeated point
    with pytest.raises(PermParseError):
        parse_perm("(0 1)")  # 1-based points


def test_cycle_text_round_trip():
    for text in ["()", "(1 2)", "(1 2 3)(4 5)", "(2 4 6)(1 3)(5 7)"]:
        p = parse_perm(text, 7)
        assert parse_perm(p.cycle_text(), 7) == p


def test_order_and_powers():
    p = parse_perm("(1 2 3)(4 5)")
    assert p.order() == 6
    assert (p ** 6).is_identity()
    assert p ** -1 == p.inverse()


@st.composite
def perms(draw, degree=8):
    images = draw(st.permutations(range(degree)))
    return Permutation(images)


@given(perms(), perms(), perms())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms())
def test_inverse_round_trip(p):
    assert (p * p.inverse()).is_identity()
    assert p.inverse().inverse() == p


@given(perms())
def test_text_round_trip(p):
    assert parse_perm(p.cycle_text(), 8) == p
