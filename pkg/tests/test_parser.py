import json

import pytest
from hypothesis import given, settings

from squarelike.core import FALSE, OMEGA, TRUE, And, Family, InvariantAtom, Not, Or
from squarelike.parser import (
    ParseError,
    descriptor_from_json,
    descriptor_to_json,
    format_descriptor,
    format_sentence,
    parse_atom,
    parse_descriptor,
    parse_sentence,
)

from strategies import descriptors, sentences


def test_atom_syntax():
    assert parse_atom("Theta(3,2)>0") == InvariantAtom(Family.THETA_GT, 3, 2, 0)
    assert parse_atom(" Delta ( 2 , 0 ) = 6 ") == InvariantAtom(Family.DELTA_EQ, 2, 0, 6)


def test_precedence_not_and_or():
    s = parse_sentence("!Phi(2,0)=1 & Phi(2,1)=0 | Gamma(3,0)>1")
    assert isinstance(s, Or)
    left = s.children[0]
    assert isinstance(left, And) and isinstance(left.children[0], Not)


def test_chains_are_flat():
    s = parse_sentence("true & false & Phi(2,0)=0")
    assert isinstance(s, And) and len(s.children) == 3
    assert s.children[:2] == (TRUE, FALSE)


@pytest.mark.parametrize(
    "text, position",
    [
        ("Phi(4,0)=1", 4),
        ("Phi(2,-1)=1", 6),
        ("Delta(2,0)=0", 11),
        ("Psi(2,0)=1", 0),
        ("Phi(2,0)=1 &", 12),
        ("(Phi(2,0)=1", 11),
        ("Phi(2,0)<1", 8),
        ("Phi(2,0)=1 $", 11),
    ],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(ParseError) as err:
        parse_sentence(text)
    assert err.value.position == position


def test_parse_atom_wants_an_atom():
    with pytest.raises(ParseError):
        parse_atom("Phi(2,0)=1 | true")


@settings(max_examples=300, deadline=None)
@given(sentences())
def test_sentence_round_trip(s):
    assert parse_sentence(format_sentence(s)) == s


def test_descriptor_json_shape():
    A = parse_descriptor(
        '{"nu": 0, "primes": {"2": {"kappa": {"0": 1, "2": "omega"}, "lambda": 1, "kappa_tail": 1}}}'
    )
    c = A.component(2)
    assert [c.kappa_at(n) for n in range(4)] == [1, 0, OMEGA, 1]
    assert c.lam == 1
    assert descriptor_to_json(A)["primes"]["2"]["kappa"] == {"0": 1, "2": "omega"}


def test_missing_fields_default_to_zero():
    A = descriptor_from_json({"primes": {"3": {"mu": "omega"}}})
    assert A.nu == 0 and A.component(3).mu is OMEGA


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"nu": -1},
        {"nu": 1.5},
        {"nu": True},
        {"nu": "infinite"},
        {"rank": 1},
        {"primes": {"4": {}}},
        {"primes": {"two": {}}},
        {"primes": {"2": {"kappa": {"0": 1}, "colour": 1}}},
        {"primes": {"2": {"kappa": [1]}}},
        {"primes": {"2": {"kappa": {"-1": 1}}}},
    ],
)
def test_bad_descriptors_are_rejected(data):
    with pytest.raises(ParseError):
        descriptor_from_json(data)


def test_invalid_json_reports_offset():
    with pytest.raises(ParseError) as err:
        parse_descriptor('{"nu": }')
    assert err.value.position == 7


@settings(max_examples=300, deadline=None)
@given(descriptors())
def test_descriptor_round_trip(A):
    text = format_descriptor(A)
    assert parse_descriptor(text) == A
    assert json.loads(text) == descriptor_to_json(A)
