import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aol.formula import (
    FALSE, TRUE, Abd, And, Atom, Implies, Knows, Not, Only, Or, ParseError, PrefCond,
    atoms_of, depth, is_abductive, is_objective, parse, to_text,
)
from aol.metatheory.generate import random_formula

from conftest import formulas

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize("text, expected", [
    ("O(cold -> cough)", Only(Implies(Atom("cold"), Atom("cough")))),
    ("p", p),
    ("A flu & K fever", And(Abd(Atom("flu")), Knows(Atom("fever")))),
    ("p -> q -> r", Implies(p, Implies(q, r))),
    ("p > q > r", PrefCond(p, PrefCond(q, r))),
    ("p | q > r -> p", Implies(PrefCond(Or(p, q), r), p)),
    ("p & q | r", Or(And(p, q), r)),
    ("~~p", Not(Not(p))),
    ("K O A p", Knows(Only(Abd(p)))),
    ("~K p", Not(Knows(p))),
    ("true & false", And(TRUE, FALSE)),
    ("chest_pain", Atom("chest_pain")),
    ("  ( p )  ", p),
])
def test_parse_examples(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize("f, text", [
    (Only(Atom("flu")), "O flu"),
    (And(Atom("a"), Or(Atom("b"), Atom("c"))), "a & (b | c)"),
    (PrefCond(Atom("fever"), Atom("flu")), "fever > flu"),
    (Implies(Implies(p, q), r), "(p -> q) -> r"),
    (Implies(p, Implies(q, r)), "p -> q -> r"),
    (Knows(And(p, q)), "K(p & q)"),
    (Not(Abd(p)), "~A p"),
    (Or(p, Or(q, r)), "p | (q | r)"),
    (Or(Or(p, q), r), "p | q | r"),
])
def test_print_examples(f, text):
    assert to_text(f) == text
    assert str(f) == text


@pytest.mark.parametrize("text", [
    "", "p &", "(p", "p)", "p q", "p - q", "K", "p => q", "1p", "p & & q", "A", "->p", "p $ q",
])
def test_parse_errors_are_positioned(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert 0 <= err.position <= len(text)
    assert "position" in str(err)


def test_parse_error_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse("p &")
    assert info.value.position == 3
    assert "(" in info.value.expected and "~" in info.value.expected
    with pytest.raises(ParseError, match="unknown operator"):
        parse("p - q")


def test_reserved_words_are_not_atoms():
    with pytest.raises(ValueError):
        Atom("K")
    with pytest.raises(ValueError):
        Atom("2x")
    assert parse("Kp") == Atom("Kp")


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse("(" * 5000 + "p" + ")" * 5000)


@settings(max_examples=500, deadline=None)
@given(formulas())
def test_round_trip(f):
    assert parse(to_text(f)) == f


@settings(max_examples=500, deadline=None)
@given(st.text(alphabet="pqK OA~&|>-()tru", max_size=30))
def test_parser_is_total(text):
    try:
        f = parse(text)
    except ParseError as e:
        assert 0 <= e.position <= len(text)
    else:
        assert parse(to_text(f)) == f


def test_round_trip_ten_thousand_generated():
    rng = random.Random(7)
    for _ in range(10_000):
        f = random_formula(rng, ["p", "q", "flu"], 6, modal=True, pref=True)
        assert parse(to_text(f)) == f


def test_classifiers():
    assert is_abductive(Abd(Atom("flu")))
    assert not is_abductive(Abd(Knows(p)))
    assert not is_abductive(Knows(p))
    assert is_objective(Implies(Atom("cold"), Atom("cough")))
    assert not is_objective(Only(p))
    assert not is_objective(And(p, Abd(q)))
    assert not is_objective(PrefCond(p, q))
    assert atoms_of(Implies(Atom("cold"), Atom("cough"))) == {"cold", "cough"}
    assert atoms_of(And(p, Not(p))) == {"p"}
    assert depth(Knows(And(p, Not(q)))) == 3


@given(formulas())
def test_abductive_strips_to_objective(f):
    if is_abductive(f):
        assert is_objective(f.arg)
