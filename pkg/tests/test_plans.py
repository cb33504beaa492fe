import pytest

from conftest import M, tiny
from sgc.errors import ParseError, UnknownAction
from sgc.plans import parse_plan, resolve_plan, write_plan


def test_parse():
    assert parse_plan("(a1)\n(a2)\n") == ("a1", "a2")
    assert parse_plan("; cost = 3\n(a1)") == ("a1",)
    assert parse_plan("(move a b)") == ("move a b",)


@pytest.mark.parametrize("text", ["a1", "()", "((a))", "(a1"])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_plan(text)


def test_resolve():
    base = tiny().base
    assert resolve_plan(base, ("A1", "a2")) == ("a1", "a2")
    assert resolve_plan(base, ("x",), aliases={"x": "a1"}) == ("a1",)
    with pytest.raises(UnknownAction):
        resolve_plan(base, parse_plan("(nosuch)"))


def test_write_round_trip():
    text = write_plan(("a1", "move a b"), cost=3 * M)
    assert text == "(a1)\n(move a b)\n; cost = 3\n"
    assert parse_plan(text) == ("a1", "move a b")
