from hypothesis import given, settings, strategies as st

from conftest import parser_crashes
from sgc.errors import SGCError
from sgc.native import read_native
from sgc.pddl import parse_domain


def test_seeded_fuzz_has_no_crashes():
    assert parser_crashes(seed=11, count=2_000) == []


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="()-;:? \nabdefinopqrst0123456789.", max_size=120))
def test_pddl_like_text_raises_structured_errors(text):
    try:
        parse_domain(text)
    except SGCError:
        pass


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=120))
def test_native_bytes_raise_structured_errors(data):
    try:
        read_native(data)
    except SGCError:
        pass
