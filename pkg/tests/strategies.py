"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from rankpke import ExtField, SeededRng

SMALL_FIELDS = [(2, 1), (2, 3), (2, 4), (2, 8), (3, 2), (3, 5), (5, 3), (7, 2)]


@st.composite
def fields(draw, choices=SMALL_FIELDS):
    q, m = draw(st.sampled_from(choices))
    return ExtField(q, m)


def seeds():
    return st.integers(0, 2**64 - 1).map(SeededRng)


@st.composite
def elements(draw, field):
    return field.element(draw(st.integers(0, field.order - 1)))
