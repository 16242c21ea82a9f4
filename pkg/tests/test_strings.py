"""Tests for bushyforce.strings module."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bushyforce.exceptions import ScenarioParseError
from bushyforce.strings import (
    binary_strings,
    common_prefix,
    compatible,
    format_pair,
    format_str,
    is_prefix,
    parse_str,
    pf_reduce,
    pointwise_leq,
    pointwise_max,
    strip_zeros,
)

small_strings = st.lists(st.integers(min_value=0, max_value=5), max_size=4).map(tuple)


class TestPointwiseLeq:
    def test_empty_common_domain(self):
        assert pointwise_leq((), (5,)) is True

    def test_longer_left(self):
        assert pointwise_leq((3, 7), (3,)) is True

    def test_larger_entry(self):
        assert pointwise_leq((2, 9), (2, 8)) is False


class TestPfReduce:
    def test_prefix_absorption(self):
        assert pf_reduce({(0,), (0, 1)}) == {(0,)}

    def test_empty(self):
        assert pf_reduce(set()) == frozenset()

    def test_mixed(self):
        assert pf_reduce({(1, 2), (3,), (1,)}) == {(1,), (3,)}

    @given(st.sets(small_strings, max_size=6))
    def test_result_is_antichain(self, strings):
        reduced = pf_reduce(strings)

        for a in reduced:
            for b in reduced:
                assert a == b or not is_prefix(a, b)

    @given(st.sets(small_strings, max_size=6), small_strings)
    def test_same_open_set(self, strings, target):
        reduced = pf_reduce(strings)

        assert any(is_prefix(s, target) for s in strings) == any(
            is_prefix(s, target) for s in reduced
        )

    @given(st.sets(small_strings, max_size=6))
    def test_idempotent(self, strings):
        assert pf_reduce(pf_reduce(strings)) == pf_reduce(strings)


class TestPrefixes:
    def test_is_prefix(self):
        assert is_prefix((), (1, 2))
        assert is_prefix((1,), (1, 2))
        assert not is_prefix((2,), (1, 2))

    def test_compatible(self):
        assert compatible((1, 2), (1,))
        assert not compatible((1, 2), (1, 3))

    def test_common_prefix(self):
        assert common_prefix((1, 2, 3), (1, 2, 5)) == (1, 2)


class TestHelpers:
    def test_binary_strings_lexicographic(self):
        assert list(binary_strings(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_pointwise_max_pads(self):
        assert pointwise_max((3,), (1, 4)) == (3, 4)

    def test_strip_zeros(self):
        assert strip_zeros((3, 0, 0)) == (3,)
        assert strip_zeros((0, 0)) == ()


class TestFormatting:
    def test_format_str(self):
        assert format_str((6, 4)) == "[6,4]"
        assert format_str(()) == "[]"

    def test_parse_str(self):
        assert parse_str("[6,4]") == (6, 4)
        assert parse_str(" [ ] ") == ()

    def test_parse_str_rejects_garbage(self):
        with pytest.raises(ScenarioParseError):
            parse_str("6,4")

    def test_format_pair(self):
        assert format_pair(((0, 1), (5, 2))) == "([0,1],[5,2])"

    @given(small_strings)
    def test_parse_inverts_format(self, s):
        assert parse_str(format_str(s)) == s
