"""Tests for bushyforce.sets module."""

from hypothesis import given
from hypothesis import strategies as st

from bushyforce.sets import (
    EMPTY,
    FULL,
    AtLeast,
    CoordGE,
    MinLen,
    Spectrum,
    Union,
    min_len,
    set_equal,
    set_subset,
    union,
    up_fin,
)

entries = st.one_of(
    st.integers(min_value=0, max_value=4), st.builds(AtLeast, st.integers(0, 4))
)
patterns = st.lists(entries, min_size=1, max_size=3).map(tuple)
strings = st.lists(st.integers(min_value=0, max_value=6), max_size=4).map(tuple)


@st.composite
def set_reps(draw):
    kind = draw(st.sampled_from(["upfin", "minlen", "coord", "union"]))
    if kind == "upfin":
        return up_fin(draw(st.lists(patterns, min_size=1, max_size=3)))
    if kind == "minlen":
        return min_len(draw(st.integers(0, 3)))
    if kind == "coord":
        return CoordGE(draw(st.integers(0, 2)), draw(st.integers(0, 4)))
    return union(
        up_fin(draw(st.lists(patterns, min_size=1, max_size=2))),
        CoordGE(draw(st.integers(0, 2)), draw(st.integers(0, 4))),
    )


class TestMembership:
    def test_extension_of_generator(self, up_zero):
        assert up_zero.member((0, 4)) is True

    def test_min_len_short(self):
        assert MinLen(2).member((7,)) is False

    def test_union_atoms(self):
        bad = union(CoordGE(1, 3), up_fin([(9,)]))

        assert bad.member((0, 3)) is True

    def test_at_least_entry(self):
        bad = up_fin([(AtLeast(7),)])

        assert bad.member((6,)) is False
        assert bad.member((8, 0)) is True

    @given(set_reps(), strings, strings)
    def test_upward_closed(self, bad, s, t):
        if bad.member(s):
            assert bad.member(s + t)


class TestSpectrum:
    def test_single_exception(self, up_zero):
        spectrum = up_zero.child_spectrum(())

        assert spectrum.exceptions == ((0, True),)
        assert spectrum.tail is False

    def test_min_len_one_is_constant(self):
        spectrum = MinLen(1).child_spectrum(())

        assert spectrum.tail is True
        assert spectrum.exceptions == ()

    def test_coord_threshold(self):
        spectrum = CoordGE(0, 5).child_spectrum(())

        assert spectrum.steps == ((5, True),)
        assert spectrum.value(4) is False
        assert spectrum.value(5) is True

    def test_least_true(self):
        spectrum = Spectrum.build(False, [(4, True)], {1: True})

        assert spectrum.least_true() == 1
        assert spectrum.least_true(2) == 4

    def test_exceptions_matching_steps_are_dropped(self):
        spectrum = Spectrum.build(False, [(2, True)], {3: True})

        assert spectrum.exceptions == ()

    @given(set_reps(), strings)
    def test_agrees_with_membership(self, bad, s):
        spectrum = bad.child_spectrum(s)

        for n in range(bad.bound + 4):
            assert spectrum.value(n) == bad.member(s + (n,))


class TestNormalization:
    def test_union_absorbs_longer_pattern(self):
        assert str(union(up_fin([(0,)]), up_fin([(0, 1)]))) == "UpFin([0])"

    def test_union_of_nothing(self):
        assert union() is EMPTY
        assert union(EMPTY, EMPTY) is EMPTY

    def test_union_keeps_shortest_min_len(self):
        assert union(MinLen(2), MinLen(3)) == MinLen(2)

    def test_union_with_full(self):
        assert union(MinLen(2), FULL) == FULL

    def test_union_is_flat(self):
        nested = union(union(CoordGE(0, 1), MinLen(3)), up_fin([(2,)]))

        assert isinstance(nested, Union)
        assert not any(isinstance(p, Union) for p in nested.parts)

    def test_residual(self):
        bad = up_fin([(0, 1)])

        assert bad.residual((0,)) == up_fin([(1,)])
        assert bad.residual((1,)) is EMPTY

    def test_min_len_zero_is_full(self):
        assert min_len(0) == FULL


class TestSubset:
    def test_min_len_nested(self):
        assert set_subset(MinLen(2), MinLen(1)) is True
        assert set_subset(MinLen(1), MinLen(2)) is False

    def test_empty_and_full(self, up_zero):
        assert set_subset(EMPTY, up_zero)
        assert set_subset(up_zero, FULL)

    def test_pattern_cover(self):
        assert set_subset(up_fin([(5,)]), up_fin([(AtLeast(3),)]))
        assert not set_subset(up_fin([(AtLeast(3),)]), up_fin([(5,)]))

    def test_equal_representations(self):
        assert set_equal(union(up_fin([(0,)]), up_fin([(0, 2)])), up_fin([(0,)]))

    @given(set_reps(), set_reps(), strings)
    def test_subset_is_sound(self, a, b, s):
        if set_subset(a, b) and a.member(s):
            assert b.member(s)
