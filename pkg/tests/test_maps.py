"""Tests for bushyforce.maps module."""

import pytest

from bushyforce.exceptions import RepresentationError
from bushyforce.maps import (
    MaxMap,
    MonotoneMap,
    SlowedMap,
    SplicedMap,
    comparison_depth,
    map_dominates,
)


class TestMonotoneMap:
    def test_pad(self):
        assert MonotoneMap.pad(1, 2)((0, 1, 1)) == (2, 2, 2)
        assert MonotoneMap.pad(2, 0)((0, 0, 0)) == (0,)

    def test_constant(self):
        f = MonotoneMap.constant((5, 3))

        assert f((0,)) == (5,)
        assert f((0, 1)) == (5, 3)
        assert f((0, 1, 1)) == (5, 3, 0)

    def test_padding_is_absolute(self):
        f = MonotoneMap((((0,), (5,)),), 2, 0)

        assert f((0,)) == (5,)
        assert f((0, 1, 1)) == (5,)
        assert f((0, 1, 1, 1)) == (5, 0)
        assert f((1, 1, 1)) == (0,)

    def test_padding_overrides_short_table_value(self):
        f = MonotoneMap((((1,), ()),), 1, 3)

        assert f((1,)) == (3,)
        assert f((1, 0)) == (3, 3)

    def test_long_key_keeps_its_value(self):
        f = MonotoneMap((((1,), (4,)),), 1, 0)

        assert f((1, 0, 0)) == (4, 0, 0)
        assert f((0, 0)) == (0, 0)

    def test_validate(self):
        assert MonotoneMap.pad(1, 0).validate()
        assert MonotoneMap.pad(3, 1).validate()
        assert MonotoneMap((((0,), (5,)),), 2, 0).validate()

    def test_value_longer_than_key(self):
        assert not MonotoneMap((((0,), (1, 2)),)).validate()

    @pytest.mark.parametrize("stretch", [0, -1])
    def test_stretch_below_one(self, stretch):
        with pytest.raises(RepresentationError):
            MonotoneMap((), stretch, 0)

    def test_str(self):
        assert str(MonotoneMap.pad(1, 2)) == "Pad(1,2)"
        assert str(MonotoneMap((((0,), (5,)),), 2, 0)) == "Map(2,0,[0]:[5])"

    def test_first_reaching(self):
        assert MonotoneMap.pad(2, 0).first_reaching((), 2) == (0, 0)
        assert MonotoneMap((((0, 0), (5,)),), 2, 0).first_reaching((0, 0), 2) == (5, 0)

    def test_comparison_depth(self):
        assert comparison_depth(MonotoneMap.pad(1, 0)) == 3
        assert comparison_depth(MonotoneMap.pad(1, 0), MonotoneMap.pad(2, 0)) == 7


class TestDerivedMaps:
    def test_splice(self):
        f = SplicedMap(MonotoneMap.pad(1, 0), (0,), (4,))

        assert f((0,)) == (4,)
        assert f(()) == ()
        assert f((0, 1)) == (4, 0)
        assert f((1,)) == (0,)
        assert f.validate()

    def test_slowed(self):
        f = SlowedMap(MonotoneMap.pad(1, 0), (), (1,), ())

        assert f((1,)) == ()
        assert f((1, 0)) == (0, 0)
        assert f.validate()

    def test_max(self):
        f = MaxMap(MonotoneMap.pad(1, 0), MonotoneMap.constant((2, 2)))

        assert f((0, 0)) == (2, 2)
        assert f(()) == ()

    def test_max_keeps_floor(self):
        f = MaxMap(MonotoneMap.pad(1, 0), MonotoneMap.constant((2, 2)), (), 1)

        assert f((0, 0)) == (0, 2)

    def test_dominates(self):
        big, small = MonotoneMap.constant((2, 2)), MonotoneMap.pad(1, 0)

        assert map_dominates(big, small, (), 3)
        assert not map_dominates(small, big, (), 3)
