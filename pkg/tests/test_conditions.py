"""Tests for bushyforce.conditions module."""

import pytest

from bushyforce.conditions import (
    HBCond,
    ICond,
    LBCond,
    addreals_set,
    center_key,
    centered_merge,
    extends,
    extension_at,
    iter_membership,
    projection,
    satisfies_prefix,
    validate_condition,
)
from bushyforce.exceptions import NotAnExtension, NotCentered
from bushyforce.maps import MonotoneMap
from bushyforce.pairs import EMPTY_P, pair_rank
from bushyforce.sets import EMPTY, FULL, set_equal
from bushyforce.trees import Threshold


class TestValidate:
    def test_tops(self, lb_top, hb_33, i_pad2):
        assert validate_condition(lb_top)
        assert validate_condition(hb_33)
        assert validate_condition(i_pad2)

    def test_big_stem_rejected(self, up_zero):
        assert not validate_condition(LBCond.top(FULL))
        assert not validate_condition(HBCond((0,), (), up_zero))

    def test_stem_value_mismatch(self):
        assert not validate_condition(ICond((1,), MonotoneMap.pad(1, 0), (), EMPTY_P))

    def test_lb_of_reads_stem(self):
        assert LBCond.of(Threshold((1, 2), ()), EMPTY).stem == (1, 2)

    def test_projection(self, hb_33, i_pad2):
        assert projection(hb_33) == ()
        assert projection(i_pad2) == ((), ())


class TestExtends:
    def test_hb_extension_at(self, hb_33):
        q = extension_at(hb_33, (4, 3))

        assert q == HBCond((4, 3), (3, 3), EMPTY)
        assert extends(q, hb_33)
        assert not extends(hb_33, q)

    def test_hb_below_bound(self, hb_33):
        with pytest.raises(NotAnExtension):
            extension_at(hb_33, (2,))

    def test_hb_weaker_bound(self):
        assert not extends(HBCond((), (1,), EMPTY), HBCond((), (3,), EMPTY))

    def test_lb_extension_at(self, lb_top):
        q = extension_at(lb_top, (1, 1))

        assert q.stem == (1, 1)
        assert extends(q, lb_top)

    def test_lb_big_target(self, up_zero):
        with pytest.raises(NotAnExtension):
            extension_at(LBCond.top(up_zero), (0, 5))

    def test_forcings_never_compare(self, lb_top, hb_33):
        assert not extends(lb_top, hb_33)

    def test_reflexive(self, i_pad2):
        assert extends(i_pad2, i_pad2)


class TestCentered:
    def test_hb_merge(self, up_zero):
        p = HBCond((), (3,), EMPTY)
        q = HBCond((), (1, 4), up_zero)

        merged = centered_merge(p, q)

        assert merged.f == (3, 4)
        assert set_equal(merged.bad, up_zero)
        assert extends(merged, p)
        assert extends(merged, q)

    def test_i_merge(self, i_pad2):
        merged = centered_merge(i_pad2, ICond.top())

        assert center_key(merged) == ((), ())
        assert merged.f((0, 0)) == (2, 2)

    def test_tree_conditions_not_centered(self, lb_top):
        with pytest.raises(NotCentered):
            center_key(lb_top)

    def test_different_keys(self, hb_33):
        with pytest.raises(NotCentered):
            centered_merge(hb_33, HBCond((4,), (3, 3), EMPTY))


class TestIterMembership:
    def test_possible_extension(self, i_pad2):
        result = iter_membership(i_pad2, ((0, 1), (5, 2)))

        assert (result.in_c, result.in_d, result.in_e) == (True, False, True)

    def test_not_converged(self, i_pad2):
        result = iter_membership(i_pad2, ((0,), (5, 2)))

        assert not result.in_c
        assert not result.in_e

    def test_dominated(self, i_pad2):
        result = iter_membership(i_pad2, ((0, 1), (1, 2)))

        assert result.in_d
        assert not result.in_e

    def test_extension_at(self, i_pad2):
        q = extension_at(i_pad2, ((0, 1), (5, 2)))

        assert q.key == ((0, 1), (5, 2))
        assert q.f((0, 1)) == (5, 2)
        assert validate_condition(q)
        assert extends(q, i_pad2)

    def test_extension_at_rejects(self, i_pad2):
        with pytest.raises(NotAnExtension):
            extension_at(i_pad2, ((0,), (5, 2)))

    def test_addreals(self):
        result = addreals_set(ICond.top(), 1)

        assert result.member((0,), (0,))
        assert not result.member((), ())

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_addreals_is_big(self, m):
        result = addreals_set(ICond.top(), m)

        assert all(len(a) >= len(t) >= m for a, t in result.sorted_gens())
        assert pair_rank(result, ((), ())).is_big

    def test_addreals_above_padded_key(self, i_pad2):
        result = addreals_set(i_pad2, 2)

        assert result.member((0, 1), (5, 2))
        assert not result.member((0, 1), (1, 2))
        assert pair_rank(result, ((), ())).is_big


class TestSatisfiesPrefix:
    def test_hb(self, hb_33):
        assert satisfies_prefix(hb_33, (4, 3))
        assert not satisfies_prefix(hb_33, (2,))

    def test_lb(self, up_zero):
        p = LBCond.top(up_zero)

        assert satisfies_prefix(p, (1, 1))
        assert not satisfies_prefix(p, (0, 1))

    def test_i(self, i_pad2):
        assert satisfies_prefix(i_pad2, ((0, 1), (5, 2)))
        assert not satisfies_prefix(i_pad2, ((0, 1), (1, 2)))
