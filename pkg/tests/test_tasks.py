"""Tests for bushyforce.tasks module."""

import pytest

from bushyforce.exceptions import MalformedTrace
from bushyforce.sets import AtLeast, up_fin
from bushyforce.tasks import (
    BoundedFunctional,
    Dominate,
    ExtendStem,
    MeetOpen,
    PairFunctional,
    Trace,
)


class TestBoundedFunctional:
    def test_parity_values(self):
        phi = BoundedFunctional.parity(2, 2)

        assert phi((1,)) == (1,)
        assert phi((1, 0, 1)) == (1, 0)
        assert phi(()) == ()

    def test_parity_is_valid(self):
        assert BoundedFunctional.parity(2, 2).validate()

    def test_bound_repeats_last_entry(self):
        assert BoundedFunctional((), (3, 1)).bound_at(5) == 1
        assert BoundedFunctional((), ()).bound_at(2) == 0
        assert BoundedFunctional(()).bound_at(0) is None

    def test_incomparable_overlap(self):
        phi = BoundedFunctional((((0,), (0,)), ((AtLeast(0),), (1,))))

        assert not phi.validate()

    def test_bound_violation(self):
        assert not BoundedFunctional((((0,), (2,)),), (1,)).validate()

    def test_convergence_set(self):
        conv = BoundedFunctional.parity(1, 2).convergence_set(0)

        assert conv.member((5,))
        assert not conv.member(())

    def test_value_set(self):
        values = BoundedFunctional.parity(1, 2).value_set((1,))

        assert values.member((1,))
        assert not values.member((0,))

    def test_position_set(self):
        assert BoundedFunctional.parity(1, 2).position_set(0, 0).member((2,))

    def test_depth_and_width(self):
        phi = BoundedFunctional.parity(2, 2)

        assert phi.depth == 2
        assert phi.width == 3


class TestPairFunctional:
    def test_parity_second(self):
        phi = PairFunctional.parity_second(1, 2)

        assert phi((), (1,)) == (1,)
        assert phi((0, 1), (0,)) == (0,)
        assert phi.validate()


class TestTrace:
    def test_traces(self):
        trace = Trace(({0}, {0, 1}))

        assert trace.traces((0, 1))
        assert trace.traces((0, 1, 7))
        assert not trace.traces((1,))

    def test_too_many_values(self):
        with pytest.raises(MalformedTrace):
            Trace(({0, 1},))

    def test_str(self):
        assert str(Trace(({0}, {1, 0}))) == "Trace({0},{0,1})"


class TestTaskNames:
    def test_str(self):
        assert str(ExtendStem(2)) == "ExtendStem(2)"
        assert str(Dominate((5, 3))) == "Dominate([5,3])"
        assert str(MeetOpen(up_fin([(0,)]))) == "MeetOpen(UpFin([0]))"
