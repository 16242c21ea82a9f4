"""Tests for bushyforce.bigness module."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bushyforce.bigness import (
    BushyWitness,
    HechlerAvoid,
    LaverInto,
    RankResult,
    _chain_rank,
    big_dichotomy,
    brute_force_rank,
    extract_witness,
    is_big,
    marcone_bounded,
    materialize_closure,
    omega_rank,
    verify_witness,
)
from bushyforce.exceptions import NotBig, RepresentationError
from bushyforce.sets import EMPTY, AtLeast, CoordGE, MinLen, union, up_fin
from bushyforce.trees import (
    CLOSED,
    FULL_TREE,
    Graft,
    Shape,
    Threshold,
    explore,
    t_plus_complement,
)

entries = st.one_of(
    st.integers(min_value=0, max_value=3), st.builds(AtLeast, st.integers(0, 3))
)
patterns = st.lists(entries, min_size=1, max_size=3).map(tuple)
bad_sets = st.lists(patterns, min_size=1, max_size=3).map(up_fin)


class TestRank:
    def test_min_len_two(self, full_tree, min_len_2):
        assert omega_rank(full_tree, min_len_2) == RankResult.big(2)

    def test_single_generator(self, full_tree, up_zero):
        assert omega_rank(full_tree, up_zero, ()) == RankResult.small()
        assert omega_rank(full_tree, up_zero, (0,)) == RankResult.big(0)

    def test_threshold_tree(self):
        assert omega_rank(Threshold((), (5,)), MinLen(1)) == RankResult.big(1)

    def test_outside_tree_is_small(self):
        assert not is_big(Threshold((), (5,)), MinLen(1), (2,))

    def test_coordinate_bound(self, full_tree):
        assert omega_rank(full_tree, CoordGE(0, 5)) == RankResult.big(1)

    def test_str(self):
        assert str(RankResult.big(3)) == "Big(3)"
        assert str(RankResult.small()) == "Small"

    @settings(max_examples=60)
    @given(bad_sets, st.sampled_from([(), (0,), (2, 1)]))
    def test_agrees_with_brute_force(self, bad, s):
        expected = brute_force_rank(
            FULL_TREE.member, bad.member, s, bad.bound, len(s) + bad.depth + 2
        )

        assert omega_rank(FULL_TREE, bad, s) == expected


class TestWitness:
    def test_generic_leaf(self, full_tree):
        witness = extract_witness(full_tree, MinLen(1))

        assert witness.root == Shape(generic=(0, CLOSED))
        assert verify_witness(full_tree, MinLen(1), witness)

    def test_closed_root_rejected(self, full_tree):
        assert not verify_witness(full_tree, MinLen(1), BushyWitness((), CLOSED))

    def test_small_node_raises(self, full_tree, up_zero):
        with pytest.raises(NotBig):
            extract_witness(full_tree, up_zero, ())

    def test_leaves_lie_in_set(self, full_tree, min_len_2):
        witness = extract_witness(full_tree, min_len_2)

        assert all(min_len_2.member(leaf) for leaf in witness.leaves(3))

    @settings(max_examples=60)
    @given(bad_sets)
    def test_extracted_witnesses_verify(self, bad):
        if is_big(FULL_TREE, bad):
            assert verify_witness(FULL_TREE, bad, extract_witness(FULL_TREE, bad))

    def test_leaf_too_shallow_rejected(self, full_tree, min_len_2):
        witness = BushyWitness((), Shape(generic=(0, CLOSED)))

        assert not verify_witness(full_tree, min_len_2, witness)

    def test_missing_template_rejected(self, full_tree, min_len_2):
        witness = BushyWitness((), Shape(named=((0, Shape(generic=(0, CLOSED))),)))

        assert not verify_witness(full_tree, min_len_2, witness)

    def test_internal_node_in_set_rejected(self, full_tree):
        witness = BushyWitness((), Shape(generic=(0, Shape(generic=(0, CLOSED)))))

        assert not verify_witness(full_tree, MinLen(1), witness)

    def test_rank_must_decrease(self, full_tree):
        bad = union(MinLen(2), CoordGE(0, 5))
        witness = BushyWitness((), Shape(generic=(0, Shape(generic=(0, CLOSED)))))

        assert omega_rank(full_tree, bad) == RankResult.big(1)
        assert not verify_witness(full_tree, bad, witness)

    @settings(max_examples=60)
    @given(bad_sets)
    def test_dropping_templates_rejected(self, bad):
        if not is_big(FULL_TREE, bad) or bad.member(()):
            return
        root = extract_witness(FULL_TREE, bad).root

        assert not verify_witness(FULL_TREE, bad, BushyWitness((), Shape(named=root.named)))

    @settings(max_examples=60)
    @given(bad_sets)
    def test_closing_generic_subtree_rejected(self, bad):
        if not is_big(FULL_TREE, bad) or bad.member(()):
            return
        root = extract_witness(FULL_TREE, bad).root
        t, sub = root.generic
        if sub == CLOSED:
            return
        mutated = Shape(named=root.named, generic=(t, CLOSED))

        assert not verify_witness(FULL_TREE, bad, BushyWitness((), mutated))


class TestDichotomy:
    def test_small_root_avoids(self, full_tree, up_zero):
        result = big_dichotomy(full_tree, up_zero, ())

        assert result == HechlerAvoid(Threshold((), (1,)))

    def test_empty_set_keeps_tree(self, full_tree):
        assert big_dichotomy(full_tree, EMPTY, ()) == HechlerAvoid(FULL_TREE)

    def test_big_root_enters(self, full_tree):
        bad = CoordGE(0, 5)
        result = big_dichotomy(full_tree, bad, ())

        assert isinstance(result, LaverInto)
        level = [s for s in explore(result.tree, 1, 9) if len(s) == 1]
        assert level
        assert all(bad.member(s) for s in level)

    def test_avoiding_tree_has_no_big_nodes(self, full_tree, up_zero):
        avoid = big_dichotomy(full_tree, up_zero, ()).tree

        assert not any(is_big(full_tree, up_zero, s) for s in explore(avoid, 2, 3))

    def test_needs_threshold(self):
        tree = Graft.from_skeleton([(), (0,)], tails={(0,): FULL_TREE})

        with pytest.raises(RepresentationError):
            big_dichotomy(tree, MinLen(1), ())

    def test_node_outside_tree(self):
        with pytest.raises(RepresentationError):
            big_dichotomy(Threshold((), (3,)), MinLen(1), (1,))


class TestClosure:
    def test_big_root_with_small_child(self, full_tree):
        bad = CoordGE(0, 2)
        closure = materialize_closure(full_tree, bad)

        assert closure.member(())
        assert not closure.member((1,))
        assert closure.member((2,))

    def test_ranks_over_closure_agree(self, full_tree):
        bad = CoordGE(0, 2)
        closure = materialize_closure(full_tree, bad)

        assert omega_rank(full_tree, closure, ()).is_big
        assert omega_rank(full_tree, closure, (1,)) == RankResult.small()
        assert omega_rank(full_tree, bad, (1,)) == RankResult.small()

    def test_upward_closed_big_nodes(self, full_tree, up_zero):
        closure = materialize_closure(full_tree, up_zero)

        for s in explore(full_tree, 2, 3):
            assert closure.member(s) == up_zero.member(s)

    def test_child_spectrum(self, full_tree):
        closure = materialize_closure(full_tree, CoordGE(0, 2))
        spectrum = closure.spectrum()

        assert not spectrum.value(1)
        assert spectrum.value(2)
        assert spectrum.tail is True

    def test_str(self, full_tree, up_zero):
        assert str(materialize_closure(full_tree, up_zero)).startswith("Closure(")

    @settings(max_examples=30)
    @given(bad_sets)
    def test_closure_is_idempotent(self, bad):
        closure = materialize_closure(FULL_TREE, bad)

        for s in explore(FULL_TREE, 2, 3):
            assert is_big(FULL_TREE, closure, s) == is_big(FULL_TREE, bad, s)


class TestMarcone:
    def test_single_branch_rank_two(self, full_tree):
        assert omega_rank(full_tree, t_plus_complement([(), (3,)])) == RankResult.big(2)

    def test_finite_tree(self):
        tree = Graft.from_skeleton([(), (3,)], closed=[(3,)])

        assert marcone_bounded(tree, 3) == RankResult.big(2)

    def test_full_tree_is_small(self, full_tree):
        assert marcone_bounded(full_tree, 2) == RankResult.small()


class TestMemo:
    def test_rank_memo_is_bounded(self, full_tree, min_len_2):
        omega_rank(full_tree, min_len_2)

        info = _chain_rank.cache_info()
        assert info.maxsize == 4096
        assert info.currsize <= info.maxsize
