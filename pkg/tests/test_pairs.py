"""Tests for bushyforce.pairs module."""

import pytest

from bushyforce.bigness import RankResult
from bushyforce.exceptions import NotBig, StemMismatch
from bushyforce.pairs import (
    EMPTY_P,
    MinLenSecond,
    PairWitness,
    StretchGE,
    _deep_chain,
    as_node,
    brute_pair_rank,
    concat_pair_witnesses,
    extract_pair_witness,
    inter_p,
    materialize_pair_closure,
    pair_rank,
    pair_subset,
    union_p,
    up_fin_p,
    verify_pair_witness,
)
from bushyforce.sets import AtLeast

ROOT = ((), ())


class TestPairSets:
    def test_up_fin_membership(self):
        bad = up_fin_p([((0,), (2,))])

        assert bad.member((0, 1), (2, 7))
        assert not bad.member((1,), (2,))

    def test_stretch_normalizes_phase(self):
        bad = StretchGE(2, 5, 0)

        assert (bad.r, bad.c) == (1, -2)
        assert bad.member((0, 0, 0), ())

    def test_intersection(self):
        bad = inter_p(MinLenSecond(1), up_fin_p([((0,), ())]))

        assert bad.member((0,), (5,))
        assert not bad.member((1,), (5,))
        assert not bad.member((0,), ())

    def test_union(self):
        bad = union_p(MinLenSecond(2), up_fin_p([((1,), ())]))

        assert bad.member((1,), ())
        assert bad.member((0,), (0, 0))

    def test_subset(self):
        assert pair_subset(MinLenSecond(2), MinLenSecond(1))
        assert not pair_subset(MinLenSecond(1), MinLenSecond(2))


class TestPairRank:
    def test_empty(self):
        assert pair_rank(EMPTY_P, ROOT) == RankResult.small()

    def test_min_len_second(self):
        assert pair_rank(MinLenSecond(1), ROOT) == RankResult.big(1)

    def test_first_coordinate_generator(self):
        bad = up_fin_p([((0,), ())])

        assert pair_rank(bad, ROOT) == RankResult.big(1)
        assert pair_rank(bad, ((1,), ())) == RankResult.small()

    def test_member_has_rank_zero(self):
        assert pair_rank(MinLenSecond(1), ((), (4,))) == RankResult.big(0)

    @pytest.mark.parametrize(
        "bad,pair",
        [
            (MinLenSecond(1), ROOT),
            (up_fin_p([((0,), ())]), ROOT),
            (up_fin_p([((0,), ())]), ((1,), ())),
            (EMPTY_P, ROOT),
            (up_fin_p([((1,), ())]), ((), (1,))),
            (MinLenSecond(3), ((0,), (2, 2))),
        ],
    )
    def test_agrees_with_brute_force(self, bad, pair):
        assert pair_rank(bad, pair) == brute_pair_rank(bad, pair, 2)

    def test_brute_force_counts_from_the_starting_pair(self):
        bad = up_fin_p([((1,), ())])

        assert brute_pair_rank(bad, ((), (1,)), 2) == RankResult.big(1)


class TestPairWitness:
    def test_extract_and_verify(self):
        bad = MinLenSecond(1)
        witness = extract_pair_witness(bad, ROOT)

        assert verify_pair_witness(bad, witness)
        assert len(witness.edges()) == 1

    def test_bare_stem_is_not_a_witness(self):
        assert not verify_pair_witness(MinLenSecond(1), PairWitness(as_node(ROOT), {}))

    def test_justified_stem_rejected(self):
        stem = as_node(ROOT)
        other = as_node(((0,), ()))

        assert not verify_pair_witness(MinLenSecond(0), PairWitness(stem, {stem: {other}}))

    def test_small_stem_raises(self):
        with pytest.raises(NotBig):
            extract_pair_witness(EMPTY_P, ROOT)

    def test_concat_rejects_non_leaf(self):
        witness = extract_pair_witness(MinLenSecond(1), ROOT)

        with pytest.raises(StemMismatch):
            concat_pair_witnesses(witness, {as_node(((1,), ())): witness})

    def test_concat_on_leaf(self):
        bad = MinLenSecond(2)
        outer = extract_pair_witness(MinLenSecond(1), ROOT)
        leaf = next(iter(outer.leaves))
        inner = extract_pair_witness(bad, leaf)

        merged = concat_pair_witnesses(outer, {leaf: inner})

        assert merged.stem == outer.stem
        assert leaf not in merged.leaves

    def test_concatenation_verifies_against_inner_set(self):
        bad = MinLenSecond(2)
        outer = extract_pair_witness(MinLenSecond(1), ROOT)
        per_leaf = {leaf: extract_pair_witness(bad, leaf) for leaf in outer.leaves}

        merged = concat_pair_witnesses(outer, per_leaf)

        assert not verify_pair_witness(bad, outer)
        assert verify_pair_witness(bad, merged)


class TestPairClosure:
    def test_big_pair_with_small_child(self):
        closure = materialize_pair_closure(up_fin_p([((), (AtLeast(2),))]))

        assert closure.member((), ())
        assert not closure.member((), (1,))
        assert closure.member((), (2,))

    def test_ranks_over_closure_agree(self):
        bad = up_fin_p([((), (AtLeast(2),))])
        closure = materialize_pair_closure(bad)

        assert pair_rank(bad, ROOT) == RankResult.big(1)
        assert pair_rank(closure, ROOT).is_big
        assert pair_rank(closure, ((), (1,))) == RankResult.small()

    @pytest.mark.parametrize(
        "bad",
        [
            MinLenSecond(2),
            up_fin_p([((1,), (0,))]),
            union_p(MinLenSecond(3), up_fin_p([((0,), ())])),
        ],
    )
    def test_closure_is_idempotent(self, bad):
        closure = materialize_pair_closure(bad)

        for pair in [ROOT, ((0,), ()), ((1,), (0,)), ((1, 1), (4, 4))]:
            assert pair_rank(closure, pair).is_big == pair_rank(bad, pair).is_big


class TestMemo:
    def test_chain_memo_is_bounded(self):
        pair_rank(MinLenSecond(2), ROOT)

        assert _deep_chain.cache_info().maxsize == 4096
