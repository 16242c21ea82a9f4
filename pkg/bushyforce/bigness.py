"""
Bigness in trees: ranks, witnesses and the Laver/Hechler dichotomy.

A node s of a tree T is big for an upward-closed set B when it is in B, or when
infinitely many of its children in T are big with smaller rank. Every
representable (T, B) pair reaches an absorbing residual state after finitely
many steps, so ranks are finite and all children above the combined breakpoint
bound share one residual state. The rank of a node is therefore read off the
chain of fresh-child residuals.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Union as TUnion

from bushyforce.exceptions import NotBig, RankOverflow, RepresentationError
from bushyforce.sets import EMPTY, SetRep, Spectrum, min_len, union, up_fin
from bushyforce.strings import Str, format_str, is_prefix
from bushyforce.trees import (
    CLOSED,
    FULL_TREE,
    Shape,
    Threshold,
    TreeRep,
    finite_tree_nodes,
    graft_at,
    make_graft,
    prolong,
    t_plus_patterns,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RankResult:
    """Either Small (rank None) or Big with a finite rank."""

    rank: Optional[int] = None

    @classmethod
    def small(cls) -> "RankResult":
        return cls(None)

    @classmethod
    def big(cls, rank: int) -> "RankResult":
        return cls(rank)

    @property
    def is_big(self) -> bool:
        return self.rank is not None

    def __str__(self) -> str:
        return f"Big({self.rank})" if self.is_big else "Small"


def rank_budget(tree: TreeRep, bad: SetRep) -> int:
    return bad.depth + tree.depth + 2


def fresh_value(tree: TreeRep, bad: SetRep) -> int:
    """A child value representing every value above both breakpoint bounds."""
    return max(tree.bound, bad.bound) + 1


@lru_cache(maxsize=4096)
def _chain_rank(tree: TreeRep, bad: SetRep) -> Optional[int]:
    """Rank of the root of tree for bad, assuming the root is a node."""
    steps = 0
    budget = rank_budget(tree, bad)
    while True:
        if bad.member(()):
            return steps
        if bad.is_empty:
            return None
        fresh = fresh_value(tree, bad)
        if not tree.root_spectrum().value(fresh):
            return None
        steps += 1
        if steps > budget:
            raise RankOverflow(f"Rank recursion exceeded budget {budget} for {bad} in {tree}")
        tree, bad = tree.residual((fresh,)), bad.step(fresh)


def omega_rank(tree: TreeRep, bad: SetRep, s: Str = ()) -> RankResult:
    """
    Decide whether s is big for bad in tree, and with which rank.

    Raises:
        RankOverflow: If the fresh-child chain outruns the representation depth
    """
    sub = tree.residual(s)
    if sub is None:
        return RankResult.small()
    result = RankResult(_chain_rank(sub, bad.residual(s)))
    logger.debug(f"rank of {format_str(s)} for {bad}: {result}")
    return result


def is_big(tree: TreeRep, bad: SetRep, s: Str = ()) -> bool:
    return omega_rank(tree, bad, s).is_big


def brute_force_rank(
    tree_member: Callable[[Str], bool],
    bad_member: Callable[[Str], bool],
    s: Str,
    bound: int,
    max_depth: int,
) -> RankResult:
    """
    Rank by direct recursion on membership predicates.

    Infinitely-many quantifiers are evaluated on the two values just above
    ``bound``, which must dominate every breakpoint of both predicates.
    """

    def rank(node: Str) -> Optional[int]:
        if bad_member(node):
            return 0
        if len(node) >= max_depth:
            return None
        ranks = []
        for n in (bound + 1, bound + 2):
            child = node + (n,)
            if not tree_member(child):
                return None
            r = rank(child)
            if r is None:
                return None
            ranks.append(r)
        return 1 + max(ranks)

    if not tree_member(s):
        return RankResult.small()
    return RankResult(rank(s))


@dataclass(frozen=True)
class BushyWitness:
    """
    A finite tree certifying bigness: every internal node has a generic template
    covering all children above a threshold, and every leaf lies in the set.
    """

    stem: Str
    root: Shape

    def nodes(self, width: int) -> Iterator[Str]:
        """Representative nodes: generic children are sampled from their threshold to width."""
        queue: deque = deque([(self.stem, self.root)])
        while queue:
            s, shape = queue.popleft()
            yield s
            for n, sub in shape.named:
                queue.append((s + (n,), sub))
            if shape.generic is not None:
                t, sub = shape.generic
                for n in range(t, max(t, width) + 1):
                    if all(k != n for k, _ in shape.named):
                        queue.append((s + (n,), sub))

    def leaves(self, width: int) -> list[Str]:
        return [s for s in self.nodes(width) if self._shape_at(s).is_closed]

    def _shape_at(self, s: Str) -> Shape:
        shape = self.root
        for n in s[len(self.stem) :]:
            shape = shape.child(n)
        return shape

    def __str__(self) -> str:
        return f"Witness({format_str(self.stem)},{self.root})"


def extract_witness(tree: TreeRep, bad: SetRep, s: Str = ()) -> BushyWitness:
    """
    Build a witness by following strictly decreasing ranks.

    Raises:
        NotBig: If s is not big for bad in tree
    """
    result = omega_rank(tree, bad, s)
    if not result.is_big:
        raise NotBig(f"{format_str(s)} is not big for {bad}")
    return BushyWitness(s, _witness_shape(tree.residual(s), bad.residual(s)))


def _witness_shape(tree: TreeRep, bad: SetRep) -> Shape:
    if bad.member(()):
        return CLOSED
    rank = _chain_rank(tree, bad)
    fresh = fresh_value(tree, bad)
    state = (tree.residual((fresh,)), bad.step(fresh))
    spectrum = tree.root_spectrum()
    t = fresh
    while t > 0 and spectrum.value(t - 1) and (tree.residual((t - 1,)), bad.step(t - 1)) == state:
        t -= 1
    named = []
    for n in range(t):
        if not spectrum.value(n):
            continue
        child_tree, child_bad = tree.residual((n,)), bad.step(n)
        child_rank = _chain_rank(child_tree, child_bad)
        if child_rank is not None and child_rank < rank:
            named.append((n, _witness_shape(child_tree, child_bad)))
    return Shape(named=tuple(named), generic=(t, _witness_shape(*state)))


def verify_witness(tree: TreeRep, bad: SetRep, witness: BushyWitness) -> bool:
    """
    Check a witness: nodes in the tree, generic templates at every internal node,
    no infinite parts, leaves in the set and strictly decreasing ranks.
    """
    sub_tree = tree.residual(witness.stem)
    if sub_tree is None:
        return False
    try:
        return _verify_shape(witness.root, sub_tree, bad.residual(witness.stem))
    except RankOverflow:
        return False


def _verify_shape(shape: Shape, tree: TreeRep, bad: SetRep) -> bool:
    if shape.is_closed:
        return bad.member(())
    if shape.tail is not None or shape.generic is None:
        return False
    rank = _chain_rank(tree, bad)
    if rank is None or rank == 0:
        return False
    t, generic_sub = shape.generic
    fresh = max(fresh_value(tree, bad), t, max((n for n, _ in shape.named), default=0) + 1)
    children = [(n, sub) for n, sub in shape.named]
    children += [(n, generic_sub) for n in range(t, fresh + 1) if n not in dict(shape.named)]
    spectrum = tree.root_spectrum()
    for n, sub in children:
        if not spectrum.value(n):
            return False
        child_tree, child_bad = tree.residual((n,)), bad.step(n)
        child_rank = _chain_rank(child_tree, child_bad)
        if child_rank is None or child_rank >= rank:
            return False
        if not _verify_shape(sub, child_tree, child_bad):
            return False
    return True


@dataclass(frozen=True)
class LaverInto:
    """Big arm: every branch of the tree enters the set."""

    tree: TreeRep


@dataclass(frozen=True)
class HechlerAvoid:
    """Small arm: no node of the tree above the stem is big."""

    tree: TreeRep


Dichotomy = TUnion[LaverInto, HechlerAvoid]


def laver_tree(tree: TreeRep, bad: SetRep, s: Str) -> TreeRep:
    """
    The witness for s prolonged by the residuals of tree at its leaves, rooted at s.

    Every branch of the result passes through bad.

    Raises:
        NotBig: If s is not big for bad in tree
    """
    witness = extract_witness(tree, bad, s)
    return graft_at(s, make_graft(prolong(witness.root, tree.residual(s))))


def big_dichotomy(tree: TreeRep, bad: SetRep, s: Str) -> Dichotomy:
    """
    Return a Laver tree into ⟨bad⟩ when s is big, else a Threshold tree above s
    avoiding every big node.

    Raises:
        RepresentationError: If tree is not a Threshold tree or s is not a node
            at or above its stem
        RankOverflow: Propagated from the rank engine
    """
    if not isinstance(tree, Threshold):
        raise RepresentationError("The dichotomy needs a Threshold tree")
    if not tree.member(s) or not is_prefix(tree.stem, s):
        raise RepresentationError(f"{format_str(s)} is not a node above the stem of {tree}")
    if omega_rank(tree, bad, s).is_big:
        return LaverInto(laver_tree(tree, bad, s))
    theta = list(tree.theta)
    states = {(tree.residual(s), bad.residual(s))}
    horizon = len(s) + bad.depth + tree.depth + 1
    for level in range(len(s), horizon + 1):
        floor = tree.theta[level] if level < len(tree.theta) else 0
        for sub_tree, sub_bad in states:
            fresh = fresh_value(sub_tree, sub_bad)
            spectrum = sub_tree.root_spectrum()
            for n in range(fresh + 1):
                if not spectrum.value(n):
                    continue
                if _chain_rank(sub_tree.residual((n,)), sub_bad.step(n)) is not None:
                    floor = max(floor, n + 1)
        theta += [0] * (level + 1 - len(theta))
        theta[level] = floor
        next_states = set()
        for sub_tree, sub_bad in states:
            fresh = max(fresh_value(sub_tree, sub_bad), floor)
            for n in range(floor, fresh + 1):
                if sub_tree.root_spectrum().value(n):
                    next_states.add((sub_tree.residual((n,)), sub_bad.step(n)))
        states = next_states
    result = Threshold(s, tuple(theta))
    logger.debug(f"avoiding tree for {bad} above {format_str(s)}: {result}")
    return HechlerAvoid(result)


@dataclass(frozen=True)
class ClosureSet(SetRep):
    """
    The big nodes of tree for bad, as a set.

    Not upward closed: a node can be big through infinitely many big children
    while some of its children are small. Residuals are the closures of the
    residual tree and set.
    """

    tree: TreeRep
    bad: SetRep

    def member(self, s: Str) -> bool:
        return omega_rank(self.tree, self.bad, s).is_big

    def step(self, n: int) -> SetRep:
        sub = self.tree.residual((n,))
        if sub is None:
            return EMPTY
        return ClosureSet(sub, self.bad.step(n))

    def spectrum(self) -> Spectrum:
        fresh = self.bound + 1
        exceptions = {n: self.member((n,)) for n in range(fresh)}
        return Spectrum.build(self.member((fresh,)), (), exceptions)

    @property
    def depth(self) -> int:
        return self.bad.depth

    @property
    def bound(self) -> int:
        return max(self.tree.bound, self.bad.bound)

    @property
    def is_empty(self) -> bool:
        return self.bad.is_empty

    def __str__(self) -> str:
        return f"Closure({self.tree},{self.bad})"


def materialize_closure(tree: TreeRep, bad: SetRep) -> ClosureSet:
    """cl_T(B): exactly the nodes of tree that are big for bad."""
    return ClosureSet(tree, bad)


def marcone_bounded(tree: TreeRep, depth: int) -> RankResult:
    """
    Bigness at the root of the strings escaping T⁺, within the first depth levels.

    Finite trees give Big; trees with a branch through depth give Small.
    """
    nodes = finite_tree_nodes(tree, depth, tree.bound + 1)
    height = max(len(s) for s in nodes)
    parts = [up_fin(t_plus_patterns(nodes))]
    if height < depth:
        parts.append(min_len(height + 1))
    return omega_rank(FULL_TREE, union(*parts), ())
