"""
Bigness on pairs of a binary string and a string of naturals.

The first coordinate is quantified with "there is an extension such that all
further extensions have an extension" alternations. For the representable pair
sets, membership stops depending on the first coordinate beyond its
representation depth L (up to length-only atoms, which always hold far enough
out), so the quantifiers collapse onto the binary classes of length L.
"""
from __future__ import annotations

import itertools
import logging
from abc import ABC, abstractmethod
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Union as TUnion

from bushyforce.bigness import RankResult
from bushyforce.exceptions import (
    CertificateFailure,
    NotBig,
    RankOverflow,
    RepresentationError,
    StemMismatch,
)
from bushyforce.sets import (
    entry_matches,
    format_pattern,
    pattern_bound,
    pattern_covers,
    pattern_key,
    pattern_matches,
)
from bushyforce.strings import (
    BinStr,
    PairStr,
    Str,
    binary_strings,
    binary_strings_upto,
    format_pair,
    format_str,
    is_prefix,
    strings_upto,
)

logger = logging.getLogger(__name__)

DEFAULT_PAIR_BUDGET = 16


class PairSetRep(ABC):
    """A finitely presented set of (binary string, string) pairs."""

    @abstractmethod
    def member(self, sigma: BinStr, tau: Str) -> bool: ...

    @abstractmethod
    def residual(self, sigma: BinStr, tau: Str) -> "PairSetRep":
        """The set {(a, b) : (sigma + a, tau + b) in self}."""

    @abstractmethod
    def deep_root(self) -> bool:
        """Membership of ((long enough binary string), ()) once the first coordinate is past L."""

    @property
    @abstractmethod
    def first_depth(self) -> int: ...

    @property
    @abstractmethod
    def second_depth(self) -> int: ...

    @property
    @abstractmethod
    def bound(self) -> int: ...

    @property
    def is_full(self) -> bool:
        return False

    @property
    def is_empty(self) -> bool:
        return False

    def deep_member(self, sigma: BinStr, tau: Str) -> bool:
        """Membership of (rho, tau) for every long enough rho extending sigma."""
        return self.residual(sigma, tau).deep_root()

    def __contains__(self, pair: PairStr) -> bool:
        return self.member(tuple(pair[0]), tuple(pair[1]))


def _gen_key(gen: tuple) -> tuple:
    return (len(gen[0]), gen[0], pattern_key(gen[1]))


def _reduce_gens(gens: Iterable[tuple]) -> frozenset:
    pool = sorted({(tuple(a), tuple(p)) for a, p in gens}, key=_gen_key)
    kept: list[tuple] = []
    for a, p in pool:
        if not any(is_prefix(ka, a) and pattern_covers(kp, p) for ka, kp in kept):
            kept.append((a, p))
    return frozenset(kept)


@dataclass(frozen=True)
class UpFinP(PairSetRep):
    """Upward closure, in both coordinates, of finitely many (binary string, pattern) pairs."""

    gens: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gens", _reduce_gens(self.gens))

    def member(self, sigma: BinStr, tau: Str) -> bool:
        return any(is_prefix(a, sigma) and pattern_matches(p, tau) for a, p in self.gens)

    def residual(self, sigma: BinStr, tau: Str) -> PairSetRep:
        if self.is_full:
            return self
        new = []
        for a, p in self.gens:
            if not (is_prefix(a, sigma) or is_prefix(sigma, a)):
                continue
            k = min(len(p), len(tau))
            if not all(entry_matches(e, n) for e, n in zip(p[:k], tau[:k])):
                continue
            new.append((a[len(sigma) :], p[len(tau) :]))
        return up_fin_p(new)

    def deep_root(self) -> bool:
        return self.is_full

    @property
    def first_depth(self) -> int:
        return max((len(a) for a, _ in self.gens), default=0)

    @property
    def second_depth(self) -> int:
        return max((len(p) for _, p in self.gens), default=0)

    @property
    def bound(self) -> int:
        return max((pattern_bound(p) for _, p in self.gens), default=0)

    @property
    def is_full(self) -> bool:
        return ((), ()) in self.gens

    @property
    def is_empty(self) -> bool:
        return not self.gens

    def sorted_gens(self) -> list[tuple]:
        return sorted(self.gens, key=_gen_key)

    def __str__(self) -> str:
        body = ",".join(f"({format_str(a)},{format_pattern(p)})" for a, p in self.sorted_gens())
        return f"UpFinP({body})"


@dataclass(frozen=True)
class MinLenSecond(PairSetRep):
    """Pairs whose second coordinate has length >= k."""

    k: int

    def member(self, sigma: BinStr, tau: Str) -> bool:
        return len(tau) >= self.k

    def residual(self, sigma: BinStr, tau: Str) -> PairSetRep:
        remaining = self.k - len(tau)
        return FULL_P if remaining <= 0 else MinLenSecond(remaining)

    def deep_root(self) -> bool:
        return self.k <= 0

    @property
    def first_depth(self) -> int:
        return 0

    @property
    def second_depth(self) -> int:
        return max(self.k, 0)

    @property
    def bound(self) -> int:
        return 0

    @property
    def is_full(self) -> bool:
        return self.k <= 0

    def __str__(self) -> str:
        return f"MinLenSecond({self.k})"


@dataclass(frozen=True)
class StretchGE(PairSetRep):
    """
    Pairs with floor((|sigma| + r) / s) >= |tau| + c.

    Not upward closed in the second coordinate; it only ever appears inside
    intersections with upward-closed sets. The phase is kept below s.
    """

    s: int = 1
    r: int = 0
    c: int = 0

    def __post_init__(self) -> None:
        if self.s < 1:
            raise RepresentationError(f"StretchGE needs stretch >= 1, got {self.s}")
        object.__setattr__(self, "c", self.c - self.r // self.s)
        object.__setattr__(self, "r", self.r % self.s)

    def member(self, sigma: BinStr, tau: Str) -> bool:
        return (len(sigma) + self.r) // self.s >= len(tau) + self.c

    def residual(self, sigma: BinStr, tau: Str) -> PairSetRep:
        return StretchGE(self.s, self.r + len(sigma), self.c + len(tau))

    def deep_root(self) -> bool:
        return True

    @property
    def first_depth(self) -> int:
        return 0

    @property
    def second_depth(self) -> int:
        return 0

    @property
    def bound(self) -> int:
        return 0

    def __str__(self) -> str:
        return f"StretchGE({self.s},{self.r},{self.c})"


@dataclass(frozen=True)
class EmptyPairSet(PairSetRep):
    def member(self, sigma: BinStr, tau: Str) -> bool:
        return False

    def residual(self, sigma: BinStr, tau: Str) -> PairSetRep:
        return self

    def deep_root(self) -> bool:
        return False

    @property
    def first_depth(self) -> int:
        return 0

    @property
    def second_depth(self) -> int:
        return 0

    @property
    def bound(self) -> int:
        return 0

    @property
    def is_empty(self) -> bool:
        return True

    def __str__(self) -> str:
        return "EmptyP"


def _part_key(part: PairSetRep) -> tuple:
    return (type(part).__name__, str(part))


@dataclass(frozen=True)
class UnionP(PairSetRep):
    parts: tuple = ()

    def __post_init__(self) -> None:
        flat: list[PairSetRep] = []
        for part in self.parts:
            flat.extend(part.parts if isinstance(part, UnionP) else [part])
        gens: set = set()
        others = set()
        for part in flat:
            if part.is_empty:
                continue
            if isinstance(part, UpFinP):
                gens |= part.gens
            else:
                others.add(part)
        merged = list(others) + ([UpFinP(frozenset(gens))] if gens else [])
        object.__setattr__(self, "parts", tuple(sorted(merged, key=_part_key)))

    def member(self, sigma: BinStr, tau: Str) -> bool:
        return any(p.member(sigma, tau) for p in self.parts)

    def residual(self, sigma: BinStr, tau: Str) -> PairSetRep:
        return union_p(*(p.residual(sigma, tau) for p in self.parts))

    def deep_root(self) -> bool:
        return any(p.deep_root() for p in self.parts)

    @property
    def first_depth(self) -> int:
        return max((p.first_depth for p in self.parts), default=0)

    @property
    def second_depth(self) -> int:
        return max((p.second_depth for p in self.parts), default=0)

    @property
    def bound(self) -> int:
        return max((p.bound for p in self.parts), default=0)

    @property
    def is_full(self) -> bool:
        return any(p.is_full for p in self.parts)

    @property
    def is_empty(self) -> bool:
        return all(p.is_empty for p in self.parts)

    def __str__(self) -> str:
        return "UnionP(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class InterP(PairSetRep):
    parts: tuple = ()

    def __post_init__(self) -> None:
        flat: list[PairSetRep] = []
        for part in self.parts:
            flat.extend(part.parts if isinstance(part, InterP) else [part])
        kept = {p for p in flat if not p.is_full}
        object.__setattr__(self, "parts", tuple(sorted(kept, key=_part_key)))

    def member(self, sigma: BinStr, tau: Str) -> bool:
        return all(p.member(sigma, tau) for p in self.parts)

    def residual(self, sigma: BinStr, tau: Str) -> PairSetRep:
        return inter_p(*(p.residual(sigma, tau) for p in self.parts))

    def deep_root(self) -> bool:
        return all(p.deep_root() for p in self.parts)

    @property
    def first_depth(self) -> int:
        return max((p.first_depth for p in self.parts), default=0)

    @property
    def second_depth(self) -> int:
        return max((p.second_depth for p in self.parts), default=0)

    @property
    def bound(self) -> int:
        return max((p.bound for p in self.parts), default=0)

    @property
    def is_full(self) -> bool:
        return not self.parts

    @property
    def is_empty(self) -> bool:
        return any(p.is_empty for p in self.parts)

    def __str__(self) -> str:
        return "InterP(" + ",".join(str(p) for p in self.parts) + ")"


EMPTY_P = EmptyPairSet()
FULL_P = UpFinP(frozenset({((), ())}))


def up_fin_p(gens: Iterable[tuple]) -> PairSetRep:
    rep = UpFinP(frozenset((tuple(a), tuple(p)) for a, p in gens))
    if rep.is_empty:
        return EMPTY_P
    if rep.is_full:
        return FULL_P
    return rep


def union_p(*parts: PairSetRep) -> PairSetRep:
    rep = UnionP(tuple(parts))
    if rep.is_full:
        return FULL_P
    if not rep.parts:
        return EMPTY_P
    if len(rep.parts) == 1:
        return rep.parts[0]
    return rep


def inter_p(*parts: PairSetRep) -> PairSetRep:
    rep = InterP(tuple(parts))
    if rep.is_empty:
        return EMPTY_P
    if not rep.parts:
        return FULL_P
    if len(rep.parts) == 1:
        return rep.parts[0]
    return rep


def pair_classes(sigma: BinStr, depth: int) -> list[BinStr]:
    """Binary classes of length depth extending sigma, or sigma itself when it is long enough."""
    if len(sigma) >= depth:
        return [sigma]
    return [sigma + tail for tail in binary_strings(depth - len(sigma))]


@lru_cache(maxsize=4096)
def _deep_chain(state: PairSetRep, fresh: int, budget: int) -> Optional[int]:
    """Steps of fresh second-coordinate values until a deep class member is reached."""
    steps = 0
    while not state.deep_root():
        if state.second_depth == 0 or state.is_empty:
            return None
        steps += 1
        if steps > budget:
            raise RankOverflow(f"Pair rank exceeded budget {budget}")
        state = state.residual((), (fresh,))
    return steps


def class_chain(
    bad: PairSetRep, c: BinStr, tau: Str, budget: int = DEFAULT_PAIR_BUDGET
) -> Optional[int]:
    """Deep rank of the class c at tau: how many fresh entries until membership."""
    return _deep_chain(bad.residual(c, tau), bad.bound + 1, budget)


def pair_rank(bad: PairSetRep, pair: PairStr, budget: int = DEFAULT_PAIR_BUDGET) -> RankResult:
    """
    Rank of a pair for bad.

    Raises:
        RankOverflow: If a chain of fresh entries exceeds budget
    """
    sigma, tau = tuple(pair[0]), tuple(pair[1])
    if bad.member(sigma, tau):
        return RankResult.big(0)
    fresh = bad.bound + 1
    best: Optional[int] = None
    for c in pair_classes(sigma, bad.first_depth):
        chain = class_chain(bad, c, tau + (fresh,), budget)
        if chain is not None and (best is None or chain < best):
            best = chain
    result = RankResult.small() if best is None else RankResult.big(best + 1)
    logger.debug(f"pair rank of {format_pair((sigma, tau))} for {bad}: {result}")
    return result


def pair_is_big(bad: PairSetRep, pair: PairStr, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    return pair_rank(bad, pair, budget).is_big


def brute_pair_rank(bad: PairSetRep, pair: PairStr, max_first: int) -> RankResult:
    """
    Rank by literal evaluation of the quantifier alternation on binary strings of
    length <= max_first, with the infinitely-many quantifier read at one fresh value.
    Second coordinates grow at most second_depth + 1 entries past the starting pair.
    """
    fresh = bad.bound + 1
    max_second = len(pair[1]) + bad.second_depth + 1

    def ext(sigma: BinStr) -> list[BinStr]:
        return [sigma + t for k in range(max_first - len(sigma) + 1) for t in binary_strings(k)]

    memo: dict = {}

    def rank(sigma: BinStr, tau: Str) -> Optional[int]:
        key = (sigma, tau)
        if key in memo:
            return memo[key]
        if bad.member(sigma, tau):
            memo[key] = 0
            return 0
        result = None
        if len(tau) < max_second:
            child = tau + (fresh,)
            for s1 in ext(sigma):
                worst: Optional[int] = -1
                for s2 in ext(s1):
                    ranks = [r for r in (rank(s3, child) for s3 in ext(s2)) if r is not None]
                    if not ranks:
                        worst = None
                        break
                    worst = max(worst, min(ranks))
                if worst is not None and (result is None or worst + 1 < result):
                    result = worst + 1
        memo[key] = result
        return result

    return RankResult(rank(tuple(pair[0]), tuple(pair[1])))


def pair_subset(a: PairSetRep, b: PairSetRep) -> bool:
    """Check a ⊆ b on the representative universe of both representations."""
    first = max(a.first_depth, b.first_depth) + 1
    second = max(a.second_depth, b.second_depth) + 1
    width = max(a.bound, b.bound) + 2
    for sigma in binary_strings_upto(first):
        for tau in strings_upto(second, width):
            if a.member(sigma, tau) and not b.member(sigma, tau):
                return False
    return True


@dataclass(frozen=True)
class ClosurePairSet(PairSetRep):
    """
    The big pairs for bad, as a pair set.

    Not upward closed in the second coordinate: a pair can be big through
    infinitely many big children while some of its children are small.
    """

    bad: PairSetRep
    budget: int = DEFAULT_PAIR_BUDGET

    def member(self, sigma: BinStr, tau: Str) -> bool:
        return pair_rank(self.bad, (sigma, tau), self.budget).is_big

    def residual(self, sigma: BinStr, tau: Str) -> PairSetRep:
        return ClosurePairSet(self.bad.residual(sigma, tau), self.budget)

    def deep_root(self) -> bool:
        return all(self.member(c, ()) for c in pair_classes((), self.first_depth))

    @property
    def first_depth(self) -> int:
        return self.bad.first_depth

    @property
    def second_depth(self) -> int:
        return self.bad.second_depth

    @property
    def bound(self) -> int:
        return self.bad.bound

    @property
    def is_empty(self) -> bool:
        return self.bad.is_empty

    def __str__(self) -> str:
        return f"ClosureP({self.bad})"


def materialize_pair_closure(
    bad: PairSetRep, budget: int = DEFAULT_PAIR_BUDGET
) -> ClosurePairSet:
    """cl_p(B): exactly the pairs that are big for bad."""
    return ClosurePairSet(bad, budget)


@dataclass(frozen=True)
class PairNode:
    """
    A family of pairs in a witness.

    Tier 0 stands for exactly ``first``; tier k >= 1 stands for every extension
    of ``first`` of length >= |first| + k. Second-coordinate positions listed in
    ``generic`` range over every value >= the stored entry.
    """

    first: BinStr
    second: Str
    tier: int = 0
    generic: frozenset = field(default_factory=frozenset)

    @property
    def reach(self) -> int:
        return len(self.first) + self.tier

    def key(self) -> tuple:
        return (self.first, self.second, self.tier, tuple(sorted(self.generic)))

    def seconds(self, top: int) -> Iterator[Str]:
        """Second coordinates of the family with generic values sampled up to top."""
        choices = [
            range(v, max(v, top) + 1) if i in self.generic else (v,)
            for i, v in enumerate(self.second)
        ]
        for values in itertools.product(*choices):
            yield tuple(values)

    def firsts(self) -> Iterator[BinStr]:
        """Minimal first coordinates of the family."""
        for tail in binary_strings(self.tier):
            yield self.first + tail

    def __str__(self) -> str:
        marks = ",".join(
            f">={v}" if i in self.generic else str(v) for i, v in enumerate(self.second)
        )
        return f"Fam({format_str(self.first)},[{marks}],{self.tier})"


def as_node(stem: TUnion[PairStr, PairNode]) -> PairNode:
    if isinstance(stem, PairNode):
        return stem
    return PairNode(tuple(stem[0]), tuple(stem[1]))


@dataclass(frozen=True)
class PairWitness:
    """A finite family graph: each node maps to the nodes that justify it."""

    stem: PairNode
    justifications: Mapping = field(default_factory=dict)

    @property
    def nodes(self) -> set:
        found = {self.stem} | set(self.justifications)
        for parents in self.justifications.values():
            found |= set(parents)
        return found

    def children(self) -> dict:
        result: dict = defaultdict(set)
        for child, parents in self.justifications.items():
            for parent in parents:
                result[parent].add(child)
        return result

    @property
    def leaves(self) -> set:
        kids = self.children()
        return {n for n in self.nodes if not kids.get(n)}

    def edges(self) -> list[tuple]:
        return sorted(
            ((p, c) for c, ps in self.justifications.items() for p in ps),
            key=lambda e: (e[0].key(), e[1].key()),
        )


def _family_in(bad: PairSetRep, node: PairNode, top: int) -> bool:
    return all(bad.member(f, s) for f in node.firsts() for s in node.seconds(top))


def _acyclic(nodes: set, children: Mapping) -> bool:
    in_degree = {n: 0 for n in nodes}
    for parent in nodes:
        for child in children.get(parent, ()):
            in_degree[child] = in_degree.get(child, 0) + 1
    queue = deque(n for n, d in in_degree.items() if d == 0)
    seen = 0
    while queue:
        node = queue.popleft()
        seen += 1
        for child in children.get(node, ()):
            in_degree[child] -= 1
            if in_degree[child] == 0:
                queue.append(child)
    return seen == len(in_degree)


def verify_pair_witness(bad: PairSetRep, witness: PairWitness) -> bool:
    """
    Check the structural conditions of a pair witness and that its leaves lie in bad.
    """
    stem = witness.stem
    if witness.justifications.get(stem):
        return False
    nodes = witness.nodes
    kids = witness.children()
    for node in nodes:
        if not (is_prefix(stem.first, node.first) and is_prefix(stem.second, node.second)):
            return False
    for child, parents in witness.justifications.items():
        for parent in parents:
            if not is_prefix(parent.first, child.first):
                return False
            if parent.reach >= child.reach:
                return False
            if child.second[:-1] != parent.second or len(child.second) != len(parent.second) + 1:
                return False
            last = len(child.second) - 1
            if {i for i in child.generic if i < last} != set(parent.generic):
                return False
    for parent, children in kids.items():
        if not children:
            continue
        if not all(c.tier >= 1 and len(c.second) - 1 in c.generic for c in children):
            return False
        if parent.tier >= 1:
            span = max([parent.reach] + [len(c.first) for c in children])
            for tail in binary_strings(span - len(parent.first)):
                y = parent.first + tail
                if not any(is_prefix(c.first, y) for c in children):
                    return False
    reached = {stem}
    queue = deque([stem])
    while queue:
        node = queue.popleft()
        for child in kids.get(node, ()):
            if child not in reached:
                reached.add(child)
                queue.append(child)
    if reached != nodes:
        return False
    if not _acyclic(nodes, kids):
        return False
    top = bad.bound + 1
    return all(_family_in(bad, leaf, top) for leaf in witness.leaves)


def extract_pair_witness(
    bad: PairSetRep,
    stem: TUnion[PairStr, PairNode],
    budget: int = DEFAULT_PAIR_BUDGET,
    max_tier: int = 24,
) -> PairWitness:
    """
    Build a chain witness through the best first-coordinate class.

    The chain appends fresh generic entries to the second coordinate, one tier at a
    time, until the family lies in bad.

    Raises:
        NotBig: If the stem is small for bad
        RepresentationError: If a family stem is shorter than the first depth of bad
        CertificateFailure: If no tier up to max_tier puts the leaf family inside bad
    """
    node = as_node(stem)
    top = bad.bound + 1
    if _family_in(bad, node, top):
        return PairWitness(node, {})
    if node.tier >= 1 and len(node.first) < bad.first_depth:
        raise RepresentationError(f"Family stem {node} is shorter than depth {bad.first_depth}")
    best: Optional[tuple[int, BinStr]] = None
    for c in pair_classes(node.first, bad.first_depth):
        chain = class_chain(bad, c, node.second + (top,), budget)
        if chain is not None and (best is None or (chain, c) < best):
            best = (chain, c)
    if best is None:
        raise NotBig(f"{node} is not big for {bad}")
    length, c = best[0] + 1, best[1]
    logger.debug(f"pair witness for {node}: class {format_str(c)}, chain {length}")
    start = max(1, node.reach - len(c) + 1)
    for first_tier in range(start, start + max_tier + 1):
        chain_nodes = []
        generic = set(node.generic)
        for i in range(length):
            generic = generic | {len(node.second) + i}
            chain_nodes.append(
                PairNode(c, node.second + (top,) * (i + 1), first_tier + i, frozenset(generic))
            )
        if _family_in(bad, chain_nodes[-1], top):
            justifications = {chain_nodes[0]: frozenset({node})}
            for parent, child in zip(chain_nodes, chain_nodes[1:]):
                justifications[child] = frozenset({parent})
            return PairWitness(node, justifications)
    raise CertificateFailure(f"No tier up to {max_tier} closes the witness for {node}")


def concat_pair_witnesses(outer: PairWitness, per_leaf: Mapping) -> PairWitness:
    """
    Graft inner witnesses onto the leaves of an outer witness.

    Raises:
        StemMismatch: If an inner witness is keyed by a node that is not an outer
            leaf, or its stem differs from that leaf
    """
    leaves = outer.leaves
    merged: dict = {k: set(v) for k, v in outer.justifications.items()}
    for leaf, inner in per_leaf.items():
        if leaf not in leaves:
            raise StemMismatch(f"{leaf} is not a leaf of the outer witness")
        if inner.stem != leaf:
            raise StemMismatch(f"Inner stem {inner.stem} differs from leaf {leaf}")
        for child, parents in inner.justifications.items():
            merged.setdefault(child, set()).update(parents)
    return PairWitness(outer.stem, {k: frozenset(v) for k, v in merged.items()})
