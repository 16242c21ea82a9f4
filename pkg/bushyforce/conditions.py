"""
Conditions of the three bad-set forcings and their order.

LBCond is a Laver-style condition (an ω-bushy tree with a bad set), HBCond a
Hechler-style condition (a stem, a finite lower bound and a bad set), and
ICond a condition on pairs (a monotone map from binary strings, its value at
the minimal domain string, and a bad set of pairs).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union as TUnion

from bushyforce.bigness import omega_rank
from bushyforce.exceptions import NotAnExtension, NotCentered, RepresentationError
from bushyforce.maps import BinaryMap, MaxMap, MonotoneMap, SplicedMap, comparison_depth
from bushyforce.pairs import (
    DEFAULT_PAIR_BUDGET,
    EMPTY_P,
    PairSetRep,
    pair_rank,
    pair_subset,
    union_p,
    up_fin_p,
)
from bushyforce.sets import EMPTY, SetRep, clamp_pattern, set_subset, union
from bushyforce.strings import (
    BinStr,
    PairStr,
    Str,
    binary_strings,
    binary_strings_upto,
    compatible,
    extensions,
    format_pair,
    format_str,
    is_prefix,
    pointwise_leq,
    pointwise_max,
    value_at,
)
from bushyforce.trees import FULL_TREE, TreeRep, explore, reroot, tree_stem, tree_subset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LBCond:
    """A tree ω-bushy above its stem together with a bad set."""

    tree: TreeRep
    bad: SetRep
    stem: Str = ()

    forcing = "LB"

    @classmethod
    def top(cls, bad: SetRep = EMPTY) -> "LBCond":
        return cls(FULL_TREE, bad, ())

    @classmethod
    def of(cls, tree: TreeRep, bad: SetRep) -> "LBCond":
        return cls(tree, bad, tree_stem(tree))

    def __str__(self) -> str:
        return f"LB({self.tree},{self.bad},{format_str(self.stem)})"


@dataclass(frozen=True)
class HBCond:
    """A stem, a finitely supported lower bound f and a bad set."""

    stem: Str
    f: Str
    bad: SetRep

    forcing = "HB"

    @classmethod
    def top(cls, bad: SetRep = EMPTY) -> "HBCond":
        return cls((), (), bad)

    def __str__(self) -> str:
        return f"HB({format_str(self.stem)},{format_str(self.f)},{self.bad})"


@dataclass(frozen=True)
class ICond:
    """A monotone map with its stem value at mindom and a bad set of pairs."""

    stm: Str
    f: BinaryMap
    mindom: BinStr
    bad: PairSetRep

    forcing = "IT"

    @classmethod
    def top(cls, bad: PairSetRep = EMPTY_P) -> "ICond":
        return cls((), MonotoneMap.pad(1, 0), (), bad)

    @property
    def key(self) -> PairStr:
        return (self.mindom, self.stm)

    def __str__(self) -> str:
        return f"IT({format_str(self.stm)},{self.f},{format_str(self.mindom)},{self.bad})"


Condition = TUnion[LBCond, HBCond, ICond]


@dataclass(frozen=True)
class IterMembership:
    in_c: bool
    in_d: bool
    in_e: bool


def projection(c: Condition) -> TUnion[Str, PairStr]:
    """The finite part every generic extends: the stem, or (mindom, stm) on pairs."""
    if isinstance(c, ICond):
        return c.key
    return c.stem


def validate_condition(c: Condition, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """
    Check the invariants of a condition, using the rank engines for smallness.

    Raises:
        RankOverflow: Propagated from the rank engines
    """
    if isinstance(c, LBCond):
        return _validate_lb(c)
    if isinstance(c, HBCond):
        return not omega_rank(FULL_TREE, c.bad, c.stem).is_big
    if isinstance(c, ICond):
        if not c.f.validate(comparison_depth(c.f)):
            return False
        if c.f(c.mindom) != c.stm:
            return False
        return not pair_rank(c.bad, c.key, budget).is_big
    return False


def _validate_lb(c: LBCond) -> bool:
    if tree_stem(c.tree) != c.stem:
        return False
    if not c.tree.member(c.stem):
        return False
    for s in explore(c.tree, c.tree.depth + 1):
        if not is_prefix(c.stem, s):
            continue
        if c.tree.is_leaf(s):
            if not c.bad.member(s):
                return False
        elif not c.tree.child_spectrum(s).tail:
            return False
    return not omega_rank(c.tree, c.bad, c.stem).is_big


def extends(p: Condition, q: Condition) -> bool:
    """True iff p ≤ q in their common forcing; conditions of different forcings never compare."""
    if isinstance(p, LBCond) and isinstance(q, LBCond):
        return (
            is_prefix(q.stem, p.stem)
            and tree_subset(p.tree, q.tree)
            and set_subset(q.bad, p.bad)
        )
    if isinstance(p, HBCond) and isinstance(q, HBCond):
        if not is_prefix(q.stem, p.stem):
            return False
        if any(p.stem[i] < value_at(q.f, i) for i in range(len(q.stem), len(p.stem))):
            return False
        top = max(len(p.f), len(q.f))
        if any(value_at(p.f, i) < value_at(q.f, i) for i in range(top)):
            return False
        return set_subset(q.bad, p.bad)
    if isinstance(p, ICond) and isinstance(q, ICond):
        if not (is_prefix(q.mindom, p.mindom) and is_prefix(q.stm, p.stm)):
            return False
        if not pair_subset(q.bad, p.bad):
            return False
        for sigma in binary_strings_upto(comparison_depth(p.f, q.f)):
            if not is_prefix(q.mindom, sigma):
                continue
            fp, fq = p.f(sigma), q.f(sigma)
            if len(fp) > len(fq) or not pointwise_leq(fq, fp):
                return False
        return True
    return False


def center_key(c: Condition) -> TUnion[Str, PairStr]:
    """
    The class of a condition in the σ-centered partition.

    Raises:
        NotCentered: For tree conditions, which carry no centered partition
    """
    if isinstance(c, HBCond):
        return c.stem
    if isinstance(c, ICond):
        return c.key
    raise NotCentered("Tree conditions have no centered partition")


def centered_merge(p: Condition, q: Condition) -> Condition:
    """
    A common extension of two conditions with the same key.

    Raises:
        NotCentered: If the forcings or the keys differ
    """
    if type(p) is not type(q) or center_key(p) != center_key(q):
        raise NotCentered(f"Keys differ: {p} and {q}")
    if isinstance(p, HBCond):
        return HBCond(p.stem, pointwise_max(p.f, q.f), union(p.bad, q.bad))
    return ICond(p.stm, MaxMap(p.f, q.f), p.mindom, union_p(p.bad, q.bad))


def in_d(p: ICond, sigma: BinStr, tau: Str) -> bool:
    """Every σ′ ⪰ σ whose value reaches |τ| has a value not below τ."""
    length = max(len(sigma), p.f.horizon)
    for tail in binary_strings(length - len(sigma)):
        value = p.f.first_reaching(sigma + tail, len(tau))
        if value is not None and pointwise_leq(value[: len(tau)], tau):
            return False
    return True


def iter_membership(
    p: ICond, pair: PairStr, budget: int = DEFAULT_PAIR_BUDGET
) -> IterMembership:
    """Membership of a pair in C_p, D_p and the set E_p of possible extensions."""
    sigma, tau = tuple(pair[0]), tuple(pair[1])
    c = len(p.f(sigma)) >= len(tau)
    d = in_d(p, sigma, tau)
    e = c and not d and not pair_rank(p.bad, (sigma, tau), budget).is_big
    return IterMembership(c, d, e)


def extension_at(p: Condition, target, budget: int = DEFAULT_PAIR_BUDGET) -> Condition:
    """
    The extension of p whose stem (or key) is target.

    Raises:
        NotAnExtension: If target is not a possible extension of p
    """
    if isinstance(p, ICond):
        sigma, tau = tuple(target[0]), tuple(target[1])
        if not (is_prefix(p.mindom, sigma) and is_prefix(p.stm, tau)):
            raise NotAnExtension(f"{format_pair((sigma, tau))} is not above {format_pair(p.key)}")
        if not iter_membership(p, (sigma, tau), budget).in_e:
            raise NotAnExtension(f"{format_pair((sigma, tau))} is not a possible extension")
        return ICond(tau, SplicedMap(p.f, sigma, tau), sigma, p.bad)
    target = tuple(target)
    if isinstance(p, HBCond):
        if not is_prefix(p.stem, target):
            raise NotAnExtension(f"{format_str(target)} does not extend {format_str(p.stem)}")
        if any(target[i] < value_at(p.f, i) for i in range(len(p.stem), len(target))):
            raise NotAnExtension(f"{format_str(target)} falls below {format_str(p.f)}")
        if omega_rank(FULL_TREE, p.bad, target).is_big:
            raise NotAnExtension(f"{format_str(target)} is big for {p.bad}")
        return HBCond(target, p.f, p.bad)
    if not (p.tree.member(target) and is_prefix(p.stem, target)):
        raise NotAnExtension(f"{format_str(target)} is not a node above {format_str(p.stem)}")
    if omega_rank(p.tree, p.bad, target).is_big:
        raise NotAnExtension(f"{format_str(target)} is big for {p.bad}")
    try:
        tree = reroot(p.tree, target)
    except RepresentationError as e:
        raise NotAnExtension(str(e)) from e
    return LBCond(tree, p.bad, tree_stem(tree))


def satisfies_prefix(c: Condition, x) -> bool:
    """
    True iff a finite prefix of the generic is consistent with the condition.

    On pairs x is a (binary string, string) pair.
    """
    if isinstance(c, ICond):
        sigma, tau = tuple(x[0]), tuple(x[1])
        if not (compatible(sigma, c.mindom) and compatible(tau, c.stm)):
            return False
        return not c.bad.member(sigma, tau) and not in_d(c, sigma, tau)
    x = tuple(x)
    if isinstance(c, HBCond):
        if not compatible(x, c.stem):
            return False
        if any(x[i] < value_at(c.f, i) for i in range(len(c.stem), len(x))):
            return False
        return not c.bad.member(x)
    return compatible(x, c.stem) and c.tree.member(x) and not c.bad.member(x)


def addreals_set(p: ICond, m: int) -> PairSetRep:
    """
    The pairs of E_p above the key with |σ| >= |τ| >= m, as the upward closure of
    their minimal elements.

    Values above every bound of the map and the bad set behave alike, so the top
    value is clamped to an AtLeast entry.
    """
    length = max(m, len(p.stm))
    first = max(len(p.mindom), length, p.f.horizon) + p.f.period * (length + 1) + 1
    top = p.bad.bound + 1
    for sigma in binary_strings_upto(first):
        top = max(top, max(p.f(sigma), default=0) + 1)
    gens: list[tuple] = []
    for tau in extensions(p.stm, length - len(p.stm), top + 1):
        for sigma in binary_strings_upto(first):
            if len(sigma) < length or not is_prefix(p.mindom, sigma):
                continue
            if any(is_prefix(a, sigma) and t == tau for a, t in gens):
                continue
            if iter_membership(p, (sigma, tau)).in_e:
                gens.append((sigma, tau))
    logger.debug(f"{len(gens)} minimal possible extensions of length {length}")
    return up_fin_p((a, clamp_pattern(t, top)) for a, t in gens)
