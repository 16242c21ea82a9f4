"""
Randomized law suite for the closure operators, conditions and measures.

Every law draws its cases from ``random.Random(f"{seed}:{law}")``, so a report
depends only on the seed, the case count and the depth.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from bushyforce.bigness import (
    HechlerAvoid,
    brute_force_rank,
    big_dichotomy,
    extract_witness,
    marcone_bounded,
    materialize_closure,
    omega_rank,
    verify_witness,
)
from bushyforce.conditions import (
    HBCond,
    ICond,
    LBCond,
    centered_merge,
    extends,
    extension_at,
    iter_membership,
    validate_condition,
)
from bushyforce.engine import meet, replay_certificate
from bushyforce.exceptions import BushyForceError, NotAnExtension, RepresentationError
from bushyforce.maps import MonotoneMap
from bushyforce.measure import (
    schnorr_levels,
    tail_bound_holds,
    trace_nowhere_dense,
    trace_to_binary,
    validate_schnorr,
)
from bushyforce.pairs import (
    EMPTY_P,
    MinLenSecond,
    PairSetRep,
    StretchGE,
    brute_pair_rank,
    extract_pair_witness,
    inter_p,
    pair_rank,
    union_p,
    up_fin_p,
    verify_pair_witness,
)
from bushyforce.sets import EMPTY, AtLeast, CoordGE, SetRep, min_len, union, up_fin
from bushyforce.strings import Str, binary_strings_upto, format_pair, format_str
from bushyforce.tasks import BoundedFunctional, Dominate, ExtendStem, TraceTask
from bushyforce.trees import FULL_TREE, Threshold, explore, t_plus_complement

logger = logging.getLogger(__name__)

MUTATIONS = ("union",)

LawCase = Callable[[random.Random, int, Optional[str]], Optional[str]]


# generators


def random_pattern(rng: random.Random, depth: int) -> tuple:
    length = rng.randint(0, depth)
    return tuple(
        AtLeast(rng.randint(1, 3)) if rng.random() < 0.3 else rng.randint(0, 3)
        for _ in range(length)
    )


def random_set(rng: random.Random, depth: int) -> SetRep:
    """A small SetRep of representation depth at most depth."""
    kind = rng.randrange(5)
    if kind == 0:
        return min_len(rng.randint(1, depth))
    if kind == 1:
        return CoordGE(rng.randrange(depth), rng.randint(1, 3))
    if kind == 2:
        return union(random_set(rng, depth), random_set(rng, depth))
    if kind == 3 and rng.random() < 0.2:
        return EMPTY
    return up_fin(random_pattern(rng, depth) for _ in range(rng.randint(1, 3)))


def random_threshold(rng: random.Random) -> Threshold:
    stem = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 1)))
    theta = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 2)))
    return Threshold(stem, theta)


def random_node(rng: random.Random, tree: Threshold, extra: int = 2) -> Str:
    """A node of a Threshold tree at or above its stem."""
    s = tree.stem
    for _ in range(rng.randint(0, extra)):
        i = len(s)
        floor = tree.theta[i] if i < len(tree.theta) else 0
        s = s + (floor + rng.randint(0, 3),)
    return s


def random_pair_set(rng: random.Random) -> PairSetRep:
    kind = rng.randrange(4)
    if kind == 0:
        return MinLenSecond(rng.randint(1, 2))
    if kind == 1:
        return union_p(random_pair_set(rng), random_pair_set(rng))
    gens = []
    for _ in range(rng.randint(1, 2)):
        first = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 1)))
        gens.append((first, random_pattern(rng, 2)))
    return up_fin_p(gens)


def random_pair(rng: random.Random) -> tuple:
    sigma = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 2)))
    tau = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 1)))
    return sigma, tau


def random_finite_tree(rng: random.Random, depth: int) -> frozenset:
    nodes = {()}
    frontier = [()]
    for _ in range(depth):
        grown = []
        for s in frontier:
            for n in rng.sample(range(4), rng.randint(0, 2)):
                grown.append(s + (n,))
        nodes.update(grown)
        frontier = grown
    return frozenset(nodes)


def random_hb(rng: random.Random) -> Optional[HBCond]:
    stem = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 2)))
    f = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 3)))
    bad = random_set(rng, 2) if rng.random() < 0.5 else EMPTY
    p = HBCond(stem, f, bad)
    return p if validate_condition(p) else None


def random_map(rng: random.Random) -> MonotoneMap:
    """A MonotoneMap with a small table over keys of length at most one."""
    table = []
    for key in rng.sample([(0,), (1,)], rng.randint(0, 2)):
        table.append((key, tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 1)))))
    return MonotoneMap(tuple(table), rng.randint(1, 2), rng.randint(0, 2))


def random_icond(rng: random.Random) -> Optional[ICond]:
    bad = random_pair_set(rng) if rng.random() < 0.5 else EMPTY_P
    f = random_map(rng)
    mindom = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 1)))
    p = ICond(f(mindom), f, mindom, bad)
    return p if validate_condition(p) else None


# laws


def _extensive(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree, bad = random_threshold(rng), random_set(rng, depth)
    s = random_node(rng, tree, depth)
    if bad.member(s) and not omega_rank(tree, bad, s).is_big:
        return f"{format_str(s)} in {bad} but small in {tree}"
    return None


def _monotone(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree, bad, extra = random_threshold(rng), random_set(rng, depth), random_set(rng, depth)
    s = random_node(rng, tree)
    if omega_rank(tree, bad, s).is_big and not omega_rank(tree, union(bad, extra), s).is_big:
        return f"{format_str(s)} big for {bad} but small for {union(bad, extra)} in {tree}"
    return None


def _empty(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree = random_threshold(rng)
    s = random_node(rng, tree)
    if omega_rank(tree, EMPTY, s).is_big:
        return f"{format_str(s)} big for Empty in {tree}"
    return None


def _union_rule(left: bool, right: bool, mutate: Optional[str]) -> bool:
    if mutate == "union":
        return left and right
    return left or right


def _union(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree, a, b = random_threshold(rng), random_set(rng, depth), random_set(rng, depth)
    s = random_node(rng, tree)
    ra, rb = omega_rank(tree, a, s), omega_rank(tree, b, s)
    ru = omega_rank(tree, union(a, b), s)
    if ru.is_big != _union_rule(ra.is_big, rb.is_big, mutate):
        return f"{format_str(s)} in {tree}: {a} {ra}, {b} {rb}, union {ru}"
    sides = [r.rank for r in (ra, rb) if r.is_big]
    if ru.is_big and sides and ru.rank != min(sides):
        return f"{format_str(s)} in {tree}: union rank {ru.rank}, side ranks {sides}"
    return None


def _idempotent(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree, bad = random_threshold(rng), random_set(rng, depth)
    closure = materialize_closure(tree, bad)
    s = random_node(rng, tree)
    if omega_rank(tree, closure, s).is_big != omega_rank(tree, bad, s).is_big:
        return f"{format_str(s)} in {tree}: {bad} and its closure {closure} disagree"
    return None


def _tree_monotone(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    wide, bad = random_threshold(rng), random_set(rng, depth)
    length = max(len(wide.theta), len(wide.stem) + 2)
    theta = tuple(
        (wide.theta[i] if i < len(wide.theta) else 0) + rng.randint(0, 2) for i in range(length)
    )
    narrow = Threshold(wide.stem, theta)
    s = random_node(rng, narrow)
    if omega_rank(narrow, bad, s).is_big and not omega_rank(wide, bad, s).is_big:
        return f"{format_str(s)} big in {narrow} but small in {wide} for {bad}"
    return None


def _oracle(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree, bad = random_threshold(rng), random_set(rng, depth)
    s = random_node(rng, tree)
    fast = omega_rank(tree, bad, s)
    bound = max(tree.bound, bad.bound)
    slow = brute_force_rank(tree.member, bad.member, s, bound, len(s) + bad.depth + tree.depth + 2)
    if fast != slow:
        return f"{format_str(s)} in {tree} for {bad}: {fast} vs brute force {slow}"
    return None


def _witness(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree, bad = random_threshold(rng), random_set(rng, depth)
    s = random_node(rng, tree)
    if not omega_rank(tree, bad, s).is_big:
        return None
    witness = extract_witness(tree, bad, s)
    if not verify_witness(tree, bad, witness):
        return f"{witness} rejected for {bad} in {tree}"
    return None


def _dichotomy(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    tree, bad = random_threshold(rng), random_set(rng, depth)
    s = random_node(rng, tree)
    arm = big_dichotomy(tree, bad, s)
    horizon = len(s) + bad.depth + 1
    if isinstance(arm, HechlerAvoid):
        nodes = [x for x in explore(arm.tree, horizon) if len(x) == horizon]
        if any(bad.member(x) for x in nodes):
            return f"avoiding tree {arm.tree} meets {bad}"
        return None
    horizon = max(horizon, arm.tree.depth + 1)
    for x in explore(arm.tree, horizon):
        if (len(x) == horizon or arm.tree.is_leaf(x)) and not bad.member(x):
            return f"Laver tree {arm.tree} misses {bad} at {format_str(x)}"
    return None


def _marcone(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    nodes = random_finite_tree(rng, min(depth, 4))
    if not omega_rank(FULL_TREE, t_plus_complement(nodes), ()).is_big:
        return f"finite tree {sorted(nodes)} gives a small complement"
    tree = random_threshold(rng)
    if marcone_bounded(tree, depth).is_big:
        return f"{tree} has a branch but its complement is big"
    return None


def _pair_union(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    a, b, pair = random_pair_set(rng), random_pair_set(rng), random_pair(rng)
    ra, rb, ru = pair_rank(a, pair), pair_rank(b, pair), pair_rank(union_p(a, b), pair)
    if ru.is_big != _union_rule(ra.is_big, rb.is_big, mutate):
        return f"{format_pair(pair)}: {a} {ra}, {b} {rb}, union {ru}"
    return None


def _pair_oracle(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    bad, pair = random_pair_set(rng), random_pair(rng)
    fast = pair_rank(bad, pair)
    slow = brute_pair_rank(bad, pair, max(len(pair[0]), bad.first_depth) + 2)
    if fast != slow:
        return f"{format_pair(pair)} for {bad}: {fast} vs brute force {slow}"
    return None


def _pair_witness(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    bad, pair = random_pair_set(rng), random_pair(rng)
    if not pair_rank(bad, pair).is_big:
        return None
    try:
        witness = extract_pair_witness(bad, pair)
    except RepresentationError:
        return None
    if not verify_pair_witness(bad, witness):
        return f"pair witness for {format_pair(pair)} rejected for {bad}"
    return None


def _pair_absorption(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    bad, pair = random_pair_set(rng), random_pair(rng)
    if len(pair[0]) < len(pair[1]):
        return None
    inside = inter_p(bad, StretchGE(1, 0, 0))
    if pair_rank(bad, pair).is_big != pair_rank(inside, pair).is_big:
        return f"{format_pair(pair)}: {bad} and {inside} disagree"
    return None


def _preorder(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    p = random_hb(rng)
    if p is None:
        return None
    h = tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 3)))
    q, _ = meet(Dominate(h), p)
    r, _ = meet(ExtendStem(len(q.stem) + 1), q)
    if not (extends(p, p) and extends(q, p) and extends(r, q) and extends(r, p)):
        return f"order fails along {p} >= {q} >= {r}"
    return None


def _centered(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    p, q = random_hb(rng), random_hb(rng)
    if p is None or q is None:
        return None
    q = HBCond(p.stem, q.f, q.bad)
    if not validate_condition(q):
        return None
    merged = centered_merge(p, q)
    if not (extends(merged, p) and extends(merged, q)):
        return f"merge {merged} of {p} and {q} does not extend both"
    return None


def _possible_extensions(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    p = random_icond(rng)
    if p is None:
        return None
    for tail in binary_strings_upto(2):
        sigma = p.mindom + tail
        room = len(sigma) - len(p.stm)
        tau = p.stm + tuple(rng.randint(0, 3) for _ in range(rng.randint(0, room)))
        in_e = iter_membership(p, (sigma, tau)).in_e
        try:
            q = extension_at(p, (sigma, tau))
            ok = validate_condition(q) and extends(q, p)
        except NotAnExtension:
            ok = False
        if in_e != ok:
            return f"{format_pair((sigma, tau))} above {p}: in E {in_e}, extension {ok}"
    return None


def _tail_bound(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    horizon = depth + 2
    h = {m: tuple(rng.randint(0, 1) for _ in range(m)) for m in range(1, horizon + 1)}
    if not tail_bound_holds(h, depth):
        return f"interleaver {h} breaks the tail bound"
    if not validate_schnorr(schnorr_levels(h, depth), Fraction(2, 2**depth)):
        return f"interleaver {h} gives an invalid approximation"
    return None


def _trace(rng: random.Random, depth: int, mutate: Optional[str]) -> Optional[str]:
    functional = BoundedFunctional.parity(rng.randint(1, 2), rng.randint(2, 3))
    task = TraceTask(functional, rng.randint(1, 2))
    p = LBCond.top()
    q, cert = meet(task, p)
    if not replay_certificate(cert, p, q):
        return f"{task} certificate does not replay"
    if not trace_nowhere_dense(trace_to_binary(cert.detail.trace)).within_bound():
        return f"{cert.detail.trace} breaks the level bound"
    return None


LAWS: dict[str, LawCase] = {
    "extensive": _extensive,
    "monotone": _monotone,
    "empty": _empty,
    "union": _union,
    "idempotent": _idempotent,
    "tree-monotone": _tree_monotone,
    "oracle": _oracle,
    "witness": _witness,
    "dichotomy": _dichotomy,
    "marcone": _marcone,
    "pair-union": _pair_union,
    "pair-oracle": _pair_oracle,
    "pair-witness": _pair_witness,
    "pair-absorption": _pair_absorption,
    "preorder": _preorder,
    "centered": _centered,
    "possible-extensions": _possible_extensions,
    "tail-bound": _tail_bound,
    "trace": _trace,
}

# Laws that run the engine get a tenth of the cases.
SLOW_LAWS = frozenset({"trace", "possible-extensions"})


@dataclass(frozen=True)
class LawOutcome:
    name: str
    cases: int
    passed: int
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.passed == self.cases


@dataclass(frozen=True)
class LawReport:
    seed: int
    cases: int
    depth: int
    outcomes: tuple = ()
    mutate: Optional[str] = None

    @property
    def all_passed(self) -> bool:
        return all(o.ok for o in self.outcomes)

    def render(self) -> str:
        lines = [f"law suite: seed {self.seed}, {self.cases} cases, depth {self.depth}"]
        if self.mutate:
            lines.append(f"mutation: {self.mutate}")
        for outcome in self.outcomes:
            mark = "✓" if outcome.ok else "✗"
            lines.append(f"{mark} {outcome.name}: {outcome.passed}/{outcome.cases}")
            if outcome.counterexample:
                lines.append(f"    counterexample: {outcome.counterexample}")
        failed = sum(1 for o in self.outcomes if not o.ok)
        lines.append("all laws passed" if not failed else f"{failed} laws failed")
        return "\n".join(lines) + "\n"


def run_law(
    name: str, seed: int = 1, cases: int = 100, depth: int = 3, mutate: Optional[str] = None
) -> LawOutcome:
    """
    Run one law; the reported counterexample is the shortest failing case.
    """
    law = LAWS[name]
    rng = random.Random(f"{seed}:{name}")
    count = max(1, cases // 10) if name in SLOW_LAWS else cases
    passed = 0
    worst: Optional[tuple[int, int, str]] = None
    for i in range(count):
        try:
            failure = law(rng, depth, mutate)
        except BushyForceError as e:
            failure = f"{type(e).__name__}: {e}"
        if failure is None:
            passed += 1
            continue
        text = f"case {i}: {failure}"
        if worst is None or (len(failure), i) < worst[:2]:
            worst = (len(failure), i, text)
    logger.debug(f"law {name}: {passed}/{count}")
    return LawOutcome(name, count, passed, worst[2] if worst else None)


def run_law_suite(
    seed: int = 1,
    cases: int = 100,
    depth: int = 3,
    mutate: Optional[str] = None,
    laws: Optional[list[str]] = None,
) -> LawReport:
    """
    Run the laws in a fixed order.

    Raises:
        ValueError: If a law name or mutation is unknown
    """
    if mutate is not None and mutate not in MUTATIONS:
        raise ValueError(f"Unknown mutation {mutate!r}")
    names = laws if laws is not None else list(LAWS)
    unknown = [n for n in names if n not in LAWS]
    if unknown:
        raise ValueError(f"Unknown laws: {', '.join(unknown)}")
    outcomes = tuple(run_law(n, seed, cases, depth, mutate) for n in names)
    return LawReport(seed, cases, depth, outcomes, mutate)
