"""
Fusion and the dense-set meeting loop.

``meet`` takes one task and one condition and returns an extension inside the
task's dense set together with a certificate; ``run_generic`` chains tasks and
``verify_run`` replays the certificates against the chain without rebuilding
anything.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator, Optional, Sequence

from bushyforce.bigness import extract_witness, laver_tree, omega_rank
from bushyforce.conditions import (
    Condition,
    HBCond,
    ICond,
    LBCond,
    extends,
    extension_at,
    iter_membership,
    projection,
    satisfies_prefix,
    validate_condition,
)
from bushyforce.exceptions import (
    BushyForceError,
    CertificateFailure,
    DivergenceForceable,
    NotAFusionSequence,
    RankOverflow,
    TaskInapplicable,
)
from bushyforce.maps import MaxMap, MonotoneMap, SlowedMap, comparison_depth, map_dominates
from bushyforce.measure import (
    SchnorrApprox,
    round_robin,
    schnorr_levels,
    validate_schnorr,
)
from bushyforce.pairs import DEFAULT_PAIR_BUDGET, PairSetRep, pair_rank, pair_subset, union_p
from bushyforce.sets import SetRep, set_subset, union
from bushyforce.strings import (
    PairStr,
    Str,
    binary_strings_upto,
    extensions,
    format_pair,
    format_str,
    is_prefix,
    value_at,
)
from bushyforce.tasks import (
    BoundedFunctional,
    CohenDense,
    DensityTask,
    Dominate,
    DominateCohen,
    ExtendStem,
    MeetOpen,
    MeetPi02,
    PairFunctional,
    SchnorrCapture,
    Trace,
    TraceTask,
)
from bushyforce.trees import (
    FULL_TREE,
    TreeRep,
    build_graft,
    carve,
    dominate_tree,
    explore,
    graft_at,
    p_set,
    tree_stem,
    tree_subset,
)

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 6


@dataclass(frozen=True)
class Pi02Evidence:
    """Skeleton nodes handled per round, with "enter" or "avoid" at each."""

    steps: tuple = ()


@dataclass(frozen=True)
class TraceEvidence:
    """The trace and the value chosen (or "bad" / "diverge") at each skeleton node."""

    trace: Trace
    steps: tuple = ()


@dataclass(frozen=True)
class SchnorrReplay:
    """An extension r of a sampled q whose value extends h(m), with m >= n."""

    q: Condition
    n: int
    r: Condition
    m: int


@dataclass(frozen=True)
class SchnorrEvidence:
    approx: SchnorrApprox
    interleaver: tuple
    replays: tuple = ()

    @property
    def h(self) -> dict:
        return dict(self.interleaver)


@dataclass(frozen=True)
class TaskCertificate:
    """
    Evidence that a task was met.

    ``kind`` is one of stem, dominate, enter, avoid, pi02, trace, schnorr, cohen;
    ``detail`` holds the matching evidence.
    """

    task: DensityTask
    kind: str
    detail: Any = None


@dataclass(frozen=True)
class GenericRun:
    """The condition chain of a run, its certificates and the error that stopped it, if any."""

    chain: tuple
    certificates: tuple = ()
    error: Optional[BushyForceError] = None
    failed_at: Optional[int] = None

    @property
    def prefix(self):
        return projection(self.chain[-1])

    @property
    def complete(self) -> bool:
        return self.error is None


def fuse(seq: Sequence[TreeRep]) -> TreeRep:
    """
    The intersection of a fusion sequence.

    Each tree must be included in its predecessor and keep its predecessor's
    skeleton: P_i(T_{i+1}) = P_i(T_i).

    Raises:
        NotAFusionSequence: If the sequence is empty or a check fails
    """
    if not seq:
        raise NotAFusionSequence("Empty fusion sequence")
    for i, (prev, nxt) in enumerate(zip(seq, seq[1:])):
        if not tree_subset(nxt, prev):
            raise NotAFusionSequence(f"Tree {i + 1} is not included in tree {i}")
        if p_set(nxt, i) != p_set(prev, i):
            raise NotAFusionSequence(f"Tree {i + 1} does not keep P_{i} of tree {i}")
    logger.debug(f"fused {len(seq)} trees")
    return seq[-1]


def _stem_length(c: Condition) -> int:
    return len(c.stm) if isinstance(c, ICond) else len(c.stem)


def _skeleton_order(nodes) -> list[Str]:
    return sorted(nodes, key=lambda s: (len(s), s))


def frontier(tree: TreeRep, depth: int, width: Optional[int] = None) -> Iterator[Str]:
    """Explored nodes at the given depth together with the leaves above it."""
    for s in explore(tree, depth, width):
        if len(s) == depth or tree.is_leaf(s):
            yield s


# 𝕃ᴮ


def _lb_extend_stem(p: LBCond, m: int) -> tuple[LBCond, tuple]:
    walk = [p.stem]
    while len(p.stem) < m:
        spectrum = p.tree.child_spectrum(p.stem)
        fresh = max(p.tree.bound, p.bad.bound) + 1
        chosen = None
        for n in range(fresh + 1):
            if spectrum.value(n) and not omega_rank(p.tree, p.bad, p.stem + (n,)).is_big:
                chosen = n
                break
        if chosen is None:
            raise TaskInapplicable(f"No small child above {format_str(p.stem)}")
        p = extension_at(p, p.stem + (chosen,))
        walk.append(p.stem)
    return p, tuple(walk)


def _lb_meet_open(p: LBCond, target: SetRep) -> tuple[LBCond, str, Any]:
    if omega_rank(p.tree, target, p.stem).is_big:
        witness = extract_witness(p.tree, target, p.stem)
        tree = laver_tree(p.tree, target, p.stem)
        return LBCond(tree, p.bad, tree_stem(tree)), "enter", witness
    return LBCond(p.tree, union(p.bad, target), p.stem), "avoid", target


def _lb_pi02(p: LBCond, task: MeetPi02) -> tuple[LBCond, Pi02Evidence]:
    tree = p.tree
    trees = [tree]
    steps: list[tuple] = []
    for r in range(task.depth):
        skeleton = p_set(tree, r)
        for j, open_set in enumerate(task.sets):
            target = union(p.bad, open_set)
            pieces = {}
            for tau in _skeleton_order(skeleton):
                piece = carve(tree, tau, skeleton)
                rel = target.residual(tau)
                if not omega_rank(piece, rel, ()).is_big:
                    steps.append((r, j, tau, "avoid"))
                    q = LBCond.of(graft_at(tau, piece), target)
                    logger.debug(f"round {r}: avoiding set {j} above {format_str(tau)}")
                    return q, Pi02Evidence(tuple(steps))
                pieces[tau] = laver_tree(piece, rel, ())
                steps.append((r, j, tau, "enter"))
            tree = build_graft(p.stem, skeleton, pieces)
        trees.append(tree)
    fused = fuse(trees)
    return LBCond.of(fused, p.bad), Pi02Evidence(tuple(steps))


def _lb_trace(p: LBCond, task: TraceTask) -> tuple[LBCond, TraceEvidence]:
    phi = task.functional
    if phi.bound is None:
        raise TaskInapplicable("Tracing needs a bounded functional")
    values: list[set] = [set() for _ in range(task.depth)]
    tree = p.tree
    trees = [tree]
    steps: list[tuple] = []
    for n in range(task.depth):
        skeleton = p_set(tree, n)
        pieces = {}
        for tau in _skeleton_order(skeleton):
            piece = carve(tree, tau, skeleton)
            bad_rel = p.bad.residual(tau)
            if omega_rank(piece, bad_rel, ()).is_big:
                pieces[tau] = laver_tree(piece, bad_rel, ())
                steps.append((n, tau, "bad"))
                continue
            chosen = None
            for j in range(phi.bound_at(n) + 1):
                rel = union(p.bad, phi.position_set(j, n)).residual(tau)
                if omega_rank(piece, rel, ()).is_big:
                    chosen = j
                    pieces[tau] = laver_tree(piece, rel, ())
                    break
            if chosen is None:
                steps.append((n, tau, "diverge"))
                q = LBCond.of(graft_at(tau, piece), union(p.bad, phi.convergence_set(n)))
                logger.debug(f"divergence at position {n} forced above {format_str(tau)}")
                return q, TraceEvidence(Trace(tuple(values)), tuple(steps))
            values[n].add(chosen)
            steps.append((n, tau, chosen))
        tree = build_graft(p.stem, skeleton, pieces)
        trees.append(tree)
    fused = fuse(trees)
    return LBCond.of(fused, p.bad), TraceEvidence(Trace(tuple(values)), tuple(steps))


def _meet_lb(task: DensityTask, p: LBCond) -> tuple[LBCond, TaskCertificate]:
    if isinstance(task, ExtendStem):
        q, walk = _lb_extend_stem(p, task.m)
        return q, TaskCertificate(task, "stem", walk)
    if isinstance(task, Dominate):
        q = LBCond.of(dominate_tree(p.tree, task.h, len(p.stem)), p.bad)
        return q, TaskCertificate(task, "dominate", task.h)
    if isinstance(task, MeetOpen) and isinstance(task.target, SetRep):
        q, kind, detail = _lb_meet_open(p, task.target)
        return q, TaskCertificate(task, kind, detail)
    if isinstance(task, MeetPi02):
        q, evidence = _lb_pi02(p, task)
        return q, TaskCertificate(task, "pi02", evidence)
    if isinstance(task, TraceTask):
        q, evidence = _lb_trace(p, task)
        return q, TaskCertificate(task, "trace", evidence)
    raise TaskInapplicable(f"{task} does not apply to tree conditions")


# ℍᴮ


def _hb_small(p: HBCond, s: Str) -> bool:
    return not omega_rank(FULL_TREE, p.bad, s).is_big


def _hb_extend_stem(p: HBCond, m: int) -> tuple[HBCond, tuple]:
    walk = [p.stem]
    while len(p.stem) < m:
        floor = value_at(p.f, len(p.stem))
        chosen = None
        for n in range(floor, max(floor, p.bad.bound) + 2):
            if _hb_small(p, p.stem + (n,)):
                chosen = n
                break
        if chosen is None:
            raise TaskInapplicable(f"No small child above {format_str(p.stem)}")
        p = extension_at(p, p.stem + (chosen,))
        walk.append(p.stem)
    return p, tuple(walk)


def _hb_enter(p: HBCond, target: SetRep) -> tuple[HBCond, tuple]:
    """
    Walk from the stem through children of strictly smaller rank for target,
    respecting f and staying small for the bad set, until target is reached.

    Raises:
        CertificateFailure: If the walk gets stuck
    """
    s = p.stem
    rank = omega_rank(FULL_TREE, target, s).rank
    walk = [s]
    while not target.member(s):
        floor = value_at(p.f, len(s))
        fresh = max(target.bound, p.bad.bound, floor) + 1
        chosen = None
        for n in range(floor, fresh + 1):
            child = omega_rank(FULL_TREE, target, s + (n,))
            if child.is_big and child.rank < rank and _hb_small(p, s + (n,)):
                chosen = (n, child.rank)
                break
        if chosen is None:
            raise CertificateFailure(f"Walk into {target} stuck at {format_str(s)}")
        s, rank = s + (chosen[0],), chosen[1]
        walk.append(s)
    return HBCond(s, p.f, p.bad), tuple(walk)


def _meet_hb(
    task: DensityTask, p: HBCond, budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[Condition, TaskCertificate]:
    if isinstance(task, ExtendStem):
        q, walk = _hb_extend_stem(p, task.m)
        return q, TaskCertificate(task, "stem", walk)
    if isinstance(task, Dominate):
        top = max(len(p.f), len(task.h))
        f = tuple(max(value_at(p.f, i), value_at(task.h, i)) for i in range(top))
        return HBCond(p.stem, f, p.bad), TaskCertificate(task, "dominate", task.h)
    if isinstance(task, MeetOpen) and isinstance(task.target, SetRep):
        if omega_rank(FULL_TREE, task.target, p.stem).is_big:
            q, walk = _hb_enter(p, task.target)
            return q, TaskCertificate(task, "enter", walk)
        q = HBCond(p.stem, p.f, union(p.bad, task.target))
        return q, TaskCertificate(task, "avoid", task.target)
    if isinstance(task, SchnorrCapture):
        evidence = schnorr_capture(p, task.functional, task.depth, task.samples, budget)
        return p, TaskCertificate(task, "schnorr", evidence)
    raise TaskInapplicable(f"{task} does not apply to Hechler conditions")


# 𝕀


def _search_first(p: ICond, extra: int) -> int:
    return len(p.mindom) + p.f.horizon + p.f.period * (len(p.stm) + extra + 1) + 1


def _find_pair(
    p: ICond,
    accept: Callable[[Str, Str], bool],
    max_second: int,
    top: int,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> Optional[PairStr]:
    """
    The least possible extension (σ, τ) of p accepted by the predicate, with σ by
    length then bits, and τ by length then entries no larger than top.
    """
    for sigma in binary_strings_upto(_search_first(p, max_second)):
        if not is_prefix(p.mindom, sigma):
            continue
        value = p.f(sigma)
        for length in range(len(p.stm), min(len(value), max_second) + 1):
            for tau in extensions(p.stm, length - len(p.stm), top + 1):
                if accept(sigma, tau) and iter_membership(p, (sigma, tau), budget).in_e:
                    return sigma, tau
    return None


def _pair_top(p: ICond, target: PairSetRep) -> int:
    values = [x for sigma in binary_strings_upto(_search_first(p, 0)) for x in p.f(sigma)]
    return max([target.bound, p.bad.bound] + values) + 1


def _i_extend_stem(
    p: ICond, m: int, budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[ICond, tuple]:
    walk = [p.key]
    while len(p.stm) < m:
        found = None
        for sigma in binary_strings_upto(_search_first(p, 1)):
            if not is_prefix(p.mindom, sigma):
                continue
            value = p.f(sigma)
            if len(value) > len(p.stm):
                pair = (sigma, value[: len(p.stm) + 1])
                if iter_membership(p, pair, budget).in_e:
                    found = pair
                    break
        if found is None:
            raise TaskInapplicable(f"No possible extension above {format_pair(p.key)}")
        p = extension_at(p, found, budget)
        walk.append(p.key)
    return p, tuple(walk)


def _i_enter(
    p: ICond, target: PairSetRep, budget: int = DEFAULT_PAIR_BUDGET
) -> Optional[ICond]:
    max_second = max(len(p.stm), target.second_depth)
    pair = _find_pair(p, target.member, max_second, _pair_top(p, target), budget)
    if pair is None:
        return None
    return extension_at(p, pair, budget)


def _i_dominate(p: ICond, phi) -> ICond:
    if not phi.validate():
        raise TaskInapplicable(f"{phi} is not a monotone map")
    return ICond(p.stm, MaxMap(p.f, phi, p.mindom, len(p.stm)), p.mindom, p.bad)


def _meet_i(
    task: DensityTask, p: ICond, budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[Condition, TaskCertificate]:
    if isinstance(task, ExtendStem):
        q, walk = _i_extend_stem(p, task.m, budget)
        return q, TaskCertificate(task, "stem", walk)
    if isinstance(task, Dominate):
        phi = MonotoneMap.constant(task.h)
        return _i_dominate(p, phi), TaskCertificate(task, "dominate", phi)
    if isinstance(task, DominateCohen):
        return _i_dominate(p, task.phi), TaskCertificate(task, "dominate", task.phi)
    if isinstance(task, CohenDense):
        until = p.mindom + tuple(task.w)
        q = ICond(p.stm, SlowedMap(p.f, p.mindom, until, p.stm), until, p.bad)
        return q, TaskCertificate(task, "cohen", tuple(task.w))
    if isinstance(task, MeetOpen) and isinstance(task.target, PairSetRep):
        target = task.target
        if not pair_rank(target, p.key, budget).is_big:
            q = ICond(p.stm, p.f, p.mindom, union_p(p.bad, target))
            return q, TaskCertificate(task, "avoid", target)
        q = _i_enter(p, target, budget)
        if q is None:
            raise TaskInapplicable(f"No possible extension of {format_pair(p.key)} in {target}")
        return q, TaskCertificate(task, "enter", q.key)
    if isinstance(task, SchnorrCapture):
        evidence = schnorr_capture(p, task.functional, task.depth, task.samples)
        return p, TaskCertificate(task, "schnorr", evidence)
    raise TaskInapplicable(f"{task} does not apply to pair conditions")


def meet(
    task: DensityTask, p: Condition, budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[Condition, TaskCertificate]:
    """
    Extend p into the dense set of task.

    Raises:
        TaskInapplicable: If the task does not apply to p's forcing
        RankOverflow: Propagated from the rank engines
    """
    if isinstance(p, LBCond):
        q, cert = _meet_lb(task, p)
    elif isinstance(p, HBCond):
        q, cert = _meet_hb(task, p, budget)
    elif isinstance(p, ICond):
        q, cert = _meet_i(task, p, budget)
    else:
        raise TaskInapplicable(f"Unknown condition {p!r}")
    logger.debug(f"{task}: {cert.kind} -> {q}")
    return q, cert


# Schnorr capture


def _is_big_at(p: Condition, target, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    if isinstance(p, ICond):
        return pair_rank(target, p.key, budget).is_big
    return omega_rank(FULL_TREE, target, p.stem).is_big


def _value_of(phi, c: Condition) -> Str:
    if isinstance(c, ICond):
        return phi(c.mindom, c.stm)
    return phi(c.stem)


def _leftmost_branch(
    q: Condition, phi, horizon: int, budget: int = DEFAULT_PAIR_BUDGET
) -> Str:
    nu: Str = ()
    while len(nu) < horizon:
        for b in (0, 1):
            if _is_big_at(q, phi.value_set(nu + (b,)), budget):
                nu = nu + (b,)
                break
        else:
            break
    return nu


def _enter(q: Condition, target, budget: int = DEFAULT_PAIR_BUDGET) -> Condition:
    if isinstance(q, ICond):
        r = _i_enter(q, target, budget)
        if r is None:
            raise CertificateFailure(f"No possible extension of {format_pair(q.key)} in {target}")
        return r
    return _hb_enter(q, target)[0]


def schnorr_capture(
    p: Condition, phi, depth: int = 3, samples: int = 2, budget: int = DEFAULT_PAIR_BUDGET
) -> SchnorrEvidence:
    """
    Capture the values of phi along the generic in a Schnorr test.

    Sampled extensions of p contribute the leftmost branches of their value
    trees, interleaved round robin into h; every sample and every n <= depth is
    replayed by an extension whose value extends some h(m) with m >= n.

    Raises:
        TaskInapplicable: If the condition and functional do not match
        DivergenceForceable: If p is small for some convergence set
        CertificateFailure: If a replay cannot be built
    """
    if isinstance(p, HBCond) and isinstance(phi, BoundedFunctional):
        joined = union
    elif isinstance(p, ICond) and isinstance(phi, PairFunctional):
        joined = union_p
    else:
        raise TaskInapplicable("Schnorr capture pairs Hechler conditions with functionals")
    conds: list[Condition] = [p]
    for j in range(1, samples):
        if isinstance(p, ICond):
            conds.append(_i_extend_stem(p, _stem_length(p) + j, budget)[0])
        else:
            conds.append(_hb_extend_stem(p, _stem_length(p) + j)[0])
    horizon = depth + len(conds)
    for m in range(horizon):
        if not _is_big_at(p, joined(p.bad, phi.convergence_set(m)), budget):
            raise DivergenceForceable(f"Divergence at position {m} can be forced", position=m)
    branches = [_leftmost_branch(q, phi, horizon, budget) for q in conds]
    h = round_robin(branches, horizon)
    replays = []
    for i, q in enumerate(conds):
        for n in range(1, depth + 1):
            m = next(
                (m for m in range(n, horizon + 1) if m % len(conds) == i and m in h), None
            )
            if m is None:
                raise CertificateFailure(f"Sample {i} has no interleaved value past {n}")
            r = _enter(q, phi.value_set(h[m]), budget)
            replays.append(SchnorrReplay(q, n, r, m))
    approx = schnorr_levels(h, depth)
    logger.info(f"Schnorr capture: {len(conds)} samples, {len(replays)} replays")
    return SchnorrEvidence(approx, tuple(sorted(h.items())), tuple(replays))


def replay_schnorr(evidence: SchnorrEvidence, phi, depth: int) -> bool:
    """Re-check every replay and the measures of the approximation."""
    h = evidence.h
    for replay in evidence.replays:
        if replay.m < replay.n or replay.m not in h:
            return False
        if not extends(replay.r, replay.q):
            return False
        if _value_of(phi, replay.r)[: replay.m] != h[replay.m]:
            return False
    return validate_schnorr(evidence.approx, Fraction(2, 2**depth))


# runs


def run_generic(
    p0: Condition,
    tasks: Sequence[DensityTask],
    partial: bool = False,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> GenericRun:
    """
    Meet every task in order, starting from p0.

    Raises:
        BushyForceError: The first task error, unless partial is set, in which case
            the run so far is returned with the error recorded
    """
    chain = [p0]
    certificates = []
    for i, task in enumerate(tasks):
        try:
            q, cert = meet(task, chain[-1], budget)
        except BushyForceError as e:
            logger.debug(f"task {i} ({task}) failed: {e}")
            if not partial:
                raise
            return GenericRun(tuple(chain), tuple(certificates), e, i)
        chain.append(q)
        certificates.append(cert)
        logger.info(f"task {i} {task}: {cert.kind}")
    return GenericRun(tuple(chain), tuple(certificates))


def _tree_width(tree: TreeRep, *sets) -> int:
    return max([tree.bound] + [s.bound for s in sets]) + 1


def _explore_depth(c: LBCond, depth: int) -> int:
    return max(c.tree.depth + 1, depth)


def replay_certificate(
    cert: TaskCertificate, before: Condition, after: Condition, depth: int = DEFAULT_DEPTH
) -> bool:
    """Check one certificate against the conditions before and after its task."""
    task, detail = cert.task, cert.detail
    if cert.kind == "stem":
        walk = detail
        ok = walk[0] == projection(before) and walk[-1] == projection(after)
        return ok and _stem_length(after) >= task.m
    if cert.kind == "avoid":
        if isinstance(after, ICond):
            return pair_subset(detail, after.bad)
        return set_subset(detail, after.bad)
    if cert.kind == "enter":
        if isinstance(after, LBCond):
            target = task.target
            width = _tree_width(after.tree, target)
            return all(
                target.member(x) for x in frontier(after.tree, _explore_depth(after, 0), width)
            )
        if isinstance(after, HBCond):
            return task.target.member(after.stem) and after.stem == detail[-1]
        return task.target.member(*after.key) and after.key == detail
    if cert.kind == "dominate":
        return _replay_dominate(task, detail, after, depth)
    if cert.kind == "pi02":
        return _replay_pi02(task, detail, after)
    if cert.kind == "trace":
        return _replay_trace(task, detail, after)
    if cert.kind == "schnorr":
        return replay_schnorr(detail, task.functional, task.depth)
    if cert.kind == "cohen":
        return after.mindom == before.mindom + tuple(detail)
    return False


def _replay_dominate(task, detail, after: Condition, depth: int) -> bool:
    if isinstance(after, LBCond):
        h = detail
        width = _tree_width(after.tree)
        for x in explore(after.tree, max(len(h), depth), width):
            for m in range(len(after.stem), min(len(x), len(h))):
                if x[m] <= h[m]:
                    return False
        return True
    if isinstance(after, HBCond):
        return all(value_at(after.f, i) >= v for i, v in enumerate(detail))
    limit = comparison_depth(after.f, detail)
    return map_dominates(after.f, detail, after.mindom, limit, len(after.stm))


def _replay_pi02(task: MeetPi02, evidence: Pi02Evidence, after: LBCond) -> bool:
    if evidence.steps and evidence.steps[-1][3] == "avoid":
        return set_subset(task.sets[evidence.steps[-1][1]], after.bad)
    width = _tree_width(after.tree, after.bad, *task.sets)
    for x in frontier(after.tree, _explore_depth(after, 0), width):
        if not all(union(after.bad, a).member(x) for a in task.sets):
            return False
    return True


def _replay_trace(task: TraceTask, evidence: TraceEvidence, after: LBCond) -> bool:
    phi = task.functional
    trace = evidence.trace
    width = max(_tree_width(after.tree, after.bad), phi.width)
    for x in frontier(after.tree, _explore_depth(after, phi.depth + 1), width):
        if after.bad.member(x):
            continue
        if not trace.traces(phi(x)[: task.depth]):
            return False
    return True


def verify_run(
    run: GenericRun, depth: int = DEFAULT_DEPTH, budget: int = DEFAULT_PAIR_BUDGET
) -> bool:
    """
    Replay a run: every condition valid and below its predecessor, the prefix
    consistent with every condition, every certificate checked.
    """
    try:
        if not all(validate_condition(c, budget) for c in run.chain):
            return False
        for before, after in zip(run.chain, run.chain[1:]):
            if not extends(after, before):
                return False
        if not all(satisfies_prefix(c, run.prefix) for c in run.chain):
            return False
        for i, cert in enumerate(run.certificates):
            if not replay_certificate(cert, run.chain[i], run.chain[i + 1], depth):
                logger.debug(f"certificate {i} ({cert.kind}) failed to replay")
                return False
    except RankOverflow:
        return False
    return True

