"""
Symbolic infinite trees on finite strings of naturals.

Two forms are supported: Threshold trees (a stem followed by per-position lower
bounds) and Grafts (a finite explicit shape whose nodes may hand their subtree
over to another tree). Both expose the same residual interface as SetRep, so the
rank engines treat trees and sets uniformly.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from bushyforce.exceptions import IncompatibleStems, RepresentationError
from bushyforce.sets import SetRep, Spectrum, clamp_pattern, min_len, union, up_fin
from bushyforce.strings import Str, compatible, format_str, is_prefix, strip_zeros, value_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeNode:
    """Local view of a tree at one string."""

    member: bool
    child_spec: Spectrum
    is_leaf: bool


class TreeRep(ABC):
    """A finitely presented tree on finite strings of naturals."""

    @abstractmethod
    def member(self, s: Str) -> bool: ...

    @abstractmethod
    def residual(self, s: Str) -> Optional["TreeRep"]:
        """The tree {t : s + t in self}, or None when s is not a node."""

    @abstractmethod
    def root_spectrum(self) -> Spectrum:
        """Spectrum of the children of the root."""

    @property
    @abstractmethod
    def depth(self) -> int: ...

    @property
    @abstractmethod
    def bound(self) -> int: ...

    def child_spectrum(self, s: Str) -> Spectrum:
        sub = self.residual(s)
        if sub is None:
            return Spectrum.constant(False)
        return sub.root_spectrum()

    def is_leaf(self, s: Str) -> bool:
        return self.member(s) and self.child_spectrum(s).least_true() is None

    def node(self, s: Str) -> TreeNode:
        return TreeNode(self.member(s), self.child_spectrum(s), self.is_leaf(s))

    def has_path(self) -> bool:
        spectrum = self.root_spectrum()
        for n in range(self.bound + 2):
            if spectrum.value(n):
                sub = self.residual((n,))
                if sub is not None and sub.has_path():
                    return True
        return False

    @property
    def stem(self) -> Str:
        return tree_stem(self)

    def __contains__(self, s: Str) -> bool:
        return self.member(tuple(s))


@dataclass(frozen=True)
class Threshold(TreeRep):
    """
    All strings comparable with the stem whose entries beyond the stem respect theta.

    ``theta`` is indexed by absolute position; entries inside the stem are ignored.
    """

    stem_str: Str = ()
    theta: Str = ()

    def __post_init__(self) -> None:
        stem = tuple(self.stem_str)
        theta = tuple(0 if i < len(stem) else v for i, v in enumerate(self.theta))
        object.__setattr__(self, "stem_str", stem)
        object.__setattr__(self, "theta", strip_zeros(theta))

    @property
    def stem(self) -> Str:
        return self.stem_str

    def member(self, s: Str) -> bool:
        if is_prefix(s, self.stem_str):
            return True
        if not is_prefix(self.stem_str, s):
            return False
        return all(s[i] >= value_at(self.theta, i) for i in range(len(self.stem_str), len(s)))

    def residual(self, s: Str) -> Optional[TreeRep]:
        if is_prefix(s, self.stem_str):
            return Threshold(self.stem_str[len(s) :], self.theta[len(s) :])
        if not self.member(s):
            return None
        return Threshold((), self.theta[len(s) :])

    def root_spectrum(self) -> Spectrum:
        if self.stem_str:
            return Spectrum.build(False, (), {self.stem_str[0]: True})
        threshold = value_at(self.theta, 0)
        if threshold == 0:
            return Spectrum.constant(True)
        return Spectrum.build(False, [(threshold, True)])

    @property
    def depth(self) -> int:
        return max(len(self.stem_str), len(self.theta))

    @property
    def bound(self) -> int:
        return max(self.stem_str + self.theta, default=0)

    def has_path(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"Threshold({format_str(self.stem_str)},{format_str(self.theta)})"


FULL_TREE = Threshold((), ())


@dataclass(frozen=True)
class Shape:
    """
    One node of a Graft.

    Children resolve in order: ``named`` entries, then the ``generic`` template for
    every n >= its threshold, then the children of ``tail`` not listed in ``cut``.
    A shape with none of these is a closed leaf.
    """

    named: tuple = ()
    generic: Optional[tuple] = None
    tail: Optional[TreeRep] = None
    cut: frozenset = field(default_factory=frozenset)

    def child(self, n: int) -> Optional["Shape"]:
        for key, sub in self.named:
            if key == n:
                return sub
        if self.generic is not None and n >= self.generic[0]:
            return self.generic[1]
        if self.tail is not None and n not in self.cut:
            sub_tree = self.tail.residual((n,))
            if sub_tree is not None:
                return as_shape(sub_tree)
        return None

    def spectrum(self) -> Spectrum:
        result = Spectrum.constant(False)
        if self.tail is not None:
            mask = Spectrum.build(True, (), {n: False for n in self.cut})
            result = self.tail.root_spectrum().and_(mask)
        if self.generic is not None:
            result = result.or_(Spectrum.build(False, [(self.generic[0], True)]))
        if self.named:
            result = result.or_(Spectrum.build(False, (), {k: True for k, _ in self.named}))
        return result

    @property
    def is_closed(self) -> bool:
        return not self.named and self.generic is None and self.tail is None

    @property
    def is_pure_tail(self) -> bool:
        return self.tail is not None and not self.named and self.generic is None and not self.cut

    def depth(self) -> int:
        below = [1 + sub.depth() for _, sub in self.named]
        if self.generic is not None:
            below.append(1 + self.generic[1].depth())
        if self.tail is not None:
            below.append(self.tail.depth)
        return max(below, default=0)

    def bound(self) -> int:
        values = [k for k, _ in self.named] + [sub.bound() for _, sub in self.named]
        values += list(self.cut)
        if self.generic is not None:
            values += [self.generic[0], self.generic[1].bound()]
        if self.tail is not None:
            values.append(self.tail.bound)
        return max(values, default=0)

    def __str__(self) -> str:
        if self.is_closed:
            return "Leaf"
        if self.is_pure_tail:
            return f"Tail({self.tail})"
        parts = [f"{k}:{sub}" for k, sub in self.named]
        if self.generic is not None:
            parts.append(f">={self.generic[0]}:{self.generic[1]}")
        if self.tail is not None:
            parts.append(f"else:{self.tail}")
        if self.cut:
            parts.append("cut:" + format_str(tuple(sorted(self.cut))))
        return "Node(" + ",".join(parts) + ")"


CLOSED = Shape()


def as_shape(tree: TreeRep) -> Shape:
    if isinstance(tree, Graft):
        return tree.root
    return Shape(tail=tree)


def make_graft(shape: Shape) -> TreeRep:
    """Wrap a shape as a tree, unwrapping pure tails."""
    if shape.is_pure_tail:
        return shape.tail
    return Graft(shape)


@dataclass(frozen=True)
class Graft(TreeRep):
    """A finite explicit shape whose tail nodes continue as other trees."""

    root: Shape = CLOSED

    @classmethod
    def from_skeleton(
        cls,
        nodes: Iterable[Str],
        tails: Optional[Mapping[Str, TreeRep]] = None,
        closed: Optional[Iterable[Str]] = None,
    ) -> TreeRep:
        """
        Build a graft from an explicit prefix-closed skeleton.

        Raises:
            RepresentationError: If the skeleton is not prefix closed or a leaf is
                neither closed nor given a tail
        """
        skeleton = {tuple(s) for s in nodes} | {()}
        tails = {tuple(k): v for k, v in (tails or {}).items()}
        closed_set = {tuple(s) for s in closed} if closed is not None else None
        for s in skeleton:
            if s and s[:-1] not in skeleton:
                raise RepresentationError(f"Skeleton not prefix closed at {format_str(s)}")

        def build(s: Str) -> Shape:
            children = sorted(t[-1] for t in skeleton if len(t) == len(s) + 1 and t[:-1] == s)
            if children:
                return Shape(named=tuple((n, build(s + (n,))) for n in children))
            if s in tails:
                return Shape(tail=tails[s])
            if closed_set is not None and s not in closed_set:
                raise RepresentationError(f"Leaf {format_str(s)} has no tail and is not closed")
            return CLOSED

        return make_graft(build(()))

    def _walk(self, s: Str) -> tuple[Optional[Shape], int]:
        shape: Optional[Shape] = self.root
        for i, n in enumerate(s):
            if shape.is_pure_tail:
                return shape, i
            shape = shape.child(n)
            if shape is None:
                return None, i
        return shape, len(s)

    def member(self, s: Str) -> bool:
        shape, used = self._walk(s)
        if shape is None:
            return False
        if used < len(s):
            return shape.tail.member(s[used:])
        return True

    def residual(self, s: Str) -> Optional[TreeRep]:
        shape, used = self._walk(s)
        if shape is None:
            return None
        if used < len(s):
            return shape.tail.residual(s[used:])
        return make_graft(shape)

    def root_spectrum(self) -> Spectrum:
        return self.root.spectrum()

    @property
    def depth(self) -> int:
        return self.root.depth()

    @property
    def bound(self) -> int:
        return self.root.bound()

    def __str__(self) -> str:
        return f"Graft({self.root})"


def tree_stem(tree: TreeRep) -> Str:
    """The least node with other than exactly one child."""
    if isinstance(tree, Threshold):
        return tree.stem
    stem: Str = ()
    current: Optional[TreeRep] = tree
    while current is not None:
        spectrum = current.root_spectrum()
        if spectrum.tail:
            break
        children = spectrum.true_values(spectrum.breakpoint + 1)
        if len(children) != 1:
            break
        stem = stem + (children[0],)
        current = current.residual((children[0],))
    return stem


def tree_subset(t: TreeRep, s: TreeRep, _assumed: Optional[set] = None) -> bool:
    """Decide t ⊆ s coinductively over residual pairs."""
    assumed = _assumed if _assumed is not None else set()
    if (t, s) in assumed:
        return True
    assumed.add((t, s))
    fresh = max(t.bound, s.bound) + 1
    spec_t = t.root_spectrum()
    spec_s = s.root_spectrum()
    for n in range(fresh + 1):
        if not spec_t.value(n):
            continue
        if not spec_s.value(n):
            return False
        if not tree_subset(t.residual((n,)), s.residual((n,)), assumed):
            return False
    return True


def p_set(tree: TreeRep, i: int) -> frozenset:
    """
    The fusion skeleton P_i: start from the stem and, i times, add the least new
    child of every node collected so far.
    """
    current = {tree.stem}
    for _ in range(i):
        added = set()
        for node in sorted(current, key=lambda s: (len(s), s)):
            spectrum = tree.child_spectrum(node)
            limit = max(spectrum.breakpoint + 1, 0) + len(current) + 1
            for n in range(limit + 1):
                if spectrum.value(n) and node + (n,) not in current:
                    added.add(node + (n,))
                    break
        current |= added
    return frozenset(current)


def graft_at(u: Str, subtree: TreeRep) -> TreeRep:
    """The tree of prefixes of u continued by subtree above u."""
    shape = as_shape(subtree)
    for n in reversed(u):
        shape = Shape(named=((n, shape),))
    return make_graft(shape)


def reroot(tree: TreeRep, u: Str) -> TreeRep:
    """
    Restrict a tree to the nodes comparable with u.

    Raises:
        RepresentationError: If u is not a node of the tree
    """
    if not tree.member(u):
        raise RepresentationError(f"{format_str(u)} is not a node of {tree}")
    if is_prefix(u, tree.stem):
        return tree
    if isinstance(tree, Threshold):
        return Threshold(u, tree.theta)
    return graft_at(u, tree.residual(u))


def dominate_tree(tree: TreeRep, h: Str, start: int = 0) -> TreeRep:
    """
    Thin a tree so that every node at depth m in [start, len(h)) has entry > h(m).
    """
    if not h or start >= len(h):
        return tree
    if isinstance(tree, Threshold):
        stem = tree.stem
        for m in range(start, min(len(stem), len(h))):
            if stem[m] <= h[m]:
                return graft_at(stem[:m], Graft(CLOSED))
        theta = [value_at(tree.theta, m) for m in range(max(len(h), len(tree.theta)))]
        for m in range(max(start, len(stem)), len(h)):
            theta[m] = max(theta[m], h[m] + 1)
        return Threshold(stem, tuple(theta))
    return make_graft(_dominate_shape(as_shape(tree), h, start, 0))


def _dominate_shape(shape: Shape, h: Str, start: int, depth: int) -> Shape:
    if depth >= len(h):
        return shape
    tail = None
    if shape.tail is not None:
        tail = dominate_tree(shape.tail, h[depth:], max(start - depth, 0))
    if shape.is_pure_tail:
        return as_shape(tail)
    floor = h[depth] + 1 if depth >= start else 0
    named = tuple(
        (n, _dominate_shape(sub, h, start, depth + 1)) for n, sub in shape.named if n >= floor
    )
    generic = None
    if shape.generic is not None:
        t, sub = shape.generic
        generic = (max(t, floor), _dominate_shape(sub, h, start, depth + 1))
    return Shape(named=named, generic=generic, tail=tail, cut=shape.cut)


def without(tree: TreeRep, paths: Iterable[Str]) -> TreeRep:
    """Remove the subtrees rooted at the given non-empty paths."""
    paths = [tuple(p) for p in paths if p]
    if not paths:
        return tree
    cut = {p[0] for p in paths if len(p) == 1}
    deeper: dict[int, list[Str]] = {}
    for p in paths:
        if len(p) > 1 and p[0] not in cut:
            deeper.setdefault(p[0], []).append(p[1:])
    named = []
    for n in sorted(deeper):
        sub = tree.residual((n,))
        if sub is not None:
            named.append((n, as_shape(without(sub, deeper[n]))))
    return make_graft(Shape(named=tuple(named), tail=tree, cut=frozenset(cut)))


def carve(tree: TreeRep, root: Str, excluded: Iterable[Str]) -> TreeRep:
    """The subtree above root, relative to root, minus the subtrees at excluded nodes."""
    base = tree.residual(root)
    if base is None:
        raise RepresentationError(f"{format_str(root)} is not a node of {tree}")
    rel = [u[len(root) :] for u in excluded if len(u) > len(root) and is_prefix(root, u)]
    return without(base, rel)


def build_graft(stem: Str, nodes: Iterable[Str], pieces: Mapping[Str, TreeRep]) -> TreeRep:
    """
    Reassemble a tree from a fusion skeleton and one piece per skeleton node.

    The skeleton nodes stay as named children; every other child of a skeleton
    node comes from that node's piece.
    """
    nodes = set(nodes)

    def build(tau: Str) -> Shape:
        children = sorted(u[-1] for u in nodes if len(u) == len(tau) + 1 and u[:-1] == tau)
        named = tuple((n, build(tau + (n,))) for n in children)
        piece = as_shape(pieces[tau])
        return Shape(
            named=named + tuple(kv for kv in piece.named if kv[0] not in children),
            generic=piece.generic,
            tail=piece.tail,
            cut=piece.cut,
        )

    shape = build(stem)
    for n in reversed(stem):
        shape = Shape(named=((n, shape),))
    return make_graft(shape)


def prolong(shape: Shape, tree: TreeRep) -> Shape:
    """
    Continue every closed leaf of a finite shape by the matching residual of tree.

    Generic templates are resolved through their threshold value, whose residual
    stands for every value above it.
    """
    if shape.is_closed:
        return Shape(tail=tree)
    named = tuple((n, prolong(sub, tree.residual((n,)))) for n, sub in shape.named)
    generic = None
    if shape.generic is not None:
        t, sub = shape.generic
        generic = (t, prolong(sub, tree.residual((t,))))
    return Shape(named=named, generic=generic, tail=shape.tail, cut=shape.cut)


def explore(tree: TreeRep, depth: int, width: Optional[int] = None) -> Iterator[Str]:
    """
    Yield representative nodes of length <= depth, breadth first.

    Child values range over 0..width (default: the tree bound plus one), which
    covers every residual class of the tree.
    """
    top = tree.bound + 1 if width is None else width
    queue: deque[Str] = deque([()])
    while queue:
        s = queue.popleft()
        yield s
        if len(s) >= depth:
            continue
        spectrum = tree.child_spectrum(s)
        for n in range(top + 1):
            if spectrum.value(n):
                queue.append(s + (n,))


def finite_tree_nodes(tree: TreeRep, depth: int, width: int) -> frozenset:
    """All nodes of length <= depth with entries <= width."""
    return frozenset(explore(tree, depth, width))


def t_plus(nodes: Iterable[Str], s: Str) -> bool:
    """True iff some node of the same length is pointwise below s."""
    return any(len(t) == len(s) and all(a <= b for a, b in zip(t, s)) for t in nodes)


def t_plus_patterns(nodes: Iterable[Str]) -> list:
    """
    Minimal patterns of the strings outside T⁺ up to the height of a finite tree.

    Values at or above the largest entry of the tree behave alike, so the top
    value is clamped to an AtLeast pattern entry. Only strings inside T⁺ are
    extended further.
    """
    nodes = frozenset(tuple(s) for s in nodes)
    if not nodes:
        return [()]
    height = max(len(s) for s in nodes)
    top = max((x for s in nodes for x in s), default=0)
    patterns = []
    level: list[Str] = [()]
    for length in range(height + 1):
        inside = []
        for s in level:
            if t_plus(nodes, s):
                inside.append(s)
            else:
                patterns.append(clamp_pattern(s, top))
        if length < height:
            level = [s + (n,) for s in inside for n in range(top + 1)]
    return patterns


def t_plus_complement(nodes: Iterable[Str]) -> SetRep:
    """
    The upward-closed set of strings not dominated at their length by a node of a
    finite tree. Everything longer than the tree's height belongs to it.
    """
    nodes = frozenset(tuple(s) for s in nodes)
    if not nodes:
        return union(up_fin([()]))
    height = max(len(s) for s in nodes)
    result = union(up_fin(t_plus_patterns(nodes)), min_len(height + 1))
    logger.debug(f"T+ complement of {len(nodes)} nodes: {result}")
    return result


def common_branch(t: TreeRep, s: TreeRep, depth: int) -> Str:
    """
    The length-depth prefix of the leftmost branch lying in both trees.

    Raises:
        IncompatibleStems: If the stems are incomparable or the longer stem is
            missing from the other tree
        RepresentationError: If the trees share no branch through the stems
    """
    if not compatible(t.stem, s.stem):
        raise IncompatibleStems(f"Stems {format_str(t.stem)} and {format_str(s.stem)} diverge")
    start = max(t.stem, s.stem, key=len)
    if not (t.member(start) and s.member(start)):
        raise IncompatibleStems(f"Stem {format_str(start)} is not a node of both trees")
    if depth <= len(start):
        return start[:depth]
    branch = start
    sub_t, sub_s = t.residual(start), s.residual(start)
    while len(branch) < depth:
        fresh = max(sub_t.bound, sub_s.bound) + 1
        spec_t, spec_s = sub_t.root_spectrum(), sub_s.root_spectrum()
        chosen = None
        for n in range(fresh + 1):
            if spec_t.value(n) and spec_s.value(n):
                next_t, next_s = sub_t.residual((n,)), sub_s.residual((n,))
                if next_t.has_path() and next_s.has_path():
                    chosen = n
                    break
        if chosen is None:
            raise RepresentationError(f"No common branch above {format_str(branch)}")
        branch = branch + (chosen,)
        sub_t, sub_s = sub_t.residual((chosen,)), sub_s.residual((chosen,))
    return branch
