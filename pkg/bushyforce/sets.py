"""
Upward-closed sets of strings and the spectra of their children.

A SetRep is a finite expression over atoms that are each closed upward under
the prefix order. Every atom knows its residual after one more entry, so the
rank engines can localize a set at any node and memoize on the result.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Union as TUnion

from bushyforce.strings import Str, format_str

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AtLeast:
    """Pattern entry matching every natural >= bound."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


Entry = TUnion[int, AtLeast]
Pattern = tuple  # tuple[Entry, ...]


def entry_matches(entry: Entry, n: int) -> bool:
    if isinstance(entry, AtLeast):
        return n >= entry.bound
    return n == entry


def entry_covers(outer: Entry, inner: Entry) -> bool:
    """True iff every value matched by inner is matched by outer."""
    if isinstance(outer, AtLeast):
        if isinstance(inner, AtLeast):
            return inner.bound >= outer.bound
        return inner >= outer.bound
    return not isinstance(inner, AtLeast) and inner == outer


def pattern_matches(pattern: Pattern, s: Str) -> bool:
    """True iff some prefix of s matches pattern entry by entry."""
    return len(s) >= len(pattern) and all(entry_matches(e, n) for e, n in zip(pattern, s))


def pattern_covers(outer: Pattern, inner: Pattern) -> bool:
    """True iff the upward closure of outer contains that of inner."""
    return len(outer) <= len(inner) and all(entry_covers(o, i) for o, i in zip(outer, inner))


def pattern_bound(pattern: Pattern) -> int:
    values = [e.bound if isinstance(e, AtLeast) else e for e in pattern]
    return max(values, default=0)


def pattern_key(pattern: Pattern) -> tuple:
    entries = tuple((1, e.bound) if isinstance(e, AtLeast) else (0, e) for e in pattern)
    return (len(pattern), entries)


def format_pattern(pattern: Pattern) -> str:
    return "[" + ",".join(str(e) for e in pattern) + "]"


def clamp_pattern(s: Str, top: int) -> Pattern:
    """Turn a string into a pattern where the value ``top`` stands for all values >= top."""
    return tuple(AtLeast(top) if n >= top else n for n in s)


def reduce_patterns(patterns: Iterable[Pattern]) -> frozenset:
    """Keep only patterns not covered by another pattern in the family."""
    pool = sorted({tuple(p) for p in patterns}, key=pattern_key)
    kept: list[Pattern] = []
    for p in pool:
        if not any(pattern_covers(k, p) for k in kept):
            kept = [k for k in kept if not pattern_covers(p, k)]
            kept.append(p)
    return frozenset(kept)


@dataclass(frozen=True)
class Spectrum:
    """
    The map n -> property(s + (n,)) as an eventually constant step function.

    ``steps`` holds (threshold, value) pairs applied in increasing order on top of
    ``initial``; ``exceptions`` override single points. Only the tail value can
    witness "infinitely many n".
    """

    exceptions: tuple = ()
    steps: tuple = ()
    initial: bool = False

    @classmethod
    def build(
        cls,
        initial: bool,
        steps: Iterable[tuple[int, bool]] = (),
        exceptions: Optional[Mapping[int, bool]] = None,
    ) -> "Spectrum":
        ordered: list[tuple[int, bool]] = []
        current = initial
        for threshold, value in sorted(dict(steps).items()):
            if value != current:
                ordered.append((threshold, value))
                current = value
        stepped = cls((), tuple(ordered), initial)
        kept = tuple(
            sorted((n, v) for n, v in (exceptions or {}).items() if stepped.value(n) != v)
        )
        return cls(kept, tuple(ordered), initial)

    @classmethod
    def constant(cls, value: bool) -> "Spectrum":
        return cls((), (), value)

    def step_value(self, n: int) -> bool:
        value = self.initial
        for threshold, v in self.steps:
            if n < threshold:
                break
            value = v
        return value

    def value(self, n: int) -> bool:
        for k, v in self.exceptions:
            if k == n:
                return v
        return self.step_value(n)

    @property
    def tail(self) -> bool:
        return self.steps[-1][1] if self.steps else self.initial

    @property
    def breakpoint(self) -> int:
        """Largest n at which the spectrum may still differ from its tail."""
        points = [k for k, _ in self.exceptions] + [t for t, _ in self.steps]
        return max(points, default=-1)

    def least_true(self, start: int = 0) -> Optional[int]:
        for n in range(start, max(start, self.breakpoint + 1) + 1):
            if self.value(n):
                return n
        return None

    def true_values(self, upto: int) -> list[int]:
        return [n for n in range(upto + 1) if self.value(n)]

    def combine(self, other: "Spectrum", op: Callable[[bool, bool], bool]) -> "Spectrum":
        thresholds = sorted({t for t, _ in self.steps} | {t for t, _ in other.steps})
        steps = [(t, op(self.step_value(t), other.step_value(t))) for t in thresholds]
        keys = {k for k, _ in self.exceptions} | {k for k, _ in other.exceptions}
        exceptions = {k: op(self.value(k), other.value(k)) for k in keys}
        return Spectrum.build(op(self.initial, other.initial), steps, exceptions)

    def or_(self, other: "Spectrum") -> "Spectrum":
        return self.combine(other, lambda a, b: a or b)

    def and_(self, other: "Spectrum") -> "Spectrum":
        return self.combine(other, lambda a, b: a and b)

    def equivalent(self, other: "Spectrum") -> bool:
        bound = max(self.breakpoint, other.breakpoint) + 1
        return all(self.value(n) == other.value(n) for n in range(bound + 1))


class SetRep(ABC):
    """A finitely presented upward-closed subset of finite strings."""

    @abstractmethod
    def member(self, s: Str) -> bool: ...

    @abstractmethod
    def step(self, n: int) -> "SetRep":
        """Residual {t : (n,) + t in self}."""

    @abstractmethod
    def spectrum(self) -> Spectrum:
        """Spectrum of n -> member((n,))."""

    @property
    @abstractmethod
    def depth(self) -> int: ...

    @property
    @abstractmethod
    def bound(self) -> int: ...

    @property
    def is_full(self) -> bool:
        return False

    @property
    def is_empty(self) -> bool:
        return False

    def residual(self, s: Str) -> "SetRep":
        current: SetRep = self
        for n in s:
            if current.is_full or current.is_empty:
                break
            current = current.step(n)
        return current

    def child_spectrum(self, s: Str) -> Spectrum:
        return self.residual(s).spectrum()

    def __contains__(self, s: Str) -> bool:
        return self.member(tuple(s))


@dataclass(frozen=True)
class UpFin(SetRep):
    """Upward closure of finitely many patterns."""

    patterns: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "patterns", reduce_patterns(self.patterns))

    def member(self, s: Str) -> bool:
        return any(pattern_matches(p, s) for p in self.patterns)

    def step(self, n: int) -> SetRep:
        if self.is_full:
            return self
        return up_fin(p[1:] for p in self.patterns if p and entry_matches(p[0], n))

    def spectrum(self) -> Spectrum:
        if self.is_full:
            return Spectrum.constant(True)
        exceptions = {p[0]: True for p in self.patterns if len(p) == 1 and isinstance(p[0], int)}
        bounds = [p[0].bound for p in self.patterns if len(p) == 1 and isinstance(p[0], AtLeast)]
        steps = [(min(bounds), True)] if bounds else []
        return Spectrum.build(False, steps, exceptions)

    @property
    def depth(self) -> int:
        return max((len(p) for p in self.patterns), default=0)

    @property
    def bound(self) -> int:
        return max((pattern_bound(p) for p in self.patterns), default=0)

    @property
    def is_full(self) -> bool:
        return () in self.patterns

    @property
    def is_empty(self) -> bool:
        return not self.patterns

    def sorted_patterns(self) -> list[Pattern]:
        return sorted(self.patterns, key=pattern_key)

    def __str__(self) -> str:
        return "UpFin(" + ",".join(format_pattern(p) for p in self.sorted_patterns()) + ")"


@dataclass(frozen=True)
class MinLen(SetRep):
    """All strings of length >= k."""

    k: int

    def member(self, s: Str) -> bool:
        return len(s) >= self.k

    def step(self, n: int) -> SetRep:
        return min_len(self.k - 1)

    def spectrum(self) -> Spectrum:
        return Spectrum.constant(self.k <= 1)

    @property
    def depth(self) -> int:
        return self.k

    @property
    def bound(self) -> int:
        return 0

    @property
    def is_full(self) -> bool:
        return self.k <= 0

    def __str__(self) -> str:
        return f"MinLen({self.k})"


@dataclass(frozen=True)
class CoordGE(SetRep):
    """All strings with an entry >= m at position i."""

    i: int
    m: int

    def member(self, s: Str) -> bool:
        return len(s) > self.i and s[self.i] >= self.m

    def step(self, n: int) -> SetRep:
        if self.i == 0:
            return FULL if n >= self.m else EMPTY
        return CoordGE(self.i - 1, self.m)

    def spectrum(self) -> Spectrum:
        if self.i > 0:
            return Spectrum.constant(False)
        return Spectrum.build(False, [(self.m, True)])

    @property
    def depth(self) -> int:
        return self.i + 1

    @property
    def bound(self) -> int:
        return self.m

    def __str__(self) -> str:
        return f"CoordGE({self.i},{self.m})"


@dataclass(frozen=True)
class EmptySet(SetRep):
    def member(self, s: Str) -> bool:
        return False

    def step(self, n: int) -> SetRep:
        return self

    def spectrum(self) -> Spectrum:
        return Spectrum.constant(False)

    @property
    def depth(self) -> int:
        return 0

    @property
    def bound(self) -> int:
        return 0

    @property
    def is_empty(self) -> bool:
        return True

    def __str__(self) -> str:
        return "Empty"


def _part_key(part: SetRep) -> tuple:
    return (type(part).__name__, str(part))


@dataclass(frozen=True)
class Union(SetRep):
    """Finite union of set expressions, kept flat and canonically ordered."""

    parts: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", _normalize_parts(self.parts))

    def member(self, s: Str) -> bool:
        return any(p.member(s) for p in self.parts)

    def step(self, n: int) -> SetRep:
        return union(*(p.step(n) for p in self.parts))

    def spectrum(self) -> Spectrum:
        result = Spectrum.constant(False)
        for part in self.parts:
            result = result.or_(part.spectrum())
        return result

    @property
    def depth(self) -> int:
        return max((p.depth for p in self.parts), default=0)

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
        return "Union(" + ",".join(str(p) for p in self.parts) + ")"


EMPTY = EmptySet()
FULL = UpFin(frozenset({()}))


def _normalize_parts(parts: Iterable[SetRep]) -> tuple:
    flat: list[SetRep] = []
    for part in parts:
        if isinstance(part, Union):
            flat.extend(part.parts)
        else:
            flat.append(part)
    if any(p.is_full for p in flat):
        return (FULL,)
    patterns: set = set()
    lengths: list[int] = []
    others: set = set()
    for part in flat:
        if part.is_empty:
            continue
        if isinstance(part, UpFin):
            patterns |= part.patterns
        elif isinstance(part, MinLen):
            lengths.append(part.k)
        else:
            others.add(part)
    merged: list[SetRep] = list(others)
    if patterns:
        merged.append(UpFin(frozenset(patterns)))
    if lengths:
        merged.append(MinLen(min(lengths)))
    return tuple(sorted(merged, key=_part_key))


def up_fin(patterns: Iterable[Pattern]) -> SetRep:
    """Canonical UpFin: Empty for no patterns, FULL when the empty pattern is present."""
    rep = UpFin(frozenset(tuple(p) for p in patterns))
    if rep.is_empty:
        return EMPTY
    if rep.is_full:
        return FULL
    return rep


def min_len(k: int) -> SetRep:
    return FULL if k <= 0 else MinLen(k)


def union(*parts: SetRep) -> SetRep:
    """Canonical union: collapses to its single part, Empty or FULL where possible."""
    normalized = _normalize_parts(parts)
    if not normalized:
        return EMPTY
    if len(normalized) == 1:
        return normalized[0]
    return Union(normalized)


def set_subset(a: SetRep, b: SetRep, _assumed: Optional[set] = None) -> bool:
    """
    Decide a ⊆ b by coinduction over residuals.

    Values above both breakpoint bounds behave alike, so one fresh value stands
    for all of them.
    """
    if a.is_empty or b.is_full:
        return True
    if a.is_full:
        return False
    assumed = _assumed if _assumed is not None else set()
    if (a, b) in assumed:
        return True
    assumed.add((a, b))
    fresh = max(a.bound, b.bound) + 1
    return all(set_subset(a.step(n), b.step(n), assumed) for n in range(fresh + 1))


def set_equal(a: SetRep, b: SetRep) -> bool:
    return set_subset(a, b) and set_subset(b, a)


def describe_strings(strings: Iterable[Str]) -> str:
    return "{" + ", ".join(format_str(s) for s in sorted(strings, key=lambda s: (len(s), s))) + "}"
