"""
Dense-set tasks and the bounded functionals they mention.

A BoundedFunctional is a finite monotone table from string patterns to
strings; its convergence and value sets compile to UpFin sets, so the rank
engine decides every "is it big" question the tasks ask. PairFunctional is the
same over pairs of a binary string and a string pattern.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Union as TUnion

from bushyforce.exceptions import MalformedTrace
from bushyforce.maps import BinaryMap
from bushyforce.pairs import PairSetRep, up_fin_p
from bushyforce.sets import (
    AtLeast,
    Entry,
    Pattern,
    SetRep,
    format_pattern,
    pattern_bound,
    pattern_matches,
    up_fin,
)
from bushyforce.strings import BinStr, Str, format_str, is_prefix

logger = logging.getLogger(__name__)


def _entries_overlap(a: Entry, b: Entry) -> bool:
    if isinstance(a, AtLeast) and isinstance(b, AtLeast):
        return True
    if isinstance(a, AtLeast):
        return b >= a.bound
    if isinstance(b, AtLeast):
        return a >= b.bound
    return a == b


def _patterns_overlap(a: Pattern, b: Pattern) -> bool:
    """Some string has prefixes matching both patterns."""
    return all(_entries_overlap(x, y) for x, y in zip(a, b))


def _comparable(a: Str, b: Str) -> bool:
    return is_prefix(a, b) or is_prefix(b, a)


def _longest(values: list[Str]) -> Str:
    return max(values, key=len, default=())


@dataclass(frozen=True)
class BoundedFunctional:
    """
    A monotone table from patterns to strings.

    The value at x is the longest value among keys matching a prefix of x.
    ``bound`` caps every output entry; positions past its end repeat its last entry.
    """

    table: tuple = ()
    bound: Optional[Str] = None

    def __post_init__(self) -> None:
        entries = {tuple(k): tuple(v) for k, v in self.table}
        ordered = sorted(entries.items(), key=lambda kv: (len(kv[0]), format_pattern(kv[0])))
        object.__setattr__(self, "table", tuple(ordered))
        if self.bound is not None:
            object.__setattr__(self, "bound", tuple(self.bound))

    @classmethod
    def parity(cls, depth: int, width: int = 4) -> "BoundedFunctional":
        """
        Entrywise parity on strings up to depth; entries >= width count as width.
        """
        alphabet: list[Entry] = list(range(width)) + [AtLeast(width)]
        table = []
        for length in range(1, depth + 1):
            for key in itertools.product(alphabet, repeat=length):
                value = tuple((width if isinstance(e, AtLeast) else e) % 2 for e in key)
                table.append((key, value))
        return cls(tuple(table), (1,))

    def bound_at(self, m: int) -> Optional[int]:
        if self.bound is None:
            return None
        if not self.bound:
            return 0
        return self.bound[m] if m < len(self.bound) else self.bound[-1]

    def __call__(self, x: Str) -> Str:
        return _longest([v for k, v in self.table if pattern_matches(k, x)])

    @property
    def depth(self) -> int:
        return max((len(k) for k, _ in self.table), default=0)

    @property
    def width(self) -> int:
        return max((pattern_bound(k) for k, _ in self.table), default=0) + 1

    def validate(self) -> bool:
        """Overlapping keys carry comparable values and every entry respects the bound."""
        for (k1, v1), (k2, v2) in itertools.combinations(self.table, 2):
            if _patterns_overlap(k1, k2) and not _comparable(v1, v2):
                return False
        for _, value in self.table:
            for m, v in enumerate(value):
                cap = self.bound_at(m)
                if cap is not None and v > cap:
                    return False
        return True

    def convergence_set(self, m: int) -> SetRep:
        """C_m: the strings whose value is defined at position m."""
        return up_fin(k for k, v in self.table if len(v) > m)

    def value_set(self, nu: Str) -> SetRep:
        """V_ν: the strings whose value starts with ν."""
        nu = tuple(nu)
        return up_fin(k for k, v in self.table if len(v) >= len(nu) and v[: len(nu)] == nu)

    def position_set(self, j: int, m: int) -> SetRep:
        """V_{j,m}: the strings whose value has entry j at position m."""
        return up_fin(k for k, v in self.table if len(v) > m and v[m] == j)

    def __str__(self) -> str:
        head = "Unbounded" if self.bound is None else format_str(self.bound)
        body = "".join(f",{format_pattern(k)}:{format_str(v)}" for k, v in self.table)
        return f"Functional({head}{body})"


@dataclass(frozen=True)
class PairFunctional:
    """A monotone table from (binary string, pattern) keys to binary strings."""

    table: tuple = ()

    def __post_init__(self) -> None:
        entries = {(tuple(k[0]), tuple(k[1])): tuple(v) for k, v in self.table}
        ordered = sorted(
            entries.items(),
            key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0][0], format_pattern(kv[0][1])),
        )
        object.__setattr__(self, "table", tuple(ordered))

    @classmethod
    def parity_second(cls, depth: int, width: int = 4) -> "PairFunctional":
        """Entrywise parity of the second coordinate up to depth."""
        base = BoundedFunctional.parity(depth, width)
        return cls(tuple((((), k), v) for k, v in base.table))

    def __call__(self, sigma: BinStr, tau: Str) -> BinStr:
        return _longest(
            [v for (a, p), v in self.table if is_prefix(a, sigma) and pattern_matches(p, tau)]
        )

    def validate(self) -> bool:
        for ((a1, p1), v1), ((a2, p2), v2) in itertools.combinations(self.table, 2):
            if _comparable(a1, a2) and _patterns_overlap(p1, p2) and not _comparable(v1, v2):
                return False
        return all(set(v) <= {0, 1} for _, v in self.table)

    def convergence_set(self, m: int) -> PairSetRep:
        return up_fin_p(k for k, v in self.table if len(v) > m)

    def value_set(self, nu: BinStr) -> PairSetRep:
        return up_fin_p(
            k for k, v in self.table if len(v) >= len(nu) and v[: len(nu)] == tuple(nu)
        )

    def __str__(self) -> str:
        body = ",".join(
            f"({format_str(a)},{format_pattern(p)}):{format_str(v)}" for (a, p), v in self.table
        )
        return f"PairFunctional({body})"


Functional = TUnion[BoundedFunctional, PairFunctional]


@dataclass(frozen=True)
class Trace:
    """Finite sets F(0), F(1), ... with |F(n)| <= 2^n."""

    sets: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        for n, values in enumerate(self.sets):
            if len(values) > 2**n:
                raise MalformedTrace(f"|F({n})| = {len(values)} exceeds {2 ** n}")

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, n: int) -> frozenset:
        return self.sets[n]

    def traces(self, values: Str) -> bool:
        """True iff values(n) is in F(n) wherever both are defined."""
        return all(v in self.sets[n] for n, v in enumerate(values[: len(self.sets)]))

    def __str__(self) -> str:
        def fmt(values: frozenset) -> str:
            items = sorted(values, key=lambda v: (isinstance(v, tuple), str(v)))
            body = ",".join(format_str(v) if isinstance(v, tuple) else str(v) for v in items)
            return "{" + body + "}"

        return "Trace(" + ",".join(fmt(s) for s in self.sets) + ")"


@dataclass(frozen=True)
class ExtendStem:
    m: int

    def __str__(self) -> str:
        return f"ExtendStem({self.m})"


@dataclass(frozen=True)
class Dominate:
    h: Str

    def __str__(self) -> str:
        return f"Dominate({format_str(self.h)})"


@dataclass(frozen=True)
class MeetOpen:
    """Either enter ⟨target⟩ or add it to the bad set."""

    target: TUnion[SetRep, PairSetRep]

    def __str__(self) -> str:
        return f"MeetOpen({self.target})"


@dataclass(frozen=True)
class MeetPi02:
    """Enter every ⟨A_j⟩ along every branch, or avoid one of them, within depth rounds."""

    sets: tuple = ()
    depth: int = 2

    def __str__(self) -> str:
        return f"MeetPi02({self.depth}" + "".join(f",{s}" for s in self.sets) + ")"


@dataclass(frozen=True)
class TraceTask:
    functional: BoundedFunctional
    depth: int = 1

    def __str__(self) -> str:
        return f"TraceTask({self.functional},{self.depth})"


@dataclass(frozen=True)
class SchnorrCapture:
    functional: Functional
    depth: int = 3
    samples: int = 2

    def __str__(self) -> str:
        return f"Schnorr({self.functional},{self.depth},{self.samples})"


@dataclass(frozen=True)
class CohenDense:
    """Meet the Cohen dense set of binary strings extending mindom by w."""

    w: BinStr = field(default_factory=tuple)

    def __str__(self) -> str:
        return f"Cohen({format_str(self.w)})"


@dataclass(frozen=True)
class DominateCohen:
    """Make the second coordinate dominate phi applied to the first."""

    phi: BinaryMap

    def __str__(self) -> str:
        return f"DominateCohen({self.phi})"


DensityTask = TUnion[
    ExtendStem,
    Dominate,
    MeetOpen,
    MeetPi02,
    TraceTask,
    SchnorrCapture,
    CohenDense,
    DominateCohen,
]
