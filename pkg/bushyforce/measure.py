"""
Exact cylinder measures on Cantor space and Schnorr test approximations.

All measures are Fractions; a cylinder [s] has measure 2^-|s|.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union as TUnion

from bushyforce.exceptions import MalformedTrace, ScenarioParseError
from bushyforce.strings import BinStr, pf_reduce
from bushyforce.tasks import Trace

logger = logging.getLogger(__name__)

_DYADIC_RE = re.compile(r"^\s*(\d+)/2\^(\d+)\s*$")


@dataclass(frozen=True)
class CylinderUnion:
    """The open set generated by finitely many binary strings, kept prefix free."""

    generators: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", pf_reduce(tuple(g) for g in self.generators))

    @classmethod
    def of(cls, strings: Iterable[BinStr]) -> "CylinderUnion":
        return cls(frozenset(tuple(s) for s in strings))

    def contains(self, x: BinStr) -> bool:
        """True iff the cylinder of x lies inside the union."""
        return any(x[: len(g)] == g for g in self.generators)

    @property
    def measure(self) -> Fraction:
        return cylinder_measure(self)

    def sorted_generators(self) -> list[BinStr]:
        return sorted(self.generators, key=lambda s: (len(s), s))


def cylinder_measure(u: TUnion[CylinderUnion, Iterable[BinStr]]) -> Fraction:
    """Sum of 2^-|s| over the prefix-free generators."""
    if not isinstance(u, CylinderUnion):
        u = CylinderUnion.of(u)
    return sum((Fraction(1, 2 ** len(s)) for s in u.generators), Fraction(0))


def format_dyadic(q: Fraction) -> str:
    """Write a dyadic rational as ``p/2^k`` in lowest terms."""
    k = q.denominator.bit_length() - 1
    if q.denominator != 2**k:
        raise ValueError(f"{q} is not dyadic")
    return f"{q.numerator}/2^{k}"


def parse_dyadic(text: str) -> Fraction:
    """
    Parse ``p/2^k``.

    Raises:
        ScenarioParseError: If text is not of that form
    """
    match = _DYADIC_RE.match(text)
    if not match:
        raise ScenarioParseError(f"Not a dyadic rational: {text!r}")
    return Fraction(int(match.group(1)), 2 ** int(match.group(2)))


@dataclass(frozen=True)
class NowhereDenseTree:
    """A tree of binary strings materialized up to its horizon with its level counts."""

    nodes: frozenset
    counts: tuple

    def within_bound(self) -> bool:
        """|T ∩ 2^(2^n)| <= 2^n at every recorded level."""
        return all(c <= 2**n for n, c in enumerate(self.counts))


def _as_trace(trace: TUnion[Trace, Sequence]) -> Trace:
    if isinstance(trace, Trace):
        return trace
    return Trace(tuple(frozenset(tuple(s) for s in level) for level in trace))


def trace_nowhere_dense(trace: TUnion[Trace, Sequence]) -> NowhereDenseTree:
    """
    The tree of binary strings ρ with ρ↾2^m in F(m) for every 2^m <= |ρ|.

    Raises:
        MalformedTrace: If some F(n) is too large or holds a string that is not a
            binary string of length 2^n
    """
    trace = _as_trace(trace)
    for n, level in enumerate(trace.sets):
        for s in level:
            if not isinstance(s, tuple) or len(s) != 2**n or not set(s) <= {0, 1}:
                raise MalformedTrace(f"F({n}) holds {s!r}, not a binary string of length {2 ** n}")
    if not trace.sets:
        return NowhereDenseTree(frozenset({()}), ())
    horizon = 2 ** (len(trace) - 1)
    nodes = {()}
    level = [()]
    counts = []
    for length in range(1, horizon + 1):
        level = [rho + (b,) for rho in level for b in (0, 1)]
        if length & (length - 1) == 0:
            m = length.bit_length() - 1
            level = [rho for rho in level if rho in trace[m]]
            counts.append(len(level))
        nodes.update(level)
    logger.debug(f"nowhere dense tree to length {horizon}: level counts {counts}")
    return NowhereDenseTree(frozenset(nodes), tuple(counts))


def trace_to_binary(trace: Trace) -> Trace:
    """
    Encode a trace of naturals as a trace of binary strings.

    Each value of F(n) is replaced by its rank in F(n) written in 2^n bits, so the
    all-zero string at every level keeps consecutive levels prefix consistent.
    """
    levels = []
    for n, values in enumerate(trace.sets):
        width = 2**n
        codes = (tuple(int(b) for b in format(i, f"0{width}b")) for i in range(len(values)))
        levels.append(frozenset(codes))
    return Trace(tuple(levels))


@dataclass(frozen=True)
class SchnorrApprox:
    """Levels (U_n, declared measure of U_n) of a Schnorr test approximation."""

    levels: tuple = ()

    def __len__(self) -> int:
        return len(self.levels)


def round_robin(branches: Sequence[BinStr], horizon: int) -> dict[int, BinStr]:
    """
    Interleave branches: h(m) is the length-m prefix of branch m mod k, for
    every m in 1..horizon where that branch is long enough.
    """
    if not branches:
        return {}
    result = {}
    for m in range(1, horizon + 1):
        branch = branches[m % len(branches)]
        if len(branch) >= m:
            result[m] = tuple(branch[:m])
    return result


def schnorr_from_interleaver(h: Mapping[int, BinStr], n: int) -> tuple[CylinderUnion, Fraction]:
    """The level ⋃_{n<=m<=M}[h(m)] with its exact measure."""
    union = CylinderUnion.of(s for m, s in h.items() if m >= n)
    return union, union.measure


def schnorr_levels(h: Mapping[int, BinStr], cutoff: int) -> SchnorrApprox:
    return SchnorrApprox(tuple(schnorr_from_interleaver(h, n) for n in range(1, cutoff + 1)))


def validate_schnorr(approx: SchnorrApprox, eps: Fraction) -> bool:
    """Every declared measure is exact, measures do not increase, and the last is <= eps."""
    previous = None
    for union, declared in approx.levels:
        if union.measure != declared:
            return False
        if previous is not None and declared > previous:
            return False
        previous = declared
    return previous is None or previous <= eps


def tail_bound_holds(h: Mapping[int, BinStr], cutoff: int) -> bool:
    """Level n measures at most 2^(1-n) for every n up to cutoff."""
    return all(
        schnorr_from_interleaver(h, n)[1] <= Fraction(2, 2**n) for n in range(1, cutoff + 1)
    )