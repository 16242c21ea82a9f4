"""
Monotone maps from binary strings to strings of naturals.

A MonotoneMap is a finite table padded by a fill value; the derived maps
(SplicedMap, SlowedMap, MaxMap) are the edits made when a condition is
extended. Every map has a horizon: beyond it, the value at a string depends
only on the string's prefix of that length and on how much longer it is.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from bushyforce.exceptions import RepresentationError
from bushyforce.strings import (
    BinStr,
    Str,
    binary_strings_upto,
    common_prefix,
    format_str,
    is_prefix,
    is_strict_prefix,
)

logger = logging.getLogger(__name__)


class BinaryMap(ABC):
    """A total map 2^<ω -> ω^<ω with finite horizon."""

    @abstractmethod
    def __call__(self, sigma: BinStr) -> Str: ...

    @property
    @abstractmethod
    def horizon(self) -> int: ...

    @property
    @abstractmethod
    def period(self) -> int:
        """Past the horizon, |f(σ)| >= |σ| // period."""

    def validate(self, depth: Optional[int] = None) -> bool:
        """
        Check |f(σ)| <= |σ| and monotonicity on every binary string up to depth
        (default: far enough past the horizon to see the values grow).
        """
        limit = depth if depth is not None else comparison_depth(self)
        for sigma in binary_strings_upto(limit):
            value = self(sigma)
            if len(value) > len(sigma):
                return False
            if sigma and not is_prefix(self(sigma[:-1]), value):
                return False
        return True

    def first_reaching(self, kappa: BinStr, length: int) -> Optional[Str]:
        """
        The value of f at the shortest kappa + 0^j whose value has at least the
        given length.
        """
        value = self(kappa)
        if len(value) >= length:
            return value
        steps = max(self.horizon - len(kappa), 0) + (length + 1) * self.period
        for j in range(1, steps + 1):
            value = self(kappa + (0,) * j)
            if len(value) >= length:
                return value
        return None


@dataclass(frozen=True)
class MonotoneMap(BinaryMap):
    """
    A finite table padded to length |σ| // stretch.

    f(σ) is the value v of the longest key k ⪯ σ (the empty key maps to the empty
    string unless listed), extended by fill up to length |σ| // stretch when that
    is longer than v.
    """

    table: tuple = ()
    stretch: int = 1
    fill: int = 0

    def __post_init__(self) -> None:
        entries = {tuple(k): tuple(v) for k, v in self.table}
        ordered = sorted(entries.items(), key=lambda kv: (len(kv[0]), kv[0]))
        object.__setattr__(self, "table", tuple(ordered))
        if self.stretch < 1:
            raise RepresentationError(f"Stretch must be at least 1, got {self.stretch}")

    @classmethod
    def pad(cls, stretch: int = 1, fill: int = 0) -> "MonotoneMap":
        return cls((), stretch, fill)

    @classmethod
    def constant(cls, h: Str, fill: int = 0) -> "MonotoneMap":
        """The map σ -> h↾|σ| padded by fill past |h|."""
        table = tuple((sigma, tuple(h[: len(sigma)])) for sigma in binary_strings_upto(len(h)))
        return cls(table, 1, fill)

    def lookup(self, sigma: BinStr) -> tuple[BinStr, Str]:
        best: tuple[BinStr, Str] = ((), ())
        for key, value in self.table:
            if len(key) >= len(best[0]) and is_prefix(key, sigma):
                best = (key, value)
        return best

    def __call__(self, sigma: BinStr) -> Str:
        _, value = self.lookup(tuple(sigma))
        target = len(sigma) // self.stretch
        return value + (self.fill,) * max(0, target - len(value))

    @property
    def horizon(self) -> int:
        return max((len(k) for k, _ in self.table), default=0)

    @property
    def period(self) -> int:
        return self.stretch

    def table_ok(self) -> bool:
        """Every table value fits its key and extends the map's value one step earlier."""
        for key, value in self.table:
            if len(value) > len(key):
                return False
            if key and not is_prefix(self(key[:-1]), value):
                return False
        return True

    def validate(self, depth: Optional[int] = None) -> bool:
        return self.table_ok() and super().validate(depth)

    def __str__(self) -> str:
        if not self.table:
            return f"Pad({self.stretch},{self.fill})"
        body = ",".join(f"{format_str(k)}:{format_str(v)}" for k, v in self.table)
        return f"Map({self.stretch},{self.fill},{body})"


@dataclass(frozen=True)
class SplicedMap(BinaryMap):
    """
    ``inner`` edited so that ``at`` maps to ``value``.

    Below ``at`` values are cut to agree with ``value``; above it the first
    |value| entries are replaced by ``value``; elsewhere the part agreeing with
    ``value`` at the branching point is replaced.
    """

    inner: BinaryMap
    at: BinStr
    value: Str

    def _head(self, rho0: BinStr) -> Str:
        return self.value[: min(len(self.value), len(self.inner(rho0)))]

    def __call__(self, sigma: BinStr) -> Str:
        sigma = tuple(sigma)
        if is_prefix(sigma, self.at):
            return self._head(sigma)
        base = self.inner(sigma)
        if is_strict_prefix(self.at, sigma):
            return self.value + base[len(self.value) :]
        head = self._head(common_prefix(sigma, self.at))
        return head + base[len(head) :]

    @property
    def horizon(self) -> int:
        return max(self.inner.horizon, len(self.at) + 1)

    @property
    def period(self) -> int:
        return self.inner.period

    def __str__(self) -> str:
        return f"Splice({self.inner},{format_str(self.at)},{format_str(self.value)})"


@dataclass(frozen=True)
class SlowedMap(BinaryMap):
    """``inner`` held at ``value`` on every string between ``start`` and ``until``."""

    inner: BinaryMap
    start: BinStr
    until: BinStr
    value: Str

    def __call__(self, sigma: BinStr) -> Str:
        sigma = tuple(sigma)
        if is_prefix(self.start, sigma) and is_prefix(sigma, self.until):
            return self.value
        return self.inner(sigma)

    @property
    def horizon(self) -> int:
        return max(self.inner.horizon, len(self.until) + 1)

    @property
    def period(self) -> int:
        return self.inner.period

    def __str__(self) -> str:
        return (
            f"Slow({self.inner},{format_str(self.start)},{format_str(self.until)},"
            f"{format_str(self.value)})"
        )


@dataclass(frozen=True)
class MaxMap(BinaryMap):
    """
    Pointwise maximum of two maps above ``root``, keeping the first ``floor``
    entries of ``left``. Strings not strictly above root keep ``left``.
    """

    left: BinaryMap
    right: BinaryMap
    root: BinStr = ()
    floor: int = 0

    def __call__(self, sigma: BinStr) -> Str:
        sigma = tuple(sigma)
        base = self.left(sigma)
        if not is_strict_prefix(self.root, sigma):
            return base
        other = self.right(sigma)
        top = min(len(base), len(other))
        tail = tuple(max(base[i], other[i]) for i in range(self.floor, top))
        return base[: self.floor] + tail

    @property
    def horizon(self) -> int:
        return max(self.left.horizon, self.right.horizon, len(self.root) + 1)

    @property
    def period(self) -> int:
        return max(self.left.period, self.right.period)

    def __str__(self) -> str:
        return f"Max({self.left},{self.right},{format_str(self.root)},{self.floor})"


def pointwise_geq_on(a: Str, b: Str) -> bool:
    """a(i) >= b(i) on the common domain."""
    return all(x >= y for x, y in zip(a, b))


def map_dominates(
    f: BinaryMap, g: BinaryMap, above: BinStr, depth: int, floor: int = 0
) -> bool:
    """f(σ)(i) >= g(σ)(i) for σ ⪰ above up to depth and i >= floor in both domains."""
    for sigma in binary_strings_upto(depth):
        if not is_prefix(above, sigma):
            continue
        fv, gv = f(sigma), g(sigma)
        if not pointwise_geq_on(fv[floor:], gv[floor:]):
            return False
    return True



def comparison_depth(*maps: BinaryMap) -> int:
    """
    A string length by which every map is past its table and padding, and by which
    lengths growing at different periods have separated.
    """
    horizon = max(f.horizon for f in maps)
    period = max(f.period for f in maps)
    return period * (horizon + period + 1) + 1
