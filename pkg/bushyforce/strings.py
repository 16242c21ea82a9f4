"""
Finite strings over the naturals and over {0, 1}.

Strings are plain tuples of ints so they hash, compare and slice cheaply.
"""
from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, Tuple

from bushyforce.exceptions import ScenarioParseError

Str = Tuple[int, ...]
BinStr = Tuple[int, ...]
PairStr = Tuple[BinStr, Str]

EMPTY: Str = ()

_STR_RE = re.compile(r"^\s*\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]\s*$")


def pointwise_leq(a: Str, b: Str) -> bool:
    """Return True iff a(i) <= b(i) on the common domain of a and b."""
    return all(x <= y for x, y in zip(a, b))


def is_prefix(a: Str, b: Str) -> bool:
    """Return True iff a is an initial segment of b."""
    return len(a) <= len(b) and b[: len(a)] == a


def is_strict_prefix(a: Str, b: Str) -> bool:
    return len(a) < len(b) and b[: len(a)] == a


def compatible(a: Str, b: Str) -> bool:
    """Return True iff one of a, b extends the other."""
    return is_prefix(a, b) or is_prefix(b, a)


def common_prefix(a: Str, b: Str) -> Str:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return a[:n]


def prefixes(s: Str) -> Iterator[Str]:
    """Yield every prefix of s, shortest first, including s itself."""
    for n in range(len(s) + 1):
        yield s[:n]


def pf_reduce(strings: Iterable[Str]) -> frozenset[Str]:
    """
    Return the prefix-minimal elements of a finite set of strings.

    The result is an antichain generating the same open set.
    """
    ordered = sorted(set(strings), key=lambda s: (len(s), s))
    kept: list[Str] = []
    for s in ordered:
        if not any(is_prefix(k, s) for k in kept):
            kept.append(s)
    return frozenset(kept)


def binary_strings(length: int) -> Iterator[BinStr]:
    """Yield all binary strings of the given length in lexicographic order."""
    for bits in itertools.product((0, 1), repeat=length):
        yield tuple(bits)


def binary_strings_upto(length: int) -> Iterator[BinStr]:
    """Yield binary strings of length <= length, shortest first."""
    for n in range(length + 1):
        yield from binary_strings(n)


def strings_upto(length: int, bound: int) -> Iterator[Str]:
    """Yield strings of length <= length with entries < bound, shortest first."""
    for n in range(length + 1):
        for entries in itertools.product(range(bound), repeat=n):
            yield tuple(entries)


def extensions(s: Str, extra: int, bound: int) -> Iterator[Str]:
    """Yield the extensions of s by exactly `extra` entries below bound."""
    for tail in itertools.product(range(bound), repeat=extra):
        yield s + tuple(tail)


def pointwise_max(a: Str, b: Str) -> Str:
    """Pointwise maximum, padding the shorter argument with zeros."""
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return tuple(max(x, y) for x, y in zip(a, b))


def value_at(f: Str, i: int) -> int:
    """Read a finite-support function stored as a tuple, zero outside it."""
    return f[i] if i < len(f) else 0


def strip_zeros(f: Str) -> Str:
    """Drop trailing zeros so finite-support functions compare canonically."""
    n = len(f)
    while n and f[n - 1] == 0:
        n -= 1
    return tuple(f[:n])


def format_str(s: Str) -> str:
    """Format a string as a bracketed integer list, e.g. ``[6,4]``."""
    return "[" + ",".join(str(x) for x in s) + "]"


def parse_str(text: str) -> Str:
    """
    Parse a bracketed integer list.

    Raises:
        ScenarioParseError: If text is not of the form ``[a,b,...]``
    """
    match = _STR_RE.match(text)
    if not match:
        raise ScenarioParseError(f"Not a string literal: {text!r}")
    body = match.group(1)
    if not body:
        return ()
    return tuple(int(x) for x in body.split(","))


def format_pair(p: PairStr) -> str:
    return f"({format_str(p[0])},{format_str(p[1])})"
